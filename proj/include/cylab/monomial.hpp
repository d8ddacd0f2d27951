#ifndef CYLAB_MONOMIAL_HPP
#define CYLAB_MONOMIAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cylab/error.hpp"

namespace cylab {

// Dense exponent vector over the ambient variable list. Variable counts stay
// small (a few dozen at most), so dense wins over sparse maps here.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(size_t nvars) : e_(nvars, 0) {}

    static Monomial from_exps(std::vector<int32_t> e) { return Monomial(std::move(e), 0); }

    size_t nvars() const { return e_.size(); }
    int32_t operator[](size_t i) const { return e_[i]; }
    int32_t& operator[](size_t i) { return e_[i]; }
    const std::vector<int32_t>& exps() const { return e_; }

    int32_t degree() const {
        int32_t d = 0;
        for (int32_t x : e_) d += x;
        return d;
    }

    bool is_constant() const {
        for (int32_t x : e_)
            if (x != 0) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }

    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    // this / o, assuming o divides this
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    Monomial lcm(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e_.size(); ++i)
            if (o.e_[i] > r.e_[i]) r.e_[i] = o.e_[i];
        return r;
    }

    bool coprime(const Monomial& o) const {
        for (size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0 && o.e_[i] > 0) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }
    bool operator<(const Monomial& o) const { return e_ < o.e_; }  // container key order only

  private:
    Monomial(std::vector<int32_t> e, int) : e_(std::move(e)) {}

    std::vector<int32_t> e_;
};

enum class OrderKind { Lex, Grevlex, Block };

// Total order on monomials compatible with multiplication. `priority` is a
// permutation of variable indices, most significant first. Block orders
// compare the first `split` priority slots grevlex-first, which makes that
// set dominant for elimination.
struct MonomialOrder {
    OrderKind kind = OrderKind::Grevlex;
    std::vector<int> priority;  // empty means identity permutation
    size_t split = 0;           // block orders: size of the elimination block
    OrderKind inner = OrderKind::Grevlex;

    static MonomialOrder lex() { return {OrderKind::Lex, {}, 0, OrderKind::Grevlex}; }
    static MonomialOrder grevlex() { return {OrderKind::Grevlex, {}, 0, OrderKind::Grevlex}; }
    static MonomialOrder block(std::vector<int> priority, size_t split,
                               OrderKind inner = OrderKind::Grevlex) {
        return {OrderKind::Block, std::move(priority), split, inner};
    }

    // +1 if a > b, 0 if equal, -1 if a < b
    int compare(const Monomial& a, const Monomial& b) const;

    bool equal_to(const MonomialOrder& o) const {
        return kind == o.kind && priority == o.priority && split == o.split && inner == o.inner;
    }

    std::string str() const;
};

}  // namespace cylab

#endif
