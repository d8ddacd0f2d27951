#ifndef CYLAB_POLYNOMIAL_HPP
#define CYLAB_POLYNOMIAL_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cylab/field.hpp"
#include "cylab/monomial.hpp"

namespace cylab {

// Ambient polynomial ring data: ordered variable list, coefficient field and
// the active monomial order. Shared by pointer; polynomials over ambients
// with equal content are compatible.
struct Ambient {
    std::vector<std::string> vars;
    FieldDesc field;
    MonomialOrder order;

    std::optional<size_t> var_index(const std::string& name) const;
    size_t var_index_checked(const std::string& name) const;
    bool compatible(const Ambient& o) const {
        return vars == o.vars && field == o.field && order.equal_to(o.order);
    }
};

using AmbientPtr = std::shared_ptr<const Ambient>;

AmbientPtr make_ambient(std::vector<std::string> vars, FieldDesc field = {},
                        MonomialOrder order = MonomialOrder::grevlex());

struct Term {
    FieldElement coeff;
    Monomial mono;
};

// Canonical multivariate polynomial: terms strictly descending under the
// ambient order, no zero coefficients, no duplicate monomials. The zero
// polynomial has an empty term list.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(AmbientPtr amb) : amb_(std::move(amb)) {}

    static Polynomial zero(AmbientPtr amb) { return Polynomial(std::move(amb)); }
    static Polynomial constant(AmbientPtr amb, FieldElement c);
    static Polynomial variable(AmbientPtr amb, size_t var);
    static Polynomial monomial(AmbientPtr amb, FieldElement c, Monomial m);
    static Polynomial from_terms(AmbientPtr amb, std::vector<Term> unsorted);

    const AmbientPtr& ambient() const { return amb_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant()); }
    size_t nvars() const { return amb_->vars.size(); }

    const Term& lead() const;
    int32_t total_degree() const;
    int32_t degree_in(size_t var) const;
    bool involves(size_t var) const;
    FieldElement coeff_of(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial scaled(const FieldElement& c) const;
    // this * c*m, a single-term product
    Polynomial term_mul(const FieldElement& c, const Monomial& m) const;
    Polynomial pow(unsigned k) const;
    Polynomial monic() const;

    // Unique ring-homomorphic extension of var -> images[var]. All images
    // must share one ambient, which becomes the result's ambient.
    Polynomial substitute(const std::vector<Polynomial>& images) const;
    // Same ambient, images given only for some variables (identity elsewhere).
    Polynomial substitute_partial(const std::vector<std::optional<Polynomial>>& images) const;

    Polynomial partial(size_t var) const;

    // Re-sort the term list into an ambient with a different order (same
    // variables and field).
    Polynomial with_ambient(const AmbientPtr& amb) const;
    // Rename/extend variables: to[i] is the index of our i-th variable in
    // the target ambient.
    Polynomial mapped_vars(const AmbientPtr& target, const std::vector<size_t>& to) const;
    // Same variables, scalars embedded into a larger coefficient field.
    Polynomial with_field(const AmbientPtr& target) const;

    std::string str() const;

  private:
    AmbientPtr amb_;
    std::vector<Term> terms_;
};

void check_same_ambient(const Polynomial& a, const Polynomial& b);

// Parse the canonical grammar: rational literals, variables, + - * ^ and
// parentheses; `zeta` names the field generator over cyclotomic ambients.
Polynomial parse_polynomial(const AmbientPtr& amb, const std::string& text);

// All monomials in `nvars` variables with total degree in [1, max_degree],
// enumerated by ascending degree then ascending order. Deterministic.
std::vector<Monomial> monomials_up_to(const AmbientPtr& amb, int32_t max_degree);

// Monomials of one exact total degree, ascending under the ambient order.
std::vector<Monomial> monomials_of_degree(const AmbientPtr& amb, int32_t degree);

}  // namespace cylab

#endif
