#ifndef CYLAB_FIELD_HPP
#define CYLAB_FIELD_HPP

#include <string>
#include <variant>
#include <vector>

#include "cylab/rational.hpp"

namespace cylab {

// Coefficient field descriptor: Q (order 1) or the cyclotomic field Q(zeta_l),
// l >= 3. Orders 1 and 2 collapse to Q since zeta_2 = -1.
struct FieldDesc {
    unsigned cyclo_order = 1;

    bool is_rational() const { return cyclo_order <= 2; }
    bool operator==(const FieldDesc&) const = default;
    std::string str() const;
};

// Coefficients of the l-th cyclotomic polynomial, ascending degree, monic.
std::vector<Rational> cyclotomic_polynomial(unsigned l);
unsigned euler_phi(unsigned l);

// Residue modulo Phi_l, stored eagerly reduced: the coefficient vector has
// exactly phi(l) entries. Elements with zero tail are represented as Rational
// at the FieldElement level, never here.
class Cyclotomic {
  public:
    Cyclotomic(unsigned order, std::vector<Rational> coeffs);

    unsigned order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_rational() const;

    bool operator==(const Cyclotomic& o) const {
        return order_ == o.order_ && coeffs_ == o.coeffs_;
    }

  private:
    unsigned order_;
    std::vector<Rational> coeffs_;  // size euler_phi(order_)
};

// Exact field element: a rational, or a cyclotomic residue that is genuinely
// irrational. All elements of one polynomial share one FieldDesc; mixing
// distinct cyclotomic orders is a FieldMismatch.
class FieldElement {
  public:
    FieldElement() : v_(Rational(0)) {}
    FieldElement(Rational r) : v_(std::move(r)) {}
    FieldElement(long n) : v_(Rational(n)) {}
    explicit FieldElement(Cyclotomic c);

    static FieldElement zero() { return FieldElement(Rational(0)); }
    static FieldElement one() { return FieldElement(Rational(1)); }
    // zeta_l^k, reduced; lands in Q for l <= 2.
    static FieldElement root_of_unity(unsigned l, long k);

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const Cyclotomic& cyclotomic() const { return std::get<Cyclotomic>(v_); }

    bool is_zero() const { return is_rational() && rational().is_zero(); }
    bool is_one() const { return is_rational() && rational().is_one(); }
    unsigned cyclo_order() const { return is_rational() ? 1 : cyclotomic().order(); }

    FieldElement operator-() const;
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement inverse() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // Canonical text: rationals as "a"/"a/b", irrational residues as a
    // polynomial in `zeta` with descending powers, e.g. "-zeta^2 + 1/2".
    std::string str() const;

  private:
    std::variant<Rational, Cyclotomic> v_;
};

}  // namespace cylab

#endif
