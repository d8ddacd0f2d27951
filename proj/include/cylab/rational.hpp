#ifndef CYLAB_RATIONAL_HPP
#define CYLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "cylab/error.hpp"

namespace cylab {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator. Backed by GMP; the wrapper pins the canonical text form
// "a" / "a/b" used everywhere in certificates.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(long n, unsigned long d) : v_(n, d) { v_.canonicalize(); }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational from_string(const std::string& s);
    static Rational factorial(unsigned n);

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) fail(ErrorKind::DivisionByZero, "rational division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

    Rational inverse() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }

    std::string str() const { return v_.get_str(); }

    const mpq_class& raw() const { return v_; }

  private:
    mpq_class v_;
};

inline Rational operator*(long n, const Rational& q) { return Rational(n) * q; }

}  // namespace cylab

#endif
