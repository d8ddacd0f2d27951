#include "cylab/field.hpp"

#include <algorithm>
#include <map>

namespace cylab {

Rational Rational::from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "bad rational literal '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::factorial(unsigned n) {
    mpz_class z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return Rational(mpq_class(z));
}

std::string FieldDesc::str() const {
    if (is_rational()) return "Q";
    return "Q(zeta_" + std::to_string(cyclo_order) + ")";
}

unsigned euler_phi(unsigned l) {
    unsigned result = l;
    unsigned n = l;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            result -= result / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

namespace {

using UniPoly = std::vector<Rational>;  // ascending degree, no trailing zeros

void uni_trim(UniPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly uni_mul(const UniPoly& a, const UniPoly& b) {
    if (a.empty() || b.empty()) return {};
    UniPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    uni_trim(r);
    return r;
}

// Quotient of exact division (used for x^l - 1 over products of Phi_d).
UniPoly uni_divide_exact(UniPoly num, const UniPoly& den) {
    UniPoly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = c;
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        uni_trim(num);
    }
    return q;
}

UniPoly uni_rem(UniPoly num, const UniPoly& den) {
    while (num.size() >= den.size() && !num.empty()) {
        Rational c = num.back() / den.back();
        size_t shift = num.size() - den.size();
        for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        uni_trim(num);
    }
    return num;
}

// Extended Euclid: returns g = gcd(a, b) monic together with u with
// u*a = g mod b. Enough to invert residues modulo an irreducible modulus.
std::pair<UniPoly, UniPoly> uni_half_gcd(UniPoly a, UniPoly b) {
    UniPoly u0 = {Rational(1)}, u1 = {};
    UniPoly r0 = std::move(a), r1 = std::move(b);
    while (!r1.empty()) {
        // r0 = q*r1 + r, u = u0 - q*u1
        UniPoly num = r0;
        UniPoly q(num.size() >= r1.size() ? num.size() - r1.size() + 1 : 0, Rational(0));
        while (num.size() >= r1.size() && !num.empty()) {
            Rational c = num.back() / r1.back();
            size_t shift = num.size() - r1.size();
            q[shift] += c;
            for (size_t i = 0; i < r1.size(); ++i) num[shift + i] -= c * r1[i];
            uni_trim(num);
        }
        UniPoly qu1 = uni_mul(q, u1);
        UniPoly u = u0;
        if (u.size() < qu1.size()) u.resize(qu1.size(), Rational(0));
        for (size_t i = 0; i < qu1.size(); ++i) u[i] -= qu1[i];
        uni_trim(u);
        u0 = std::move(u1);
        u1 = std::move(u);
        r0 = std::move(r1);
        r1 = std::move(num);
    }
    if (r0.empty()) fail(ErrorKind::DivisionByZero, "gcd of zero polynomials");
    Rational lead = r0.back();
    for (auto& c : r0) c = c / lead;
    for (auto& c : u0) c = c / lead;
    return {r0, u0};
}

const UniPoly& phi_cached(unsigned l) {
    static std::map<unsigned, UniPoly> cache;
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;
    // Phi_l = (x^l - 1) / prod_{d | l, d < l} Phi_d
    UniPoly num(l + 1, Rational(0));
    num[0] = Rational(-1);
    num[l] = Rational(1);
    UniPoly den = {Rational(1)};
    for (unsigned d = 1; d < l; ++d)
        if (l % d == 0) den = uni_mul(den, phi_cached(d));
    return cache.emplace(l, uni_divide_exact(std::move(num), den)).first->second;
}

}  // namespace

std::vector<Rational> cyclotomic_polynomial(unsigned l) {
    if (l == 0) fail(ErrorKind::InvalidParameter, "cyclotomic order must be positive");
    return phi_cached(l);
}

Cyclotomic::Cyclotomic(unsigned order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
    if (order_ < 3) fail(ErrorKind::InvalidParameter, "cyclotomic order must be >= 3");
    coeffs_.resize(euler_phi(order_), Rational(0));
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (!coeffs_[i].is_zero()) return false;
    return true;
}

FieldElement::FieldElement(Cyclotomic c) {
    if (c.is_rational())
        v_ = c.coeffs().empty() ? Rational(0) : c.coeffs()[0];
    else
        v_ = std::move(c);
}

namespace {

FieldElement from_residue(unsigned order, UniPoly p) {
    p = uni_rem(std::move(p), phi_cached(order));
    p.resize(euler_phi(order), Rational(0));
    return FieldElement(Cyclotomic(order, std::move(p)));
}

UniPoly as_poly(const FieldElement& e, unsigned order) {
    if (e.is_rational()) {
        UniPoly p(euler_phi(order), Rational(0));
        p[0] = e.rational();
        return p;
    }
    return e.cyclotomic().coeffs();
}

unsigned join_orders(const FieldElement& a, const FieldElement& b) {
    unsigned la = a.cyclo_order(), lb = b.cyclo_order();
    if (la == 1) return lb;
    if (lb == 1) return la;
    if (la != lb)
        fail(ErrorKind::FieldMismatch,
             "mixing Q(zeta_" + std::to_string(la) + ") with Q(zeta_" + std::to_string(lb) + ")");
    return la;
}

}  // namespace

FieldElement FieldElement::root_of_unity(unsigned l, long k) {
    if (l == 0) fail(ErrorKind::InvalidParameter, "root order must be positive");
    long r = k % static_cast<long>(l);
    if (r < 0) r += static_cast<long>(l);
    if (l == 1) return FieldElement(Rational(1));
    if (l == 2) return FieldElement(Rational(r == 0 ? 1 : -1));
    UniPoly p(static_cast<size_t>(r) + 1, Rational(0));
    p[static_cast<size_t>(r)] = Rational(1);
    return from_residue(l, std::move(p));
}

FieldElement FieldElement::operator-() const {
    if (is_rational()) return FieldElement(-rational());
    auto c = cyclotomic().coeffs();
    for (auto& x : c) x = -x;
    return FieldElement(Cyclotomic(cyclotomic().order(), std::move(c)));
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (is_rational() && o.is_rational()) return FieldElement(rational() + o.rational());
    unsigned l = join_orders(*this, o);
    UniPoly a = as_poly(*this, l), b = as_poly(o, l);
    for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return FieldElement(Cyclotomic(l, std::move(a)));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (is_rational() && o.is_rational()) return FieldElement(rational() * o.rational());
    unsigned l = join_orders(*this, o);
    UniPoly a = as_poly(*this, l), b = as_poly(o, l);
    uni_trim(a);
    uni_trim(b);
    return from_residue(l, uni_mul(a, b));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    if (is_rational()) return FieldElement(rational().inverse());
    unsigned l = cyclotomic().order();
    UniPoly a = cyclotomic().coeffs();
    uni_trim(a);
    auto [g, u] = uni_half_gcd(a, phi_cached(l));
    if (g.size() != 1) fail(ErrorKind::DivisionByZero, "non-invertible cyclotomic residue");
    return from_residue(l, std::move(u));
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inverse(); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (is_rational() != o.is_rational()) return false;
    if (is_rational()) return rational() == o.rational();
    return cyclotomic() == o.cyclotomic();
}

std::string FieldElement::str() const {
    if (is_rational()) return rational().str();
    const auto& c = cyclotomic().coeffs();
    std::string out;
    for (size_t k = c.size(); k-- > 0;) {
        if (c[k].is_zero()) continue;
        Rational v = c[k];
        if (out.empty()) {
            if (v.sign() < 0) {
                out += "-";
                v = -v;
            }
        } else {
            out += v.sign() < 0 ? " - " : " + ";
            if (v.sign() < 0) v = -v;
        }
        bool unit = v.is_one() && k > 0;
        if (!unit) out += v.str();
        if (k > 0) {
            if (!unit) out += "*";
            out += "zeta";
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace cylab
