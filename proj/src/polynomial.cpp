#include "cylab/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace cylab {

std::optional<size_t> Ambient::var_index(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return i;
    return std::nullopt;
}

size_t Ambient::var_index_checked(const std::string& name) const {
    auto i = var_index(name);
    if (!i) fail(ErrorKind::UnknownVariable, "variable '" + name + "' not in ambient");
    return *i;
}

AmbientPtr make_ambient(std::vector<std::string> vars, FieldDesc field, MonomialOrder order) {
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j])
                fail(ErrorKind::VariableClash, "duplicate variable '" + vars[i] + "'");
    auto a = std::make_shared<Ambient>();
    a->vars = std::move(vars);
    a->field = field;
    a->order = std::move(order);
    return a;
}

void check_same_ambient(const Polynomial& a, const Polynomial& b) {
    if (a.ambient() == b.ambient()) return;
    if (a.ambient() && b.ambient() && a.ambient()->compatible(*b.ambient())) return;
    fail(ErrorKind::AmbientMismatch, "polynomials over different ambients");
}

Polynomial Polynomial::constant(AmbientPtr amb, FieldElement c) {
    Polynomial p(amb);
    if (!c.is_zero()) p.terms_.push_back({std::move(c), Monomial(amb->vars.size())});
    return p;
}

Polynomial Polynomial::variable(AmbientPtr amb, size_t var) {
    Monomial m(amb->vars.size());
    m[var] = 1;
    return monomial(std::move(amb), FieldElement::one(), std::move(m));
}

Polynomial Polynomial::monomial(AmbientPtr amb, FieldElement c, Monomial m) {
    Polynomial p(amb);
    if (!c.is_zero()) p.terms_.push_back({std::move(c), std::move(m)});
    return p;
}

Polynomial Polynomial::from_terms(AmbientPtr amb, std::vector<Term> unsorted) {
    const MonomialOrder& ord = amb->order;
    std::sort(unsorted.begin(), unsorted.end(),
              [&](const Term& a, const Term& b) { return ord.compare(a.mono, b.mono) > 0; });
    Polynomial p(amb);
    for (auto& t : unsorted) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono)
            p.terms_.back().coeff = p.terms_.back().coeff + t.coeff;
        else
            p.terms_.push_back(std::move(t));
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.coeff.is_zero(); });
    return p;
}

const Term& Polynomial::lead() const {
    if (terms_.empty()) fail(ErrorKind::InvalidParameter, "lead term of zero polynomial");
    return terms_[0];
}

int32_t Polynomial::total_degree() const {
    int32_t d = -1;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

int32_t Polynomial::degree_in(size_t var) const {
    int32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[var]);
    return d;
}

bool Polynomial::involves(size_t var) const {
    for (const auto& t : terms_)
        if (t.mono[var] != 0) return true;
    return false;
}

FieldElement Polynomial::coeff_of(const Monomial& m) const {
    for (const auto& t : terms_)
        if (t.mono == m) return t.coeff;
    return FieldElement::zero();
}

Polynomial Polynomial::operator-() const {
    Polynomial p(*this);
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ambient(*this, o);
    const MonomialOrder& ord = amb_->order;
    Polynomial r(amb_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ord.compare(terms_[i].mono, o.terms_[j].mono);
        if (c > 0)
            r.terms_.push_back(terms_[i++]);
        else if (c < 0)
            r.terms_.push_back(o.terms_[j++]);
        else {
            FieldElement s = terms_[i].coeff + o.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({std::move(s), terms_[i].mono});
            ++i, ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ambient(*this, o);
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) acc.push_back({a.coeff * b.coeff, a.mono * b.mono});
    return from_terms(amb_, std::move(acc));
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
            return false;
    return true;
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
    if (c.is_zero()) return zero(amb_);
    Polynomial p(*this);
    for (auto& t : p.terms_) t.coeff = t.coeff * c;
    return p;
}

Polynomial Polynomial::term_mul(const FieldElement& c, const Monomial& m) const {
    if (c.is_zero()) return zero(amb_);
    Polynomial p(amb_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.coeff * c, t.mono * m});
    return p;
}

Polynomial Polynomial::pow(unsigned k) const {
    Polynomial r = constant(amb_, FieldElement::one());
    Polynomial b = *this;
    while (k) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(lead().coeff.inverse());
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars())
        fail(ErrorKind::MissingImage, "substitution needs an image for every variable");
    AmbientPtr target = images.empty() ? amb_ : images[0].ambient();
    for (const auto& im : images) check_same_ambient(images[0], im);
    // cache per-variable powers
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](size_t v, int32_t e) -> const Polynomial& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(Polynomial::constant(target, FieldElement::one()));
        while (static_cast<int32_t>(cache.size()) <= e) cache.push_back(cache.back() * images[v]);
        return cache[e];
    };
    Polynomial acc = zero(target);
    for (const auto& t : terms_) {
        Polynomial piece = constant(target, t.coeff);
        for (size_t v = 0; v < images.size(); ++v)
            if (t.mono[v] > 0) piece = piece * power(v, t.mono[v]);
        acc = acc + piece;
    }
    return acc;
}

Polynomial Polynomial::substitute_partial(const std::vector<std::optional<Polynomial>>& images) const {
    std::vector<Polynomial> full;
    full.reserve(nvars());
    for (size_t v = 0; v < nvars(); ++v)
        full.push_back(images[v] ? *images[v] : variable(amb_, v));
    return substitute(full);
}

Polynomial Polynomial::partial(size_t var) const {
    if (var >= nvars()) fail(ErrorKind::UnknownVariable, "partial: variable index out of range");
    Polynomial r(amb_);
    for (const auto& t : terms_) {
        if (t.mono[var] == 0) continue;
        Term d{t.coeff * FieldElement(Rational(t.mono[var])), t.mono};
        d.mono[var] -= 1;
        r.terms_.push_back(std::move(d));
    }
    // term order is preserved by decrementing one exponent only under lex,
    // not grevlex; re-sort to stay canonical
    return from_terms(amb_, std::move(r.terms_));
}

Polynomial Polynomial::with_ambient(const AmbientPtr& amb) const {
    if (amb->vars != amb_->vars || !(amb->field == amb_->field))
        fail(ErrorKind::AmbientMismatch, "with_ambient: variables or field differ");
    return from_terms(amb, std::vector<Term>(terms_));
}

Polynomial Polynomial::mapped_vars(const AmbientPtr& target, const std::vector<size_t>& to) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(target->vars.size());
        for (size_t v = 0; v < nvars(); ++v) m[to[v]] = t.mono[v];
        out.push_back({t.coeff, std::move(m)});
    }
    return from_terms(target, std::move(out));
}

Polynomial Polynomial::with_field(const AmbientPtr& target) const {
    if (target->vars != amb_->vars)
        fail(ErrorKind::AmbientMismatch, "with_field: variable lists differ");
    return from_terms(target, std::vector<Term>(terms_));
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string monomial_str(const Ambient& amb, const Monomial& m) {
    std::string out;
    for (size_t v = 0; v < amb.vars.size(); ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += amb.vars[v];
        if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
    return out;
}

// Coefficient piece and whether it needs a leading " - " join. Irrational
// cyclotomic coefficients with several terms are parenthesized.
struct CoeffPiece {
    std::string text;
    bool negative;
};

CoeffPiece coeff_piece(const FieldElement& c) {
    if (c.is_rational()) {
        Rational r = c.rational();
        if (r.sign() < 0) return {(-r).str(), true};
        return {r.str(), false};
    }
    std::string s = c.str();
    size_t nonzero = 0;
    for (const auto& x : c.cyclotomic().coeffs())
        if (!x.is_zero()) ++nonzero;
    if (nonzero == 1) {
        if (s.rfind("-", 0) == 0) return {s.substr(1), true};
        return {s, false};
    }
    return {"(" + s + ")", false};
}

}  // namespace

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        CoeffPiece c = coeff_piece(t.coeff);
        std::string mono = t.mono.is_constant() ? "" : monomial_str(*amb_, t.mono);
        std::string body;
        if (mono.empty())
            body = c.text;
        else if (c.text == "1")
            body = mono;
        else
            body = c.text + "*" + mono;
        if (out.empty())
            out = (c.negative ? "-" : "") + body;
        else
            out += (c.negative ? " - " : " + ") + body;
    }
    return out;
}

// ---------------------------------------------------------------------------
// parsing

namespace {

class Parser {
  public:
    Parser(const AmbientPtr& amb, const std::string& text) : amb_(amb), s_(text) {}

    Polynomial run() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail(ErrorKind::ParseError, "unexpected '" + std::string(1, s_[pos_]) + "' at offset " +
                                            std::to_string(pos_) + " in '" + s_ + "'");
        return p;
    }

  private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Polynomial a = atom();
        if (eat('^')) {
            long e = integer();
            if (e < 0) fail(ErrorKind::ParseError, "negative exponent in '" + s_ + "'");
            a = a.pow(static_cast<unsigned>(e));
        }
        return neg ? -a : a;
    }

    Polynomial atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            Polynomial p = expr();
            if (!eat(')')) fail(ErrorKind::ParseError, "missing ')' in '" + s_ + "'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        fail(ErrorKind::ParseError, "unexpected character at offset " + std::to_string(pos_) +
                                        " in '" + s_ + "'");
    }

    long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail(ErrorKind::ParseError, "expected integer in '" + s_ + "'");
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

    Polynomial number() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::string den;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                den += s_[pos_++];
            if (den.empty()) fail(ErrorKind::ParseError, "bad rational literal in '" + s_ + "'");
            digits += "/" + den;
        }
        return Polynomial::constant(amb_, FieldElement(Rational::from_string(digits)));
    }

    Polynomial identifier() {
        std::string name;
        name += s_[pos_++];
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                s_[pos_] == '\''))
            name += s_[pos_++];
        if (name == "zeta") {
            if (amb_->field.is_rational())
                fail(ErrorKind::ParseError, "'zeta' used over a rational ambient");
            return Polynomial::constant(
                amb_, FieldElement::root_of_unity(amb_->field.cyclo_order, 1));
        }
        auto idx = amb_->var_index(name);
        if (!idx) fail(ErrorKind::UnknownVariable, "variable '" + name + "' not in ambient");
        return Polynomial::variable(amb_, *idx);
    }

    AmbientPtr amb_;
    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const AmbientPtr& amb, const std::string& text) {
    return Parser(amb, text).run();
}

namespace {

void extend_frontier(size_t n, std::vector<Monomial>& frontier) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
        // extend by variables with index >= the last nonzero slot so each
        // monomial appears exactly once
        size_t start = 0;
        for (size_t v = n; v-- > 0;)
            if (m[v] != 0) {
                start = v;
                break;
            }
        for (size_t v = start; v < n; ++v) {
            Monomial e = m;
            e[v] += 1;
            next.push_back(std::move(e));
        }
    }
    frontier = std::move(next);
}

}  // namespace

std::vector<Monomial> monomials_up_to(const AmbientPtr& amb, int32_t max_degree) {
    size_t n = amb->vars.size();
    std::vector<Monomial> all;
    std::vector<Monomial> frontier{Monomial(n)};
    for (int32_t d = 1; d <= max_degree; ++d) {
        extend_frontier(n, frontier);
        std::sort(frontier.begin(), frontier.end(), [&](const Monomial& a, const Monomial& b) {
            return amb->order.compare(a, b) < 0;
        });
        all.insert(all.end(), frontier.begin(), frontier.end());
    }
    return all;
}

std::vector<Monomial> monomials_of_degree(const AmbientPtr& amb, int32_t degree) {
    size_t n = amb->vars.size();
    std::vector<Monomial> frontier{Monomial(n)};
    for (int32_t d = 1; d <= degree; ++d) extend_frontier(n, frontier);
    std::sort(frontier.begin(), frontier.end(), [&](const Monomial& a, const Monomial& b) {
        return amb->order.compare(a, b) < 0;
    });
    return frontier;
}

}  // namespace cylab
