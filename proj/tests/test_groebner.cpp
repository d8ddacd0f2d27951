#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylab/groebner.hpp"
#include "cylab/linalg.hpp"
#include "cylab/parallel.hpp"

using namespace cylab;

namespace {

std::vector<Polynomial> parse_all(const AmbientPtr& amb, std::initializer_list<const char*> ss) {
    std::vector<Polynomial> out;
    for (const char* s : ss) out.push_back(parse_polynomial(amb, s));
    return out;
}

std::string basis_str(const GroebnerBasis& gb) {
    std::string out;
    for (const auto& b : gb.basis()) out += b.str() + ";";
    return out;
}

// Complete decision procedure for membership with combiner degree <= bound:
// solve the linear system p = sum c_i g_i coefficient-wise. Independent of
// the division/Buchberger path.
bool bounded_combiner_member(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                             const Polynomial& p, int32_t bound) {
    std::vector<Monomial> cols_per_gen = monomials_up_to(amb, bound);
    cols_per_gen.insert(cols_per_gen.begin(), Monomial(amb->vars.size()));
    std::vector<std::pair<size_t, Monomial>> cols;
    for (size_t g = 0; g < gens.size(); ++g)
        for (const auto& m : cols_per_gen) cols.emplace_back(g, m);
    std::map<Monomial, size_t> rows;
    auto row_of = [&](const Monomial& m) {
        return rows.emplace(m, rows.size()).first->second;
    };
    for (const auto& [g, m] : cols)
        for (const auto& t : gens[g].terms()) row_of(t.mono * m);
    for (const auto& t : p.terms()) row_of(t.mono);
    LinearSystem sys(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        const auto& [g, m] = cols[c];
        for (const auto& t : gens[g].terms()) sys.add(row_of(t.mono * m), c, t.coeff);
    }
    for (const auto& t : p.terms()) sys.set_rhs(row_of(t.mono), t.coeff);
    return sys.solve().has_value();
}

}  // namespace

TEST_CASE("single generator is already a basis") {
    auto amb = make_ambient({"x", "y"}, FieldDesc{}, MonomialOrder::lex());
    auto gb = buchberger(amb, parse_all(amb, {"x^2 - y"}));
    REQUIRE(gb.basis().size() == 1);
    CHECK(gb.basis()[0] == parse_polynomial(amb, "x^2 - y").with_ambient(gb.ambient()));
    CHECK(gb.verify_cofactors());
}

TEST_CASE("twisted cubic elimination under lex") {
    auto amb = make_ambient({"x", "y", "z"}, FieldDesc{}, MonomialOrder::lex());
    auto gb = buchberger(amb, parse_all(amb, {"y - x^2", "z - x^3"}));
    bool found = false;
    for (const auto& b : gb.basis())
        if (b == parse_polynomial(amb, "y^3 - z^2").with_ambient(gb.ambient())) found = true;
    CHECK(found);
    CHECK(gb.verify_cofactors());
    // independent check: every basis element vanishes on the parameterization
    auto param = make_ambient({"t"});
    std::vector<Polynomial> curve = {parse_polynomial(param, "t"), parse_polynomial(param, "t^2"),
                                     parse_polynomial(param, "t^3")};
    for (const auto& b : gb.basis()) CHECK(b.substitute(curve).is_zero());
}

TEST_CASE("unit ideal with exact cofactors") {
    auto amb = make_ambient({"y"});
    auto gb = buchberger(amb, parse_all(amb, {"y - 1", "y + 1"}));
    REQUIRE(gb.basis().size() == 1);
    CHECK(gb.is_unit_ideal());
    const auto& rows = gb.cofactors();
    CHECK(rows[0][0] == Polynomial::constant(gb.ambient(), FieldElement(Rational(-1, 2))));
    CHECK(rows[0][1] == Polynomial::constant(gb.ambient(), FieldElement(Rational(1, 2))));
}

TEST_CASE("normal form with combiners") {
    auto amb = make_ambient({"x", "y"}, FieldDesc{}, MonomialOrder::lex());
    auto gb = buchberger(amb, parse_all(amb, {"x^2 - y"}));
    auto red = gb.reduce(parse_polynomial(amb, "x^2*y").with_ambient(gb.ambient()));
    CHECK(red.remainder == parse_polynomial(amb, "y^2").with_ambient(gb.ambient()));
    CHECK(red.combiners[0] == parse_polynomial(amb, "y").with_ambient(gb.ambient()));
    // an element of the basis reduces to zero
    CHECK(gb.nf(gb.basis()[0]).is_zero());
    // remainder terms are not divisible by any head
    for (const auto& t : red.remainder.terms())
        for (const auto& b : gb.basis()) CHECK(!b.lead().mono.divides(t.mono));
}

TEST_CASE("membership certificates match the worked examples") {
    auto amb = make_ambient({"x", "y", "z"});
    SUBCASE("unit combination, no saturation") {
        auto gens = parse_all(amb, {"y - 1", "y + 1"});
        auto cert = membership(amb, gens, Polynomial::constant(amb, FieldElement::one()));
        CHECK(cert.exponent == 0);
        CHECK(cert.combiners[0] == Polynomial::constant(amb, FieldElement(Rational(-1, 2))));
        CHECK(cert.combiners[1] == Polynomial::constant(amb, FieldElement(Rational(1, 2))));
        CHECK(cert.verify());
    }
    SUBCASE("f_{1,2} needs one saturation power") {
        auto gens = parse_all(amb, {"x", "y"});
        Polynomial f = parse_polynomial(amb, "y^2 + x - x*z");
        auto cert = membership(amb, gens, Polynomial::constant(amb, FieldElement::one()), f, 2);
        CHECK(cert.exponent == 1);
        CHECK(cert.combiners[0] == parse_polynomial(amb, "1 - z"));
        CHECK(cert.combiners[1] == parse_polynomial(amb, "y"));
        CHECK(cert.verify());
    }
    SUBCASE("f_{2,2} needs two powers") {
        auto gens = parse_all(amb, {"x^2", "y"});
        Polynomial f = parse_polynomial(amb, "y^2 + x - x^2*z");
        auto cert = membership(amb, gens, Polynomial::constant(amb, FieldElement::one()), f, 3);
        CHECK(cert.exponent == 2);
        CHECK(cert.combiners[0] == parse_polynomial(amb, "x^2*z^2 - 2*y^2*z - 2*x*z + 1"));
        CHECK(cert.combiners[1] == parse_polynomial(amb, "y^3 + 2*x*y"));
        CHECK(cert.verify());
    }
    SUBCASE("non-member raises") {
        auto gens = parse_all(amb, {"x"});
        CHECK_THROWS_AS(membership(amb, gens, parse_polynomial(amb, "y")), Error);
    }
}

TEST_CASE("saturation removes the divisor") {
    auto amb = make_ambient({"x", "y", "z"});
    auto equal_ideals = [&](const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
        auto ga = buchberger(amb, a);
        auto gb2 = buchberger(amb, b);
        for (const auto& p : a)
            if (!gb2.nf(p.with_ambient(gb2.ambient())).is_zero()) return false;
        for (const auto& p : b)
            if (!ga.nf(p.with_ambient(ga.ambient())).is_zero()) return false;
        return true;
    };
    CHECK(equal_ideals(saturation(amb, parse_all(amb, {"x*y"}), parse_polynomial(amb, "x")),
                       parse_all(amb, {"y"})));
    CHECK(equal_ideals(
        saturation(amb, parse_all(amb, {"x*y", "x*z"}), parse_polynomial(amb, "x")),
        parse_all(amb, {"y", "z"})));
    CHECK(equal_ideals(saturation(amb, parse_all(amb, {"x^2 - x"}), parse_polynomial(amb, "x")),
                       parse_all(amb, {"x - 1"})));
}

TEST_CASE("membership agrees with the bounded-combiner oracle") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> expo(0, 2);
    std::uniform_int_distribution<int> ngens(1, 3);
    std::uniform_int_distribution<int> nterms(1, 3);
    auto amb = make_ambient({"x", "y", "z"});
    auto rnd = [&]() {
        std::vector<Term> ts;
        int n = nterms(rng);
        for (int t = 0; t < n; ++t) {
            Monomial m(3);
            for (int v = 0; v < 3; ++v) m[v] = expo(rng);
            ts.push_back({FieldElement(Rational(coef(rng))), std::move(m)});
        }
        return Polynomial::from_terms(amb, std::move(ts));
    };
    int checked = 0;
    for (int round = 0; round < 400 && checked < 200; ++round) {
        std::vector<Polynomial> gens;
        int g = ngens(rng);
        for (int i = 0; i < g; ++i) {
            Polynomial p = rnd();
            if (!p.is_zero()) gens.push_back(p);
        }
        if (gens.empty()) continue;
        Polynomial target = rnd();
        if (target.is_zero()) continue;
        ++checked;
        bool gb_member = buchberger(amb, gens).nf(target.with_ambient(
                             buchberger(amb, gens).ambient())).is_zero();
        if (gb_member) {
            auto cert = membership(amb, gens, target);
            CHECK(cert.verify());
            int32_t bound = 0;
            for (const auto& c : cert.combiners) bound = std::max(bound, c.total_degree());
            CHECK(bounded_combiner_member(amb, gens, target, std::max<int32_t>(bound, 1)));
        } else {
            // oracle at a modest bound must not find a combination either
            CHECK(!bounded_combiner_member(amb, gens, target, 4));
        }
    }
    CHECK(checked == 200);
}

TEST_CASE("buchberger is idempotent on reduced bases") {
    auto amb = make_ambient({"x", "y", "z"}, FieldDesc{}, MonomialOrder::lex());
    auto gb1 = buchberger(amb, parse_all(amb, {"y - x^2", "z - x^3"}));
    auto gb2 = buchberger(gb1.ambient(), gb1.basis());
    CHECK(basis_str(gb1) == basis_str(gb2));
}

TEST_CASE("parallel speculation matches the serial reference byte for byte") {
    auto amb = make_ambient({"x", "y", "z", "w"});
    auto gens = parse_all(amb, {"x*y - z*w", "x^2*w - y*z^2", "y^2*z - x*w^2", "x^3 - y^3 + w^3 - 1"});
    set_worker_count(1);
    auto serial = buchberger(amb, gens);
    auto reference = buchberger_reference(amb, gens);
    CHECK(basis_str(serial) == basis_str(reference));
    std::string serial_str = basis_str(serial);
    std::string serial_cof;
    for (const auto& row : serial.cofactors())
        for (const auto& c : row) serial_cof += c.str() + ";";
    for (int workers : {2, 8}) {
        set_worker_count(workers);
        auto par = buchberger(amb, gens);
        CHECK(basis_str(par) == serial_str);
        std::string cof;
        for (const auto& row : par.cofactors())
            for (const auto& c : row) cof += c.str() + ";";
        CHECK(cof == serial_cof);
    }
    set_worker_count(1);
}

TEST_CASE("zero generators and empty input") {
    auto amb = make_ambient({"x"});
    auto gb = buchberger(amb, parse_all(amb, {"0", "x"}));
    REQUIRE(gb.basis().size() == 1);
    CHECK(gb.verify_cofactors());
    auto empty = buchberger(amb, {});
    CHECK(empty.basis().empty());
    CHECK(empty.nf(parse_polynomial(amb, "x + 1").with_ambient(empty.ambient())) ==
          parse_polynomial(amb, "x + 1").with_ambient(empty.ambient()));
}

TEST_CASE("budget exhaustion raises ResourceBudgetExceeded") {
    auto amb = make_ambient({"x", "y", "z"});
    GbOptions opts{GbBudget{1, 64}};
    bool threw = false;
    try {
        buchberger(amb, parse_all(amb, {"y - x^2", "z - x^3", "x*z - y^2"}), opts);
    } catch (const Error& e) {
        threw = e.kind() == ErrorKind::ResourceBudgetExceeded;
    }
    CHECK(threw);
    GbOptions tight{GbBudget{1'000'000, 3}};
    bool threw_deg = false;
    try {
        buchberger(amb, parse_all(amb, {"x^3*y - z^2", "y^4*z - x", "z^3*x - y^2"}), tight);
    } catch (const Error& e) {
        threw_deg = e.kind() == ErrorKind::ResourceBudgetExceeded;
    }
    CHECK(threw_deg);
}
