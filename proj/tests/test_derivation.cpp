#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylab/catalog.hpp"
#include "cylab/derivation.hpp"

using namespace cylab;

TEST_CASE("well-definedness and forced inverse images") {
    SUBCASE("vertical derivation kills the localized element") {
        for (int d = 1; d <= 3; ++d) {
            for (int l = 2; l <= 3; ++l) {
                RingPtr U = catalog::open_complement(d, l);
                Derivation D = catalog::vertical_lnd(U, d, l);
                // D(f) = 0 exactly, so the inverse variable is constant
                size_t wf = U->ambient()->var_index_checked("wf");
                CHECK(D.images()[wf].is_zero());
                Polynomial f = catalog::defining_poly(U->ambient(), d, l);
                CHECK(D.apply(f).is_zero());
            }
        }
    }
    SUBCASE("zero derivation always works") {
        RingPtr U = catalog::open_complement(1, 2);
        CHECK(Derivation::zero(U).is_zero());
    }
    SUBCASE("breaking a relation is caught with the residual") {
        RingPtr r = present_ring({"x", "y"}, {"y^2"});
        bool threw = false;
        try {
            Derivation::make(r, {{"x", "0"}, {"y", "1"}});
        } catch (const Error& e) {
            threw = e.kind() == ErrorKind::NotWellDefined && e.detail() == "2*y";
        }
        CHECK(threw);
    }
    SUBCASE("forced image on a non-kernel localization") {
        // inverting y against d/dy forces D(w) = -w^2
        RingPtr r = present_ring({"x", "y"}, {}, {{"y", "wy"}});
        Derivation D = Derivation::make(r, {{"x", "0"}, {"y", "1"}});
        size_t wy = r->ambient()->var_index_checked("wy");
        CHECK(D.images()[wy] == r->parse("-wy^2"));
    }
}

TEST_CASE("Leibniz rule holds for catalog derivations on random pairs") {
    RingPtr U = catalog::open_complement(2, 2);
    Derivation D = catalog::vertical_lnd(U, 2, 2);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::uniform_int_distribution<int> expo(0, 2);
    auto rnd = [&]() {
        std::vector<Term> ts;
        for (int t = 0; t < 3; ++t) {
            Monomial m(U->vars().size());
            for (size_t v = 0; v < U->vars().size(); ++v) m[v] = expo(rng);
            ts.push_back({FieldElement(Rational(coef(rng))), std::move(m)});
        }
        return Polynomial::from_terms(U->ambient(), std::move(ts));
    };
    for (int k = 0; k < 100; ++k) {
        Polynomial p = rnd(), q = rnd();
        Polynomial lhs = D.apply(p * q);
        Polynomial rhs = U->nf(D.apply(p) * q + p * D.apply(q));
        CHECK(U->equal(lhs, rhs));
    }
}

TEST_CASE("nilpotency chains") {
    SUBCASE("vertical derivation chain shapes") {
        for (int d = 1; d <= 3; ++d) {
            for (int l = 2; l <= 3; ++l) {
                RingPtr U = catalog::open_complement(d, l);
                Derivation D = catalog::vertical_lnd(U, d, l);
                auto cert = check_locally_nilpotent(D);
                size_t y = U->ambient()->var_index_checked("y");
                size_t z = U->ambient()->var_index_checked("z");
                CHECK(cert.chain_length(y) == 2);
                CHECK(cert.chain_length(z) == static_cast<size_t>(l + 1));
                // D^l(z) = l! x^{d(l-1)}
                Polynomial expected =
                    U->parse(std::to_string(l == 2 ? 2 : 6) + "*x^" + std::to_string(d * (l - 1)));
                CHECK(cert.chains[z].back() == expected);
            }
        }
    }
    SUBCASE("specific chain for d=1, l=2") {
        RingPtr U = catalog::open_complement(1, 2);
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        auto cert = check_locally_nilpotent(D);
        size_t z = U->ambient()->var_index_checked("z");
        CHECK(cert.chains[z][1] == U->parse("2*y"));
        CHECK(cert.chains[z][2] == U->parse("2*x"));
    }
    SUBCASE("zero derivation has unit chains") {
        RingPtr U = catalog::open_complement(1, 2);
        auto cert = check_locally_nilpotent(Derivation::zero(U));
        for (size_t v = 0; v < U->vars().size(); ++v) CHECK(cert.chain_length(v) == 1);
    }
    SUBCASE("non-nilpotent derivation exceeds any bound") {
        RingPtr line = present_ring({"y"});
        Derivation D = Derivation::make(line, {{"y", "y"}});
        bool threw = false;
        try {
            check_locally_nilpotent(D, 10);
        } catch (const Error& e) {
            threw = e.kind() == ErrorKind::BoundExceeded && e.detail() == "y";
        }
        CHECK(threw);
    }
    SUBCASE("chains are reproducible") {
        RingPtr U = catalog::open_complement(2, 3);
        Derivation D = catalog::vertical_lnd(U, 2, 3);
        auto c1 = check_locally_nilpotent(D);
        auto c2 = check_locally_nilpotent(D);
        REQUIRE(c1.chains.size() == c2.chains.size());
        for (size_t v = 0; v < c1.chains.size(); ++v) {
            REQUIRE(c1.chains[v].size() == c2.chains[v].size());
            for (size_t k = 0; k < c1.chains[v].size(); ++k)
                CHECK(c1.chains[v][k].str() == c2.chains[v][k].str());
        }
    }
}

TEST_CASE("exponentials") {
    SUBCASE("worked example d=1, l=2") {
        RingPtr U = catalog::open_complement(1, 2);
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        auto cert = check_locally_nilpotent(D);
        auto ep = exponential(D, cert);
        size_t y = U->ambient()->var_index_checked("y");
        size_t z = U->ambient()->var_index_checked("z");
        CHECK(ep.map.images()[y] == ep.cylinder->parse("y + x*w"));
        CHECK(ep.map.images()[z] == ep.cylinder->parse("z + 2*y*w + x*w^2"));
        CHECK(exponential_round_trip(D, cert));
    }
    SUBCASE("translation") {
        RingPtr plane = present_ring({"x", "y"});
        Derivation D = Derivation::make(plane, {{"x", "0"}, {"y", "1"}});
        auto cert = check_locally_nilpotent(D);
        auto ep = exponential(D, cert);
        CHECK(ep.map.images()[1] == ep.cylinder->parse("y + w"));
        CHECK(exponential_round_trip(D, cert));
    }
    SUBCASE("zero derivation gives the identity co-action") {
        RingPtr plane = present_ring({"x", "y"});
        auto D = Derivation::zero(plane);
        auto cert = check_locally_nilpotent(D);
        auto ep = exponential(D, cert);
        for (size_t v = 0; v < plane->vars().size(); ++v)
            CHECK(ep.map.images()[v] == ep.cylinder->var(v));
    }
    SUBCASE("co-associativity on generators") {
        RingPtr U = catalog::open_complement(1, 2);
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        auto cert = check_locally_nilpotent(D);
        auto ep = exponential(D, cert);
        // extend exp to the cylinder fixing w, apply with a second parameter
        RingPtr cyl2 = PresentedRing::tensor_with_polynomial_line(ep.cylinder, "w'");
        std::vector<Polynomial> step;
        for (size_t v = 0; v < U->vars().size(); ++v) {
            Polynomial im = ep.map.images()[v];
            // rename w -> w' and keep ring generators
            std::vector<Polynomial> sub;
            for (size_t u = 0; u < U->vars().size(); ++u) sub.push_back(cyl2->var(u));
            sub.push_back(cyl2->var("w'"));
            step.push_back(im.substitute(sub));
        }
        // now substitute the first exponential into the second
        std::vector<Polynomial> first;
        for (size_t u = 0; u < U->vars().size(); ++u) {
            std::vector<Polynomial> lift;
            for (size_t s = 0; s < ep.cylinder->vars().size(); ++s) lift.push_back(cyl2->var(s));
            first.push_back(ep.map.images()[u].substitute(lift));
        }
        first.push_back(cyl2->var("w'"));
        // composite: v -> exp_{w'}(exp_w(v)); compare with exp at w + w'
        for (size_t v = 0; v < U->vars().size(); ++v) {
            std::vector<Polynomial> sub2;
            for (size_t u = 0; u < U->vars().size(); ++u) sub2.push_back(step[u]);
            sub2.push_back(cyl2->parse("w"));  // w stays w inside images
            Polynomial lhs = ep.map.images()[v].substitute(sub2);
            std::vector<Polynomial> sum_sub;
            for (size_t u = 0; u < U->vars().size(); ++u) sum_sub.push_back(cyl2->var(u));
            sum_sub.push_back(cyl2->parse("w + w'"));
            Polynomial rhs = ep.map.images()[v].substitute(sum_sub);
            CHECK(cyl2->equal(lhs, rhs));
        }
    }
}

TEST_CASE("kernel membership") {
    RingPtr U = catalog::open_complement(2, 2);
    Derivation D = catalog::vertical_lnd(U, 2, 2);
    CHECK(kernel_member(D, catalog::defining_poly(U->ambient(), 2, 2)).member);
    CHECK(kernel_member(D, U->parse("x")).member);
    auto ev = kernel_member(D, U->parse("y"));
    CHECK(!ev.member);
    CHECK(ev.evidence == U->parse("x^2"));

    RingPtr Ut = catalog::open_complement_t(1, 2);
    Derivation Dt = catalog::vertical_lnd(Ut, 1, 2);
    CHECK(kernel_member(Dt, Ut->parse("x")).member);
    CHECK(kernel_member(Dt, Ut->parse("t")).member);
    // the defining polynomial reduces to the inverted parameter
    CHECK(Ut->equal(catalog::defining_poly(Ut->ambient(), 1, 2), Ut->parse("t")));
}

TEST_CASE("slice search") {
    SUBCASE("translation slice") {
        RingPtr plane = present_ring({"x", "y"});
        Derivation D = Derivation::make(plane, {{"x", "0"}, {"y", "1"}});
        Slice s = find_slice(D, 4);
        CHECK(s.element == plane->parse("y"));
        CHECK(s.evidence.is_zero());
    }
    SUBCASE("chart slice after inverting x") {
        for (int d = 1; d <= 2; ++d) {
            RingPtr Ux = present_ring(
                {"x", "y", "z"}, {},
                {{"y^2 + x - x^" + std::to_string(d) + "*z", "wf"}, {"x", "xi"}});
            Derivation D = catalog::vertical_lnd(Ux, d, 2);
            Slice s = find_slice(D, 4);
            CHECK(s.element == Ux->parse("y*xi^" + std::to_string(d)));
        }
    }
    SUBCASE("no global slice without inverting x") {
        RingPtr U = catalog::open_complement(1, 2);
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        bool threw = false;
        try {
            find_slice(D, 6);
        } catch (const Error& e) {
            threw = e.kind() == ErrorKind::NoSliceWithinBound;
        }
        CHECK(threw);
    }
    SUBCASE("zero derivation has no slice") {
        RingPtr plane = present_ring({"x"});
        CHECK_THROWS_AS(find_slice(Derivation::zero(plane), 3), Error);
    }
}

TEST_CASE("Dixmier trivialization") {
    SUBCASE("translation on the plane") {
        RingPtr plane = present_ring({"x", "y"});
        Derivation D = Derivation::make(plane, {{"x", "0"}, {"y", "1"}});
        auto cert = check_locally_nilpotent(D);
        Slice s = find_slice(D, 2);
        auto triv = dixmier_trivialize(D, cert, s);
        REQUIRE(triv.kernel->vars().size() == 1);
        CHECK(triv.inclusion.images()[0] == plane->parse("x"));
        CHECK(triv.kernel->relations().empty());
        // iso plane ~ K[w]
        for (const auto& r : triv.trivialization.iso.source_residuals) CHECK(r.is_zero());
    }
    SUBCASE("localized threefold trivializes over the chart") {
        RingPtr Ux = present_ring({"x", "y", "z"}, {}, {{"y^2 + x - x*z", "wf"}, {"x", "xi"}});
        Derivation D = catalog::vertical_lnd(Ux, 1, 2);
        auto cert = check_locally_nilpotent(D);
        Slice s = find_slice(D, 4);
        auto triv = dixmier_trivialize(D, cert, s);
        // pi(z) = z - y^2/x
        size_t z = Ux->ambient()->var_index_checked("z");
        CHECK(triv.kernel_generators[z] == Ux->parse("z - y^2*xi"));
        for (const auto& k : triv.kernel_generators) CHECK(kernel_member(D, k).member);
        for (const auto& r : triv.trivialization.iso.source_residuals) CHECK(r.is_zero());
        for (const auto& r : triv.trivialization.iso.target_residuals) CHECK(r.is_zero());
    }
}

TEST_CASE("fixed point freeness") {
    SUBCASE("worked saturation exponents") {
        for (int d = 1; d <= 3; ++d) {
            RingPtr U = catalog::open_complement(d, 2);
            Derivation D = catalog::vertical_lnd(U, d, 2);
            auto cert = fixed_point_free(D);
            CHECK(cert.exponent == static_cast<unsigned>(d));
            CHECK(cert.verify());
        }
    }
    SUBCASE("translation is immediately free") {
        RingPtr plane = present_ring({"x", "y"});
        Derivation D = Derivation::make(plane, {{"x", "0"}, {"y", "1"}});
        auto cert = fixed_point_free(D);
        CHECK(cert.exponent == 0);
        CHECK(cert.verify());
    }
    SUBCASE("derivation with a fixed locus is rejected") {
        RingPtr plane = present_ring({"x", "y"});
        Derivation D = Derivation::make(plane, {{"x", "0"}, {"y", "x"}});
        bool threw = false;
        try {
            fixed_point_free(D);
        } catch (const Error& e) {
            threw = e.kind() == ErrorKind::NotFixedPointFree;
        }
        CHECK(threw);
    }
}

TEST_CASE("lifting through a branched cover") {
    RingPtr A4 = catalog::affine_four_space();
    RingPtr X = catalog::contractible_cylinder(2, 3, 2);
    RingMap p = catalog::branched_cover(A4, X);
    SUBCASE("zero lifts to zero") {
        auto lift = lift_through_cover(Derivation::zero(A4), p, {"t"});
        CHECK(lift.derivation.is_zero());
    }
    SUBCASE("kernel condition is necessary") {
        // d/dy does not kill f_{2,2}, so the relation cannot be preserved
        Derivation D = Derivation::make(A4, {{"x", "0"}, {"y", "1"}, {"z", "0"}, {"v", "0"}});
        bool threw = false;
        try {
            lift_through_cover(D, p, {"t"});
        } catch (const Error& e) {
            threw = e.kind() == ErrorKind::NotWellDefined;
        }
        CHECK(threw);
    }
    SUBCASE("a derivation killing f lifts with t -> 0") {
        // x^2 d/dy + 2y d/dz on the ambient four-space kills f_{2,2}
        Derivation D =
            Derivation::make(A4, {{"x", "0"}, {"y", "x^2"}, {"z", "2*y"}, {"v", "0"}});
        auto lift = lift_through_cover(D, p, {"t"});
        size_t t = X->ambient()->var_index_checked("t");
        CHECK(lift.derivation.images()[t].is_zero());
        CHECK(lift.certificate.chains.size() == X->vars().size());
    }
}

TEST_CASE("transport through an isomorphism") {
    RingPtr line = present_ring({"x"});
    SUBCASE("identity transport is the identity") {
        RingPtr U = catalog::open_complement(1, 2);
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        auto iso = verify_iso(RingMap::identity(U), RingMap::identity(U));
        Derivation T = transport_derivation(iso, D);
        for (size_t v = 0; v < U->vars().size(); ++v)
            CHECK(U->equal(T.images()[v], D.images()[v]));
    }
    SUBCASE("transport along a shift") {
        RingMap fwd(line, line, {line->parse("x + 1")});
        RingMap bwd(line, line, {line->parse("x - 1")});
        auto iso = verify_iso(fwd, bwd);
        Derivation D = Derivation::make(line, {{"x", "x"}});  // x d/dx
        Derivation T = transport_derivation(iso, D);
        CHECK(T.images()[0] == line->parse("x + 1"));
    }
    SUBCASE("zero transports to zero") {
        auto iso = verify_iso(RingMap::identity(line), RingMap::identity(line));
        CHECK(transport_derivation(iso, Derivation::zero(line)).is_zero());
    }
}

TEST_CASE("clearing denominators") {
    RingPtr U = catalog::open_complement(1, 2);
    SUBCASE("polynomial images need no clearing") {
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        auto cleared = clear_denominators(D, catalog::defining_poly(U->ambient(), 1, 2));
        CHECK(cleared.exponent == 0);
        CHECK(cleared.derivation.ring()->vars() == std::vector<std::string>{"x", "y", "z"});
    }
    SUBCASE("inverse powers are cleared by the matching power of f") {
        Polynomial f = catalog::defining_poly(U->ambient(), 1, 2);
        // scale the vertical derivation by wf^2
        Derivation D = Derivation::make(
            U, {{"x", "0"}, {"y", "x*wf^2"}, {"z", "2*y*wf^2"}});
        auto cleared = clear_denominators(D, f);
        CHECK(cleared.exponent == 2);
        size_t y = cleared.derivation.ring()->ambient()->var_index_checked("y");
        CHECK(cleared.derivation.images()[y] ==
              cleared.derivation.ring()->parse("x"));
    }
    SUBCASE("clearing element must lie in the kernel") {
        Derivation D = catalog::vertical_lnd(U, 1, 2);
        CHECK_THROWS_AS(clear_denominators(D, U->parse("y")), Error);
    }
}

TEST_CASE("equivariance of the lifted derivation") {
    for (int d = 1; d <= 2; ++d) {
        for (int l = 2; l <= 3; ++l) {
            RingPtr star = catalog::fiber_surface_star(d, l);
            Derivation D = catalog::lifted_lnd(star, d, l);
            auto act = catalog::deck_action_star(star, l);
            CHECK_NOTHROW(equivariance_check_derivation(D, act));
        }
    }
    // a derivation with the wrong u-power is not equivariant
    RingPtr star = catalog::fiber_surface_star(1, 3);
    auto act = catalog::deck_action_star(star, 3);
    Derivation bad = Derivation::make(
        star, {{"X", "0"}, {"Y", "u*X"}, {"Z", "3*u*Y^2"}, {"u", "0"}});
    bool threw = false;
    try {
        equivariance_check_derivation(bad, act);
    } catch (const Error& e) {
        threw = e.kind() == ErrorKind::NotEquivariant;
    }
    CHECK(threw);
}
