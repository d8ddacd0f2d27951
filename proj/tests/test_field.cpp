#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cylab/field.hpp"

using namespace cylab;

namespace {

Rational rnd_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-40, 40);
    std::uniform_int_distribution<long> den(1, 20);
    return Rational(num(rng), static_cast<unsigned long>(den(rng)));
}

}  // namespace

TEST_CASE("rational arithmetic reduces to lowest terms") {
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK((Rational(2, 3) * Rational(9, 4)).str() == "3/2");
    CHECK(Rational(-4, 6).str() == "-2/3");
    CHECK(Rational(0, 7).str() == "0");
    CHECK(Rational::from_string("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("field axioms hold exactly on random rationals") {
    std::mt19937_64 rng(20240611);
    for (int k = 0; k < 1000; ++k) {
        Rational a = rnd_rational(rng), b = rnd_rational(rng), c = rnd_rational(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic_polynomial(2) == std::vector<Rational>{Rational(1), Rational(1)});
    CHECK(cyclotomic_polynomial(3) ==
          std::vector<Rational>{Rational(1), Rational(1), Rational(1)});
    CHECK(cyclotomic_polynomial(4) ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(1)});
    CHECK(cyclotomic_polynomial(6) ==
          std::vector<Rational>{Rational(1), Rational(-1), Rational(1)});
    CHECK(cyclotomic_polynomial(8) ==
          std::vector<Rational>{Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)});
    CHECK(euler_phi(12) == 4);
}

TEST_CASE("roots of unity reduce eagerly") {
    // zeta_2 is rational
    CHECK(FieldElement::root_of_unity(2, 1) == FieldElement(Rational(-1)));
    CHECK(FieldElement::root_of_unity(2, 1) * FieldElement::root_of_unity(2, 1) ==
          FieldElement::one());
    // zeta_4^2 reduces to -1
    CHECK(FieldElement::root_of_unity(4, 2) == FieldElement(Rational(-1)));
    // zeta_3^3 = 1
    CHECK(FieldElement::root_of_unity(3, 3) == FieldElement::one());
    // zeta_3^2 + zeta_3 = -1 modulo x^2 + x + 1
    FieldElement z = FieldElement::root_of_unity(3, 1);
    CHECK(z * z + z == FieldElement(Rational(-1)));
    CHECK(FieldElement::root_of_unity(3, -1) == z * z);
}

TEST_CASE("root_of_unity^l = 1 for all small orders") {
    for (unsigned l = 1; l <= 8; ++l) {
        for (unsigned k = 0; k < l; ++k) {
            FieldElement z = FieldElement::root_of_unity(l, static_cast<long>(k));
            FieldElement p = FieldElement::one();
            for (unsigned i = 0; i < l; ++i) p = p * z;
            CHECK(p == FieldElement::one());
            CHECK(z == FieldElement::root_of_unity(l, static_cast<long>(k + l)));
        }
    }
}

TEST_CASE("cyclotomic inverses") {
    std::mt19937_64 rng(7);
    for (unsigned l : {3u, 4u, 5u, 6u, 7u, 8u}) {
        for (int t = 0; t < 20; ++t) {
            std::vector<Rational> cs(euler_phi(l));
            for (auto& c : cs) c = rnd_rational(rng);
            FieldElement e{Cyclotomic(l, cs)};
            if (e.is_zero()) continue;
            CHECK(e * e.inverse() == FieldElement::one());
        }
    }
}

TEST_CASE("canonical encodings are unique") {
    FieldElement a = FieldElement::root_of_unity(3, 1) + FieldElement(Rational(1, 2));
    FieldElement b = FieldElement(Rational(1, 2)) + FieldElement::root_of_unity(3, 1);
    CHECK(a == b);
    CHECK(a.str() == b.str());
    CHECK(a.str() == "zeta + 1/2");
    FieldElement c = -FieldElement::root_of_unity(5, 2);
    CHECK(c.str() == "-zeta^2");
}
