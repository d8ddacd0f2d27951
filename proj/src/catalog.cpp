#include "cylab/catalog.hpp"

#include <numeric>

namespace cylab::catalog {

void require_surface_params(int d, int l) {
    if (d < 1 || l < 2)
        fail(ErrorKind::InvalidParameter,
             "surface family needs d >= 1 and l >= 2, got d=" + std::to_string(d) +
                 ", l=" + std::to_string(l));
}

void require_contractible_params(int d, int k, int l) {
    if (d < 2 || l < 2 || l >= k || std::gcd(k, l) != 1)
        fail(ErrorKind::InvalidParameter,
             "contractible family needs d >= 2, 2 <= l < k, gcd(k,l) = 1, got d=" +
                 std::to_string(d) + ", k=" + std::to_string(k) + ", l=" + std::to_string(l));
}

Polynomial defining_poly(const AmbientPtr& amb, int d, int l) {
    size_t x = amb->var_index_checked("x");
    size_t y = amb->var_index_checked("y");
    size_t z = amb->var_index_checked("z");
    Monomial yl(amb->vars.size());
    yl[y] = l;
    Monomial xm(amb->vars.size());
    xm[x] = 1;
    Monomial xdz(amb->vars.size());
    xdz[x] = d;
    xdz[z] = 1;
    return Polynomial::from_terms(amb, {{FieldElement::one(), yl},
                                        {FieldElement::one(), xm},
                                        {FieldElement(Rational(-1)), xdz}});
}

RingPtr open_complement(int d, int l) {
    require_surface_params(d, l);
    AmbientPtr amb = make_ambient({"x", "y", "z"});
    Polynomial f = defining_poly(amb, d, l);
    return PresentedRing::present({"x", "y", "z"}, {}, {{f, "wf"}});
}

RingPtr open_complement_t(int d, int l) {
    require_surface_params(d, l);
    AmbientPtr amb = make_ambient({"x", "y", "z", "t"});
    Polynomial rel = -defining_poly(amb, d, l) + Polynomial::variable(amb, 3);
    return PresentedRing::present({"x", "y", "z", "t"}, {rel},
                                  {{Polynomial::variable(amb, 3), "ti"}});
}

RingPtr fiber_surface(int d, int l) {
    require_surface_params(d, l);
    PresentedRing::Spec spec;
    spec.vars = {"X", "Y", "Z"};
    spec.relations = {"X^" + std::to_string(d) + "*Z - Y^" + std::to_string(l) + " - X + 1"};
    return PresentedRing::present(spec);
}

RingPtr fiber_surface_star(int d, int l) {
    require_surface_params(d, l);
    PresentedRing::Spec spec;
    spec.vars = {"X", "Y", "Z", "u"};
    spec.relations = {"X^" + std::to_string(d) + "*Z - Y^" + std::to_string(l) + " - X + 1"};
    spec.invert = {{"u", "ui"}};
    return PresentedRing::present(spec);
}

RingPtr open_complement_cover(int d, int l) {
    require_surface_params(d, l);
    PresentedRing::Spec spec;
    spec.vars = {"x", "y", "z", "u"};
    spec.relations = {"x^" + std::to_string(d) + "*z - y^" + std::to_string(l) + " - x + u^" +
                      std::to_string(l)};
    spec.invert = {{"u", "ui"}};
    return PresentedRing::present(spec);
}

RingPtr contractible_cylinder(int d, int k, int l) {
    require_contractible_params(d, k, l);
    PresentedRing::Spec spec;
    spec.vars = {"x", "y", "z", "t", "v"};
    spec.relations = {"y^" + std::to_string(l) + " + x - x^" + std::to_string(d) + "*z - t^" +
                      std::to_string(k)};
    return PresentedRing::present(spec);
}

RingPtr affine_four_space() {
    return PresentedRing::present({"x", "y", "z", "v"}, {}, {});
}

Derivation vertical_lnd(const RingPtr& ring, int d, int l) {
    std::map<std::string, std::string> images;
    for (size_t v = 0; v < ring->base_var_count(); ++v) images[ring->vars()[v]] = "0";
    images["y"] = "x^" + std::to_string(d);
    images["z"] = std::to_string(l) + "*y^" + std::to_string(l - 1);
    return Derivation::make(ring, images, "D");
}

Derivation second_lnd(const RingPtr& ring, int l) {
    std::map<std::string, std::string> images;
    for (size_t v = 0; v < ring->base_var_count(); ++v) images[ring->vars()[v]] = "0";
    images["x"] = std::to_string(l) + "*y^" + std::to_string(l - 1);
    images["y"] = "z - 1";
    return Derivation::make(ring, images, "E");
}

Derivation lifted_lnd(const RingPtr& ring, int d, int l) {
    std::map<std::string, std::string> images;
    for (size_t v = 0; v < ring->base_var_count(); ++v) images[ring->vars()[v]] = "0";
    std::string upow = "u^" + std::to_string(l * d - 1);
    images["Y"] = upow + "*X^" + std::to_string(d);
    images["Z"] = std::to_string(l) + "*" + upow + "*Y^" + std::to_string(l - 1);
    return Derivation::make(ring, images, "Dlift");
}

namespace {

std::string u_power(int e) {
    if (e >= 0) return "u^" + std::to_string(e);
    return "ui^" + std::to_string(-e);
}

}  // namespace

RingMap cover_trivialization(const RingPtr& source_cover, const RingPtr& target_star, int d,
                             int l) {
    std::vector<Polynomial> images = {
        target_star->parse(u_power(l) + "*X"),
        target_star->parse("u*Y"),
        target_star->parse(u_power((1 - d) * l) + "*Z"),
        target_star->parse("u"),
        target_star->parse("ui"),
    };
    RingMap f(source_cover, target_star, std::move(images));
    f.verify();
    return f;
}

RingMap cover_trivialization_inverse(const RingPtr& source_star, const RingPtr& target_cover,
                                     int d, int l) {
    std::vector<Polynomial> images = {
        target_cover->parse(u_power(-l) + "*x"),
        target_cover->parse("ui*y"),
        target_cover->parse(u_power((d - 1) * l) + "*z"),
        target_cover->parse("u"),
        target_cover->parse("ui"),
    };
    RingMap f(source_star, target_cover, std::move(images));
    f.verify();
    return f;
}

MonomialGroupAction deck_action_star(const RingPtr& star, int l) {
    MonomialGroupAction a;
    a.order = static_cast<unsigned>(l);
    a.weights.assign(star->vars().size(), 0);
    a.weights[star->ambient()->var_index_checked("Y")] = -1;
    a.weights[star->ambient()->var_index_checked("u")] = 1;
    a.weights[star->ambient()->var_index_checked("ui")] = -1;
    return verify_action(star, a);
}

MonomialGroupAction deck_action_cover(const RingPtr& cover, int l) {
    MonomialGroupAction a;
    a.order = static_cast<unsigned>(l);
    a.weights.assign(cover->vars().size(), 0);
    a.weights[cover->ambient()->var_index_checked("u")] = 1;
    a.weights[cover->ambient()->var_index_checked("ui")] = -1;
    return verify_action(cover, a);
}

RingMap branched_cover(const RingPtr& four_space, const RingPtr& cylinder) {
    std::vector<Polynomial> images;
    for (const auto& name : four_space->vars()) images.push_back(cylinder->var(name));
    RingMap f(four_space, cylinder, std::move(images));
    f.verify();
    return f;
}

}  // namespace cylab::catalog
