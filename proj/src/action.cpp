#include "cylab/action.hpp"

#include <algorithm>

namespace cylab {

namespace {

// Normal form against the ring's relations with scalars extended to contain
// zeta_l. A reduced basis over Q stays reduced over the extension, so the
// lifted basis can be reused as-is.
struct ExtendedRing {
    AmbientPtr amb;
    GroebnerBasis gb;

    ExtendedRing(const RingPtr& ring, unsigned l) {
        FieldDesc field = ring->ambient()->field;
        if (l > 2 && field.is_rational()) field = FieldDesc{l};
        else if (l > 2 && field.cyclo_order != l)
            fail(ErrorKind::FieldMismatch, "action order does not match the ring's field");
        amb = make_ambient(ring->ambient()->vars, field, ring->ambient()->order);
        std::vector<Polynomial> basis;
        std::vector<GroebnerBasis::Node> nodes;
        std::vector<size_t> basis_nodes;
        for (size_t k = 0; k < ring->basis().basis().size(); ++k) {
            basis.push_back(ring->basis().basis()[k].with_field(amb));
            GroebnerBasis::Node n;
            n.input = static_cast<long>(k);
            nodes.push_back(std::move(n));
            basis_nodes.push_back(k);
        }
        gb = GroebnerBasis::assemble(amb, basis, basis, std::move(nodes), std::move(basis_nodes));
    }

    Polynomial lift(const Polynomial& p) const { return p.with_field(amb); }
};

}  // namespace

Polynomial apply_action(const MonomialGroupAction& action, const Polynomial& p, long k) {
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const auto& t : p.terms()) {
        FieldElement scale = FieldElement::root_of_unity(
            action.order, k * static_cast<long>(action.twist_of(t.mono)));
        out.push_back({t.coeff * scale, t.mono});
    }
    return Polynomial::from_terms(p.ambient(), std::move(out));
}

Polynomial twist_component(const MonomialGroupAction& action, const Polynomial& p, int twist) {
    std::vector<Term> out;
    for (const auto& t : p.terms())
        if (action.twist_of(t.mono) == twist) out.push_back(t);
    return Polynomial::from_terms(p.ambient(), std::move(out));
}

MonomialGroupAction verify_action(const RingPtr& ring, MonomialGroupAction action,
                                  const GbOptions& opts) {
    (void)opts;
    if (action.weights.size() != ring->vars().size())
        fail(ErrorKind::InvalidParameter, "action needs one weight per ring variable");
    if (action.order < 1) fail(ErrorKind::InvalidParameter, "action order must be positive");
    ExtendedRing ext(ring, action.order);
    for (const auto& rel : ring->relations()) {
        Polynomial twisted = apply_action(action, ext.lift(rel));
        Polynomial residual = ext.gb.nf(twisted);
        if (!residual.is_zero())
            fail(ErrorKind::RelationNotPreserved,
                 "action does not fix the ideal at relation " + rel.str(), residual.str());
    }
    action.verified = true;
    return action;
}

void equivariance_check_map(const RingMap& f, const MonomialGroupAction& source_action,
                            const MonomialGroupAction& target_action, const GbOptions& opts) {
    (void)opts;
    if (!source_action.verified || !target_action.verified)
        fail(ErrorKind::InvalidParameter, "equivariance check needs verified actions");
    ExtendedRing ext(f.target(), target_action.order);
    for (size_t v = 0; v < f.source()->vars().size(); ++v) {
        // f(sigma(v)) = zeta^{w_v} f(v), compare with sigma(f(v))
        Polynomial image = ext.lift(f.images()[v]);
        Polynomial lhs = image.scaled(
            FieldElement::root_of_unity(source_action.order, source_action.weights[v]));
        Polynomial rhs = apply_action(target_action, image);
        Polynomial residual = ext.gb.nf(lhs - rhs);
        if (!residual.is_zero())
            fail(ErrorKind::NotEquivariant,
                 "generator " + f.source()->vars()[v] + " breaks equivariance", residual.str());
    }
}

InvariantSubring invariant_subring(const RingPtr& ring, const MonomialGroupAction& action,
                                   int32_t degree_bound, const GbOptions& opts) {
    if (!action.verified)
        fail(ErrorKind::InvalidParameter, "invariant subring needs a verified action");
    if (degree_bound < static_cast<int32_t>(action.order))
        fail(ErrorKind::BoundTooSmall,
             "degree bound below the group order cannot be complete");
    // twist-zero monomials by increasing degree; skip ones that already
    // reduce and ones divisible by an accepted generator (their quotient is
    // again twist-zero of lower degree, hence covered)
    std::vector<Monomial> accepted;
    for (const auto& m : monomials_up_to(ring->ambient(), degree_bound)) {
        if (action.twist_of(m) != 0) continue;
        Polynomial pm = Polynomial::monomial(ring->ambient(), FieldElement::one(), m);
        if (!(ring->nf(pm) == pm)) continue;
        bool reducible = false;
        for (const auto& g : accepted)
            if (g.divides(m)) {
                reducible = true;
                break;
            }
        if (!reducible) accepted.push_back(m);
    }
    InvariantSubring out;
    for (const auto& m : accepted)
        out.generators.push_back(Polynomial::monomial(ring->ambient(), FieldElement::one(), m));
    for (size_t k = 0; k < accepted.size(); ++k) out.names.push_back("g" + std::to_string(k + 1));

    // present the subring: eliminate the big ring's variables from the graph
    // ideal relations + (g_k - m_k)
    std::vector<std::string> vars = ring->vars();
    std::vector<std::string> gnames;
    for (const auto& n : out.names) {
        std::string fixed = n;
        while (std::find(vars.begin(), vars.end(), fixed) != vars.end()) fixed += "'";
        gnames.push_back(fixed);
        vars.push_back(fixed);
    }
    AmbientPtr combined = make_ambient(vars, ring->ambient()->field, MonomialOrder::grevlex());
    size_t nbig = ring->vars().size();
    std::vector<size_t> embed(nbig);
    for (size_t v = 0; v < nbig; ++v) embed[v] = v;
    std::vector<Polynomial> gens;
    for (const auto& r : ring->relations()) gens.push_back(r.mapped_vars(combined, embed));
    for (size_t k = 0; k < accepted.size(); ++k)
        gens.push_back(Polynomial::variable(combined, nbig + k) -
                       out.generators[k].mapped_vars(combined, embed));
    std::vector<size_t> elim(nbig);
    for (size_t v = 0; v < nbig; ++v) elim[v] = v;
    EliminationResult er = eliminate(combined, gens, elim, opts);

    AmbientPtr sub = make_ambient(gnames, ring->ambient()->field, MonomialOrder::grevlex());
    std::vector<Polynomial> sub_rels;
    for (const auto& b : er.eliminated) {
        std::vector<Term> ts;
        for (const auto& t : b.terms()) {
            Monomial m(gnames.size());
            for (size_t k = 0; k < gnames.size(); ++k) m[k] = t.mono[nbig + k];
            ts.push_back({t.coeff, std::move(m)});
        }
        sub_rels.push_back(Polynomial::from_terms(sub, std::move(ts)));
    }
    out.ring = PresentedRing::present(gnames, sub_rels, {}, ring->ambient()->field,
                                      MonomialOrder::grevlex(), opts);
    out.inclusion = RingMap(out.ring, ring, out.generators);
    out.inclusion.verify();
    out.names = gnames;
    out.solver = std::make_shared<SubalgebraSolver>(out.inclusion, opts);
    return out;
}

}  // namespace cylab
