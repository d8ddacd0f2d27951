#include "cylab/torsor.hpp"

#include <algorithm>

#include "cylab/action.hpp"
#include "cylab/linalg.hpp"
#include "cylab/parallel.hpp"

namespace cylab {

namespace {

Polynomial exact_div_power(const Polynomial& p, size_t var, int32_t j) {
    std::vector<Term> out;
    for (const auto& t : p.terms()) {
        if (t.mono[var] < j)
            fail(ErrorKind::MatchingSearchExhausted,
                 "derivative is not divisible by the matching divisor: " + p.str());
        Term d{t.coeff, t.mono};
        d.mono[var] -= j;
        out.push_back(std::move(d));
    }
    return Polynomial::from_terms(p.ambient(), std::move(out));
}

// One divided variable: name, the variable it divides, the matching
// polynomial and the division depth. Relation: divisor^depth * name =
// target - q.
struct DividedVar {
    std::string name;
    std::string target;
    std::string q;  // canonical text, parsed in the current carrier ambient
    int32_t depth;
};

struct CarrierBuild {
    RingPtr W;
    std::vector<std::string> vars;
    std::vector<size_t> a1_to_w, a2_to_w;
    size_t divisor_index = 0;
};

CarrierBuild rebuild_carrier(const RingPtr& A1, const RingPtr& A2, const MatchingData& m,
                             const std::vector<DividedVar>& divided, const GbOptions& opts) {
    CarrierBuild out;
    const auto& v1 = A1->vars();
    const auto& v2 = A2->vars();
    out.vars = v1;
    out.a1_to_w.resize(v1.size());
    for (size_t i = 0; i < v1.size(); ++i) out.a1_to_w[i] = i;
    out.a2_to_w.assign(v2.size(), 0);
    for (size_t j = 0; j < v2.size(); ++j) {
        const std::string& name = v2[j];
        auto shared = std::find_if(m.shared.begin(), m.shared.end(),
                                   [&](const auto& p) { return p.first == name; });
        if (shared != m.shared.end()) {
            out.a2_to_w[j] = A1->ambient()->var_index_checked(shared->second);
            continue;
        }
        if (std::find(out.vars.begin(), out.vars.end(), name) != out.vars.end())
            fail(ErrorKind::VariableClash,
                 "second-side variable '" + name + "' clashes with the first side");
        out.a2_to_w[j] = out.vars.size();
        out.vars.push_back(name);
    }
    for (const auto& dv : divided) out.vars.push_back(dv.name);

    AmbientPtr amb = make_ambient(out.vars, A1->ambient()->field, MonomialOrder::grevlex());
    out.divisor_index = amb->var_index_checked(m.divisor);
    std::vector<Polynomial> rels;
    for (const auto& r : A1->relations()) rels.push_back(r.mapped_vars(amb, out.a1_to_w));
    for (const auto& r : A2->relations()) rels.push_back(r.mapped_vars(amb, out.a2_to_w));
    for (const auto& dv : divided) {
        Polynomial div = Polynomial::variable(amb, out.divisor_index).pow(dv.depth);
        Polynomial rel = div * Polynomial::variable(amb, amb->var_index_checked(dv.name)) -
                         Polynomial::variable(amb, amb->var_index_checked(dv.target)) +
                         parse_polynomial(amb, dv.q);
        rels.push_back(rel);
    }
    // saturating by the divisor removes the mismatched-branch components and
    // adds every relation forced by the divided variables
    std::vector<Polynomial> sat =
        saturation(amb, rels, Polynomial::variable(amb, out.divisor_index), opts);
    out.W = PresentedRing::present(out.vars, sat, {}, amb->field, MonomialOrder::grevlex(), opts);
    return out;
}

// q with target = q mod (ideal + divisor^depth), q supported on the allowed
// variables up to the degree cap; deterministic.
std::optional<Polynomial> solve_congruence(const RingPtr& W, size_t divisor, int32_t depth,
                                           size_t target, const std::vector<char>& allowed,
                                           int32_t degree_cap, const GbOptions& opts) {
    const AmbientPtr& amb = W->ambient();
    std::vector<Polynomial> gens = W->relations();
    gens.push_back(Polynomial::variable(amb, divisor).pow(depth));
    GroebnerBasis gb = buchberger(amb, gens, opts);
    Polynomial rhs = gb.nf(Polynomial::variable(amb, target));
    std::vector<Monomial> cols{Monomial(amb->vars.size())};
    for (const auto& mono : monomials_up_to(amb, degree_cap)) {
        bool ok = true;
        for (size_t v = 0; v < amb->vars.size() && ok; ++v)
            if (mono[v] != 0 && !allowed[v]) ok = false;
        if (ok) cols.push_back(mono);
    }
    std::vector<Polynomial> ncols(cols.size());
    std::vector<std::exception_ptr> errs(cols.size());
    parallel_for(cols.size(), [&](size_t i) {
        try {
            ncols[i] = gb.nf(Polynomial::monomial(amb, FieldElement::one(), cols[i]));
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    std::map<Monomial, size_t> rows;
    auto row_of = [&](const Monomial& mn) { return rows.emplace(mn, rows.size()).first->second; };
    for (const auto& t : rhs.terms()) row_of(t.mono);
    for (const auto& nc : ncols)
        for (const auto& t : nc.terms()) row_of(t.mono);
    LinearSystem sys(rows.size(), cols.size());
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& t : ncols[c].terms()) sys.add(row_of(t.mono), c, t.coeff);
    for (const auto& t : rhs.terms()) sys.set_rhs(row_of(t.mono), t.coeff);
    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    Polynomial q = Polynomial::zero(amb);
    for (size_t c = 0; c < cols.size(); ++c)
        if (!(*sol)[c].is_zero())
            q = q + Polynomial::monomial(amb, (*sol)[c], cols[c]);
    return q;
}

}  // namespace

FiberCarrier matched_fiber_product(const RingPtr& A1, const Derivation& D1, const RingPtr& A2,
                                   const Derivation& D2, const MatchingData& matching,
                                   const GbOptions& opts) {
    if (D1.ring()->canonical_key() != A1->canonical_key() ||
        D2.ring()->canonical_key() != A2->canonical_key())
        fail(ErrorKind::InvalidParameter, "derivations must live on the matched rings");
    if (!(A1->ambient()->field == A2->ambient()->field))
        fail(ErrorKind::FieldMismatch, "matched rings must share one coefficient field");
    // shared base variables must be horizontal for both structures
    for (const auto& [n2, n1] : matching.shared) {
        if (!D1.images()[A1->ambient()->var_index_checked(n1)].is_zero())
            fail(ErrorKind::InvalidParameter, "shared variable " + n1 + " is not horizontal");
        if (!D2.images()[A2->ambient()->var_index_checked(n2)].is_zero())
            fail(ErrorKind::InvalidParameter, "shared variable " + n2 + " is not horizontal");
    }

    // seed one divided variable per branch pair at depth one
    std::vector<DividedVar> divided;
    auto fresh = [&](const std::vector<std::string>& vars) {
        for (int k = 1;; ++k) {
            std::string n = "m" + std::to_string(k);
            if (std::find(vars.begin(), vars.end(), n) == vars.end()) {
                bool taken = false;
                for (const auto& dv : divided) taken = taken || dv.name == n;
                if (!taken) return n;
            }
        }
    };
    if (!D1.images()[A1->ambient()->var_index_checked(matching.divisor)].is_zero())
        fail(ErrorKind::InvalidParameter, "divisor variable is not horizontal");
    {
        std::vector<std::string> all = A1->vars();
        for (const auto& v : A2->vars()) all.push_back(v);
        for (const auto& [v2, expr1] : matching.branch) {
            Polynomial q = parse_polynomial(A1->ambient(), expr1);
            divided.push_back({fresh(all), v2, q.str(), 1});
        }
    }
    CarrierBuild build = rebuild_carrier(A1, A2, matching, divided, opts);

    // deepening rounds: push each movable coordinate one divisor power
    // further while the congruence stays solvable with a genuinely new
    // quotient; the carrier stays self-certifying either way
    struct Target {
        std::string name;
        int32_t depth;
        bool done = false;
    };
    std::vector<Target> targets;
    for (const auto& dv : divided) targets.push_back({dv.target, dv.depth, false});
    for (size_t j = 0; j < A2->vars().size(); ++j) {
        const std::string& name = A2->vars()[j];
        bool is_shared = std::any_of(matching.shared.begin(), matching.shared.end(),
                                     [&](const auto& p) { return p.first == name; });
        bool is_branch = std::any_of(matching.branch.begin(), matching.branch.end(),
                                     [&](const auto& p) { return p.first == name; });
        if (!is_shared && !is_branch) targets.push_back({name, 0, false});
    }
    int32_t probe_cap = std::min<int32_t>(matching.degree_bound, 4);
    for (int32_t round = 0; round < matching.depth_bound; ++round) {
        bool changed = false;
        for (auto& tg : targets) {
            if (tg.done) continue;
            const AmbientPtr& amb = build.W->ambient();
            std::vector<char> allowed(amb->vars.size(), 1);
            for (size_t j = 0; j < A2->vars().size(); ++j) {
                bool is_shared =
                    std::any_of(matching.shared.begin(), matching.shared.end(),
                                [&](const auto& p) { return p.first == A2->vars()[j]; });
                if (!is_shared) allowed[build.a2_to_w[j]] = 0;
            }
            allowed[amb->var_index_checked(tg.name)] = 0;
            auto q = solve_congruence(build.W, build.divisor_index, tg.depth + 1,
                                      amb->var_index_checked(tg.name), allowed, probe_cap, opts);
            if (!q) {
                tg.done = true;
                continue;
            }
            Polynomial numerator =
                build.W->nf(Polynomial::variable(amb, amb->var_index_checked(tg.name)) - *q);
            bool fully_divisible = true;
            for (const auto& t : numerator.terms())
                if (t.mono[build.divisor_index] < tg.depth + 1) fully_divisible = false;
            if (numerator.is_zero() || fully_divisible) {
                tg.done = true;  // already captured by the existing generators
                continue;
            }
            divided.push_back({fresh(build.vars), tg.name, q->str(), tg.depth + 1});
            tg.depth += 1;
            build = rebuild_carrier(A1, A2, matching, divided, opts);
            changed = true;
        }
        if (!changed) break;
    }

    FiberCarrier out;
    out.carrier = build.W;
    out.divisor_index = build.divisor_index;
    for (const auto& dv : divided) out.divided.push_back({dv.name, dv.target, dv.depth});
    const AmbientPtr& amb = build.W->ambient();

    // injections
    {
        std::vector<Polynomial> im1;
        for (size_t v = 0; v < A1->vars().size(); ++v)
            im1.push_back(Polynomial::variable(amb, build.a1_to_w[v]));
        out.inj1 = RingMap(A1, build.W, std::move(im1));
        out.inj1.verify();
        std::vector<Polynomial> im2;
        for (size_t v = 0; v < A2->vars().size(); ++v)
            im2.push_back(Polynomial::variable(amb, build.a2_to_w[v]));
        out.inj2 = RingMap(A2, build.W, std::move(im2));
        out.inj2.verify();
    }

    // the two bundle derivations; divided-variable images are forced by
    // exact division of the relation's derivative
    auto build_derivation = [&](bool over_first) {
        std::vector<std::optional<Polynomial>> images(amb->vars.size());
        for (size_t v = 0; v < A1->vars().size(); ++v)
            images[build.a1_to_w[v]] =
                over_first ? build.W->zero() : D1.images()[v].mapped_vars(amb, build.a1_to_w);
        for (size_t v = 0; v < A2->vars().size(); ++v) {
            // shared slots already hold zero images from the first side
            if (over_first)
                images[build.a2_to_w[v]] = D2.images()[v].mapped_vars(amb, build.a2_to_w);
            else if (!images[build.a2_to_w[v]])
                images[build.a2_to_w[v]] = build.W->zero();
        }
        // careful: over the first side every first-side image is zero and
        // second-side non-shared slots carry the translated images; shared
        // slots must stay zero for both structures
        if (over_first)
            for (const auto& [n2, n1] : matching.shared)
                images[amb->var_index_checked(n1)] = build.W->zero();
        auto partial_apply = [&](const Polynomial& p) {
            Polynomial acc = Polynomial::zero(amb);
            for (size_t v = 0; v < amb->vars.size(); ++v) {
                if (!images[v] || images[v]->is_zero() || !p.involves(v)) continue;
                acc = acc + p.partial(v) * *images[v];
            }
            return acc;
        };
        for (const auto& dv : divided) {
            size_t mv = amb->var_index_checked(dv.name);
            size_t tv = amb->var_index_checked(dv.target);
            Polynomial numerator = *images[tv] - partial_apply(parse_polynomial(amb, dv.q));
            images[mv] = exact_div_power(build.W->nf(numerator), build.divisor_index, dv.depth);
        }
        std::vector<Polynomial> final_images;
        for (auto& im : images) final_images.push_back(im ? *im : build.W->zero());
        return Derivation::make(build.W, std::move(final_images),
                                over_first ? "over1" : "over2");
    };
    out.over1 = build_derivation(true);
    out.over2 = build_derivation(false);
    return out;
}

BundleTrivializations trivialize_pair(const FiberCarrier& carrier, int32_t slice_degree_bound,
                                      const std::optional<MonomialGroupAction>& action,
                                      const GbOptions& opts) {
    BundleTrivializations out;
    auto run_side = [&](const Derivation& d, const RingMap& inj, NilpotencyCertificate& cert,
                        Slice& slice, Trivialization& triv) {
        cert = check_locally_nilpotent(d);
        try {
            slice = find_slice(d, slice_degree_bound, opts);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoSliceWithinBound) throw;
            slice = find_slice(d, 2 * slice_degree_bound, opts);  // single doubling retry
        }
        if (action) {
            // project to the invariant component; a slice of an equivariant
            // structure always has one
            Polynomial inv = carrier.carrier->nf(twist_component(*action, slice.element, 0));
            Polynomial evidence = carrier.carrier->nf(d.apply(inv) - carrier.carrier->one());
            if (!evidence.is_zero())
                fail(ErrorKind::NoSliceWithinBound,
                     "invariant component of the slice is not a slice");
            slice = {inv, evidence};
        }
        triv = trivialize_over(d, cert, slice, inj, "w", opts);
    };
    run_side(carrier.over1, carrier.inj1, out.cert1, out.slice1, out.triv1);
    run_side(carrier.over2, carrier.inj2, out.cert2, out.slice2, out.triv2);
    return out;
}

namespace {

CylinderIsoCertificate identity_certificate(const RingPtr& A, const std::string& parameter,
                                            const GbOptions& opts) {
    RingPtr cyl = PresentedRing::tensor_with_polynomial_line(A, parameter, opts);
    CylinderIsoCertificate out;
    out.cylinder1 = cyl;
    out.cylinder2 = cyl;
    out.iso = verify_iso(RingMap::identity(cyl), RingMap::identity(cyl));
    out.degenerate = true;
    return out;
}

}  // namespace

CylinderIsoCertificate cylinder_iso(const RingPtr& A1, const Derivation& D1, const RingPtr& A2,
                                    const Derivation& D2, const MatchingData& matching,
                                    const CylinderIsoConfig& config, const GbOptions& opts) {
    if (A1->canonical_key() == A2->canonical_key() &&
        D1.canonical_key() == D2.canonical_key())
        return identity_certificate(A1, config.parameter, opts);
    MatchingData m = matching;
    m.degree_bound = config.degree_bound;
    m.depth_bound = config.depth_bound;
    FiberCarrier carrier = matched_fiber_product(A1, D1, A2, D2, m, opts);
    BundleTrivializations trivs = trivialize_pair(carrier, config.degree_bound, {}, opts);
    CylinderIsoCertificate out;
    out.cylinder1 = trivs.triv1.cylinder;
    out.cylinder2 = trivs.triv2.cylinder;
    RingMap forward = trivs.triv1.iso.backward.then(trivs.triv2.iso.forward);
    RingMap backward = trivs.triv2.iso.backward.then(trivs.triv1.iso.forward);
    out.iso = verify_iso(std::move(forward), std::move(backward));
    out.carrier = std::move(carrier);
    out.trivializations = std::move(trivs);
    return out;
}

EquivariantCylinderIso cylinder_iso_equivariant(const RingPtr& A1, const Derivation& D1,
                                                const RingPtr& A2, const Derivation& D2,
                                                const MatchingData& matching,
                                                const EquivariantDescentInput& descent,
                                                const CylinderIsoConfig& config,
                                                const GbOptions& opts) {
    if (!descent.act1.verified || !descent.act2.verified)
        fail(ErrorKind::InvalidParameter, "descent needs verified actions");
    if (descent.act1.order != descent.act2.order)
        fail(ErrorKind::InvalidParameter, "descent actions must share one order");
    unsigned l = descent.act1.order;
    MatchingData m = matching;
    m.degree_bound = config.degree_bound;
    m.depth_bound = config.depth_bound;
    FiberCarrier carrier = matched_fiber_product(A1, D1, A2, D2, m, opts);
    const RingPtr& W = carrier.carrier;

    // action on the carrier: weights transported through the injections,
    // divided variables forced by their defining relations
    MonomialGroupAction act;
    act.order = l;
    act.weights.assign(W->vars().size(), 0);
    for (size_t v = 0; v < A1->vars().size(); ++v) {
        size_t wv = W->ambient()->var_index_checked(A1->vars()[v]);
        act.weights[wv] = descent.act1.weights[v];
    }
    for (size_t v = 0; v < A2->vars().size(); ++v) {
        const std::string& name = A2->vars()[v];
        auto shared = std::find_if(m.shared.begin(), m.shared.end(),
                                   [&](const auto& p) { return p.first == name; });
        if (shared != m.shared.end()) {
            size_t a1v = A1->ambient()->var_index_checked(shared->second);
            int w1 = descent.act1.weights[a1v] % static_cast<int>(l);
            int w2 = descent.act2.weights[v] % static_cast<int>(l);
            if ((w1 - w2) % static_cast<int>(l) != 0)
                fail(ErrorKind::InvalidParameter,
                     "shared variable " + name + " carries inconsistent weights");
            continue;
        }
        act.weights[W->ambient()->var_index_checked(name)] = descent.act2.weights[v];
    }
    // divided variables: divisor^j * m = target - q forces
    // twist(m) = twist(target) - j * twist(divisor)
    for (const auto& dv : carrier.divided) {
        size_t mv = W->ambient()->var_index_checked(dv.name);
        size_t tv = W->ambient()->var_index_checked(dv.target);
        long tw = static_cast<long>(act.weights[tv]) -
                  static_cast<long>(dv.depth) *
                      static_cast<long>(act.weights[carrier.divisor_index]);
        tw %= static_cast<long>(l);
        if (tw < 0) tw += l;
        act.weights[mv] = static_cast<int>(tw);
    }
    act = verify_action(W, act, opts);
    equivariance_check_derivation(carrier.over1, act, opts);
    equivariance_check_derivation(carrier.over2, act, opts);

    BundleTrivializations trivs = trivialize_pair(carrier, config.degree_bound, act, opts);

    EquivariantCylinderIso out;
    {
        RingMap forward = trivs.triv1.iso.backward.then(trivs.triv2.iso.forward);
        RingMap backward = trivs.triv2.iso.backward.then(trivs.triv1.iso.forward);
        out.upstairs.cylinder1 = trivs.triv1.cylinder;
        out.upstairs.cylinder2 = trivs.triv2.cylinder;
        out.upstairs.iso = verify_iso(std::move(forward), std::move(backward));
    }

    // descent: invariants of the carrier, then both trivializations pushed
    // down to the invariant subrings
    out.invariants = invariant_subring(W, act, static_cast<int32_t>(l), opts);

    auto cylinder_extension = [&](const RingMap& j, const RingPtr& down_cyl,
                                  const RingPtr& up_cyl) {
        // down[w] -> A[w] extending j with w -> w
        std::vector<Polynomial> images;
        std::vector<size_t> embed(j.target()->vars().size());
        for (size_t v = 0; v < embed.size(); ++v) embed[v] = v;
        for (size_t v = 0; v < j.source()->vars().size(); ++v)
            images.push_back(j.images()[v].mapped_vars(up_cyl->ambient(), embed));
        images.push_back(up_cyl->var(up_cyl->vars().size() - 1));
        RingMap out_map(down_cyl, up_cyl, std::move(images));
        out_map.verify();
        return out_map;
    };

    auto descend_side = [&](const RingMap& j, const Derivation& over, const Trivialization& triv,
                            const Slice& slice) {
        (void)over;
        (void)slice;
        RingPtr down_cyl =
            PresentedRing::tensor_with_polynomial_line(j.source(), config.parameter, opts);
        RingMap jcyl = cylinder_extension(j, down_cyl, triv.cylinder);
        // forward: invariants -> down[w], the invariant restriction of the
        // upstairs trivialization expressed through jcyl
        SubalgebraSolver jcyl_solver(jcyl, opts);
        RingMap incl_then_triv = out.invariants.inclusion.then(triv.iso.forward);
        std::vector<Polynomial> fwd_images;
        for (size_t g = 0; g < out.invariants.ring->vars().size(); ++g)
            fwd_images.push_back(jcyl_solver.express(incl_then_triv.images()[g]));
        RingMap fwd(out.invariants.ring, down_cyl, std::move(fwd_images));
        // backward: down[w] -> invariants via the upstairs backward map
        std::vector<Polynomial> bwd_images;
        for (size_t v = 0; v < down_cyl->vars().size(); ++v)
            bwd_images.push_back(out.invariants.express(triv.iso.backward.apply(jcyl.images()[v])));
        RingMap bwd(down_cyl, out.invariants.ring, std::move(bwd_images));
        IsoCertificate cert = verify_iso(std::move(fwd), std::move(bwd));
        return std::make_pair(down_cyl, std::move(cert));
    };

    auto [down_cyl1, desc1] = descend_side(descent.j1, carrier.over1, trivs.triv1, trivs.slice1);
    auto [down_cyl2, desc2] = descend_side(descent.j2, carrier.over2, trivs.triv2, trivs.slice2);

    {
        RingMap forward = desc1.backward.then(desc2.forward);
        RingMap backward = desc2.backward.then(desc1.forward);
        out.downstairs.cylinder1 = down_cyl1;
        out.downstairs.cylinder2 = down_cyl2;
        out.downstairs.iso = verify_iso(std::move(forward), std::move(backward));
    }

    // upstairs-to-downstairs consistency: the descended iso precomposed with
    // the cylinder extensions agrees with the upstairs iso on the invariants
    {
        RingMap j1cyl = cylinder_extension(descent.j1, down_cyl1, trivs.triv1.cylinder);
        RingMap j2cyl = cylinder_extension(descent.j2, down_cyl2, trivs.triv2.cylinder);
        RingMap lhs = j1cyl.then(out.upstairs.iso.forward);
        RingMap rhs = out.downstairs.iso.forward.then(j2cyl);
        for (size_t v = 0; v < down_cyl1->vars().size(); ++v) {
            Polynomial residual =
                trivs.triv2.cylinder->nf(lhs.images()[v] - rhs.images()[v]);
            if (!residual.is_zero())
                fail(ErrorKind::NotInverse,
                     "upstairs and downstairs isos disagree at " + down_cyl1->vars()[v],
                     residual.str());
            out.consistency_residuals.push_back(residual);
        }
    }

    out.upstairs.carrier = carrier;
    out.upstairs.trivializations = std::move(trivs);
    return out;
}

}  // namespace cylab
