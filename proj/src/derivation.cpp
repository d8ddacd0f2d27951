#include "cylab/derivation.hpp"

#include <algorithm>
#include <set>

#include "cylab/linalg.hpp"
#include "cylab/parallel.hpp"

namespace cylab {

Derivation Derivation::make(const RingPtr& ring, const std::map<std::string, std::string>& images,
                            std::string name) {
    std::vector<Polynomial> base;
    for (size_t v = 0; v < ring->base_var_count(); ++v) {
        auto it = images.find(ring->vars()[v]);
        if (it == images.end())
            fail(ErrorKind::MissingImage, "no image for generator " + ring->vars()[v]);
        base.push_back(ring->parse(it->second));
    }
    for (const auto& [k, v] : images)
        if (!ring->ambient()->var_index(k) ||
            ring->is_inverse_var(ring->ambient()->var_index_checked(k)))
            fail(ErrorKind::UnknownVariable,
                 "image given for '" + k + "', which is not a polynomial generator");
    return make(ring, std::move(base), std::move(name));
}

Derivation Derivation::make(const RingPtr& ring, std::vector<Polynomial> base_images,
                            std::string name) {
    if (base_images.size() != ring->base_var_count())
        fail(ErrorKind::MissingImage, "need an image for every polynomial generator");
    Derivation d;
    d.ring_ = ring;
    d.name_ = std::move(name);
    d.images_ = std::move(base_images);
    for (auto& im : d.images_) im = ring->nf(im);
    // forced images on inverse variables: D(w) = -w^2 D(f), computed in
    // declaration order so nested localizations resolve
    for (const auto& inv : ring->inverted()) {
        Polynomial df = d.apply_partial(inv.element, d.images_.size());
        Polynomial w = ring->var(inv.inverse_var);
        d.images_.push_back(ring->nf(-(w * w * df)));
    }
    // well-definedness: every relation maps into the relation ideal
    for (const auto& rel : ring->relations()) {
        Polynomial residual = d.apply(rel);
        if (!residual.is_zero())
            fail(ErrorKind::NotWellDefined,
                 "relation " + rel.str() + " has nonzero derivative", residual.str());
    }
    return d;
}

Derivation Derivation::zero(const RingPtr& ring, std::string name) {
    std::vector<Polynomial> images(ring->base_var_count(), ring->zero());
    return make(ring, std::move(images), std::move(name));
}

bool Derivation::is_zero() const {
    for (const auto& im : images_)
        if (!im.is_zero()) return false;
    return true;
}

Polynomial Derivation::apply_partial(const Polynomial& p, size_t upto) const {
    Polynomial acc = Polynomial::zero(p.ambient());
    for (size_t v = 0; v < upto; ++v) {
        if (images_[v].is_zero() || !p.involves(v)) continue;
        acc = acc + p.partial(v) * images_[v];
    }
    return acc;
}

Polynomial Derivation::apply(const Polynomial& p) const {
    return ring_->nf(apply_partial(p, images_.size()));
}

std::string Derivation::canonical_key() const {
    std::string key = ring_->canonical_key() + "|";
    for (const auto& im : images_) key += im.str() + ";";
    return key;
}

int32_t default_nilpotency_bound(const Derivation& d) {
    int32_t deg = 1;
    for (const auto& im : d.images()) deg = std::max(deg, im.total_degree());
    return 2 + deg * static_cast<int32_t>(d.ring()->vars().size());
}

NilpotencyCertificate check_locally_nilpotent(const Derivation& d, int32_t bound) {
    if (bound <= 0) bound = default_nilpotency_bound(d);
    const RingPtr& ring = d.ring();
    NilpotencyCertificate cert;
    cert.bound = bound;
    cert.chains.resize(ring->vars().size());
    std::vector<std::exception_ptr> errs(ring->vars().size());
    parallel_for(ring->vars().size(), [&](size_t v) {
        try {
            std::vector<Polynomial> chain;
            Polynomial cur = ring->var(v);
            for (int32_t k = 0; k <= bound && !cur.is_zero(); ++k) {
                chain.push_back(cur);
                cur = d.apply(cur);
            }
            if (!cur.is_zero())
                fail(ErrorKind::BoundExceeded,
                     "chain of " + ring->vars()[v] + " still nonzero at the bound",
                     chain.back().str());
            cert.chains[v] = std::move(chain);
        } catch (...) {
            errs[v] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return cert;
}

namespace {

// chain-based exponential images: v -> sum w^k chain_v[k] / k!
std::vector<Polynomial> exponential_images(const RingPtr& ring, const RingPtr& cyl,
                                           size_t w_index, const NilpotencyCertificate& cert,
                                           bool negate) {
    // the cylinder appends the parameter last, so the embedding is the identity
    std::vector<size_t> embed(ring->vars().size());
    for (size_t v = 0; v < embed.size(); ++v) embed[v] = v;
    std::vector<Polynomial> images;
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        Polynomial acc = cyl->zero();
        Polynomial wpow = cyl->one();
        Rational kfact(1);
        for (size_t k = 0; k < cert.chains[v].size(); ++k) {
            if (k > 0) {
                wpow = wpow * cyl->var(w_index);
                kfact = kfact * Rational(static_cast<long>(k));
            }
            FieldElement c = FieldElement(kfact.inverse());
            if (negate && k % 2 == 1) c = -c;
            acc = acc + cert.chains[v][k].mapped_vars(cyl->ambient(), embed).scaled(c) * wpow;
        }
        images.push_back(cyl->nf(acc));
    }
    return images;
}

}  // namespace

ExponentialMap exponential(const Derivation& d, const NilpotencyCertificate& cert,
                           const std::string& parameter) {
    const RingPtr& ring = d.ring();
    RingPtr cyl = PresentedRing::tensor_with_polynomial_line(ring, parameter);
    size_t w_index = cyl->vars().size() - 1;
    std::vector<Polynomial> images = exponential_images(ring, cyl, w_index, cert, false);
    RingMap f(ring, cyl, std::move(images));
    f.verify();
    return {cyl, w_index, std::move(f)};
}

bool exponential_round_trip(const Derivation& d, const NilpotencyCertificate& cert) {
    const RingPtr& ring = d.ring();
    ExponentialMap ep = exponential(d, cert);
    std::vector<Polynomial> neg =
        exponential_images(ring, ep.cylinder, ep.w_index, cert, true);
    // extend exp(-w) to the cylinder by fixing w, then compose
    neg.push_back(ep.cylinder->var(ep.w_index));
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        Polynomial composite = ep.map.images()[v].substitute(neg);
        Polynomial expected = ep.cylinder->var(v);
        if (!ep.cylinder->equal(composite, expected)) return false;
    }
    // setting w = 0 in exp(w) is the identity
    std::vector<Polynomial> at_zero;
    for (size_t v = 0; v < ring->vars().size(); ++v) at_zero.push_back(ep.cylinder->var(v));
    at_zero.push_back(ep.cylinder->zero());
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        if (!ep.cylinder->equal(ep.map.images()[v].substitute(at_zero), ep.cylinder->var(v)))
            return false;
    }
    return true;
}

KernelEvidence kernel_member(const Derivation& d, const Polynomial& p) {
    Polynomial ev = d.apply(p);
    return {ev.is_zero(), ev};
}

// ---------------------------------------------------------------------------
// slice search

namespace {

// Integer gradings (w, c) with: all relations homogeneous, and D raising the
// weight by exactly c. Restricting the ansatz to weight -c is complete.
std::vector<std::vector<Rational>> compatible_gradings(const Derivation& d) {
    const RingPtr& ring = d.ring();
    size_t n = ring->vars().size();
    std::vector<std::vector<Rational>> equations;
    auto add_difference = [&](const Monomial& a, const Monomial& b) {
        std::vector<Rational> eq(n + 1, Rational(0));
        for (size_t v = 0; v < n; ++v) eq[v] = Rational(a[v] - b[v]);
        equations.push_back(std::move(eq));
    };
    for (const auto& rel : ring->relations()) {
        for (size_t t = 1; t < rel.terms().size(); ++t)
            add_difference(rel.terms()[t].mono, rel.terms()[0].mono);
    }
    for (size_t v = 0; v < n; ++v) {
        const Polynomial& im = d.images()[v];
        if (im.is_zero()) continue;
        for (size_t t = 1; t < im.terms().size(); ++t)
            add_difference(im.terms()[t].mono, im.terms()[0].mono);
        // weight(im) - weight(v) - c = 0
        std::vector<Rational> eq(n + 1, Rational(0));
        for (size_t u = 0; u < n; ++u) eq[u] = Rational(im.terms()[0].mono[u]);
        eq[v] -= Rational(1);
        eq[n] = Rational(-1);
        equations.push_back(std::move(eq));
    }
    LinearSystem sys(equations.size(), n + 1);
    for (size_t r = 0; r < equations.size(); ++r)
        for (size_t cidx = 0; cidx <= n; ++cidx)
            sys.set(r, cidx, FieldElement(equations[r][cidx]));
    return sys.rational_nullspace();
}

}  // namespace

Slice find_slice(const Derivation& d, int32_t degree_bound, const GbOptions& opts) {
    (void)opts;
    const RingPtr& ring = d.ring();
    size_t n = ring->vars().size();
    auto gradings = compatible_gradings(d);
    auto admissible = [&](const Monomial& m) {
        for (const auto& g : gradings) {
            Rational acc = g[n];  // + c
            for (size_t v = 0; v < n; ++v) acc += g[v] * Rational(m[v]);
            if (!acc.is_zero()) return false;
        }
        return true;
    };
    // grow the ansatz one degree at a time; the grading lattice prunes the
    // candidate set, and small slices are found before large ones
    std::vector<Monomial> cols;
    std::vector<Polynomial> dcols;
    std::vector<Monomial> frontier{Monomial(n)};
    for (int32_t bound = 1; bound <= degree_bound; ++bound) {
        std::vector<Monomial> next;
        for (const auto& m : frontier) {
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
        std::sort(next.begin(), next.end(), [&](const Monomial& a, const Monomial& b) {
            return ring->ambient()->order.compare(a, b) < 0;
        });
        frontier = next;
        std::vector<Monomial> fresh;
        for (const auto& m : next)
            if (admissible(m)) fresh.push_back(m);
        if (fresh.empty()) continue;
        size_t offset = cols.size();
        cols.insert(cols.end(), fresh.begin(), fresh.end());
        dcols.resize(cols.size());
        std::vector<std::exception_ptr> errs(fresh.size());
        parallel_for(fresh.size(), [&](size_t i) {
            try {
                dcols[offset + i] = d.apply(
                    Polynomial::monomial(ring->ambient(), FieldElement::one(), fresh[i]));
            } catch (...) {
                errs[i] = std::current_exception();
            }
        });
        for (auto& e : errs)
            if (e) std::rethrow_exception(e);
        std::map<Monomial, size_t> rows;
        auto row_of = [&](const Monomial& m) {
            return rows.emplace(m, rows.size()).first->second;
        };
        row_of(Monomial(n));  // target row
        for (const auto& dc : dcols)
            for (const auto& t : dc.terms()) row_of(t.mono);
        LinearSystem sys(rows.size(), cols.size());
        for (size_t cidx = 0; cidx < cols.size(); ++cidx)
            for (const auto& t : dcols[cidx].terms()) sys.add(row_of(t.mono), cidx, t.coeff);
        sys.set_rhs(row_of(Monomial(n)), FieldElement::one());
        auto sol = sys.solve();
        if (!sol) continue;
        Polynomial s = ring->zero();
        for (size_t cidx = 0; cidx < cols.size(); ++cidx)
            if (!(*sol)[cidx].is_zero())
                s = s + Polynomial::monomial(ring->ambient(), (*sol)[cidx], cols[cidx]);
        Polynomial evidence = ring->nf(d.apply(s) - ring->one());
        if (!evidence.is_zero())
            fail(ErrorKind::NoSliceWithinBound, "slice candidate failed verification");
        return {ring->nf(s), evidence};
    }
    fail(ErrorKind::NoSliceWithinBound,
         "no slice with ansatz degree up to " + std::to_string(degree_bound));
}

// ---------------------------------------------------------------------------
// trivialization

namespace {

// Dixmier projection pi(p) = sum (-s)^k D^k(p) / k!, a retraction onto ker D.
Polynomial dixmier_project(const Derivation& d, const Polynomial& s, const Polynomial& p,
                           int32_t bound) {
    const RingPtr& ring = d.ring();
    Polynomial acc = ring->zero();
    Polynomial cur = p;
    Polynomial spow = ring->one();
    Rational kfact(1);
    for (int32_t k = 0; !cur.is_zero(); ++k) {
        if (k > bound)
            fail(ErrorKind::BoundExceeded, "Dixmier chain did not terminate within the bound");
        if (k > 0) {
            spow = ring->nf(spow * (-s));
            kfact = kfact * Rational(k);
        }
        acc = acc + cur.scaled(FieldElement(kfact.inverse())) * spow;
        cur = d.apply(cur);
    }
    return ring->nf(acc);
}

}  // namespace

Trivialization trivialize_over(const Derivation& d, const NilpotencyCertificate& cert,
                               const Slice& slice, const RingMap& kernel_inclusion,
                               const std::string& parameter, const GbOptions& opts) {
    const RingPtr& ring = d.ring();
    const RingPtr& A = kernel_inclusion.source();
    int32_t bound = cert.bound + 2 * static_cast<int32_t>(ring->vars().size());

    Trivialization out;
    for (size_t v = 0; v < ring->vars().size(); ++v)
        out.kernel_generators.push_back(dixmier_project(d, slice.element, ring->var(v), bound));

    RingPtr cyl = PresentedRing::tensor_with_polynomial_line(A, parameter, opts);
    size_t w_index = cyl->vars().size() - 1;
    std::vector<size_t> a_embed(A->vars().size());
    for (size_t v = 0; v < a_embed.size(); ++v) a_embed[v] = v;

    SubalgebraSolver solver(kernel_inclusion, opts);
    // forward: v -> sum w^k / k! expr_A(pi(D^k v))
    std::vector<Polynomial> fwd_images;
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        Polynomial acc = cyl->zero();
        Polynomial wpow = cyl->one();
        Rational kfact(1);
        Polynomial cur = ring->var(v);
        for (int32_t k = 0; !cur.is_zero(); ++k) {
            if (k > bound)
                fail(ErrorKind::BoundExceeded, "trivialization chain did not terminate");
            if (k > 0) {
                wpow = wpow * cyl->var(w_index);
                kfact = kfact * Rational(k);
            }
            Polynomial pk = dixmier_project(d, slice.element, cur, bound);
            Polynomial in_a = solver.express(pk);
            acc = acc + in_a.mapped_vars(cyl->ambient(), a_embed).scaled(
                            FieldElement(kfact.inverse())) *
                            wpow;
            cur = d.apply(cur);
        }
        fwd_images.push_back(cyl->nf(acc));
    }
    RingMap forward(ring, cyl, std::move(fwd_images));

    // backward: A[w] -> R via the inclusion, w -> slice
    std::vector<Polynomial> bwd_images;
    for (size_t v = 0; v < A->vars().size(); ++v)
        bwd_images.push_back(kernel_inclusion.images()[v]);
    bwd_images.push_back(slice.element);
    RingMap backward(cyl, ring, std::move(bwd_images));

    out.cylinder = cyl;
    out.iso = verify_iso(std::move(forward), std::move(backward));
    return out;
}

DixmierTrivialization dixmier_trivialize(const Derivation& d, const NilpotencyCertificate& cert,
                                         const Slice& slice, const std::string& parameter,
                                         const GbOptions& opts) {
    const RingPtr& ring = d.ring();
    int32_t bound = cert.bound + 2 * static_cast<int32_t>(ring->vars().size());
    DixmierTrivialization out;
    std::vector<Polynomial> kgens;
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        Polynomial k = dixmier_project(d, slice.element, ring->var(v), bound);
        auto ev = kernel_member(d, k);
        if (!ev.member)
            fail(ErrorKind::NotWellDefined, "Dixmier image escaped the kernel", ev.evidence.str());
        kgens.push_back(std::move(k));
    }
    // keep the nonconstant projections as kernel generators
    std::vector<Polynomial> gens;
    std::vector<std::string> names;
    for (size_t v = 0; v < kgens.size(); ++v) {
        if (kgens[v].is_constant()) continue;
        gens.push_back(kgens[v]);
        names.push_back("k" + std::to_string(gens.size()));
    }
    // present the kernel subalgebra by eliminating the ring's variables
    std::vector<std::string> vars = ring->vars();
    for (auto& nme : names) {
        while (std::find(vars.begin(), vars.end(), nme) != vars.end()) nme += "'";
        vars.push_back(nme);
    }
    AmbientPtr combined = make_ambient(vars, ring->ambient()->field, MonomialOrder::grevlex());
    size_t nbig = ring->vars().size();
    std::vector<size_t> embed(nbig);
    for (size_t v = 0; v < nbig; ++v) embed[v] = v;
    std::vector<Polynomial> graph;
    for (const auto& r : ring->relations()) graph.push_back(r.mapped_vars(combined, embed));
    for (size_t k = 0; k < gens.size(); ++k)
        graph.push_back(Polynomial::variable(combined, nbig + k) -
                        gens[k].mapped_vars(combined, embed));
    std::vector<size_t> elim(nbig);
    for (size_t v = 0; v < nbig; ++v) elim[v] = v;
    EliminationResult er = eliminate(combined, graph, elim, opts);
    AmbientPtr sub = make_ambient(names, ring->ambient()->field, MonomialOrder::grevlex());
    std::vector<Polynomial> rels;
    for (const auto& b : er.eliminated) {
        std::vector<Term> ts;
        for (const auto& t : b.terms()) {
            Monomial m(names.size());
            for (size_t k = 0; k < names.size(); ++k) m[k] = t.mono[nbig + k];
            ts.push_back({t.coeff, std::move(m)});
        }
        rels.push_back(Polynomial::from_terms(sub, std::move(ts)));
    }
    out.kernel = PresentedRing::present(names, rels, {}, ring->ambient()->field,
                                        MonomialOrder::grevlex(), opts);
    out.inclusion = RingMap(out.kernel, ring, gens);
    out.inclusion.verify();
    out.kernel_generators = std::move(kgens);
    out.trivialization = trivialize_over(d, cert, slice, out.inclusion, parameter, opts);
    return out;
}

MembershipCertificate fixed_point_free(const Derivation& d, unsigned max_exponent,
                                       const GbOptions& opts) {
    const RingPtr& ring = d.ring();
    // work in the polynomial subring: drop inverse variables, keep the
    // relations and images that avoid them
    size_t nbase = ring->base_var_count();
    std::vector<std::string> vars(ring->vars().begin(), ring->vars().begin() + nbase);
    AmbientPtr sub = make_ambient(vars, ring->ambient()->field, ring->ambient()->order);
    auto restrict_poly = [&](const Polynomial& p) {
        std::vector<Term> ts;
        for (const auto& t : p.terms()) {
            for (size_t v = nbase; v < ring->vars().size(); ++v)
                if (t.mono[v] != 0)
                    fail(ErrorKind::NotFixedPointFree,
                         "freeness check needs inverse-variable-free data, got " + p.str());
            Monomial m(nbase);
            for (size_t v = 0; v < nbase; ++v) m[v] = t.mono[v];
            ts.push_back({t.coeff, std::move(m)});
        }
        return Polynomial::from_terms(sub, std::move(ts));
    };
    std::vector<Polynomial> gens;
    for (const auto& rel : ring->relations()) {
        bool touches_inverse = false;
        for (size_t v = nbase; v < ring->vars().size(); ++v)
            if (rel.involves(v)) touches_inverse = true;
        if (!touches_inverse) gens.push_back(restrict_poly(rel));
    }
    for (size_t v = 0; v < nbase; ++v)
        if (!d.images()[v].is_zero()) gens.push_back(restrict_poly(d.images()[v]));
    if (gens.empty()) fail(ErrorKind::NotFixedPointFree, "no generator images to combine");
    std::optional<Polynomial> sat;
    for (const auto& inv : ring->inverted()) {
        Polynomial e = restrict_poly(inv.element);
        sat = sat ? *sat * e : e;
    }
    try {
        return membership(sub, gens, Polynomial::constant(sub, FieldElement::one()), sat,
                          max_exponent, opts);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotMember)
            fail(ErrorKind::NotFixedPointFree,
                 "1 is not reachable from the generator images within the exponent bound");
        throw;
    }
}

LiftedDerivation lift_through_cover(const Derivation& d, const RingMap& cover,
                                    const std::vector<std::string>& forced_zero_vars,
                                    int32_t nilpotency_bound) {
    const RingPtr& base = cover.source();
    const RingPtr& total = cover.target();
    if (base->canonical_key() != d.ring()->canonical_key())
        fail(ErrorKind::AmbientMismatch, "cover source must be the derivation's ring");
    std::vector<Polynomial> images;
    for (size_t tv = 0; tv < total->base_var_count(); ++tv) {
        const std::string& name = total->vars()[tv];
        if (std::find(forced_zero_vars.begin(), forced_zero_vars.end(), name) !=
            forced_zero_vars.end()) {
            images.push_back(total->zero());
            continue;
        }
        // locate the base generator mapping onto this variable
        long found = -1;
        for (size_t bv = 0; bv < base->vars().size(); ++bv)
            if (cover.images()[bv] == total->var(tv)) {
                found = static_cast<long>(bv);
                break;
            }
        if (found < 0)
            fail(ErrorKind::MissingImage,
                 "cover does not hit generator " + name + " by a base variable");
        images.push_back(cover.apply(d.images()[static_cast<size_t>(found)]));
    }
    Derivation lifted = Derivation::make(total, std::move(images), d.name() + "~");
    NilpotencyCertificate cert = check_locally_nilpotent(lifted, nilpotency_bound);
    return {std::move(lifted), std::move(cert)};
}

Derivation transport_derivation(const IsoCertificate& iso, const Derivation& d,
                                std::string name) {
    const RingPtr& source = iso.forward.source();
    const RingPtr& target = iso.forward.target();
    if (source->canonical_key() != d.ring()->canonical_key())
        fail(ErrorKind::AmbientMismatch, "transport needs the derivation on the iso's source");
    std::vector<Polynomial> images;
    for (size_t v = 0; v < target->base_var_count(); ++v)
        images.push_back(iso.forward.apply(d.apply(iso.backward.images()[v])));
    Derivation out = Derivation::make(target, std::move(images), std::move(name));
    // forced inverse-variable images must agree with the conjugated ones
    for (size_t v = target->base_var_count(); v < target->vars().size(); ++v) {
        Polynomial expected = iso.forward.apply(d.apply(iso.backward.images()[v]));
        if (!target->equal(out.images()[v], expected))
            fail(ErrorKind::NotWellDefined, "transported inverse image mismatch at " +
                                                target->vars()[v]);
    }
    return out;
}

ClearedDerivation clear_denominators(const Derivation& d, const Polynomial& f,
                                     unsigned max_exponent, const GbOptions& opts) {
    const RingPtr& ring = d.ring();
    auto fk = kernel_member(d, f);
    if (!fk.member)
        fail(ErrorKind::InvalidParameter,
             "clearing element is not in the kernel, derivative is " + fk.evidence.str());
    size_t nbase = ring->base_var_count();
    std::vector<std::string> vars(ring->vars().begin(), ring->vars().begin() + nbase);
    std::vector<Polynomial> rels;
    for (const auto& rel : ring->relations()) {
        bool touches_inverse = false;
        for (size_t v = nbase; v < ring->vars().size(); ++v)
            if (rel.involves(v)) touches_inverse = true;
        if (!touches_inverse) rels.push_back(rel);
    }
    AmbientPtr sub_amb = make_ambient(vars, ring->ambient()->field, ring->ambient()->order);
    auto restrict_poly = [&](const Polynomial& p) {
        std::vector<Term> ts;
        for (const auto& t : p.terms()) {
            Monomial m(nbase);
            for (size_t v = 0; v < nbase; ++v) m[v] = t.mono[v];
            ts.push_back({t.coeff, std::move(m)});
        }
        return Polynomial::from_terms(sub_amb, std::move(ts));
    };
    std::vector<Polynomial> sub_rels;
    for (const auto& r : rels) sub_rels.push_back(restrict_poly(r));
    RingPtr poly_ring = PresentedRing::present(vars, sub_rels, {}, ring->ambient()->field,
                                               ring->ambient()->order, opts);
    for (unsigned n = 0; n <= max_exponent; ++n) {
        Polynomial fn = f.pow(n);
        std::vector<Polynomial> images;
        bool clean = true;
        for (size_t v = 0; v < nbase && clean; ++v) {
            Polynomial im = ring->nf(fn * d.images()[v]);
            for (size_t w = nbase; w < ring->vars().size(); ++w)
                if (im.involves(w)) clean = false;
            if (clean) images.push_back(restrict_poly(im));
        }
        if (!clean) continue;
        Derivation cleared = Derivation::make(poly_ring, std::move(images), d.name() + "_poly");
        // the clearing element stays in the kernel, now as an exact identity
        auto ev = kernel_member(cleared, restrict_poly(ring->nf(f)));
        if (!ev.member)
            fail(ErrorKind::NotClearable, "cleared derivation lost the kernel element",
                 ev.evidence.str());
        return {n, std::move(cleared)};
    }
    fail(ErrorKind::NotClearable,
         "no power up to " + std::to_string(max_exponent) + " clears the denominators");
}

void equivariance_check_derivation(const Derivation& d, const MonomialGroupAction& action,
                                   const GbOptions& opts) {
    (void)opts;
    if (!action.verified)
        fail(ErrorKind::InvalidParameter, "equivariance check needs a verified action");
    const RingPtr& ring = d.ring();
    FieldDesc field = ring->ambient()->field;
    if (action.order > 2 && field.is_rational()) field = FieldDesc{action.order};
    AmbientPtr ext = make_ambient(ring->ambient()->vars, field, ring->ambient()->order);
    std::vector<Polynomial> basis;
    std::vector<GroebnerBasis::Node> nodes;
    std::vector<size_t> bnodes;
    for (size_t k = 0; k < ring->basis().basis().size(); ++k) {
        basis.push_back(ring->basis().basis()[k].with_field(ext));
        GroebnerBasis::Node n;
        n.input = static_cast<long>(k);
        nodes.push_back(std::move(n));
        bnodes.push_back(k);
    }
    GroebnerBasis gb = GroebnerBasis::assemble(ext, basis, basis, std::move(nodes),
                                               std::move(bnodes));
    for (size_t v = 0; v < ring->vars().size(); ++v) {
        // sigma(D(sigma^{-1} v)) = D(v)
        Polynomial dv = d.images()[v].with_field(ext);
        Polynomial lhs = apply_action(action, dv).scaled(
            FieldElement::root_of_unity(action.order, -action.weights[v]));
        Polynomial residual = gb.nf(lhs - dv);
        if (!residual.is_zero())
            fail(ErrorKind::NotEquivariant,
                 "derivation breaks equivariance at " + ring->vars()[v], residual.str());
    }
}

}  // namespace cylab
