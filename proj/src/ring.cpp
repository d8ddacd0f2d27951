#include "cylab/ring.hpp"

#include <algorithm>

namespace cylab {

namespace {

std::string fresh_name(const std::vector<std::string>& taken, const std::string& base) {
    auto used = [&](const std::string& n) {
        return std::find(taken.begin(), taken.end(), n) != taken.end();
    };
    if (!used(base)) return base;
    for (int k = 2;; ++k) {
        std::string n = base + std::to_string(k);
        if (!used(n)) return n;
    }
}

}  // namespace

RingPtr PresentedRing::present(const Spec& spec, const GbOptions& opts) {
    AmbientPtr base = make_ambient(spec.vars, spec.field, spec.order);
    std::vector<Polynomial> rels;
    for (const auto& r : spec.relations) rels.push_back(parse_polynomial(base, r));
    std::vector<std::pair<Polynomial, std::string>> inv;
    for (const auto& [elt, name] : spec.invert)
        inv.emplace_back(parse_polynomial(base, elt), name);
    return present(spec.vars, std::move(rels), std::move(inv), spec.field, spec.order, opts);
}

RingPtr PresentedRing::present(std::vector<std::string> vars, std::vector<Polynomial> relations,
                               std::vector<std::pair<Polynomial, std::string>> invert,
                               FieldDesc field, MonomialOrder order, const GbOptions& opts) {
    size_t base_count = vars.size();
    for (auto& [elt, name] : invert) {
        std::string n = fresh_name(vars, name.empty() ? "w" : name);
        vars.push_back(n);
    }
    AmbientPtr amb = make_ambient(vars, field, order);
    std::vector<size_t> embed(base_count);
    for (size_t v = 0; v < base_count; ++v) embed[v] = v;

    auto ring = std::make_shared<PresentedRing>();
    ring->amb_ = amb;
    ring->base_vars_ = base_count;
    for (auto& r : relations) {
        Polynomial moved = r.mapped_vars(amb, embed);
        if (!moved.is_zero()) ring->relations_.push_back(std::move(moved));
    }
    for (size_t k = 0; k < invert.size(); ++k) {
        size_t wv = base_count + k;
        Polynomial elt = invert[k].first.mapped_vars(amb, embed);
        Polynomial rel = Polynomial::variable(amb, wv) * elt -
                         Polynomial::constant(amb, FieldElement::one());
        ring->relations_.push_back(rel);
        ring->inverted_.push_back({std::move(elt), wv});
    }
    ring->gb_ = std::make_shared<GroebnerBasis>(buchberger(amb, ring->relations_, opts));
    ring->inconsistent_ = ring->gb_->is_unit_ideal();
    return ring;
}

std::string PresentedRing::canonical_key() const {
    std::string key = amb_->field.str() + "|" + amb_->order.str() + "|";
    for (const auto& v : amb_->vars) key += v + ",";
    key += "|";
    for (const auto& r : relations_) key += r.str() + ";";
    return key;
}

RingPtr PresentedRing::tensor_with_polynomial_line(const RingPtr& ring,
                                                   const std::string& new_var,
                                                   const GbOptions& opts) {
    if (ring->amb_->var_index(new_var))
        fail(ErrorKind::VariableClash, "cylinder variable '" + new_var + "' already present");
    std::vector<std::string> vars = ring->amb_->vars;
    vars.push_back(new_var);
    AmbientPtr amb = make_ambient(vars, ring->amb_->field, ring->amb_->order);
    std::vector<size_t> embed(ring->amb_->vars.size());
    for (size_t v = 0; v < embed.size(); ++v) embed[v] = v;

    auto out = std::make_shared<PresentedRing>();
    out->amb_ = amb;
    out->base_vars_ = ring->base_vars_;
    for (const auto& r : ring->relations_) out->relations_.push_back(r.mapped_vars(amb, embed));
    for (const auto& iv : ring->inverted_)
        out->inverted_.push_back({iv.element.mapped_vars(amb, embed), iv.inverse_var});
    out->gb_ = std::make_shared<GroebnerBasis>(buchberger(amb, out->relations_, opts));
    out->inconsistent_ = out->gb_->is_unit_ideal();
    return out;
}

RingMap::RingMap(RingPtr source, RingPtr target, std::vector<Polynomial> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_->vars().size())
        fail(ErrorKind::MissingImage, "ring map needs an image for every source variable");
    for (const auto& im : images_) check_same_ambient(im, target_->zero());
}

RingMap RingMap::identity(const RingPtr& ring) {
    std::vector<Polynomial> images;
    for (size_t v = 0; v < ring->vars().size(); ++v) images.push_back(ring->var(v));
    RingMap f(ring, ring, std::move(images));
    f.verified_ = true;
    return f;
}

RingMap& RingMap::verify() {
    for (const auto& rel : source_->relations()) {
        Polynomial image = rel.substitute(images_);
        Polynomial residual = target_->nf(image);
        if (!residual.is_zero())
            fail(ErrorKind::RelationNotPreserved,
                 "relation " + rel.str() + " maps to nonzero normal form", residual.str());
    }
    verified_ = true;
    return *this;
}

Polynomial RingMap::apply(const Polynomial& p) const { return target_->nf(p.substitute(images_)); }

Polynomial RingMap::apply_raw(const Polynomial& p) const { return p.substitute(images_); }

RingMap RingMap::then(const RingMap& g) const {
    if (target_->canonical_key() != g.source()->canonical_key())
        fail(ErrorKind::AmbientMismatch, "map composition: middle rings differ");
    std::vector<Polynomial> images;
    images.reserve(images_.size());
    for (const auto& im : images_) images.push_back(g.apply(im));
    RingMap out(source_, g.target(), std::move(images));
    out.verified_ = verified_ && g.verified();
    return out;
}

IsoCertificate verify_iso(RingMap forward, RingMap backward) {
    forward.verify();
    backward.verify();
    IsoCertificate cert;
    for (size_t v = 0; v < forward.source()->vars().size(); ++v) {
        Polynomial round = backward.apply(forward.images()[v]) - forward.source()->var(v);
        Polynomial residual = forward.source()->nf(round);
        if (!residual.is_zero())
            fail(ErrorKind::NotInverse,
                 "generator " + forward.source()->vars()[v] + " does not round-trip",
                 residual.str());
        cert.source_residuals.push_back(residual);
    }
    for (size_t v = 0; v < backward.source()->vars().size(); ++v) {
        Polynomial round = forward.apply(backward.images()[v]) - backward.source()->var(v);
        Polynomial residual = backward.source()->nf(round);
        if (!residual.is_zero())
            fail(ErrorKind::NotInverse,
                 "generator " + backward.source()->vars()[v] + " does not round-trip",
                 residual.str());
        cert.target_residuals.push_back(residual);
    }
    cert.forward = std::move(forward);
    cert.backward = std::move(backward);
    return cert;
}

SubalgebraSolver::SubalgebraSolver(const RingMap& f, const GbOptions& opts) : f_(f) {
    const auto& tvars = f.target()->vars();
    const auto& svars = f.source()->vars();
    std::vector<std::string> vars = tvars;
    for (const auto& s : svars) {
        std::string n = s;
        while (std::find(vars.begin(), vars.end(), n) != vars.end()) n += "'";
        vars.push_back(n);
    }
    AmbientPtr combined = make_ambient(vars, f.target()->ambient()->field,
                                       MonomialOrder::grevlex());
    target_to_combined_.resize(tvars.size());
    for (size_t v = 0; v < tvars.size(); ++v) target_to_combined_[v] = v;
    combined_to_source_.assign(vars.size(), -1);
    for (size_t v = 0; v < svars.size(); ++v)
        combined_to_source_[tvars.size() + v] = static_cast<long>(v);

    std::vector<Polynomial> gens;
    for (const auto& r : f.target()->relations())
        gens.push_back(r.mapped_vars(combined, target_to_combined_));
    for (size_t v = 0; v < svars.size(); ++v)
        gens.push_back(Polynomial::variable(combined, tvars.size() + v) -
                       f.images()[v].mapped_vars(combined, target_to_combined_));
    std::vector<size_t> elim(tvars.size());
    for (size_t v = 0; v < tvars.size(); ++v) elim[v] = v;
    EliminationResult er = eliminate(combined, gens, elim, opts);
    combined_ = er.block_ambient;
    gb_ = std::move(er.gb);
}

Polynomial SubalgebraSolver::express(const Polynomial& target) const {
    Polynomial moved = target.mapped_vars(combined_, target_to_combined_);
    Polynomial rem = gb_.nf(moved);
    std::vector<Term> out;
    for (const auto& t : rem.terms()) {
        Monomial m(f_.source()->vars().size());
        for (size_t v = 0; v < combined_->vars.size(); ++v) {
            if (t.mono[v] == 0) continue;
            if (combined_to_source_[v] < 0)
                fail(ErrorKind::NoPreimage,
                     "element " + target.str() + " is not in the image subalgebra", rem.str());
            m[static_cast<size_t>(combined_to_source_[v])] = t.mono[v];
        }
        out.push_back({t.coeff, std::move(m)});
    }
    Polynomial result = Polynomial::from_terms(f_.source()->ambient(), std::move(out));
    // confirm by pushing the candidate back through the map
    if (!f_.target()->equal(f_.apply(result), target))
        fail(ErrorKind::PreimageFailure, "expression check failed for " + target.str());
    return result;
}

Polynomial preimage(const RingMap& f, const Polynomial& target, const GbOptions& opts) {
    return SubalgebraSolver(f, opts).express(target);
}

RingPtr present_ring(std::vector<std::string> vars, std::vector<std::string> relations,
                     std::vector<std::pair<std::string, std::string>> invert, FieldDesc field,
                     MonomialOrder order) {
    PresentedRing::Spec spec;
    spec.vars = std::move(vars);
    spec.relations = std::move(relations);
    spec.invert = std::move(invert);
    spec.field = field;
    spec.order = std::move(order);
    return PresentedRing::present(spec);
}

}  // namespace cylab
