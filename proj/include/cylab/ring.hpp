#ifndef CYLAB_RING_HPP
#define CYLAB_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cylab/groebner.hpp"

namespace cylab {

class PresentedRing;
using RingPtr = std::shared_ptr<const PresentedRing>;

struct InvertedElement {
    Polynomial element;  // over the full ambient
    size_t inverse_var;  // index of the adjoined inverse variable
};

// Finitely presented commutative algebra. Localization is encoded by inverse
// variables: inverting f adjoins w with the relation w*f - 1. Element
// equality is normal-form equality against the cached reduced basis. A unit
// relation ideal is a reported state, not an error.
class PresentedRing {
  public:
    struct Spec {
        std::vector<std::string> vars;
        std::vector<std::string> relations;
        // element to invert, with an optional name for the inverse variable
        std::vector<std::pair<std::string, std::string>> invert;
        FieldDesc field;
        MonomialOrder order = MonomialOrder::grevlex();
    };

    static RingPtr present(const Spec& spec, const GbOptions& opts = {});
    // Programmatic variant: relations/inverted parsed over the declared vars.
    static RingPtr present(std::vector<std::string> vars, std::vector<Polynomial> relations,
                           std::vector<std::pair<Polynomial, std::string>> invert,
                           FieldDesc field = {}, MonomialOrder order = MonomialOrder::grevlex(),
                           const GbOptions& opts = {});

    const AmbientPtr& ambient() const { return amb_; }
    const std::vector<std::string>& vars() const { return amb_->vars; }
    size_t base_var_count() const { return base_vars_; }
    bool is_inverse_var(size_t v) const { return v >= base_vars_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    const std::vector<InvertedElement>& inverted() const { return inverted_; }
    const GroebnerBasis& basis() const { return *gb_; }
    bool inconsistent() const { return inconsistent_; }

    Polynomial parse(const std::string& text) const { return parse_polynomial(amb_, text); }
    Polynomial nf(const Polynomial& p) const { return gb_->nf(p); }
    bool equal(const Polynomial& p, const Polynomial& q) const { return nf(p - q).is_zero(); }
    Polynomial var(size_t v) const { return Polynomial::variable(amb_, v); }
    Polynomial var(const std::string& name) const {
        return var(amb_->var_index_checked(name));
    }
    Polynomial zero() const { return Polynomial::zero(amb_); }
    Polynomial one() const { return Polynomial::constant(amb_, FieldElement::one()); }

    // Stable content key: equal keys mean literally the same presentation.
    std::string canonical_key() const;

    // R[new_var]: same relations, one fresh polynomial variable at the end.
    static RingPtr tensor_with_polynomial_line(const RingPtr& ring, const std::string& new_var,
                                               const GbOptions& opts = {});

  private:
    AmbientPtr amb_;
    size_t base_vars_ = 0;
    std::vector<Polynomial> relations_;
    std::vector<InvertedElement> inverted_;
    std::shared_ptr<const GroebnerBasis> gb_;
    bool inconsistent_ = false;
};

// Homomorphism given by generator images. Verification checks that every
// source relation maps into the target relation ideal.
class RingMap {
  public:
    RingMap() = default;
    RingMap(RingPtr source, RingPtr target, std::vector<Polynomial> images);

    static RingMap identity(const RingPtr& ring);

    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::vector<Polynomial>& images() const { return images_; }
    bool verified() const { return verified_; }

    // Throws RelationNotPreserved naming the offending relation.
    RingMap& verify();

    Polynomial apply(const Polynomial& p) const;  // substitute + normal form
    Polynomial apply_raw(const Polynomial& p) const;  // substitute only

    // g after *this; requires target == g.source
    RingMap then(const RingMap& g) const;

  private:
    RingPtr source_, target_;
    std::vector<Polynomial> images_;
    bool verified_ = false;
};

// Round-trip evidence for a ring isomorphism: both maps verified and
// backward(forward(v)) - v, forward(backward(v)) - v normal-form to zero for
// every generator.
struct IsoCertificate {
    RingMap forward;
    RingMap backward;
    std::vector<Polynomial> source_residuals;
    std::vector<Polynomial> target_residuals;
};

IsoCertificate verify_iso(RingMap forward, RingMap backward);

// Batched subalgebra membership through a ring map: one graph-ideal
// elimination shared by any number of expression queries.
class SubalgebraSolver {
  public:
    SubalgebraSolver(const RingMap& f, const GbOptions& opts = {});

    // Element of the source with f(result) = target; NoPreimage if target is
    // outside the image subalgebra.
    Polynomial express(const Polynomial& target) const;

  private:
    RingMap f_;
    AmbientPtr combined_;
    GroebnerBasis gb_;
    std::vector<size_t> target_to_combined_;
    std::vector<long> combined_to_source_;
};

Polynomial preimage(const RingMap& f, const Polynomial& target, const GbOptions& opts = {});

// Convenience wrapper over PresentedRing::present with string inputs.
RingPtr present_ring(std::vector<std::string> vars, std::vector<std::string> relations = {},
                     std::vector<std::pair<std::string, std::string>> invert = {},
                     FieldDesc field = {}, MonomialOrder order = MonomialOrder::grevlex());

}  // namespace cylab

#endif
