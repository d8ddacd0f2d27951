#ifndef CYLAB_DERIVATION_HPP
#define CYLAB_DERIVATION_HPP

#include <map>
#include <optional>
#include <string>

#include "cylab/action.hpp"
#include "cylab/ring.hpp"

namespace cylab {

// Derivation of a presented ring, given by generator images. Images of
// inverse variables are forced to -w^2 D(f) so the extension to the
// localization is unique; construction verifies that every relation maps
// into the relation ideal.
class Derivation {
  public:
    // images keyed by variable name, for non-inverse variables only
    static Derivation make(const RingPtr& ring, const std::map<std::string, std::string>& images,
                           std::string name = "D");
    static Derivation make(const RingPtr& ring, std::vector<Polynomial> base_images,
                           std::string name = "D");
    static Derivation zero(const RingPtr& ring, std::string name = "0");

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& images() const { return images_; }
    const std::string& name() const { return name_; }
    bool is_zero() const;

    // Leibniz extension followed by normal form.
    Polynomial apply(const Polynomial& p) const;

    std::string canonical_key() const;

  private:
    // Leibniz sum over the first `upto` variables, no normal form.
    Polynomial apply_partial(const Polynomial& p, size_t upto) const;

    RingPtr ring_;
    std::vector<Polynomial> images_;
    std::string name_;
};

// Chains g, D(g), ..., D^{n-1}(g) of nonzero normal forms, one per ring
// generator; the next application is zero. Total nilpotency on generators
// gives local nilpotency on the whole ring in characteristic zero.
struct NilpotencyCertificate {
    std::vector<std::vector<Polynomial>> chains;  // chains[v][k] = D^k(var v)
    int32_t bound = 0;

    size_t chain_length(size_t v) const { return chains[v].size(); }
};

int32_t default_nilpotency_bound(const Derivation& d);

// Certifies local nilpotency within the bound, or raises BoundExceeded with
// the generator and its last nonzero normal form.
NilpotencyCertificate check_locally_nilpotent(const Derivation& d, int32_t bound = 0);

// The exponential co-action R -> R[w], v -> sum w^k D^k(v) / k!.
struct ExponentialMap {
    RingPtr cylinder;
    size_t w_index = 0;
    RingMap map;  // R -> R[w], verified
};

ExponentialMap exponential(const Derivation& d, const NilpotencyCertificate& cert,
                           const std::string& parameter = "w");

// exp(w) followed by exp(-w) is the identity on every generator.
bool exponential_round_trip(const Derivation& d, const NilpotencyCertificate& cert);

struct KernelEvidence {
    bool member = false;
    Polynomial evidence;  // normal form of D(p)
};

KernelEvidence kernel_member(const Derivation& d, const Polynomial& p);

struct Slice {
    Polynomial element;
    Polynomial evidence;  // normal form of D(element) - 1, identically zero
};

// Slice search: solve D(ansatz) = 1 over all monomials of degree <= bound,
// restricted to the weight lattice every compatible grading forces. The
// deepening schedule and pivoting are deterministic.
Slice find_slice(const Derivation& d, int32_t degree_bound, const GbOptions& opts = {});

// Trivialization against a designated kernel inclusion: produces the
// certified isomorphism R ~ A[w] with w mapped to the slice. The kernel of D
// must be exactly the image of `kernel_inclusion`, which is checked by
// expressing every Dixmier projection through it.
struct Trivialization {
    std::vector<Polynomial> kernel_generators;  // Dixmier images of the ring generators
    RingPtr cylinder;                           // A[w]
    IsoCertificate iso;                         // forward: R -> A[w], backward: A[w] -> R
};

Trivialization trivialize_over(const Derivation& d, const NilpotencyCertificate& cert,
                               const Slice& slice, const RingMap& kernel_inclusion,
                               const std::string& parameter = "w",
                               const GbOptions& opts = {});

// Slice trivialization with the kernel presented from scratch: returns the
// kernel presentation K and the certified isomorphism R ~ K[w].
struct DixmierTrivialization {
    std::vector<Polynomial> kernel_generators;
    RingPtr kernel;     // presentation K of ker D
    RingMap inclusion;  // K -> R
    Trivialization trivialization;
};

DixmierTrivialization dixmier_trivialize(const Derivation& d, const NilpotencyCertificate& cert,
                                         const Slice& slice, const std::string& parameter = "w",
                                         const GbOptions& opts = {});

// Certificate that the generator images together with the non-localized
// relations generate the unit ideal after clearing powers of the inverted
// elements: the induced group action has no fixed points.
MembershipCertificate fixed_point_free(const Derivation& d, unsigned max_exponent = 8,
                                       const GbOptions& opts = {});

// Unique lift through a finite cover: agrees with d on the base generators,
// sends each forced variable to zero, and is re-certified locally nilpotent.
struct LiftedDerivation {
    Derivation derivation;
    NilpotencyCertificate certificate;
};

LiftedDerivation lift_through_cover(const Derivation& d, const RingMap& cover,
                                    const std::vector<std::string>& forced_zero_vars,
                                    int32_t nilpotency_bound = 0);

// phi . D . phi^{-1} as a verified derivation on the iso's target.
Derivation transport_derivation(const IsoCertificate& iso, const Derivation& d,
                                std::string name = "D'");

// Smallest N with f^N * D mapping every base generator to a polynomial free
// of inverse variables; returns the restricted derivation on the
// un-localized presentation.
struct ClearedDerivation {
    unsigned exponent = 0;
    Derivation derivation;  // on the polynomial presentation
};

ClearedDerivation clear_denominators(const Derivation& d, const Polynomial& f,
                                     unsigned max_exponent = 16, const GbOptions& opts = {});

// Equivariance of a derivation with a verified action: sigma . D = D . sigma.
void equivariance_check_derivation(const Derivation& d, const MonomialGroupAction& action,
                                   const GbOptions& opts = {});

}  // namespace cylab

#endif
