#ifndef CYLAB_TORSOR_HPP
#define CYLAB_TORSOR_HPP

#include <optional>

#include "cylab/derivation.hpp"

namespace cylab {

// Matching data for the fiber-product carrier: which second-side variables
// are identified with first-side ones, the divisor variable whose powers are
// divided out, and the branch pairs seeding the divided variables.
struct MatchingData {
    std::vector<std::pair<std::string, std::string>> shared;  // (A2 var, A1 var)
    std::string divisor;                                      // first-side variable
    std::vector<std::pair<std::string, std::string>> branch;  // (A2 var, A1 expression)
    int32_t degree_bound = 16;
    int32_t depth_bound = 4;
};

// Adjoined divided variable: divisor^depth * name = target - q.
struct DividedInfo {
    std::string name;
    std::string target;
    int32_t depth = 1;
};

// Carrier ring with two commuting bundle structures. `over1` kills the first
// injected side and moves the second (the bundle W -> Spec A1), and vice
// versa. The construction is self-certifying: it only claims that the two
// structures exist, which the downstream trivializations then certify.
struct FiberCarrier {
    RingPtr carrier;
    RingMap inj1, inj2;
    Derivation over1, over2;
    std::vector<DividedInfo> divided;  // adjoined divided variables, in order
    size_t divisor_index = 0;
};

FiberCarrier matched_fiber_product(const RingPtr& A1, const Derivation& D1, const RingPtr& A2,
                                   const Derivation& D2, const MatchingData& matching,
                                   const GbOptions& opts = {});

// Both trivializations of a carrier: W ~ A1[w] against over1 and W ~ A2[w]
// against over2. Slices are found by the bounded ansatz search with a single
// doubling retry; with an action present they are projected to their
// invariant component first.
struct BundleTrivializations {
    NilpotencyCertificate cert1, cert2;
    Slice slice1, slice2;
    Trivialization triv1, triv2;
};

BundleTrivializations trivialize_pair(const FiberCarrier& carrier, int32_t slice_degree_bound,
                                      const std::optional<MonomialGroupAction>& action = {},
                                      const GbOptions& opts = {});

struct CylinderIsoCertificate {
    RingPtr cylinder1, cylinder2;  // A1[w], A2[w]
    IsoCertificate iso;            // forward: A1[w] -> A2[w]
    // provenance
    std::optional<FiberCarrier> carrier;
    std::optional<BundleTrivializations> trivializations;
    bool degenerate = false;  // identical inputs short-circuit
};

struct CylinderIsoConfig {
    int32_t degree_bound = 16;
    int32_t depth_bound = 4;
    std::string parameter = "w";
};

// End-to-end: carrier, both trivializations, composed certificate
// A1[w] ~ A2[w]. Identical inputs produce the identity certificate.
CylinderIsoCertificate cylinder_iso(const RingPtr& A1, const Derivation& D1, const RingPtr& A2,
                                    const Derivation& D2, const MatchingData& matching,
                                    const CylinderIsoConfig& config = {},
                                    const GbOptions& opts = {});

// The equivariant run with descent: the carrier is built upstairs from the
// covered presentations, all maps are checked equivariant, and everything is
// pushed down to the invariant subrings, producing a certified isomorphism
// of the downstairs cylinders.
struct EquivariantDescentInput {
    RingPtr down1, down2;  // downstairs coordinate rings
    RingMap j1, j2;        // down_i -> A_i, landing in the invariants
    MonomialGroupAction act1, act2;  // verified actions on A1, A2
};

struct EquivariantCylinderIso {
    CylinderIsoCertificate upstairs;    // A1[w] ~ A2[w]
    CylinderIsoCertificate downstairs;  // down1[w] ~ down2[w]
    InvariantSubring invariants;        // of the carrier
    std::vector<Polynomial> consistency_residuals;  // upstairs vs downstairs, all zero
};

EquivariantCylinderIso cylinder_iso_equivariant(const RingPtr& A1, const Derivation& D1,
                                                const RingPtr& A2, const Derivation& D2,
                                                const MatchingData& matching,
                                                const EquivariantDescentInput& descent,
                                                const CylinderIsoConfig& config = {},
                                                const GbOptions& opts = {});

}  // namespace cylab

#endif
