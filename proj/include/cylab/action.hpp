#ifndef CYLAB_ACTION_HPP
#define CYLAB_ACTION_HPP

#include "cylab/ring.hpp"

namespace cylab {

// Monomial action of the cyclic group mu_l: the generator scales each ring
// variable v by zeta^{weights[v]}. Verification checks that every relation
// maps back into the relation ideal, which forces twist-homogeneity.
struct MonomialGroupAction {
    unsigned order = 1;
    std::vector<int> weights;  // one per ring variable
    bool verified = false;

    int twist_of(const Monomial& m) const {
        long t = 0;
        for (size_t v = 0; v < m.nvars(); ++v) t += static_cast<long>(weights[v]) * m[v];
        long r = t % static_cast<long>(order);
        if (r < 0) r += order;
        return static_cast<int>(r);
    }
};

// Throws RelationNotPreserved if some relation's twist is not in the ideal;
// returns the action marked verified. The check runs over Q(zeta_l) when
// needed.
MonomialGroupAction verify_action(const RingPtr& ring, MonomialGroupAction action,
                                  const GbOptions& opts = {});

// Image of p under the k-th power of the action generator. Requires the
// ambient field to contain zeta_l unless l <= 2.
Polynomial apply_action(const MonomialGroupAction& action, const Polynomial& p, long k = 1);

// Twist-homogeneous component of p (termwise on the canonical form).
Polynomial twist_component(const MonomialGroupAction& action, const Polynomial& p, int twist);

// sigma_target . f = f . sigma_source on every generator; throws
// NotEquivariant naming the generator otherwise.
void equivariance_check_map(const RingMap& f, const MonomialGroupAction& source_action,
                            const MonomialGroupAction& target_action, const GbOptions& opts = {});

struct InvariantSubring {
    std::vector<Polynomial> generators;     // twist-zero monomials in the big ring
    std::vector<std::string> names;         // variable names in the presentation
    RingPtr ring;                           // presentation of the invariant subring
    RingMap inclusion;                      // ring -> big ring, g_i -> generator_i
    std::shared_ptr<SubalgebraSolver> solver;  // expresses invariants through the inclusion

    Polynomial express(const Polynomial& invariant) const { return solver->express(invariant); }
};

// Generators of the invariant subring up to the degree bound: twist-zero
// monomials enumerated by increasing degree with deterministic pruning. For
// monomial actions the bound l is enough (Noether); smaller bounds raise
// BoundTooSmall.
InvariantSubring invariant_subring(const RingPtr& ring, const MonomialGroupAction& action,
                                   int32_t degree_bound, const GbOptions& opts = {});

}  // namespace cylab

#endif
