#ifndef CYLAB_GROEBNER_HPP
#define CYLAB_GROEBNER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "cylab/polynomial.hpp"

namespace cylab {

struct GbBudget {
    uint64_t max_steps = 1'000'000;
    int32_t max_degree = 64;
};

// Process-wide budget defaults, adjustable from the CLI.
GbBudget& global_budget();

struct GbOptions {
    GbOptions() : budget(global_budget()) {}
    explicit GbOptions(GbBudget b) : budget(b) {}
    GbBudget budget;
};

// Reduced Groebner basis with full cofactor provenance: every basis element
// knows an exact expression of itself as a combination of the input
// generators. Provenance is stored as a DAG and expanded on demand.
class GroebnerBasis {
  public:
    struct Reduction {
        Polynomial remainder;
        std::vector<Polynomial> combiners;  // one per basis element
    };

    // Provenance DAG node: either a unit row over one input or an exact
    // combination of earlier nodes.
    struct Node {
        long input = -1;
        std::vector<std::pair<size_t, Polynomial>> combo;
    };

    static GroebnerBasis assemble(AmbientPtr amb, std::vector<Polynomial> inputs,
                                  std::vector<Polynomial> basis, std::vector<Node> nodes,
                                  std::vector<size_t> basis_nodes);

    const AmbientPtr& ambient() const { return amb_; }
    const std::vector<Polynomial>& inputs() const { return inputs_; }
    const std::vector<Polynomial>& basis() const { return basis_; }
    bool is_unit_ideal() const;

    // Deterministic division: p = sum combiner_k * basis_k + remainder, no
    // remainder term divisible by any head. Divisors are scanned in basis
    // order, first match wins.
    Reduction reduce(const Polynomial& p) const;
    Reduction reduce(const Polynomial& p, const GbBudget& budget) const;
    Polynomial nf(const Polynomial& p) const;
    bool in_ideal(const Polynomial& p) const { return nf(p).is_zero(); }

    // Cofactor matrix over the inputs; row k satisfies
    // basis_k = sum_j row[k][j] * input_j exactly.
    const std::vector<std::vector<Polynomial>>& cofactors() const;
    bool verify_cofactors() const;

    // combiners over basis -> combiners over inputs
    std::vector<Polynomial> combiners_to_inputs(const std::vector<Polynomial>& combiners) const;

  private:
    AmbientPtr amb_;
    std::vector<Polynomial> inputs_;
    std::vector<Polynomial> basis_;
    std::vector<Node> nodes_;
    std::vector<size_t> basis_nodes_;
    mutable std::vector<std::vector<Polynomial>> cofactors_;
};

// Buchberger with normal (minimal lcm degree) selection, deterministic tie
// break by generator indices, Gebauer-Moeller pair pruning, and speculative
// parallel reduction of pending S-polynomials. The output, including the
// cofactor provenance, is byte-identical for any worker count.
GroebnerBasis buchberger(const AmbientPtr& amb, std::vector<Polynomial> gens,
                         const GbOptions& opts = {});

// Textbook serial loop (no speculation, no pair pruning beyond the coprime
// criterion). Kept as the reference implementation for tests and the
// benchmark; must produce the same reduced basis.
GroebnerBasis buchberger_reference(const AmbientPtr& amb, std::vector<Polynomial> gens,
                                   const GbOptions& opts = {});

// Exact cofactor identity sat^N * target = sum combiner_i * gen_i.
struct MembershipCertificate {
    std::vector<Polynomial> generators;
    Polynomial target;
    std::optional<Polynomial> saturator;
    unsigned exponent = 0;
    std::vector<Polynomial> combiners;  // one per generator

    bool verify() const;
};

// Smallest N <= max_exponent with sat^N * target in (gens); NotMember if none.
MembershipCertificate membership(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                                 const Polynomial& target,
                                 const std::optional<Polynomial>& saturate_by = std::nullopt,
                                 unsigned max_exponent = 0, const GbOptions& opts = {});

struct EliminationResult {
    GroebnerBasis gb;                    // over the block-order ambient
    AmbientPtr block_ambient;            // same vars, elimination block dominant
    std::vector<Polynomial> eliminated;  // basis elements free of the elim vars
};

EliminationResult eliminate(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                            const std::vector<size_t>& elim_vars, const GbOptions& opts = {});

// Generators of (gens) : s^infinity via an auxiliary inverse variable,
// returned in the original ambient.
std::vector<Polynomial> saturation(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                                   const Polynomial& s, const GbOptions& opts = {});

// Normal forms of many polynomials against one basis, computed in parallel,
// results in input order.
std::vector<Polynomial> nf_batch(const std::vector<Polynomial>& ps, const GroebnerBasis& gb);

}  // namespace cylab

#endif
