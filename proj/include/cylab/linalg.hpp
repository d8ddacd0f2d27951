#ifndef CYLAB_LINALG_HPP
#define CYLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "cylab/field.hpp"

namespace cylab {

// Dense exact linear system A x = b. Elimination scans columns left to right
// and picks the first row with a nonzero entry, so the solution (free
// variables set to zero) is deterministic.
class LinearSystem {
  public:
    LinearSystem(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), a_(rows, std::vector<FieldElement>(cols)), b_(rows) {}

    void set(size_t r, size_t c, FieldElement v) { a_[r][c] = std::move(v); }
    void add(size_t r, size_t c, const FieldElement& v) { a_[r][c] = a_[r][c] + v; }
    void set_rhs(size_t r, FieldElement v) { b_[r] = std::move(v); }

    std::optional<std::vector<FieldElement>> solve() const;

    // Primitive integer basis of the rational nullspace of A (b ignored).
    std::vector<std::vector<Rational>> rational_nullspace() const;

  private:
    size_t rows_, cols_;
    std::vector<std::vector<FieldElement>> a_;
    std::vector<FieldElement> b_;
};

}  // namespace cylab

#endif
