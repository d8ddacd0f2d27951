#include "cylab/linalg.hpp"

namespace cylab {

std::optional<std::vector<FieldElement>> LinearSystem::solve() const {
    auto a = a_;
    auto b = b_;
    std::vector<long> pivot_row_of_col(cols_, -1);
    size_t next_row = 0;
    for (size_t c = 0; c < cols_ && next_row < rows_; ++c) {
        size_t p = next_row;
        while (p < rows_ && a[p][c].is_zero()) ++p;
        if (p == rows_) continue;
        std::swap(a[p], a[next_row]);
        std::swap(b[p], b[next_row]);
        FieldElement inv = a[next_row][c].inverse();
        for (size_t j = c; j < cols_; ++j) a[next_row][j] = a[next_row][j] * inv;
        b[next_row] = b[next_row] * inv;
        for (size_t r = 0; r < rows_; ++r) {
            if (r == next_row || a[r][c].is_zero()) continue;
            FieldElement f = a[r][c];
            for (size_t j = c; j < cols_; ++j) a[r][j] = a[r][j] - f * a[next_row][j];
            b[r] = b[r] - f * b[next_row];
        }
        pivot_row_of_col[c] = static_cast<long>(next_row);
        ++next_row;
    }
    for (size_t r = next_row; r < rows_; ++r)
        if (!b[r].is_zero()) return std::nullopt;
    std::vector<FieldElement> x(cols_, FieldElement::zero());
    for (size_t c = 0; c < cols_; ++c)
        if (pivot_row_of_col[c] >= 0) x[c] = b[static_cast<size_t>(pivot_row_of_col[c])];
    return x;
}

std::vector<std::vector<Rational>> LinearSystem::rational_nullspace() const {
    auto a = a_;
    std::vector<long> pivot_row_of_col(cols_, -1);
    size_t next_row = 0;
    for (size_t c = 0; c < cols_ && next_row < rows_; ++c) {
        size_t p = next_row;
        while (p < rows_ && a[p][c].is_zero()) ++p;
        if (p == rows_) continue;
        std::swap(a[p], a[next_row]);
        FieldElement inv = a[next_row][c].inverse();
        for (size_t j = c; j < cols_; ++j) a[next_row][j] = a[next_row][j] * inv;
        for (size_t r = 0; r < rows_; ++r) {
            if (r == next_row || a[r][c].is_zero()) continue;
            FieldElement f = a[r][c];
            for (size_t j = c; j < cols_; ++j) a[r][j] = a[r][j] - f * a[next_row][j];
        }
        pivot_row_of_col[c] = static_cast<long>(next_row);
        ++next_row;
    }
    std::vector<std::vector<Rational>> basis;
    for (size_t fc = 0; fc < cols_; ++fc) {
        if (pivot_row_of_col[fc] >= 0) continue;
        std::vector<Rational> v(cols_, Rational(0));
        v[fc] = Rational(1);
        for (size_t c = 0; c < cols_; ++c) {
            if (pivot_row_of_col[c] < 0) continue;
            const FieldElement& e = a[static_cast<size_t>(pivot_row_of_col[c])][fc];
            if (!e.is_rational())
                fail(ErrorKind::FieldMismatch, "nullspace expects rational entries");
            v[c] = -e.rational();
        }
        // scale to a primitive integer vector
        mpz_class den(1);
        for (const auto& q : v) den = den * q.raw().get_den() / gcd(den, mpz_class(q.raw().get_den()));
        mpz_class g(0);
        std::vector<Rational> w;
        w.reserve(v.size());
        for (const auto& q : v) {
            mpq_class scaled = q.raw() * den;
            g = gcd(g, mpz_class(scaled.get_num()));
            w.push_back(Rational(scaled));
        }
        if (g != 0)
            for (auto& q : w) q = Rational(mpq_class(q.raw() / g));
        basis.push_back(std::move(w));
    }
    return basis;
}

}  // namespace cylab
