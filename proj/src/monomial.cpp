#include "cylab/monomial.hpp"

namespace cylab {

namespace {

// Compare a slice of the priority permutation under lex or grevlex.
int compare_slice(const Monomial& a, const Monomial& b, const std::vector<int>& prio,
                  size_t begin, size_t end, OrderKind kind) {
    if (kind == OrderKind::Lex) {
        for (size_t k = begin; k < end; ++k) {
            int v = prio[k];
            if (a[v] != b[v]) return a[v] > b[v] ? 1 : -1;
        }
        return 0;
    }
    // grevlex: degree first, ties broken by the least significant differing
    // variable, smaller exponent winning
    int32_t da = 0, db = 0;
    for (size_t k = begin; k < end; ++k) {
        da += a[prio[k]];
        db += b[prio[k]];
    }
    if (da != db) return da > db ? 1 : -1;
    for (size_t k = end; k-- > begin;) {
        int v = prio[k];
        if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    size_t n = a.nvars();
    std::vector<int> identity;
    const std::vector<int>* prio = &priority;
    if (priority.empty()) {
        identity.resize(n);
        for (size_t i = 0; i < n; ++i) identity[i] = static_cast<int>(i);
        prio = &identity;
    }
    if (kind == OrderKind::Block) {
        if (int c = compare_slice(a, b, *prio, 0, split, OrderKind::Grevlex)) return c;
        return compare_slice(a, b, *prio, split, n, inner);
    }
    return compare_slice(a, b, *prio, 0, n, kind);
}

std::string MonomialOrder::str() const {
    switch (kind) {
        case OrderKind::Lex: return "lex";
        case OrderKind::Grevlex: return "grevlex";
        case OrderKind::Block: return "block(" + std::to_string(split) + ")";
    }
    return "?";
}

}  // namespace cylab
