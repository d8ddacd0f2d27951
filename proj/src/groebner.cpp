#include "cylab/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cylab/parallel.hpp"

namespace cylab {

namespace {

struct MonoGreater {
    const MonomialOrder* ord;
    bool operator()(const Monomial& a, const Monomial& b) const { return ord->compare(a, b) > 0; }
};

using WorkPoly = std::map<Monomial, FieldElement, MonoGreater>;

WorkPoly to_work(const Polynomial& p, const MonomialOrder& ord) {
    WorkPoly w{MonoGreater{&ord}};
    for (const auto& t : p.terms()) w.emplace(t.mono, t.coeff);
    return w;
}

struct BudgetState {
    const GbBudget* budget;
    uint64_t steps = 0;

    void step(int32_t degree) {
        if (++steps > budget->max_steps)
            fail(ErrorKind::ResourceBudgetExceeded, "reduction step budget exhausted");
        if (degree > budget->max_degree)
            fail(ErrorKind::ResourceBudgetExceeded, "total degree cap exceeded");
    }

    void charge(uint64_t n) {
        steps += n;
        if (steps > budget->max_steps)
            fail(ErrorKind::ResourceBudgetExceeded, "reduction step budget exhausted");
    }
};

struct RawReduction {
    Polynomial remainder;
    std::vector<std::pair<size_t, Polynomial>> combiners;  // (divisor index, combiner)
    uint64_t steps = 0;
};

// Division with first-match divisor selection in list order. `heads` must be
// monic leads of `divisors`.
RawReduction reduce_raw(const Polynomial& p, const std::vector<Polynomial>& divisors,
                        BudgetState& bs) {
    const AmbientPtr& amb = p.ambient();
    const MonomialOrder& ord = amb->order;
    const uint64_t steps_at_entry = bs.steps;
    WorkPoly work = to_work(p, ord);
    std::vector<Term> rem;
    std::map<size_t, WorkPoly> combiners;
    while (!work.empty()) {
        auto lead = *work.begin();
        size_t pick = divisors.size();
        for (size_t k = 0; k < divisors.size(); ++k) {
            if (!divisors[k].is_zero() && divisors[k].lead().mono.divides(lead.first)) {
                pick = k;
                break;
            }
        }
        if (pick == divisors.size()) {
            rem.push_back({lead.second, lead.first});
            work.erase(work.begin());
            continue;
        }
        bs.step(lead.first.degree());
        const Polynomial& g = divisors[pick];
        FieldElement c = lead.second / g.lead().coeff;
        Monomial m = lead.first / g.lead().mono;
        auto& comb = combiners.try_emplace(pick, WorkPoly{MonoGreater{&ord}}).first->second;
        auto cit = comb.try_emplace(m, FieldElement::zero()).first;
        cit->second = cit->second + c;
        for (const auto& t : g.terms()) {
            Monomial tm = t.mono * m;
            FieldElement tc = t.coeff * c;
            auto wit = work.try_emplace(tm, FieldElement::zero()).first;
            wit->second = wit->second - tc;
            if (wit->second.is_zero()) work.erase(wit);
        }
    }
    RawReduction out;
    out.steps = bs.steps - steps_at_entry;
    out.remainder = Polynomial::from_terms(amb, std::move(rem));
    for (auto& [k, comb] : combiners) {
        std::vector<Term> ts;
        ts.reserve(comb.size());
        for (auto& [m, c] : comb)
            if (!c.is_zero()) ts.push_back({c, m});
        Polynomial cp = Polynomial::from_terms(amb, std::move(ts));
        if (!cp.is_zero()) out.combiners.emplace_back(k, std::move(cp));
    }
    return out;
}

}  // namespace

GbBudget& global_budget() {
    static GbBudget b;
    return b;
}

GroebnerBasis GroebnerBasis::assemble(AmbientPtr amb, std::vector<Polynomial> inputs,
                                      std::vector<Polynomial> basis, std::vector<Node> nodes,
                                      std::vector<size_t> basis_nodes) {
    GroebnerBasis g;
    g.amb_ = std::move(amb);
    g.inputs_ = std::move(inputs);
    g.basis_ = std::move(basis);
    g.nodes_ = std::move(nodes);
    g.basis_nodes_ = std::move(basis_nodes);
    return g;
}

bool GroebnerBasis::is_unit_ideal() const {
    return basis_.size() == 1 && basis_[0].is_constant() && !basis_[0].is_zero();
}

GroebnerBasis::Reduction GroebnerBasis::reduce(const Polynomial& p) const {
    return reduce(p, global_budget());
}

GroebnerBasis::Reduction GroebnerBasis::reduce(const Polynomial& p, const GbBudget& budget) const {
    check_same_ambient(p, Polynomial::zero(amb_));
    BudgetState bs{&budget};
    RawReduction raw = reduce_raw(p, basis_, bs);
    Reduction r;
    r.remainder = std::move(raw.remainder);
    r.combiners.assign(basis_.size(), Polynomial::zero(amb_));
    for (auto& [k, c] : raw.combiners) r.combiners[k] = std::move(c);
    return r;
}

Polynomial GroebnerBasis::nf(const Polynomial& p) const { return reduce(p).remainder; }

const std::vector<std::vector<Polynomial>>& GroebnerBasis::cofactors() const {
    if (!cofactors_.empty() || basis_.empty()) return cofactors_;
    std::vector<std::vector<Polynomial>> rows(nodes_.size());
    std::vector<char> done(nodes_.size(), 0);
    // nodes only reference earlier nodes, so one forward pass suffices; rows
    // are expanded lazily along the subgraph reachable from the basis
    std::vector<char> needed(nodes_.size(), 0);
    std::vector<size_t> stack(basis_nodes_.begin(), basis_nodes_.end());
    while (!stack.empty()) {
        size_t n = stack.back();
        stack.pop_back();
        if (needed[n]) continue;
        needed[n] = 1;
        for (const auto& [child, c] : nodes_[n].combo) stack.push_back(child);
    }
    for (size_t n = 0; n < nodes_.size(); ++n) {
        if (!needed[n]) continue;
        std::vector<Polynomial> row(inputs_.size(), Polynomial::zero(amb_));
        if (nodes_[n].input >= 0) {
            row[static_cast<size_t>(nodes_[n].input)] =
                Polynomial::constant(amb_, FieldElement::one());
        } else {
            for (const auto& [child, c] : nodes_[n].combo)
                for (size_t j = 0; j < inputs_.size(); ++j)
                    if (!rows[child][j].is_zero()) row[j] = row[j] + c * rows[child][j];
        }
        rows[n] = std::move(row);
    }
    cofactors_.reserve(basis_nodes_.size());
    for (size_t id : basis_nodes_) cofactors_.push_back(rows[id]);
    return cofactors_;
}

bool GroebnerBasis::verify_cofactors() const {
    const auto& rows = cofactors();
    for (size_t k = 0; k < basis_.size(); ++k) {
        Polynomial acc = Polynomial::zero(amb_);
        for (size_t j = 0; j < inputs_.size(); ++j)
            if (!rows[k][j].is_zero()) acc = acc + rows[k][j] * inputs_[j];
        if (!(acc == basis_[k])) return false;
    }
    return true;
}

std::vector<Polynomial> GroebnerBasis::combiners_to_inputs(
    const std::vector<Polynomial>& combiners) const {
    const auto& rows = cofactors();
    std::vector<Polynomial> out(inputs_.size(), Polynomial::zero(amb_));
    for (size_t k = 0; k < basis_.size(); ++k) {
        if (combiners[k].is_zero()) continue;
        for (size_t j = 0; j < inputs_.size(); ++j)
            if (!rows[k][j].is_zero()) out[j] = out[j] + combiners[k] * rows[k][j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Buchberger

namespace {

struct Pair {
    int32_t lcm_degree;
    size_t i, j;  // i < j

    bool operator<(const Pair& o) const {
        if (lcm_degree != o.lcm_degree) return lcm_degree < o.lcm_degree;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

struct Engine {
    AmbientPtr amb;
    const GbOptions& opts;
    BudgetState bs;

    std::vector<Polynomial> inputs;
    std::vector<Polynomial> basis;           // monic, append-only during the loop
    std::vector<size_t> basis_node;          // provenance node per basis element
    std::vector<GroebnerBasis::Node> nodes;
    std::set<Pair> pending;

    Engine(AmbientPtr a, std::vector<Polynomial> gens, const GbOptions& o)
        : amb(std::move(a)), opts(o), bs{&o.budget}, inputs(std::move(gens)) {}

    Monomial lcm_of(size_t i, size_t j) const {
        return basis[i].lead().mono.lcm(basis[j].lead().mono);
    }

    // Gebauer-Moeller update for a freshly appended element t.
    void update_pairs(size_t t) {
        const Monomial& ht = basis[t].lead().mono;
        // prune old pairs strictly improved by the new head
        for (auto it = pending.begin(); it != pending.end();) {
            Monomial l = lcm_of(it->i, it->j);
            if (ht.divides(l) && !(lcm_of(it->i, t) == l) && !(lcm_of(it->j, t) == l))
                it = pending.erase(it);
            else
                ++it;
        }
        struct Cand {
            size_t i;
            Monomial lcm;
            bool coprime;
        };
        std::vector<Cand> cands;
        cands.reserve(t);
        for (size_t i = 0; i < t; ++i)
            cands.push_back({i, lcm_of(i, t), basis[i].lead().mono.coprime(ht)});
        // criterion M: drop candidates whose lcm is a proper multiple of
        // another candidate's lcm
        std::vector<char> keep(cands.size(), 1);
        for (size_t a = 0; a < cands.size(); ++a) {
            if (!keep[a]) continue;
            for (size_t b = 0; b < cands.size(); ++b) {
                if (a == b) continue;
                if (cands[b].lcm.divides(cands[a].lcm) && cands[b].lcm != cands[a].lcm) {
                    keep[a] = 0;
                    break;
                }
            }
        }
        // criterion F: one representative per lcm value; a coprime member
        // discharges the whole class (criterion B)
        for (size_t a = 0; a < cands.size(); ++a) {
            if (!keep[a]) continue;
            bool class_coprime = cands[a].coprime;
            for (size_t b = a + 1; b < cands.size(); ++b) {
                if (keep[b] && cands[b].lcm == cands[a].lcm) {
                    class_coprime = class_coprime || cands[b].coprime;
                    keep[b] = 0;
                }
            }
            if (class_coprime) keep[a] = 0;
        }
        for (size_t a = 0; a < cands.size(); ++a)
            if (keep[a]) pending.insert({cands[a].lcm.degree(), cands[a].i, t});
    }

    Polynomial spoly(size_t i, size_t j) const {
        Monomial l = lcm_of(i, j);
        bs_check_degree(l.degree());
        Monomial mi = l / basis[i].lead().mono;
        Monomial mj = l / basis[j].lead().mono;
        return basis[i].term_mul(FieldElement::one(), mi) -
               basis[j].term_mul(FieldElement::one(), mj);
    }

    void bs_check_degree(int32_t d) const {
        if (d > opts.budget.max_degree)
            fail(ErrorKind::ResourceBudgetExceeded,
                 "S-pair degree " + std::to_string(d) + " exceeds cap " +
                     std::to_string(opts.budget.max_degree));
    }

    // Append monic element with provenance combo, then update the pair set.
    void append(Polynomial p, GroebnerBasis::Node node) {
        FieldElement lc = p.lead().coeff;
        if (!lc.is_one()) {
            FieldElement inv = lc.inverse();
            p = p.scaled(inv);
            for (auto& [child, c] : node.combo) c = c.scaled(inv);
        }
        nodes.push_back(std::move(node));
        basis.push_back(std::move(p));
        basis_node.push_back(nodes.size() - 1);
        update_pairs(basis.size() - 1);
    }

    void seed() {
        for (size_t i = 0; i < inputs.size(); ++i) {
            if (inputs[i].is_zero()) continue;
            GroebnerBasis::Node input_node;
            input_node.input = static_cast<long>(i);
            nodes.push_back(std::move(input_node));
            GroebnerBasis::Node combo;
            combo.combo.emplace_back(nodes.size() - 1,
                                     Polynomial::constant(amb, FieldElement::one()));
            append(inputs[i], std::move(combo));
        }
    }

    // One fully serial commit of the pair p. Returns nonzero remainder or
    // nullopt.
    void commit(const Pair& p, const RawReduction& red, size_t i, size_t j) {
        if (red.remainder.is_zero()) return;
        Monomial l = lcm_of(i, j);
        Monomial mi = l / basis[i].lead().mono;
        Monomial mj = l / basis[j].lead().mono;
        GroebnerBasis::Node node;
        node.combo.emplace_back(basis_node[i],
                                Polynomial::monomial(amb, FieldElement::one(), mi));
        node.combo.emplace_back(basis_node[j],
                                Polynomial::monomial(amb, FieldElement(Rational(-1)), mj));
        for (const auto& [k, c] : red.combiners)
            node.combo.emplace_back(basis_node[k], -c);
        append(red.remainder, std::move(node));
    }

    struct Memo {
        RawReduction red;
        size_t basis_size = 0;
        bool poisoned = false;  // speculation failed; reduce serially if committed

        bool valid(size_t current_basis) const {
            return !poisoned && (red.remainder.is_zero() || basis_size == current_basis);
        }
    };

    void main_loop() {
        std::map<std::pair<size_t, size_t>, Memo> memos;
        int workers = worker_count();
        while (!pending.empty()) {
#ifdef _OPENMP
            if (workers > 1) {
                // Speculatively reduce the front of the queue against the
                // frozen basis. Zero remainders stay valid forever (the
                // division path cannot change when divisors are only
                // appended); nonzero ones are revalidated at commit time.
                // Failures are recorded, not raised: the serial engine might
                // prune the pair before ever touching it.
                std::vector<Pair> batch;
                for (const auto& pr : pending) {
                    auto key = std::make_pair(pr.i, pr.j);
                    auto it = memos.find(key);
                    if (it != memos.end() && (it->second.poisoned || it->second.valid(basis.size())))
                        continue;
                    batch.push_back(pr);
                    if (batch.size() >= static_cast<size_t>(workers) * 2) break;
                }
                if (batch.size() > 1) {
                    std::vector<Memo> results(batch.size());
                    size_t frozen = basis.size();
                    GbBudget speculative = opts.budget;
                    parallel_for(batch.size(), [&](size_t b) {
                        try {
                            BudgetState local{&speculative};
                            results[b].red = reduce_raw(spoly(batch[b].i, batch[b].j), basis, local);
                            results[b].basis_size = frozen;
                        } catch (...) {
                            results[b].poisoned = true;
                        }
                    });
                    for (size_t b = 0; b < batch.size(); ++b)
                        memos[std::make_pair(batch[b].i, batch[b].j)] = std::move(results[b]);
                }
            }
#endif
            Pair p = *pending.begin();
            pending.erase(pending.begin());
            auto key = std::make_pair(p.i, p.j);
            auto it = memos.find(key);
            if (it != memos.end() && it->second.valid(basis.size())) {
                // charge exactly the steps the serial engine would spend here
                bs.charge(it->second.red.steps);
                commit(p, it->second.red, p.i, p.j);
                memos.erase(it);
                continue;
            }
            if (it != memos.end()) memos.erase(it);
            RawReduction red = reduce_raw(spoly(p.i, p.j), basis, bs);
            commit(p, red, p.i, p.j);
        }
    }

    // Minimalize, tail-reduce and sort; provenance follows every rewrite.
    GroebnerBasis finish() {
        std::vector<size_t> live;
        for (size_t k = 0; k < basis.size(); ++k) {
            bool redundant = false;
            for (size_t m = 0; m < basis.size() && !redundant; ++m) {
                if (m == k) continue;
                const Monomial& hm = basis[m].lead().mono;
                const Monomial& hk = basis[k].lead().mono;
                if (hm.divides(hk) && (hm != hk || m < k)) redundant = true;
            }
            if (!redundant) live.push_back(k);
        }
        // tail reduction against the other minimal elements, repeated until
        // stable so the result is the unique reduced basis
        std::vector<Polynomial> polys;
        std::vector<size_t> pnode;
        for (size_t k : live) {
            polys.push_back(basis[k]);
            pnode.push_back(basis_node[k]);
        }
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t k = 0; k < polys.size(); ++k) {
                std::vector<Polynomial> others;
                std::vector<size_t> onode;
                for (size_t m = 0; m < polys.size(); ++m)
                    if (m != k) {
                        others.push_back(polys[m]);
                        onode.push_back(pnode[m]);
                    }
                RawReduction red = reduce_raw(polys[k], others, bs);
                if (red.combiners.empty()) continue;
                changed = true;
                GroebnerBasis::Node node;
                node.combo.emplace_back(pnode[k],
                                        Polynomial::constant(amb, FieldElement::one()));
                for (const auto& [m, c] : red.combiners) node.combo.emplace_back(onode[m], -c);
                FieldElement lc = red.remainder.lead().coeff;
                Polynomial q = red.remainder;
                if (!lc.is_one()) {
                    FieldElement inv = lc.inverse();
                    q = q.scaled(inv);
                    for (auto& [child, c] : node.combo) c = c.scaled(inv);
                }
                nodes.push_back(std::move(node));
                polys[k] = std::move(q);
                pnode[k] = nodes.size() - 1;
            }
        }
        std::vector<size_t> perm(polys.size());
        for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
        std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
            return amb->order.compare(polys[a].lead().mono, polys[b].lead().mono) > 0;
        });
        std::vector<Polynomial> sorted;
        std::vector<size_t> sorted_nodes;
        for (size_t k : perm) {
            sorted.push_back(std::move(polys[k]));
            sorted_nodes.push_back(pnode[k]);
        }
        return GroebnerBasis::assemble(amb, std::move(inputs), std::move(sorted),
                                       std::move(nodes), std::move(sorted_nodes));
    }
};

}  // namespace

GroebnerBasis buchberger(const AmbientPtr& amb, std::vector<Polynomial> gens,
                         const GbOptions& opts) {
    for (const auto& g : gens) check_same_ambient(g, Polynomial::zero(amb));
    Engine e(amb, std::move(gens), opts);
    e.seed();
    e.main_loop();
    return e.finish();
}

GroebnerBasis buchberger_reference(const AmbientPtr& amb, std::vector<Polynomial> gens,
                                   const GbOptions& opts) {
    Engine e(amb, std::move(gens), opts);
    // plain loop: coprime criterion only, one pair at a time
    for (size_t i = 0; i < e.inputs.size(); ++i) {
        if (e.inputs[i].is_zero()) continue;
        GroebnerBasis::Node input_node;
        input_node.input = static_cast<long>(i);
        e.nodes.push_back(std::move(input_node));
        size_t in_node = e.nodes.size() - 1;
        Polynomial p = e.inputs[i];
        GroebnerBasis::Node combo;
        combo.combo.emplace_back(in_node, Polynomial::constant(amb, FieldElement::one()));
        FieldElement lc = p.lead().coeff;
        if (!lc.is_one()) {
            FieldElement inv = lc.inverse();
            p = p.scaled(inv);
            combo.combo[0].second = combo.combo[0].second.scaled(inv);
        }
        e.nodes.push_back(std::move(combo));
        e.basis.push_back(std::move(p));
        e.basis_node.push_back(e.nodes.size() - 1);
        size_t t = e.basis.size() - 1;
        for (size_t a = 0; a < t; ++a)
            if (!e.basis[a].lead().mono.coprime(e.basis[t].lead().mono))
                e.pending.insert({e.lcm_of(a, t).degree(), a, t});
    }
    while (!e.pending.empty()) {
        Pair p = *e.pending.begin();
        e.pending.erase(e.pending.begin());
        RawReduction red = reduce_raw(e.spoly(p.i, p.j), e.basis, e.bs);
        if (red.remainder.is_zero()) continue;
        Monomial l = e.lcm_of(p.i, p.j);
        GroebnerBasis::Node node;
        node.combo.emplace_back(e.basis_node[p.i],
                                Polynomial::monomial(amb, FieldElement::one(),
                                                     l / e.basis[p.i].lead().mono));
        node.combo.emplace_back(e.basis_node[p.j],
                                Polynomial::monomial(amb, FieldElement(Rational(-1)),
                                                     l / e.basis[p.j].lead().mono));
        for (const auto& [k, c] : red.combiners) node.combo.emplace_back(e.basis_node[k], -c);
        FieldElement lc = red.remainder.lead().coeff;
        Polynomial q = red.remainder;
        if (!lc.is_one()) {
            FieldElement inv = lc.inverse();
            q = q.scaled(inv);
            for (auto& [child, c] : node.combo) c = c.scaled(inv);
        }
        e.nodes.push_back(std::move(node));
        e.basis.push_back(std::move(q));
        e.basis_node.push_back(e.nodes.size() - 1);
        size_t t = e.basis.size() - 1;
        for (size_t a = 0; a < t; ++a)
            if (!e.basis[a].lead().mono.coprime(e.basis[t].lead().mono))
                e.pending.insert({e.lcm_of(a, t).degree(), a, t});
    }
    return e.finish();
}

bool MembershipCertificate::verify() const {
    if (generators.empty()) return false;
    const AmbientPtr& amb = target.ambient();
    Polynomial lhs = target;
    if (saturator) lhs = lhs * saturator->pow(exponent);
    Polynomial rhs = Polynomial::zero(amb);
    for (size_t i = 0; i < generators.size(); ++i)
        if (!combiners[i].is_zero()) rhs = rhs + combiners[i] * generators[i];
    return lhs == rhs;
}

MembershipCertificate membership(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                                 const Polynomial& target,
                                 const std::optional<Polynomial>& saturate_by,
                                 unsigned max_exponent, const GbOptions& opts) {
    GroebnerBasis gb = buchberger(amb, gens, opts);
    unsigned cap = saturate_by ? max_exponent : 0;
    for (unsigned n = 0; n <= cap; ++n) {
        Polynomial p = target;
        if (saturate_by) p = p * saturate_by->pow(n);
        auto red = gb.reduce(p, opts.budget);
        if (!red.remainder.is_zero()) continue;
        MembershipCertificate cert;
        cert.generators = gens;
        cert.target = target;
        cert.saturator = saturate_by;
        cert.exponent = n;
        cert.combiners = gb.combiners_to_inputs(red.combiners);
        if (!cert.verify())
            fail(ErrorKind::ResourceBudgetExceeded, "membership certificate failed re-expansion");
        return cert;
    }
    fail(ErrorKind::NotMember,
         "no exponent up to " + std::to_string(cap) + " places the target in the ideal");
}

EliminationResult eliminate(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                            const std::vector<size_t>& elim_vars, const GbOptions& opts) {
    size_t n = amb->vars.size();
    std::vector<int> priority;
    priority.reserve(n);
    std::vector<char> is_elim(n, 0);
    for (size_t v : elim_vars) is_elim[v] = 1;
    for (size_t v = 0; v < n; ++v)
        if (is_elim[v]) priority.push_back(static_cast<int>(v));
    for (size_t v = 0; v < n; ++v)
        if (!is_elim[v]) priority.push_back(static_cast<int>(v));
    AmbientPtr block = make_ambient(amb->vars, amb->field,
                                    MonomialOrder::block(priority, elim_vars.size()));
    std::vector<Polynomial> moved;
    moved.reserve(gens.size());
    for (const auto& g : gens) moved.push_back(g.with_ambient(block));
    EliminationResult out{buchberger(block, std::move(moved), opts), block, {}};
    for (const auto& b : out.gb.basis()) {
        bool free = true;
        for (size_t v : elim_vars)
            if (b.involves(v)) {
                free = false;
                break;
            }
        if (free) out.eliminated.push_back(b);
    }
    return out;
}

std::vector<Polynomial> saturation(const AmbientPtr& amb, const std::vector<Polynomial>& gens,
                                   const Polynomial& s, const GbOptions& opts) {
    std::string aux = "sat";
    for (int k = 1; amb->var_index(aux); ++k) aux = "sat" + std::to_string(k);
    std::vector<std::string> vars = amb->vars;
    vars.push_back(aux);
    AmbientPtr ext = make_ambient(vars, amb->field, amb->order);
    size_t aux_idx = vars.size() - 1;
    std::vector<size_t> embed(amb->vars.size());
    for (size_t v = 0; v < amb->vars.size(); ++v) embed[v] = v;
    std::vector<Polynomial> egens;
    for (const auto& g : gens) egens.push_back(g.mapped_vars(ext, embed));
    egens.push_back(s.mapped_vars(ext, embed) * Polynomial::variable(ext, aux_idx) -
                    Polynomial::constant(ext, FieldElement::one()));
    EliminationResult er = eliminate(ext, egens, {aux_idx}, opts);
    std::vector<Polynomial> out;
    std::vector<size_t> back(ext->vars.size(), 0);
    for (size_t v = 0; v < amb->vars.size(); ++v) back[v] = v;
    for (const auto& b : er.eliminated) {
        std::vector<Term> ts;
        for (const auto& t : b.terms()) {
            Monomial m(amb->vars.size());
            for (size_t v = 0; v < amb->vars.size(); ++v) m[v] = t.mono[v];
            ts.push_back({t.coeff, std::move(m)});
        }
        out.push_back(Polynomial::from_terms(amb, std::move(ts)));
    }
    return out;
}

std::vector<Polynomial> nf_batch(const std::vector<Polynomial>& ps, const GroebnerBasis& gb) {
    std::vector<Polynomial> out(ps.size());
    std::vector<std::exception_ptr> errs(ps.size());
    parallel_for(ps.size(), [&](size_t i) {
        try {
            out[i] = gb.nf(ps[i]);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace cylab
