#pragma once

// Support graphs and explanations over labelled programs; graph-based
// supported models (SPM), justified models (JM), AD-supported models and
// node forgetting.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forklab/ht.hpp"
#include "forklab/interpretation.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

/// Labelled directed graph <I, E, λ> over the atoms of a model.
struct Explanation {
    AtomSet model;
    std::map<Atom, std::string> labelling;
    std::set<std::pair<Atom, Atom>> edges;

    bool acyclic() const {
        std::map<Atom, int> state; // 0 new, 1 on stack, 2 done
        std::function<bool(const Atom&)> visit = [&](const Atom& a) {
            state[a] = 1;
            for (auto it = edges.lower_bound({a, std::string()}); it != edges.end() && it->first == a; ++it) {
                int s = state[it->second];
                if (s == 1) return false;
                if (s == 0 && !visit(it->second)) return false;
            }
            state[a] = 2;
            return true;
        };
        for (const auto& a : model)
            if (state[a] == 0 && !visit(a)) return false;
        return true;
    }

    /// Abbreviated form "{a ↦ l1, c ↦ l2}".
    std::string to_string() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [atom, label] : labelling) {
            if (!first) out += ", ";
            out += atom + " \xE2\x86\xA6 " + label;
            first = false;
        }
        return out + "}";
    }

    std::string to_dot(const std::string& name = "explanation") const {
        std::string out = "digraph " + name + " {\n";
        for (const auto& a : model) {
            auto it = labelling.find(a);
            out += "  \"" + a + "\" [label=\"" + a + "\\n" + (it != labelling.end() ? it->second : "") + "\"];\n";
        }
        for (const auto& [from, to] : edges) out += "  \"" + from + "\" -> \"" + to + "\";\n";
        return out + "}\n";
    }

    friend bool operator==(const Explanation&, const Explanation&) = default;
};

enum class GraphVerdict { ValidAcyclic, ValidCyclic, Invalid };

struct GraphCheck {
    GraphVerdict verdict;
    std::string reason; // empty unless Invalid
};

namespace detail {

inline std::map<std::string, std::size_t> label_index(const Program& lp) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < lp.size(); ++i) idx[lp.label_of(i)] = i;
    return idx;
}

inline std::set<std::pair<Atom, Atom>> forced_edges(const Program& lp, const std::map<Atom, std::size_t>& rule_of) {
    std::set<std::pair<Atom, Atom>> e;
    for (const auto& [p, ri] : rule_of)
        for (const auto& q : lp[ri].pos) e.insert({q, p});
    return e;
}

/// Backtracking over injective labellings: atoms in lexicographic order,
/// candidate rules in program order. `fn` returns false to stop.
inline void for_each_support_graph(const Program& p, const AtomSet& i, bool acyclic_only,
                                   const std::function<bool(const Explanation&)>& fn) {
    const Program lp = p.labelled();
    AtomSet atoms = alphabet(lp);
    atoms.insert(i.begin(), i.end());
    Alphabet alpha(atoms);
    const auto rules = program_masks(lp, alpha);
    const Mask im = alpha.mask_of(i);
    if (!classical_sat(rules, im)) return;

    const std::vector<Atom> order(i.begin(), i.end());
    if (order.size() > lp.size()) return; // not enough labels
    std::vector<std::vector<std::size_t>> cands(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Mask bit = alpha.bit(order[k]);
        for (std::size_t r = 0; r < rules.size(); ++r)
            if ((rules[r].head & bit) && body_true(rules[r], im)) cands[k].push_back(r);
        if (cands[k].empty()) return;
    }

    std::vector<bool> used(lp.size(), false);
    std::map<Atom, std::size_t> rule_of;
    bool stop = false;
    std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (stop) return;
        if (k == order.size()) {
            Explanation g;
            g.model = i;
            for (const auto& [a, r] : rule_of) g.labelling[a] = lp.label_of(r);
            g.edges = forced_edges(lp, rule_of);
            if (acyclic_only && !g.acyclic()) return;
            if (!fn(g)) stop = true;
            return;
        }
        for (std::size_t r : cands[k]) {
            if (used[r]) continue;
            used[r] = true;
            rule_of[order[k]] = r;
            go(k + 1);
            rule_of.erase(order[k]);
            used[r] = false;
            if (stop) return;
        }
    };
    go(0);
}

inline bool has_support_graph(const Program& p, const AtomSet& i, bool acyclic_only) {
    bool found = false;
    for_each_support_graph(p, i, acyclic_only, [&](const Explanation&) {
        found = true;
        return false;
    });
    return found;
}

} // namespace detail

/// Checks a candidate graph against the support-graph conditions; cycles separate
/// support graphs from explanations. Unlabelled programs are auto-labelled.
inline GraphCheck check_support_graph(const Explanation& g, const Program& p, const AtomSet& i) {
    if (g.model != i) throw InvalidArgument("support graph vertices differ from the interpretation");
    const Program lp = p.labelled();
    if (!classical_sat(i, lp)) return {GraphVerdict::Invalid, "interpretation is not a classical model"};
    const auto idx = detail::label_index(lp);
    std::set<std::string> seen;
    std::map<Atom, std::size_t> rule_of;
    for (const auto& a : i) {
        auto it = g.labelling.find(a);
        if (it == g.labelling.end()) return {GraphVerdict::Invalid, "atom " + a + " has no label"};
        auto r = idx.find(it->second);
        if (r == idx.end()) return {GraphVerdict::Invalid, "unknown label " + it->second};
        if (!seen.insert(it->second).second) return {GraphVerdict::Invalid, "label " + it->second + " used twice"};
        const Rule& rule = lp[r->second];
        if (!rule.head_set().count(a)) return {GraphVerdict::Invalid, a + " is not in the head of " + it->second};
        if (!classical_sat(i, body_formula(rule)))
            return {GraphVerdict::Invalid, "body of " + it->second + " is false in the interpretation"};
        rule_of[a] = r->second;
    }
    if (g.labelling.size() != i.size()) return {GraphVerdict::Invalid, "labelling covers atoms outside the model"};
    for (const auto& [from, to] : g.edges)
        if (!i.count(from) || !i.count(to)) return {GraphVerdict::Invalid, "edge leaves the model"};
    if (g.edges != detail::forced_edges(lp, rule_of))
        return {GraphVerdict::Invalid, "incoming edges differ from the positive bodies"};
    return {g.acyclic() ? GraphVerdict::ValidAcyclic : GraphVerdict::ValidCyclic, ""};
}

/// All explanations (acyclic support graphs) of I under P.
inline std::vector<Explanation> explanations_of(const Program& p, const AtomSet& i) {
    std::vector<Explanation> out;
    detail::for_each_support_graph(p, i, true, [&](const Explanation& g) {
        out.push_back(g);
        return true;
    });
    return out;
}

/// All support graphs, cyclic ones included.
inline std::vector<Explanation> support_graphs_of(const Program& p, const AtomSet& i) {
    std::vector<Explanation> out;
    detail::for_each_support_graph(p, i, false, [&](const Explanation& g) {
        out.push_back(g);
        return true;
    });
    return out;
}

/// JM(P): classical models admitting an explanation.
inline ModelList justified_models(const Program& p, const Alphabet& alpha) {
    ModelList out;
    for (const auto& m : classical_models(p, alpha))
        if (detail::has_support_graph(p, m, true)) out.push_back(m);
    return out;
}
inline ModelList justified_models(const Program& p) { return justified_models(p, alphabet(p)); }

/// SPM(P): classical models admitting a support graph.
inline ModelList supported_models_graph(const Program& p, const Alphabet& alpha) {
    ModelList out;
    for (const auto& m : classical_models(p, alpha))
        if (detail::has_support_graph(p, m, false)) out.push_back(m);
    return out;
}
inline ModelList supported_models_graph(const Program& p) { return supported_models_graph(p, alphabet(p)); }

/// Completion-style supported models: each true atom needs an applicable rule
/// whose other head atoms are all false.
inline ModelList ad_supported(const Program& p, const Alphabet& alpha) {
    ModelList out;
    const auto rules = detail::program_masks(p, alpha);
    for (const auto& m : classical_models(p, alpha)) {
        const Mask im = alpha.mask_of(m);
        bool ok = true;
        for (const auto& a : m) {
            const Mask bit = alpha.bit(a);
            bool supported = false;
            for (const auto& r : rules)
                if ((r.head & im) == bit && detail::body_true(r, im)) {
                    supported = true;
                    break;
                }
            if (!supported) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(m);
    }
    return out;
}
inline ModelList ad_supported(const Program& p) { return ad_supported(p, alphabet(p)); }

/// G/A: drop the atoms of A, connecting survivors through paths whose inner
/// nodes all lie in A.
inline Explanation node_forget(const Explanation& g, const AtomSet& a) {
    Explanation out;
    for (const auto& p : g.model)
        if (!a.count(p)) out.model.insert(p);
    for (const auto& [p, l] : g.labelling)
        if (out.model.count(p)) out.labelling[p] = l;
    std::map<Atom, std::vector<Atom>> succ;
    for (const auto& [from, to] : g.edges) succ[from].push_back(to);
    for (const auto& start : out.model) {
        std::set<Atom> seen;
        std::vector<Atom> stack = succ[start];
        while (!stack.empty()) {
            Atom q = stack.back();
            stack.pop_back();
            if (!a.count(q)) {
                out.edges.insert({start, q});
                continue;
            }
            if (!seen.insert(q).second) continue;
            for (const auto& n : succ[q]) stack.push_back(n);
        }
    }
    return out;
}

} // namespace forklab
