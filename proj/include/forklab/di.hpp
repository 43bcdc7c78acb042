#pragma once

// Head selection functions, selection reducts, candidate stable models (open
// and closed), DI-stable models, the immediate consequence operator and the
// two program rewritings that remove double negation and repeated head sets.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forklab/ht.hpp"
#include "forklab/interpretation.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

/// Per-rule head choice for an interpretation I: an atom of h(r) ∩ I, or
/// nullopt (bottom) exactly when h(r) ∩ I is empty.
struct HeadSelection {
    std::vector<std::optional<Atom>> choice;
    bool closed = false;

    /// "rule#1 ↦ a, rule#2 ↦ ⊥", 1-based rule numbers.
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < choice.size(); ++i) {
            if (i) out += ", ";
            out += "rule#" + std::to_string(i + 1) + " \xE2\x86\xA6 " + (choice[i] ? *choice[i] : "\xE2\x8A\xA5");
        }
        return out;
    }
    friend bool operator==(const HeadSelection&, const HeadSelection&) = default;
};

struct CandidateModel {
    AtomSet model;
    HeadSelection witness;
};

namespace detail {

inline std::vector<Atom> head_in(const Rule& r, const AtomSet& i) {
    std::vector<Atom> out;
    for (const auto& a : r.head)
        if (i.count(a)) out.push_back(a);
    return out;
}

/// Enumerates selections; only rules whose body holds in I branch, the others
/// take the first true head atom. In closed mode rules with equal head sets
/// share one choice. `fn` returns false to stop.
inline void for_each_selection(const Program& p, const AtomSet& i, bool closed,
                               const std::function<bool(const HeadSelection&)>& fn) {
    const std::size_t n = p.size();
    // Each branching slot covers a set of rules that must agree.
    std::vector<std::vector<std::size_t>> slots;
    std::vector<std::vector<Atom>> options;
    HeadSelection base;
    base.closed = closed;
    base.choice.resize(n);
    std::vector<bool> triggered(n);
    for (std::size_t r = 0; r < n; ++r) {
        triggered[r] = classical_sat(i, body_formula(p[r]));
        auto in = head_in(p[r], i);
        if (!in.empty()) base.choice[r] = in.front();
    }
    if (closed) {
        std::map<AtomSet, std::size_t> group_of;
        std::vector<std::vector<std::size_t>> groups;
        for (std::size_t r = 0; r < n; ++r) {
            auto [it, fresh] = group_of.emplace(p[r].head_set(), groups.size());
            if (fresh) groups.emplace_back();
            groups[it->second].push_back(r);
        }
        for (auto& g : groups) {
            bool any = false;
            for (std::size_t r : g) any = any || triggered[r];
            auto in = head_in(p[g.front()], i);
            if (any && in.size() > 1) {
                slots.push_back(g);
                options.push_back(in);
            }
        }
    } else {
        for (std::size_t r = 0; r < n; ++r) {
            auto in = head_in(p[r], i);
            if (triggered[r] && in.size() > 1) {
                slots.push_back({r});
                options.push_back(in);
            }
        }
    }
    HeadSelection cur = base;
    std::function<bool(std::size_t)> go = [&](std::size_t k) {
        if (k == slots.size()) return fn(cur);
        for (const auto& a : options[k]) {
            for (std::size_t r : slots[k]) cur.choice[r] = a;
            if (!go(k + 1)) return false;
        }
        return true;
    };
    go(0);
}

/// Mask view of P^I_sel: selected head atom, body verbatim, triggered rules only.
inline std::vector<RuleMasks> reduct_masks(const Program& p, const Alphabet& alpha, Mask im,
                                           const std::vector<RuleMasks>& rules, const HeadSelection& sel) {
    std::vector<RuleMasks> out;
    for (std::size_t r = 0; r < p.size(); ++r) {
        if (!body_true(rules[r], im)) continue;
        RuleMasks m = rules[r];
        m.head = sel.choice[r] ? alpha.bit(*sel.choice[r]) : 0;
        out.push_back(m);
    }
    return out;
}

} // namespace detail

/// Throws InvalidArgument unless `sel` is a head selection for I (closed
/// selections additionally agree on rules with equal head sets).
inline void validate_selection(const Program& p, const AtomSet& i, const HeadSelection& sel) {
    if (sel.choice.size() != p.size()) throw InvalidArgument("selection size differs from program size");
    for (std::size_t r = 0; r < p.size(); ++r) {
        auto in = detail::head_in(p[r], i);
        const auto& c = sel.choice[r];
        if (in.empty() != !c.has_value())
            throw InvalidArgument("rule#" + std::to_string(r + 1) + ": selection must be bottom iff no head atom is true");
        if (c && std::find(in.begin(), in.end(), *c) == in.end())
            throw InvalidArgument("rule#" + std::to_string(r + 1) + ": selected atom is not a true head atom");
    }
    if (sel.closed)
        for (std::size_t r = 0; r < p.size(); ++r)
            for (std::size_t s = r + 1; s < p.size(); ++s)
                if (p[r].head_set() == p[s].head_set() && sel.choice[r] != sel.choice[s])
                    throw InvalidArgument("closed selection differs on rules with equal head sets");
}

/// All head selections for I; see detail::for_each_selection for the order.
inline std::vector<HeadSelection> selections(const Program& p, const AtomSet& i, bool closed) {
    std::vector<HeadSelection> out;
    detail::for_each_selection(p, i, closed, [&](const HeadSelection& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

/// P^I_sel = { sel(Hd(r), I) <- Bd(r) : I |= Bd(r) }, duplicates removed.
inline Program reduct(const Program& p, const AtomSet& i, const HeadSelection& sel) {
    validate_selection(p, i, sel);
    std::vector<Rule> out;
    for (std::size_t r = 0; r < p.size(); ++r) {
        const Rule& rule = p[r];
        if (!classical_sat(i, body_formula(rule))) continue;
        std::vector<Atom> head;
        if (sel.choice[r]) head.push_back(*sel.choice[r]);
        Rule nr = Rule::make(std::move(head), rule.pos, rule.neg, rule.negneg);
        if (std::none_of(out.begin(), out.end(), [&](const Rule& o) { return o.same_shape(nr); }))
            out.push_back(std::move(nr));
    }
    return Program(std::move(out));
}

/// Candidate stable models with one witnessing selection each.
inline std::vector<CandidateModel> candidate_stable_models(const Program& p, const Alphabet& alpha, bool closed) {
    const auto rules = detail::program_masks(p, alpha);
    std::vector<CandidateModel> out;
    for (const auto& m : classical_models(p, alpha)) {
        const Mask im = alpha.mask_of(m);
        detail::for_each_selection(p, m, closed, [&](const HeadSelection& sel) {
            if (!detail::is_stable(detail::reduct_masks(p, alpha, im, rules, sel), im)) return true;
            out.push_back({m, sel});
            return false;
        });
    }
    return out;
}

inline ModelList models_of(const std::vector<CandidateModel>& cs) {
    ModelList out;
    for (const auto& c : cs) out.push_back(c.model);
    return out;
}

inline ModelList csm(const Program& p, const Alphabet& alpha, bool closed = false) {
    return models_of(candidate_stable_models(p, alpha, closed));
}
inline ModelList csm(const Program& p, bool closed = false) { return csm(p, alphabet(p), closed); }

/// Subset-minimal closed candidate stable models.
inline ModelList di_stable_models(const Program& p, const Alphabet& alpha) {
    return minimal_elements(csm(p, alpha, true));
}
inline ModelList di_stable_models(const Program& p) { return di_stable_models(p, alphabet(p)); }

/// T_P(I) = { p : (p <- B) in P, I |= B } for extended normal P.
inline AtomSet tp_step(const Program& p, const AtomSet& i) {
    if (!p.is_normal()) throw InvalidArgument("tp_step requires an extended normal program");
    AtomSet out;
    for (const auto& r : p.rules())
        if (!r.head.empty() && classical_sat(i, body_formula(r))) out.insert(r.head.front());
    return out;
}

/// Classical models I with T_{P^I_sel}(I) = I for some selection.
inline ModelList spm_via_fixpoint(const Program& p, const Alphabet& alpha) {
    const auto rules = detail::program_masks(p, alpha);
    ModelList out;
    for (const auto& m : classical_models(p, alpha)) {
        const Mask im = alpha.mask_of(m);
        bool fixpoint = false;
        detail::for_each_selection(p, m, false, [&](const HeadSelection& sel) {
            Mask derived = 0;
            for (const auto& r : detail::reduct_masks(p, alpha, im, rules, sel)) derived |= r.head;
            fixpoint = derived == im;
            return !fixpoint;
        });
        if (fixpoint) out.push_back(m);
    }
    return out;
}
inline ModelList spm_via_fixpoint(const Program& p) { return spm_via_fixpoint(p, alphabet(p)); }

// ---- rewritings -------------------------------------------------------------

inline Atom t1_aux_atom(const Atom& q) { return "__t1_" + q; }
inline Atom t2_aux_atom(std::size_t rule_index) { return "__t2_" + std::to_string(rule_index + 1); }

/// Replaces every body literal `not not q` by `not aux_q` and appends
/// aux_q <- not q once per distinct q.
inline Program t1_eliminate_double_negation(const Program& p) {
    std::vector<Rule> out;
    std::vector<Atom> introduced;
    for (const auto& r : p.rules()) {
        Rule nr = r;
        nr.negneg.clear();
        for (const auto& q : r.negneg) {
            nr.neg.insert(t1_aux_atom(q));
            if (std::find(introduced.begin(), introduced.end(), q) == introduced.end()) introduced.push_back(q);
        }
        out.push_back(std::move(nr));
    }
    for (const auto& q : introduced) out.push_back(Rule::make({t1_aux_atom(q)}, {}, {q}));
    return Program(std::move(out));
}

/// Within every group of two or more disjunctive rules sharing a head-atom
/// set, appends a fresh aux atom to each head and forbids it with a
/// constraint, so no two disjunctive rules share a head set afterwards.
inline Program t2_disambiguate_heads(const Program& p) {
    std::map<AtomSet, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < p.size(); ++r)
        if (p[r].head.size() >= 2) groups[p[r].head_set()].push_back(r);
    std::vector<bool> tagged(p.size(), false);
    for (const auto& [h, members] : groups)
        if (members.size() >= 2)
            for (std::size_t r : members) tagged[r] = true;
    std::vector<Rule> out;
    std::vector<Rule> constraints;
    for (std::size_t r = 0; r < p.size(); ++r) {
        Rule nr = p[r];
        if (tagged[r]) {
            nr.head.push_back(t2_aux_atom(r));
            constraints.push_back(Rule::make({}, {t2_aux_atom(r)}));
        }
        out.push_back(std::move(nr));
    }
    out.insert(out.end(), constraints.begin(), constraints.end());
    return Program(std::move(out));
}

} // namespace forklab
