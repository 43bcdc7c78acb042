#pragma once

// Strongly supported models: existence of a monotone chain
// H0 ⊆ H1 ⊆ ... ⊆ Hn = T where every stage hits the head of each rule
// applicable at the previous stage and only contains atoms licensed by those
// heads.

#include <bit>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "forklab/ht.hpp"
#include "forklab/interpretation.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

struct SsmChain {
    std::vector<AtomSet> stages;
    AtomSet target;

    /// "{a} ⊆ {a,b} = T".
    std::string to_string() const {
        std::string out;
        for (std::size_t i = 0; i < stages.size(); ++i) {
            if (i) out += " \xE2\x8A\x86 ";
            out += forklab::to_string(stages[i]);
        }
        return out + " = T";
    }
};

struct ChainVerdict {
    bool ok = false;
    std::string violation; // first violated condition, empty when ok
};

struct SsmWitness {
    AtomSet model;
    SsmChain chain;
};

namespace detail {

/// Rules applicable at stage i: at i = 0 those with an empty body; later
/// those whose body holds at <H_{i-1}, T>.
inline std::vector<std::size_t> applicable(const std::vector<RuleMasks>& rules, std::optional<Mask> prev, Mask t) {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rules.size(); ++r) {
        const auto& m = rules[r];
        bool app = prev ? ht_body_true(m, *prev, t) : (m.pos | m.neg | m.negneg) == 0;
        if (app) out.push_back(r);
    }
    return out;
}

} // namespace detail

/// Verifies both chain conditions stage by stage.
inline ChainVerdict check_chain(const SsmChain& c, const Program& p) {
    if (c.stages.empty()) return {false, "chain has no stages"};
    for (std::size_t i = 1; i < c.stages.size(); ++i)
        if (!is_subset(c.stages[i - 1], c.stages[i])) throw InvalidArgument("chain is not monotone");
    if (c.stages.back() != c.target) return {false, "last stage differs from the target"};
    AtomSet atoms = alphabet(p);
    atoms.insert(c.target.begin(), c.target.end());
    Alphabet alpha(atoms);
    const auto rules = detail::program_masks(p, alpha);
    const Mask t = alpha.mask_of(c.target);
    if (!detail::classical_sat(rules, t)) return {false, "target is not a classical model"};
    std::optional<Mask> prev;
    for (std::size_t i = 0; i < c.stages.size(); ++i) {
        const Mask h = alpha.mask_of(c.stages[i]);
        if ((h & ~t) != 0) return {false, "stage " + std::to_string(i) + " leaves the target"};
        Mask pool = 0;
        for (std::size_t r : detail::applicable(rules, prev, t)) {
            if ((rules[r].head & h) == 0)
                return {false, "stage " + std::to_string(i) + " misses the head of rule#" + std::to_string(r + 1)};
            pool |= rules[r].head;
        }
        if ((h & ~pool) != 0)
            return {false, "stage " + std::to_string(i) + " contains atoms not licensed by an applicable head"};
        prev = h;
    }
    return {true, ""};
}

namespace detail {

/// Forward search over reachable stages inside T, memoising visited sets.
/// Repeating a stage leaves the applicable rules unchanged, so only strictly
/// growing chains need exploring.
inline std::optional<std::vector<Mask>> find_chain(const std::vector<RuleMasks>& rules, Mask t) {
    auto successors = [&](std::optional<Mask> prev) {
        std::vector<Mask> out;
        Mask pool = 0;
        auto app = applicable(rules, prev, t);
        for (std::size_t r : app) pool |= rules[r].head;
        pool &= t;
        const Mask lo = prev.value_or(0);
        if ((lo & ~pool) != 0) return out;
        const Mask free = pool & ~lo;
        for (Mask extra = free;; extra = (extra - 1) & free) {
            const Mask h = lo | extra;
            bool hits = true;
            for (std::size_t r : app)
                if ((rules[r].head & h) == 0) {
                    hits = false;
                    break;
                }
            if (hits && (!prev || h != *prev)) out.push_back(h);
            if (extra == 0) break;
        }
        return out;
    };

    std::set<Mask> visited;
    std::vector<std::vector<Mask>> stack;
    for (Mask h0 : successors(std::nullopt)) stack.push_back({h0});
    while (!stack.empty()) {
        auto path = std::move(stack.back());
        stack.pop_back();
        const Mask h = path.back();
        if (h == t) return path;
        if (!visited.insert(h).second) continue;
        for (Mask next : successors(h)) {
            if (visited.count(next)) continue;
            auto np = path;
            np.push_back(next);
            stack.push_back(std::move(np));
        }
    }
    return std::nullopt;
}

} // namespace detail

/// SSM(P) with one witness chain per model.
inline std::vector<SsmWitness> strongly_supported_witnesses(const Program& p, const Alphabet& alpha) {
    const auto rules = detail::program_masks(p, alpha);
    std::vector<SsmWitness> out;
    for (const auto& m : classical_models(p, alpha)) {
        auto chain = detail::find_chain(rules, alpha.mask_of(m));
        if (!chain) continue;
        SsmWitness w{m, {{}, m}};
        for (Mask h : *chain) w.chain.stages.push_back(alpha.set_of(h));
        out.push_back(std::move(w));
    }
    return out;
}

inline ModelList strongly_supported_models(const Program& p, const Alphabet& alpha) {
    ModelList out;
    for (auto& w : strongly_supported_witnesses(p, alpha)) out.push_back(std::move(w.model));
    return out;
}
inline ModelList strongly_supported_models(const Program& p) { return strongly_supported_models(p, alphabet(p)); }

} // namespace forklab
