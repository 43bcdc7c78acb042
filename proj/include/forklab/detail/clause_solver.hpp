#pragma once

// Tiny DPLL over at most 64 boolean variables packed in a Mask. Used to
// enumerate classical models of rule sets and to search for smaller
// here-worlds when checking stability.

#include <bit>
#include <optional>
#include <utility>
#include <vector>

#include "forklab/interpretation.hpp"

namespace forklab::detail {

/// Satisfied iff some variable of `neg` is false or some variable of `pos` is true.
struct Clause {
    Mask neg = 0;
    Mask pos = 0;
};

class ClauseSolver {
public:
    /// Variables outside `vars` are fixed to false.
    ClauseSolver(std::vector<Clause> clauses, Mask vars) : clauses_(std::move(clauses)), vars_(vars) {}

    /// Calls `on_model(mask)` for every total assignment satisfying all clauses;
    /// stops early when the callback returns false.
    template <class F>
    void enumerate(F&& on_model) const {
        stop_ = false;
        search(0, ~vars_, on_model);
    }

    std::optional<Mask> find_one() const {
        std::optional<Mask> found;
        enumerate([&](Mask m) {
            found = m;
            return false;
        });
        return found;
    }

private:
    // Unit propagation; false on conflict.
    bool propagate(Mask& tr, Mask& fa) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : clauses_) {
                if ((c.neg & fa) || (c.pos & tr)) continue;
                const Mask open_neg = c.neg & ~(tr | fa);
                const Mask open_pos = c.pos & ~(tr | fa);
                const int open = std::popcount(open_neg) + std::popcount(open_pos);
                if (open == 0) return false;
                if (open == 1) {
                    if (open_neg) fa |= open_neg;
                    else tr |= open_pos;
                    changed = true;
                }
            }
        }
        return true;
    }

    template <class F>
    void search(Mask tr, Mask fa, F& on_model) const {
        if (stop_) return;
        if (!propagate(tr, fa)) return;
        const Mask open = vars_ & ~(tr | fa);
        if (!open) {
            if (!on_model(tr)) stop_ = true;
            return;
        }
        const Mask v = open & (~open + 1);
        search(tr, fa | v, on_model);
        search(tr | v, fa, on_model);
    }

    std::vector<Clause> clauses_;
    Mask vars_;
    mutable bool stop_ = false;
};

} // namespace forklab::detail
