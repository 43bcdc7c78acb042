#pragma once

// Classical and here-and-there satisfaction; brute-force enumeration of
// classical models and stable (equilibrium) models.

#include <bit>
#include <vector>

#include "forklab/detail/clause_solver.hpp"
#include "forklab/interpretation.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

namespace detail {

/// HT evaluation with both worlds as masks over `alpha`. Atoms missing from
/// the alphabet are false in both worlds.
inline bool ht_eval(const Formula& f, const Alphabet& alpha, Mask here, Mask there) {
    switch (f.kind()) {
    case Formula::Kind::Bottom: return false;
    case Formula::Kind::Atom: return (alpha.bit(f.name()) & here) != 0;
    case Formula::Kind::And: return ht_eval(f.lhs(), alpha, here, there) && ht_eval(f.rhs(), alpha, here, there);
    case Formula::Kind::Or: return ht_eval(f.lhs(), alpha, here, there) || ht_eval(f.rhs(), alpha, here, there);
    case Formula::Kind::Implies: {
        if (here != there && ht_eval(f.lhs(), alpha, there, there) && !ht_eval(f.rhs(), alpha, there, there))
            return false;
        return !ht_eval(f.lhs(), alpha, here, there) || ht_eval(f.rhs(), alpha, here, there);
    }
    }
    return false;
}

/// Bitmask view of a rule over a fixed alphabet.
struct RuleMasks {
    Mask head = 0, pos = 0, neg = 0, negneg = 0;
};

inline RuleMasks rule_masks(const Rule& r, const Alphabet& alpha) {
    return RuleMasks{alpha.mask_of(r.head_set()), alpha.mask_of(r.pos), alpha.mask_of(r.neg),
                     alpha.mask_of(r.negneg)};
}

inline std::vector<RuleMasks> program_masks(const Program& p, const Alphabet& alpha) {
    std::vector<RuleMasks> out;
    out.reserve(p.size());
    for (const auto& r : p.rules()) out.push_back(rule_masks(r, alpha));
    return out;
}

inline bool body_true(const RuleMasks& r, Mask i) {
    return (r.pos & ~i) == 0 && (r.neg & i) == 0 && (r.negneg & ~i) == 0;
}

inline bool classical_rule_sat(const RuleMasks& r, Mask i) { return !body_true(r, i) || (r.head & i) != 0; }

/// <H,T> |= Bd(r) for rule bodies: b+ in H, b- outside T, b-- inside T.
inline bool ht_body_true(const RuleMasks& r, Mask here, Mask there) {
    return (r.pos & ~here) == 0 && (r.neg & there) == 0 && (r.negneg & ~there) == 0;
}

inline bool classical_sat(const std::vector<RuleMasks>& rules, Mask i) {
    for (const auto& r : rules)
        if (!classical_rule_sat(r, i)) return false;
    return true;
}

/// T stable for the rule set: T is a classical model and no H strictly
/// inside T satisfies the rules at <H,T>.
inline bool is_stable(const std::vector<RuleMasks>& rules, Mask there) {
    if (!classical_sat(rules, there)) return false;
    std::vector<Clause> reduct;
    bool normal = true;
    for (const auto& r : rules) {
        if ((r.neg & there) || (r.negneg & ~there) || (r.pos & ~there)) continue;
        const Mask h = r.head & there;
        if (std::popcount(h) > 1) normal = false;
        reduct.push_back(Clause{r.pos, h});
    }
    if (normal) {
        // Every model of a normal reduct contains its least model, and the
        // least model is itself a model (constraints cannot fire inside T).
        Mask least = 0;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& c : reduct)
                if ((c.neg & ~least) == 0 && c.pos && (c.pos & ~least)) {
                    least |= c.pos;
                    changed = true;
                }
        }
        return least == there;
    }
    reduct.push_back(Clause{there, 0}); // H != T
    ClauseSolver smaller(std::move(reduct), there);
    return !smaller.find_one().has_value();
}

inline std::vector<Clause> classical_clauses(const std::vector<RuleMasks>& rules) {
    std::vector<Clause> cs;
    cs.reserve(rules.size());
    for (const auto& r : rules) cs.push_back(Clause{r.pos | r.negneg, r.head | r.neg});
    return cs;
}

inline Alphabet checked_alphabet(const AtomSet& required, const Alphabet& given, const char* what) {
    if (!given.contains(required)) throw InvalidArgument(std::string(what) + ": alphabet misses program atoms");
    given.require_at_most(kMaxEnumerationAtoms, what);
    return given;
}

} // namespace detail

inline bool classical_sat(const AtomSet& t, const Formula& f) {
    Alphabet alpha(t);
    return detail::ht_eval(f, alpha, alpha.full(), alpha.full());
}

inline bool classical_sat(const AtomSet& t, const Rule& r) {
    Alphabet alpha(alphabet(r));
    return detail::classical_rule_sat(detail::rule_masks(r, alpha), alpha.mask_of(t));
}

inline bool classical_sat(const AtomSet& t, const Program& p) {
    Alphabet alpha(alphabet(p));
    return detail::classical_sat(detail::program_masks(p, alpha), alpha.mask_of(t));
}

inline bool ht_sat(const HTInterpretation& i, const Formula& f) {
    Alphabet alpha(i.there());
    return detail::ht_eval(f, alpha, alpha.mask_of(i.here()), alpha.full());
}

inline bool ht_sat(const HTInterpretation& i, const Program& p) { return ht_sat(i, program_formula(p)); }

/// All T over the alphabet with T |= P classically, canonical order.
inline ModelList classical_models(const Program& p, const Alphabet& alpha) {
    detail::checked_alphabet(alphabet(p), alpha, "classical_models");
    detail::ClauseSolver solver(detail::classical_clauses(detail::program_masks(p, alpha)), alpha.full());
    ModelList out;
    solver.enumerate([&](Mask m) {
        out.push_back(alpha.set_of(m));
        return true;
    });
    canonicalize(out);
    return out;
}
inline ModelList classical_models(const Program& p) { return classical_models(p, alphabet(p)); }

inline ModelList classical_models(const Formula& f, const Alphabet& alpha) {
    detail::checked_alphabet(alphabet(f), alpha, "classical_models");
    ModelList out;
    for (Mask t = 0;; ++t) {
        if (detail::ht_eval(f, alpha, t, t)) out.push_back(alpha.set_of(t));
        if (t == alpha.full()) break;
    }
    canonicalize(out);
    return out;
}

/// Stability check of a single candidate; the alphabet is AT(P) plus T.
inline bool is_stable(const Program& p, const AtomSet& t) {
    AtomSet atoms = alphabet(p);
    atoms.insert(t.begin(), t.end());
    Alphabet alpha(atoms);
    return detail::is_stable(detail::program_masks(p, alpha), alpha.mask_of(t));
}

/// SM(P) over the alphabet. Candidates come from the classical models; each is
/// checked against every smaller here-world of the rule reduct.
inline ModelList stable_models(const Program& p, const Alphabet& alpha) {
    detail::checked_alphabet(alphabet(p), alpha, "stable_models");
    const auto rules = detail::program_masks(p, alpha);
    detail::ClauseSolver solver(detail::classical_clauses(rules), alpha.full());
    ModelList out;
    solver.enumerate([&](Mask t) {
        if (detail::is_stable(rules, t)) out.push_back(alpha.set_of(t));
        return true;
    });
    canonicalize(out);
    return out;
}
inline ModelList stable_models(const Program& p) { return stable_models(p, alphabet(p)); }

/// SM(phi) by direct enumeration of all pairs <H,T>.
inline ModelList stable_models(const Formula& f, const Alphabet& alpha) {
    detail::checked_alphabet(alphabet(f), alpha, "stable_models");
    ModelList out;
    for (Mask t = 0;; ++t) {
        if (detail::ht_eval(f, alpha, t, t)) {
            bool minimal = true;
            // proper submasks of t
            for (Mask h = (t - 1) & t; minimal; h = (h - 1) & t) {
                if (h != t && detail::ht_eval(f, alpha, h, t)) minimal = false;
                if (h == 0) break;
            }
            if (minimal) out.push_back(alpha.set_of(t));
        }
        if (t == alpha.full()) break;
    }
    canonicalize(out);
    return out;
}
inline ModelList stable_models(const Formula& f) { return stable_models(f, alphabet(f)); }

/// Same HT models over every <H,T> of the alphabet.
inline bool ht_equivalent(const Formula& a, const Formula& b, const Alphabet& alpha) {
    alpha.require_at_most(kMaxEnumerationAtoms, "ht_equivalent");
    for (Mask t = 0;; ++t) {
        for (Mask h = t;; h = (h - 1) & t) {
            if (detail::ht_eval(a, alpha, h, t) != detail::ht_eval(b, alpha, h, t)) return false;
            if (h == 0) break;
        }
        if (t == alpha.full()) break;
    }
    return true;
}
inline bool ht_equivalent(const Formula& a, const Formula& b) {
    AtomSet s = alphabet(a);
    auto sb = alphabet(b);
    s.insert(sb.begin(), sb.end());
    return ht_equivalent(a, b, Alphabet(s));
}

} // namespace forklab
