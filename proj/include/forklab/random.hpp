#pragma once

// Seedable generators of programs, formulas and forks for differential testing.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "forklab/errors.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

struct GenConfig {
    std::size_t atom_count = 5; // atoms are drawn from a, b, c, ...
    std::size_t rule_count = 6; // rules per program: 1..rule_count
    std::size_t max_head = 3;
    std::size_t max_body = 2;
    double p_neg = 0.2;
    double p_negneg = 0.1;
    double p_constraint = 0.1;
    double p_dup_head = 0.1; // reuse the head set of an earlier disjunctive rule
    std::uint64_t seed = 1;

    static constexpr std::size_t kMaxAtoms = 6;
    static constexpr std::size_t kMaxRules = 8;
    static constexpr std::size_t kMaxHead = 3;
    static constexpr std::size_t kMaxBody = 3;

    void validate() const {
        auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (atom_count == 0 || atom_count > kMaxAtoms) throw InvalidArgument("atom_count must be in 1..6");
        if (rule_count == 0 || rule_count > kMaxRules) throw InvalidArgument("rule_count must be in 1..8");
        if (max_head == 0 || max_head > kMaxHead) throw InvalidArgument("max_head must be in 1..3");
        if (max_body > kMaxBody) throw InvalidArgument("max_body must be at most 3");
        if (!prob(p_neg) || !prob(p_negneg) || !prob(p_constraint) || !prob(p_dup_head) || p_neg + p_negneg > 1.0)
            throw InvalidArgument("probabilities must lie in [0,1] and p_neg + p_negneg must not exceed 1");
    }
};

/// Thin deterministic wrapper: the std distributions are implementation
/// defined, so sampling is done by hand on top of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
    std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
};

inline std::vector<Atom> default_atoms(std::size_t n) {
    std::vector<Atom> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

namespace detail {

inline std::vector<Atom> pick_distinct(Rng& rng, std::vector<Atom> pool, std::size_t k) {
    rng.shuffle(pool);
    pool.resize(std::min(k, pool.size()));
    return pool;
}

} // namespace detail

/// Program over an explicit atom pool; cfg.atom_count is ignored.
inline Program gen_program(const GenConfig& cfg, const std::vector<Atom>& atoms) {
    cfg.validate();
    if (atoms.empty()) throw InvalidArgument("gen_program needs at least one atom");
    Rng rng(cfg.seed);
    const std::size_t n = rng.between(1, cfg.rule_count);
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Atom> head;
        std::vector<const Rule*> disjunctive;
        for (const auto& r : rules)
            if (r.head.size() >= 2) disjunctive.push_back(&r);
        bool constraint = false;
        if (!disjunctive.empty() && rng.chance(cfg.p_dup_head)) {
            head = disjunctive[rng.below(disjunctive.size())]->head;
            rng.shuffle(head);
        } else if (rng.chance(cfg.p_constraint)) {
            constraint = true;
        } else {
            head = detail::pick_distinct(rng, atoms, rng.between(1, cfg.max_head));
        }
        std::size_t body_size = rng.between(0, cfg.max_body);
        if (constraint && body_size == 0) body_size = 1;
        AtomSet pos, neg, negneg;
        for (const auto& a : detail::pick_distinct(rng, atoms, body_size)) {
            double u = rng.unit();
            if (u < cfg.p_negneg) negneg.insert(a);
            else if (u < cfg.p_negneg + cfg.p_neg) neg.insert(a);
            else pos.insert(a);
        }
        rules.push_back(Rule::make(std::move(head), std::move(pos), std::move(neg), std::move(negneg)));
    }
    return Program(std::move(rules));
}

inline Program gen_program(const GenConfig& cfg) {
    cfg.validate();
    return gen_program(cfg, default_atoms(cfg.atom_count));
}

namespace detail {

inline Formula gen_formula(Rng& rng, const std::vector<Atom>& atoms, std::size_t depth) {
    if (depth == 0 || rng.chance(0.25)) {
        if (rng.chance(0.1)) return Formula::bottom();
        return Formula::atom(atoms[rng.below(atoms.size())]);
    }
    switch (rng.below(4)) {
    case 0: return Formula::conj(gen_formula(rng, atoms, depth - 1), gen_formula(rng, atoms, depth - 1));
    case 1: return Formula::disj(gen_formula(rng, atoms, depth - 1), gen_formula(rng, atoms, depth - 1));
    case 2: return Formula::implies(gen_formula(rng, atoms, depth - 1), gen_formula(rng, atoms, depth - 1));
    default: return Formula::neg(gen_formula(rng, atoms, depth - 1));
    }
}

inline Fork gen_fork(Rng& rng, const std::vector<Atom>& atoms, std::size_t depth) {
    if (depth == 0 || rng.chance(0.2)) {
        if (rng.chance(0.1)) return Fork::bottom();
        return Fork::atom(atoms[rng.below(atoms.size())]);
    }
    switch (rng.below(5)) {
    case 0:
    case 1: return Fork::pair(gen_fork(rng, atoms, depth - 1), gen_fork(rng, atoms, depth - 1));
    case 2: return Fork::conj(gen_fork(rng, atoms, depth - 1), gen_fork(rng, atoms, depth - 1));
    case 3: return Fork::disj(gen_formula(rng, atoms, depth - 1), gen_formula(rng, atoms, depth - 1));
    default: return Fork::implies(gen_formula(rng, atoms, depth - 1), gen_fork(rng, atoms, depth - 1));
    }
}

} // namespace detail

/// Random propositional formula of depth at most `depth`.
inline Formula gen_formula(std::uint64_t seed, const std::vector<Atom>& atoms, std::size_t depth) {
    if (atoms.empty()) throw InvalidArgument("gen_formula needs at least one atom");
    Rng rng(seed);
    return detail::gen_formula(rng, atoms, depth);
}

/// Random fork of depth at most `depth`; '|' only where the grammar allows it.
inline Fork gen_fork(std::uint64_t seed, const std::vector<Atom>& atoms, std::size_t depth) {
    if (atoms.empty()) throw InvalidArgument("gen_fork needs at least one atom");
    Rng rng(seed);
    return detail::gen_fork(rng, atoms, depth);
}

} // namespace forklab
