#pragma once

// Interpretations, indexed alphabets and the canonical model ordering.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forklab/errors.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

using Mask = std::uint64_t;
using ModelList = std::vector<AtomSet>;

/// Size guard for every enumeration entry point.
inline constexpr std::size_t kMaxEnumerationAtoms = 20;

/// Sorted, duplicate-free list of atoms; atom i owns bit i of a Mask.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(const AtomSet& atoms) : atoms_(atoms.begin(), atoms.end()) { // NOLINT implicit by design of call sites
        if (atoms_.size() > 64) throw CapacityError("alphabet exceeds 64 atoms");
    }
    Alphabet(std::initializer_list<Atom> atoms) : Alphabet(AtomSet(atoms)) {}

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Atom& operator[](std::size_t i) const { return atoms_.at(i); }
    AtomSet as_set() const { return AtomSet(atoms_.begin(), atoms_.end()); }

    std::optional<std::size_t> index(const Atom& a) const {
        auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
        if (it == atoms_.end() || *it != a) return std::nullopt;
        return static_cast<std::size_t>(it - atoms_.begin());
    }
    bool contains(const Atom& a) const { return index(a).has_value(); }
    bool contains(const AtomSet& s) const {
        return std::all_of(s.begin(), s.end(), [&](const Atom& a) { return contains(a); });
    }

    Mask full() const noexcept { return atoms_.size() == 64 ? ~Mask{0} : ((Mask{1} << atoms_.size()) - 1); }

    /// Atoms outside the alphabet are ignored.
    Mask mask_of(const AtomSet& s) const {
        Mask m = 0;
        for (const auto& a : s)
            if (auto i = index(a)) m |= Mask{1} << *i;
        return m;
    }
    Mask bit(const Atom& a) const {
        auto i = index(a);
        return i ? Mask{1} << *i : 0;
    }
    AtomSet set_of(Mask m) const {
        AtomSet s;
        for (std::size_t i = 0; i < atoms_.size(); ++i)
            if (m >> i & 1U) s.insert(atoms_[i]);
        return s;
    }

    void require_at_most(std::size_t limit, const char* what) const {
        if (size() > limit)
            throw CapacityError(std::string(what) + ": alphabet has " + std::to_string(size()) +
                                " atoms, limit is " + std::to_string(limit));
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<Atom> atoms_;
};

/// Here-and-there pair <H,T> with H a subset of T.
class HTInterpretation {
public:
    HTInterpretation(AtomSet here, AtomSet there) : here_(std::move(here)), there_(std::move(there)) {
        if (!std::includes(there_.begin(), there_.end(), here_.begin(), here_.end()))
            throw InvalidArgument("HT interpretation requires here to be a subset of there");
    }
    static HTInterpretation total(const AtomSet& t) { return HTInterpretation(t, t); }

    const AtomSet& here() const noexcept { return here_; }
    const AtomSet& there() const noexcept { return there_; }
    bool is_total() const { return here_ == there_; }

private:
    AtomSet here_;
    AtomSet there_;
};

/// Canonical interpretation order: by cardinality, then lexicographically.
inline bool model_less(const AtomSet& a, const AtomSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline void canonicalize(ModelList& ms) {
    std::sort(ms.begin(), ms.end(), model_less);
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

inline bool is_subset(const AtomSet& a, const AtomSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline bool model_subset(const ModelList& a, const ModelList& b) {
    return std::all_of(a.begin(), a.end(),
                       [&](const AtomSet& m) { return std::find(b.begin(), b.end(), m) != b.end(); });
}

/// Subset-minimal members; input order of survivors is kept.
inline ModelList minimal_elements(const ModelList& s) {
    ModelList out;
    for (const auto& m : s) {
        bool minimal = std::none_of(s.begin(), s.end(),
                                    [&](const AtomSet& o) { return o != m && is_subset(o, m); });
        if (minimal && std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    return out;
}

/// { T intersected with V : T in models }, canonical.
inline ModelList project(const ModelList& models, const AtomSet& v) {
    ModelList out;
    for (const auto& m : models) {
        AtomSet p;
        std::set_intersection(m.begin(), m.end(), v.begin(), v.end(), std::inserter(p, p.end()));
        out.push_back(std::move(p));
    }
    canonicalize(out);
    return out;
}

/// Subsets of the alphabet in canonical order (cardinality, then lexicographic).
inline std::vector<Mask> subsets_in_order(const Alphabet& alpha) {
    std::vector<Mask> out;
    const Mask full = alpha.full();
    std::vector<std::vector<Mask>> by_card(alpha.size() + 1);
    for (Mask m = 0;; ++m) {
        by_card[static_cast<std::size_t>(std::popcount(m))].push_back(m);
        if (m == full) break;
    }
    for (auto& bucket : by_card) {
        // Bit i is the i-th atom in sorted order; lexicographic order of the
        // atom lists is the order of the reversed bit strings.
        std::sort(bucket.begin(), bucket.end(), [&](Mask a, Mask b) {
            while (a && b) {
                int ia = std::countr_zero(a), ib = std::countr_zero(b);
                if (ia != ib) return ia < ib;
                a &= a - 1;
                b &= b - 1;
            }
            return a == 0 && b != 0;
        });
        out.insert(out.end(), bucket.begin(), bucket.end());
    }
    return out;
}

inline std::string to_string(const AtomSet& s) {
    if (s.empty()) return "{}";
    std::string out = "{";
    bool first = true;
    for (const auto& a : s) {
        if (!first) out += ",";
        out += a;
        first = false;
    }
    return out + "}";
}

inline std::string to_string(const ModelList& ms) {
    std::string out = "[";
    for (std::size_t i = 0; i < ms.size(); ++i) {
        if (i) out += " ";
        out += to_string(ms[i]);
    }
    return out + "]";
}

} // namespace forklab
