#pragma once

// Denotational semantics of forks: T-supports, views, T-denotations, fork
// stable models, strong entailment, the pf translation and the projection
// machinery over a sub-vocabulary.
//
// Representation. For a base T with k <= 6 atoms, subset s of T is the local
// bitmask over T's sorted atoms, and a T-support is a Mask with bit s set iff
// s is a member (2^k <= 64 bits). Since H' is below H exactly when H' is
// empty or H is contained in H', every view is an up-set of non-empty
// supports under inclusion; a view is stored as its antichain of
// inclusion-minimal generators, which determines it uniquely.

#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <vector>

#include "forklab/errors.hpp"
#include "forklab/ht.hpp"
#include "forklab/interpretation.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

/// Largest base a support can be built over.
inline constexpr std::size_t kMaxSupportBase = 6;
/// Largest base whose views can be listed member by member.
inline constexpr std::size_t kMaxExplicitViewBase = 4;

namespace detail {

struct Base {
    Alphabet atoms;
    std::size_t k = 0;
    Mask all = 0;   // every subset of T
    Mask t_bit = 0; // the subset T itself

    explicit Base(const AtomSet& t) : atoms(t), k(t.size()) {
        if (k > kMaxSupportBase)
            throw CapacityError("support base has " + std::to_string(k) + " atoms, limit is " +
                                std::to_string(kMaxSupportBase));
        const std::size_t n = std::size_t{1} << k;
        all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
        t_bit = Mask{1} << (n - 1);
    }
};

using View = std::vector<Mask>;

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// Drops the empty support, duplicates and non-minimal generators.
inline View minimize(View v) {
    std::sort(v.begin(), v.end(), [](Mask a, Mask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    View out;
    for (Mask m : v) {
        if (m == 0) continue;
        if (std::none_of(out.begin(), out.end(), [&](Mask g) { return subset(g, m); })) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool view_contains(const View& v, Mask s) {
    return s != 0 && std::any_of(v.begin(), v.end(), [&](Mask g) { return subset(g, s); });
}

inline bool view_subset(const View& a, const View& b) {
    return std::all_of(a.begin(), a.end(), [&](Mask g) { return view_contains(b, g); });
}

inline Mask complement(Mask s, const Base& b) {
    if (s == b.all) return 0;
    return b.t_bit | (~s & b.all);
}

inline Mask formula_support(const Formula& f, const Base& b) {
    Mask out = 0;
    const Mask t = b.atoms.full();
    for (Mask h = 0;; ++h) {
        if (ht_eval(f, b.atoms, h, t)) out |= Mask{1} << h;
        if (h == t) break;
    }
    return out;
}

inline View denote(const Fork& f, const Base& b);

inline View denote_formula(const Formula& f, const Base& b) { return denote(Fork::from(f), b); }

inline View denote(const Fork& f, const Base& b) {
    switch (f.kind()) {
    case Fork::Kind::Bottom: return {};
    case Fork::Kind::Atom: {
        Mask s = formula_support(Formula::atom(f.name()), b);
        return s ? View{s} : View{};
    }
    case Fork::Kind::And: {
        View l = denote(f.left(), b), r = denote(f.right(), b), out;
        for (Mask x : l)
            for (Mask y : r) out.push_back(x & y);
        return minimize(std::move(out));
    }
    case Fork::Kind::Or: {
        // hat-membership: an empty view contributes the empty support
        View l = denote_formula(f.formula_left(), b), r = denote_formula(f.formula_right(), b), out;
        if (l.empty()) l.push_back(0);
        if (r.empty()) r.push_back(0);
        for (Mask x : l)
            for (Mask y : r) out.push_back(x | y);
        return minimize(std::move(out));
    }
    case Fork::Kind::Implies: {
        Mask ante = formula_support(f.formula_left(), b);
        if (ante == 0) return View{b.all};
        Mask comp = complement(ante, b);
        View out;
        for (Mask y : denote(f.right(), b)) out.push_back(comp | y);
        return minimize(std::move(out));
    }
    case Fork::Kind::Pair: {
        View out = denote(f.left(), b);
        View r = denote(f.right(), b);
        out.insert(out.end(), r.begin(), r.end());
        return minimize(std::move(out));
    }
    }
    return {};
}

inline std::string subset_string(Mask s, const Base& b) {
    if (s == 0) return "\xE2\x88\x85"; // empty set sign
    return to_string(b.atoms.set_of(s));
}

} // namespace detail

// ---------------------------------------------------------------------------
// TSupport
// ---------------------------------------------------------------------------

/// Set of subsets of T that contains T whenever it is non-empty.
class TSupport {
public:
    /// Empty support [ ] over `base`.
    explicit TSupport(const AtomSet& base) : base_(base) { detail::Base b(base_); (void)b; }

    TSupport(const AtomSet& base, const std::vector<AtomSet>& members) : base_(base) {
        detail::Base b(base_);
        for (const auto& h : members) {
            if (!is_subset(h, base_)) throw InvalidArgument("support member " + forklab::to_string(h) + " is not inside the base");
            bits_ |= Mask{1} << b.atoms.mask_of(h);
        }
        if (bits_ != 0 && !(bits_ & b.t_bit)) throw InvalidArgument("non-empty support must contain its base");
    }

    static TSupport all(const AtomSet& base) {
        detail::Base b(base);
        return from_bits(base, b.all);
    }
    static TSupport from_bits(const AtomSet& base, Mask bits) {
        TSupport s(base);
        detail::Base b(base);
        if (bits & ~b.all) throw InvalidArgument("support bits outside 2^T");
        if (bits != 0 && !(bits & b.t_bit)) throw InvalidArgument("non-empty support must contain its base");
        s.bits_ = bits;
        return s;
    }

    const AtomSet& base() const noexcept { return base_; }
    Mask bits() const noexcept { return bits_; }
    bool is_empty() const noexcept { return bits_ == 0; }
    bool contains(const AtomSet& h) const {
        if (!is_subset(h, base_)) return false;
        return (bits_ >> Alphabet(base_).mask_of(h)) & 1U;
    }
    std::vector<AtomSet> members() const {
        Alphabet a(base_);
        std::vector<AtomSet> out;
        for (Mask s = 0; s < 64; ++s)
            if (bits_ >> s & 1U) out.push_back(a.set_of(s));
        std::sort(out.begin(), out.end(), [](const AtomSet& x, const AtomSet& y) { return model_less(y, x); });
        return out;
    }

    /// Bracket notation, largest members first: "[{a,b} {a} ∅]"; empty support "[ ]".
    std::string to_string() const {
        if (is_empty()) return "[ ]";
        std::string out = "[";
        bool first = true;
        for (const auto& h : members()) {
            if (!first) out += " ";
            out += h.empty() ? "\xE2\x88\x85" : forklab::to_string(h);
            first = false;
        }
        return out + "]";
    }

    friend bool operator==(const TSupport&, const TSupport&) = default;

private:
    AtomSet base_;
    Mask bits_ = 0;
};

// ---------------------------------------------------------------------------
// TView
// ---------------------------------------------------------------------------

/// Closed set of T-supports, kept as its minimal generators.
class TView {
public:
    explicit TView(const AtomSet& base) : base_(base) { detail::Base b(base_); }
    TView(const AtomSet& base, detail::View generators) : base_(base), gens_(detail::minimize(std::move(generators))) {
        detail::Base b(base_);
    }

    const AtomSet& base() const noexcept { return base_; }
    bool empty() const noexcept { return gens_.empty(); }
    const detail::View& generator_bits() const noexcept { return gens_; }

    std::vector<TSupport> generators() const {
        std::vector<TSupport> out;
        for (Mask g : gens_) out.push_back(TSupport::from_bits(base_, g));
        return out;
    }

    bool contains(const TSupport& h) const {
        check_base(h.base());
        return detail::view_contains(gens_, h.bits());
    }

    bool subset_of(const TView& o) const {
        check_base(o.base());
        return detail::view_subset(gens_, o.gens_);
    }

    /// Every member listed explicitly; bases up to four atoms.
    std::vector<TSupport> members() const {
        if (base_.size() > kMaxExplicitViewBase) throw CapacityError("explicit view listing needs a base of at most 4 atoms");
        detail::Base b(base_);
        std::vector<TSupport> out;
        for (Mask s = 1; s <= b.all; ++s)
            if (detail::view_contains(gens_, s)) out.push_back(TSupport::from_bits(base_, s));
        return out;
    }

    /// "↓{[..], [..]}" over the generators; "∅" for the empty view.
    std::string to_string() const {
        if (gens_.empty()) return "\xE2\x88\x85";
        std::string out = "\xE2\x86\x93{";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) out += ", ";
            out += TSupport::from_bits(base_, gens_[i]).to_string();
        }
        return out + "}";
    }

    friend bool operator==(const TView&, const TView&) = default;

private:
    void check_base(const AtomSet& other) const {
        if (other != base_) throw InvalidArgument("support base mismatch");
    }
    AtomSet base_;
    detail::View gens_;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// {H in 2^T : <H,T> |= phi}.
inline TSupport support_of_formula(const Formula& f, const AtomSet& t) {
    detail::Base b(t);
    return TSupport::from_bits(t, detail::formula_support(f, b));
}

/// H1 less supported than H2: H1 = [ ] or [ ] != H2 and H2 inside H1.
inline bool preceq(const TSupport& h1, const TSupport& h2) {
    if (h1.base() != h2.base()) throw InvalidArgument("preceq: support base mismatch");
    return h1.is_empty() || (!h2.is_empty() && detail::subset(h2.bits(), h1.bits()));
}

inline TSupport complement(const TSupport& h) {
    detail::Base b(h.base());
    return TSupport::from_bits(h.base(), detail::complement(h.bits(), b));
}

inline TView ideal(const TSupport& h) {
    if (h.is_empty()) return TView(h.base());
    return TView(h.base(), {h.bits()});
}

inline TView closure(const AtomSet& base, const std::vector<TSupport>& supports) {
    detail::View v;
    for (const auto& h : supports) {
        if (h.base() != base) throw InvalidArgument("closure: support base mismatch");
        v.push_back(h.bits());
    }
    return TView(base, std::move(v));
}

/// T-denotation of a fork.
inline TView denotation(const Fork& f, const AtomSet& t) {
    detail::Base b(t);
    return TView(t, detail::denote(f, b));
}
inline TView denotation(const Formula& f, const AtomSet& t) { return denotation(Fork::from(f), t); }

/// [T] belongs to the T-denotation.
inline bool is_fork_stable(const Fork& f, const AtomSet& t) {
    detail::Base b(t);
    return detail::view_contains(detail::denote(f, b), b.t_bit);
}

inline ModelList fork_stable_models(const Fork& f, const Alphabet& alpha) {
    if (!alpha.contains(alphabet(f))) throw InvalidArgument("fork_stable_models: alphabet misses fork atoms");
    alpha.require_at_most(kMaxSupportBase, "fork_stable_models");
    ModelList out;
    for (Mask t = 0;; ++t) {
        AtomSet ts = alpha.set_of(t);
        if (is_fork_stable(f, ts)) out.push_back(std::move(ts));
        if (t == alpha.full()) break;
    }
    canonicalize(out);
    return out;
}
inline ModelList fork_stable_models(const Fork& f) { return fork_stable_models(f, alphabet(f)); }

struct EntailmentResult {
    bool holds = true;
    std::optional<AtomSet> witness;           // T where inclusion fails
    std::optional<TSupport> witness_support;  // member of the left view missing on the right
};

/// Denotation inclusion for every T over the alphabet.
inline EntailmentResult strongly_entails(const Fork& f, const Fork& g, const Alphabet& alpha) {
    AtomSet need = alphabet(f);
    auto ag = alphabet(g);
    need.insert(ag.begin(), ag.end());
    if (!alpha.contains(need)) throw InvalidArgument("strongly_entails: alphabet misses fork atoms");
    alpha.require_at_most(kMaxSupportBase, "strongly_entails");
    for (Mask t : subsets_in_order(alpha)) {
        AtomSet ts = alpha.set_of(t);
        detail::Base b(ts);
        auto vf = detail::denote(f, b);
        auto vg = detail::denote(g, b);
        for (Mask h : vf)
            if (!detail::view_contains(vg, h)) return {false, ts, TSupport::from_bits(ts, h)};
    }
    return {};
}
inline EntailmentResult strongly_entails(const Fork& f, const Fork& g) {
    AtomSet s = alphabet(f);
    auto sg = alphabet(g);
    s.insert(sg.begin(), sg.end());
    return strongly_entails(f, g, Alphabet(s));
}

/// Auxiliary atom for head position j of rule i in the pf translation.
inline Atom pf_aux_atom(std::size_t rule_index, std::size_t head_pos) {
    return "__f" + std::to_string(rule_index + 1) + "_" + std::to_string(head_pos + 1);
}

/// pf(<P>): every rule with several head atoms p1..pm becomes
/// x1 v ... v xm <- Bd(r) plus pi <- xi, with fresh xi per rule.
inline Program pf_translate(const Program& p) {
    std::vector<Rule> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Rule& r = p[i];
        if (r.is_normal()) {
            out.push_back(r);
            continue;
        }
        std::vector<Atom> aux;
        for (std::size_t j = 0; j < r.head.size(); ++j) aux.push_back(pf_aux_atom(i, j));
        out.push_back(Rule::make(aux, r.pos, r.neg, r.negneg, r.label));
        for (std::size_t j = 0; j < r.head.size(); ++j) out.push_back(Rule::make({r.head[j]}, {aux[j]}));
    }
    return Program(std::move(out));
}

// ---- projection onto a sub-vocabulary -------------------------------------

namespace detail {

inline Mask restrict_bits(Mask h, const Base& from, const Base& to, const AtomSet& v) {
    Mask out = 0;
    for (Mask s = 0; s <= from.atoms.full(); ++s) {
        if (!(h >> s & 1U)) continue;
        AtomSet hs = from.atoms.set_of(s), cut;
        std::set_intersection(hs.begin(), hs.end(), v.begin(), v.end(), std::inserter(cut, cut.end()));
        out |= Mask{1} << to.atoms.mask_of(cut);
    }
    return out;
}

inline bool feasible_bits(Mask h, const Base& b, const AtomSet& v) {
    const Mask vmask = b.atoms.mask_of(v);
    const Mask t = b.atoms.full();
    for (Mask s = 0; s < t; ++s)
        if ((h >> s & 1U) && (s & vmask) == (t & vmask)) return false;
    return true;
}

} // namespace detail

/// H_V = {H ∩ V : H in H}, a support over T ∩ V.
inline TSupport restrict_support(const TSupport& h, const AtomSet& v) {
    AtomSet tv;
    std::set_intersection(h.base().begin(), h.base().end(), v.begin(), v.end(), std::inserter(tv, tv.end()));
    detail::Base from(h.base()), to(tv);
    return TSupport::from_bits(tv, detail::restrict_bits(h.bits(), from, to, v));
}

/// No H strictly inside T in the support agrees with T on V.
inline bool is_V_feasible(const TSupport& h, const AtomSet& v) {
    detail::Base b(h.base());
    return detail::feasible_bits(h.bits(), b, v);
}

/// Closure of the V-restrictions of the V-feasible supports in the
/// Z-denotations of F, over every Z of the alphabet with Z ∩ V = T.
/// Feasibility is inherited by subsets and restriction is monotone, so the
/// minimal feasible members (feasible generators) generate the result.
inline TView projected_denotation(const Fork& f, const AtomSet& t, const AtomSet& v, const Alphabet& alpha) {
    if (!is_subset(t, v)) throw InvalidArgument("projected_denotation requires T inside V");
    if (!alpha.contains(v) || !alpha.contains(alphabet(f)))
        throw InvalidArgument("projected_denotation: alphabet misses atoms");
    alpha.require_at_most(kMaxSupportBase, "projected_denotation");
    detail::Base to(t);
    const Mask outside = alpha.full() & ~alpha.mask_of(v);
    detail::View gens;
    for (Mask w = outside;; w = (w - 1) & outside) {
        AtomSet z = t;
        auto extra = alpha.set_of(w);
        z.insert(extra.begin(), extra.end());
        detail::Base from(z);
        for (Mask g : detail::denote(f, from))
            if (detail::feasible_bits(g, from, v)) gens.push_back(detail::restrict_bits(g, from, to, v));
        if (w == 0) break;
    }
    return TView(t, std::move(gens));
}

/// {T ∩ V : T in models}.
inline ModelList project_SM(const ModelList& models, const AtomSet& v) { return project(models, v); }

} // namespace forklab
