#include <gtest/gtest.h>

#include <set>

#include "forklab/denotation.hpp"
#include "forklab/random.hpp"
#include "util.hpp"

using namespace forklab;
using test::models;
using test::prog;

namespace {

Formula A(const char* n) { return Formula::atom(n); }
Fork FA(const char* n) { return Fork::atom(n); }

TSupport S(const AtomSet& base, std::vector<AtomSet> members) { return TSupport(base, members); }

// ---- explicit-set oracle ---------------------------------------------------
// Views are stored as the full set of their member supports; each clause of
// the denotation is transcribed literally.
struct Explicit {
    Alphabet t;
    std::size_t n;   // number of subsets of T
    unsigned all;    // every subset
    unsigned tbit;   // the subset T

    explicit Explicit(const AtomSet& base) : t(base), n(1U << base.size()), all((1U << n) - 1), tbit(1U << (n - 1)) {}

    bool is_support(unsigned h) const { return h == 0 || (h & tbit); }
    bool below(unsigned h1, unsigned h2) const { return h1 == 0 || (h2 != 0 && (h2 & ~h1) == 0); }

    std::set<unsigned> ideal(unsigned h) const {
        std::set<unsigned> out;
        for (unsigned x = 1; x <= all; ++x)
            if (is_support(x) && below(x, h)) out.insert(x);
        return out;
    }
    std::set<unsigned> close(const std::set<unsigned>& d) const {
        std::set<unsigned> out;
        for (unsigned h : d)
            for (unsigned x : ideal(h)) out.insert(x);
        return out;
    }
    unsigned support(const Formula& f) const {
        unsigned out = 0;
        for (unsigned h = 0; h < n; ++h)
            if (ht_sat(HTInterpretation(t.set_of(h), t.as_set()), f)) out |= 1U << h;
        return out;
    }
    unsigned complement(unsigned h) const { return h == all ? 0 : (tbit | (~h & all)); }

    std::set<unsigned> hat(std::set<unsigned> v) const {
        if (v.empty()) v.insert(0);
        return v;
    }

    std::set<unsigned> denote(const Fork& f) const {
        switch (f.kind()) {
        case Fork::Kind::Bottom: return {};
        case Fork::Kind::Atom: return ideal(support(Formula::atom(f.name())));
        case Fork::Kind::And: {
            std::set<unsigned> d;
            for (unsigned x : denote(f.left()))
                for (unsigned y : denote(f.right())) d.insert(x & y);
            return close(d);
        }
        case Fork::Kind::Or: {
            std::set<unsigned> d;
            for (unsigned x : hat(denote(Fork::from(f.formula_left()))))
                for (unsigned y : hat(denote(Fork::from(f.formula_right())))) d.insert(x | y);
            return close(d);
        }
        case Fork::Kind::Implies: {
            unsigned s = support(f.formula_left());
            if (s == 0) return {all};
            std::set<unsigned> d;
            for (unsigned y : denote(f.right())) d.insert(complement(s) | y);
            return close(d);
        }
        case Fork::Kind::Pair: {
            auto l = denote(f.left()), r = denote(f.right());
            l.insert(r.begin(), r.end());
            return l;
        }
        }
        return {};
    }
};

std::set<unsigned> member_bits(const TView& v) {
    std::set<unsigned> out;
    for (const auto& h : v.members()) out.insert(static_cast<unsigned>(h.bits()));
    return out;
}

std::vector<AtomSet> all_subsets(const std::vector<Atom>& atoms) {
    Alphabet a(AtomSet(atoms.begin(), atoms.end()));
    std::vector<AtomSet> out;
    for (Mask m = 0; m <= a.full(); ++m) out.push_back(a.set_of(m));
    return out;
}

bool same_denotation(const Fork& f, const Fork& g, const std::vector<Atom>& atoms) {
    for (const auto& t : all_subsets(atoms))
        if (!(denotation(f, t) == denotation(g, t))) return false;
    return true;
}

} // namespace

TEST(TSupport, Construction) {
    AtomSet ab{"a", "b"};
    EXPECT_THROW(S(ab, {{"a"}}), InvalidArgument);        // non-empty without T
    EXPECT_THROW(S(ab, {{"a", "c"}}), InvalidArgument);   // member outside the base
    EXPECT_TRUE(TSupport(ab).is_empty());
    EXPECT_EQ(S(ab, {{"a", "b"}, {"a"}, {}}).to_string(), "[{a,b} {a} \xE2\x88\x85]");
    EXPECT_EQ(TSupport(ab).to_string(), "[ ]");
    EXPECT_TRUE(S(ab, {{"a", "b"}, {"b"}}).contains({"b"}));
    EXPECT_FALSE(S(ab, {{"a", "b"}, {"b"}}).contains({"a"}));
}

TEST(TSupport, OfFormula) {
    AtomSet ab{"a", "b"};
    EXPECT_EQ(support_of_formula(Formula::disj(A("a"), A("b")), ab), S(ab, {{"a", "b"}, {"a"}, {"b"}}));
    EXPECT_TRUE(support_of_formula(A("b"), {"a"}).is_empty());
    EXPECT_EQ(support_of_formula(A("a"), ab), S(ab, {{"a", "b"}, {"a"}}));
}

TEST(TSupport, Order) {
    AtomSet ab{"a", "b"};
    auto big = S(ab, {{"a", "b"}, {"a"}, {}});
    auto small = S(ab, {{"a", "b"}, {"a"}});
    EXPECT_TRUE(preceq(TSupport(ab), big));
    EXPECT_TRUE(preceq(big, small));
    EXPECT_FALSE(preceq(small, big));
    EXPECT_FALSE(preceq(S(ab, {{"a", "b"}}), TSupport(ab)));
}

TEST(TSupport, Complement) {
    EXPECT_TRUE(complement(S({"a"}, {{"a"}, {}})).is_empty());
    AtomSet ab{"a", "b"};
    EXPECT_EQ(complement(S(ab, {{"a", "b"}, {"a"}})), S(ab, {{"a", "b"}, {"b"}, {}}));
    EXPECT_EQ(complement(TSupport({"a"})), S({"a"}, {{"a"}, {}}));
}

TEST(TSupport, ComplementIsAnInvolutionExceptOnSingletonT) {
    for (const auto& base : {AtomSet{}, AtomSet{"a"}, AtomSet{"a", "b"}, AtomSet{"a", "b", "c"}}) {
        detail::Base b(base);
        for (Mask s = 0; s <= b.all; ++s) {
            if (s != 0 && !(s & b.t_bit)) continue;
            auto h = TSupport::from_bits(base, s);
            bool exception = !base.empty() && s == b.t_bit;
            EXPECT_EQ(complement(complement(h)) == h, !exception) << h.to_string();
        }
    }
}

TEST(TView, IdealAndClosure) {
    EXPECT_TRUE(ideal(TSupport({"a"})).empty());
    auto v = ideal(S({"a"}, {{"a"}}));
    ASSERT_EQ(v.members().size(), 2u);
    EXPECT_TRUE(v.contains(S({"a"}, {{"a"}})));
    EXPECT_TRUE(v.contains(S({"a"}, {{"a"}, {}})));
    EXPECT_EQ(closure({"a"}, {S({"a"}, {{"a"}}), TSupport({"a"})}), v);
    EXPECT_FALSE(v.contains(TSupport({"a"})));
}

TEST(TView, ClosureIsIdempotent) {
    auto atoms = default_atoms(3);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto f = gen_fork(seed, atoms, 3);
        for (const auto& t : all_subsets(atoms)) {
            auto v = denotation(f, t);
            EXPECT_EQ(closure(t, v.members()), v);
            EXPECT_EQ(closure(t, v.generators()), v);
        }
    }
}

TEST(Denotation, Examples) {
    EXPECT_TRUE(denotation(Fork::bottom(), {"a"}).empty());
    auto f = parse_fork("(a ; b) & (a ; c)");
    EXPECT_TRUE(denotation(f, {"a", "b"}).contains(S({"a", "b"}, {{"a", "b"}})));
    EXPECT_EQ(denotation(Fork::pair(FA("a"), FA("b")), {"a"}), ideal(S({"a"}, {{"a"}})));
    EXPECT_EQ(denotation(f, {"a", "b"}).to_string(), "\xE2\x86\x93{[{a,b}]}");
}

TEST(Denotation, AgreesWithExplicitOracle) {
    auto atoms = default_atoms(3);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto f = gen_fork(seed, atoms, 3);
        for (const auto& t : all_subsets(atoms)) {
            Explicit o(t);
            EXPECT_EQ(member_bits(denotation(f, t)), o.denote(f)) << render(f) << " at " << to_string(t);
        }
    }
}

TEST(ForkStable, Examples) {
    EXPECT_EQ(fork_stable_models(forked(prog(test::kP1))), models({{"a"}, {"a", "c"}, {"a", "b"}, {"b", "c"}}));
    EXPECT_EQ(fork_stable_models(forked(prog(test::kP5))), models({{"a", "b"}}));
    EXPECT_EQ(fork_stable_models(parse_fork("a ; b")), models({{"a"}, {"b"}}));
}

TEST(ForkStable, FormulasKeepTheirStableModels) {
    auto atoms = default_atoms(3);
    Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto f = gen_formula(seed, atoms, 3);
        EXPECT_EQ(fork_stable_models(Fork::from(f), alpha), stable_models(f, alpha)) << render(f);
    }
}

TEST(ForkAlgebra, AssociativityDistributivityUnion) {
    auto atoms = default_atoms(3);
    Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        auto f = gen_fork(3 * seed, atoms, 2), g = gen_fork(3 * seed + 1, atoms, 2), l = gen_fork(3 * seed + 2, atoms, 2);
        EXPECT_TRUE(same_denotation(Fork::pair(Fork::pair(f, g), l), Fork::pair(f, Fork::pair(g, l)), atoms));
        EXPECT_TRUE(same_denotation(Fork::conj(Fork::pair(f, g), l), Fork::pair(Fork::conj(f, l), Fork::conj(g, l)), atoms));
        auto u = fork_stable_models(f, alpha);
        auto ug = fork_stable_models(g, alpha);
        u.insert(u.end(), ug.begin(), ug.end());
        canonicalize(u);
        EXPECT_EQ(fork_stable_models(Fork::pair(f, g), alpha), u);
    }
}

TEST(StrongEntailment, Examples) {
    auto disj = parse_fork("a v b");
    auto fork = parse_fork("a ; b");
    EXPECT_TRUE(strongly_entails(disj, fork).holds);
    auto r = strongly_entails(fork, disj);
    EXPECT_FALSE(r.holds);
    EXPECT_EQ(*r.witness, (AtomSet{"a", "b"}));
    EXPECT_TRUE(strongly_entails(fork, fork).holds);
}

TEST(StrongEntailment, ImpliesStableModelInclusionUnderContexts) {
    // inclusion of denotations must survive conjunction with any fork
    auto atoms = default_atoms(3);
    Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto f = gen_fork(2 * seed, atoms, 2), g = gen_fork(2 * seed + 1, atoms, 2);
        if (!strongly_entails(f, g, alpha).holds) continue;
        for (std::uint64_t c = 0; c < 10; ++c) {
            auto l = gen_fork(1000 + c, atoms, 2);
            EXPECT_TRUE(model_subset(fork_stable_models(Fork::conj(f, l), alpha),
                                     fork_stable_models(Fork::conj(g, l), alpha)));
        }
    }
}

TEST(Pf, TwoDisjunctions) {
    auto q = pf_translate(prog(test::kP1));
    ASSERT_EQ(q.size(), 6u);
    EXPECT_EQ(q[0], Rule::make({"__f1_1", "__f1_2"}));
    EXPECT_EQ(q[1], Rule::make({"a"}, {"__f1_1"}));
    EXPECT_EQ(q[2], Rule::make({"b"}, {"__f1_2"}));
    EXPECT_EQ(q[3], Rule::make({"__f2_1", "__f2_2"}));
    EXPECT_EQ(q[4], Rule::make({"a"}, {"__f2_1"}));
    EXPECT_EQ(q[5], Rule::make({"c"}, {"__f2_2"}));
    EXPECT_EQ(alphabet(q).size(), 7u);
}

TEST(Pf, NormalProgramsUnchanged) {
    auto p = prog("a :- not b. b :- not a. :- c.");
    EXPECT_EQ(pf_translate(p), p);
}

TEST(Pf, ThreeAtomHead) {
    auto q = pf_translate(prog("a | b | c :- d."));
    ASSERT_EQ(q.size(), 4u);
    EXPECT_EQ(q[0].head.size(), 3u);
    EXPECT_EQ(q[0].pos, AtomSet{"d"});
}

TEST(Pf, ProjectedStableModels) {
    auto p = prog(test::kP1);
    auto q = pf_translate(p);
    EXPECT_EQ(project_SM(stable_models(q), alphabet(p)), models({{"a"}, {"a", "b"}, {"a", "c"}, {"b", "c"}}));
}

TEST(Projection, SupportRestrictionAndFeasibility) {
    auto h = S({"a", "x"}, {{"a", "x"}, {"a"}});
    EXPECT_EQ(restrict_support(h, {"a"}), S({"a"}, {{"a"}}));
    EXPECT_FALSE(is_V_feasible(h, {"a"}));
    EXPECT_TRUE(is_V_feasible(S({"a", "x"}, {{"a", "x"}, {"x"}}), {"a"}));
}

TEST(Projection, ProjectedDenotationCharacterisesProjectedStableModels) {
    // T in SM_V(F) iff [T] belongs to the projected T-view
    auto atoms = default_atoms(3);
    Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        auto f = gen_fork(seed, atoms, 3);
        for (const AtomSet& v : {AtomSet{"a"}, AtomSet{"a", "b"}, AtomSet{"a", "b", "c"}}) {
            auto expected = project(fork_stable_models(f, alpha), v);
            ModelList got;
            for (const auto& t : all_subsets(std::vector<Atom>(v.begin(), v.end())))
                if (projected_denotation(f, t, v, alpha).contains(S(t, {t}))) got.push_back(t);
            canonicalize(got);
            EXPECT_EQ(got, expected) << render(f) << " V=" << to_string(v);
        }
    }
}

TEST(Capacity, SupportBaseLimit) {
    AtomSet big{"a", "b", "c", "d", "e", "f", "g"};
    EXPECT_THROW(denotation(FA("a"), big), CapacityError);
    EXPECT_THROW(ideal(TSupport({"a", "b", "c", "d", "e"})).members(), CapacityError);
}
