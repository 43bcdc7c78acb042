#include <gtest/gtest.h>

#include "forklab/ht.hpp"
#include "forklab/random.hpp"
#include "util.hpp"

using namespace forklab;
using test::models;
using test::prog;

namespace {

Formula A(const char* n) { return Formula::atom(n); }

// Reduct oracle written directly over atom sets: T is stable iff it is a
// minimal model of { h <- B+ : B- misses T, B-- inside T }.
bool reduct_model(const Program& p, const AtomSet& t, const AtomSet& h) {
    for (const auto& r : p.rules()) {
        bool neg_ok = std::none_of(r.neg.begin(), r.neg.end(), [&](const Atom& a) { return t.count(a); });
        bool nn_ok = std::all_of(r.negneg.begin(), r.negneg.end(), [&](const Atom& a) { return t.count(a); });
        if (!neg_ok || !nn_ok) continue;
        bool body = std::all_of(r.pos.begin(), r.pos.end(), [&](const Atom& a) { return h.count(a); });
        bool head = std::any_of(r.head.begin(), r.head.end(), [&](const Atom& a) { return h.count(a); });
        if (body && !head) return false;
    }
    return true;
}

ModelList oracle_stable(const Program& p) {
    std::vector<Atom> atoms;
    for (const auto& a : alphabet(p)) atoms.push_back(a);
    const std::size_t n = atoms.size();
    auto set_of = [&](unsigned m) {
        AtomSet s;
        for (std::size_t i = 0; i < n; ++i)
            if (m >> i & 1U) s.insert(atoms[i]);
        return s;
    };
    ModelList out;
    for (unsigned t = 0; t < (1U << n); ++t) {
        AtomSet ts = set_of(t);
        if (!reduct_model(p, ts, ts)) continue;
        bool minimal = true;
        for (unsigned h = t; minimal && h; h = (h - 1) & t)
            if (h != t && reduct_model(p, ts, set_of(h))) minimal = false;
        if (minimal && t != 0 && reduct_model(p, ts, {})) minimal = false;
        if (minimal) out.push_back(ts);
    }
    canonicalize(out);
    return out;
}

} // namespace

TEST(ClassicalSat, Basics) {
    EXPECT_TRUE(classical_sat({"a"}, Formula::disj(A("a"), A("b"))));
    EXPECT_TRUE(classical_sat({"a", "b", "c"}, prog(test::kP1)));
    EXPECT_FALSE(classical_sat({}, Formula::implies(Formula::neg(A("b")), A("b"))));
    EXPECT_FALSE(classical_sat({"b"}, prog(test::kP1)));
}

TEST(HtSat, Negation) {
    EXPECT_FALSE(ht_sat(HTInterpretation({}, {"b"}), Formula::neg(A("b"))));
    EXPECT_TRUE(ht_sat(HTInterpretation({"a"}, {"a", "b"}), Formula::neg(Formula::neg(A("b")))));
    EXPECT_TRUE(ht_sat(HTInterpretation({}, {"p"}), Formula::implies(A("p"), A("p"))));
    EXPECT_FALSE(ht_sat(HTInterpretation({}, {"p"}), Formula::disj(A("p"), Formula::neg(A("p")))));
}

TEST(HtSat, HereMustBeInsideThere) {
    EXPECT_THROW(HTInterpretation({"a"}, {}), InvalidArgument);
}

TEST(HtSat, PersistenceOnRandomFormulas) {
    // <H,T> |= f implies <T,T> |= f
    auto atoms = default_atoms(3);
    Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        auto f = gen_formula(seed, atoms, 3);
        for (Mask t = 0; t <= alpha.full(); ++t)
            for (Mask h = t;; h = (h - 1) & t) {
                if (ht_sat(HTInterpretation(alpha.set_of(h), alpha.set_of(t)), f)) {
                    EXPECT_TRUE(classical_sat(alpha.set_of(t), f)) << render(f);
                }
                if (h == 0) break;
            }
    }
}

TEST(ClassicalModels, Programs) {
    EXPECT_EQ(classical_models(prog(test::kP1)),
              models({{"a"}, {"b", "c"}, {"a", "b"}, {"a", "c"}, {"a", "b", "c"}}));
    EXPECT_EQ(classical_models(Program(), Alphabet{"a"}), models({{}, {"a"}}));
    EXPECT_TRUE(classical_models(prog("a. :- a.")).empty());
}

TEST(ClassicalModels, SolverAgreesWithFormulaEnumeration) {
    GenConfig cfg;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        cfg.seed = seed;
        auto p = gen_program(cfg);
        Alphabet alpha(alphabet(p));
        EXPECT_EQ(classical_models(p, alpha), test::sorted(classical_models(program_formula(p), alpha))) << render(p);
    }
}

TEST(StableModels, ExamplePrograms) {
    EXPECT_EQ(stable_models(prog(test::kP1)), models({{"a"}, {"b", "c"}}));
    EXPECT_TRUE(stable_models(prog(test::kP5)).empty());
    EXPECT_EQ(stable_models(prog(test::kP6)), models({{}}));
}

TEST(StableModels, DoubleNegation) {
    EXPECT_EQ(stable_models(prog("p :- not not p.")), models({{}, {"p"}}));
    EXPECT_EQ(stable_models(prog("a :- not b. b :- not a.")), models({{"a"}, {"b"}}));
    EXPECT_EQ(stable_models(prog("a | b. a :- b. b :- a.")), models({{"a", "b"}}));
}

TEST(StableModels, ExtraAlphabetAtomsStayFalse) {
    EXPECT_EQ(stable_models(prog("a."), Alphabet{"a", "z"}), models({{"a"}}));
    EXPECT_THROW(stable_models(prog("a."), Alphabet{"z"}), InvalidArgument);
}

TEST(StableModels, AgreeWithReductOracle) {
    GenConfig cfg;
    for (std::uint64_t seed = 0; seed < 400; ++seed) {
        cfg.seed = seed;
        auto p = gen_program(cfg);
        EXPECT_EQ(stable_models(p), oracle_stable(p)) << render(p);
    }
}

TEST(StableModels, FormulaPathAgreesWithProgramPath) {
    GenConfig cfg;
    cfg.atom_count = 4;
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        cfg.seed = seed;
        auto p = gen_program(cfg);
        Alphabet alpha(alphabet(p));
        EXPECT_EQ(stable_models(p, alpha), test::sorted(stable_models(program_formula(p), alpha))) << render(p);
    }
}

TEST(HtEquivalence, Examples) {
    EXPECT_TRUE(ht_equivalent(Formula::implies(Formula::neg(A("b")), A("b")), Formula::neg(Formula::neg(A("b")))));
    EXPECT_FALSE(ht_equivalent(A("a"), Formula::disj(A("a"), A("b")), Alphabet{"a", "b"}));
    auto f = program_formula(prog(test::kP1));
    EXPECT_TRUE(ht_equivalent(f, f));
    // classically equivalent, not strongly equivalent
    EXPECT_FALSE(ht_equivalent(Formula::disj(A("p"), Formula::neg(A("p"))), Formula::top()));
}

TEST(Capacity, GuardedEnumeration) {
    AtomSet many;
    for (int i = 0; i < 25; ++i) many.insert("x" + std::to_string(i));
    EXPECT_THROW(stable_models(Formula::atom("x0"), Alphabet(many)), CapacityError);
}
