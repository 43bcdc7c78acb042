#pragma once

#include <initializer_list>

#include "forklab/interpretation.hpp"
#include "forklab/parser.hpp"

namespace forklab::test {

/// Canonically ordered model list, e.g. models({{"a"}, {"b", "c"}}).
inline ModelList models(std::initializer_list<AtomSet> ms) {
    ModelList out(ms.begin(), ms.end());
    canonicalize(out);
    return out;
}

inline ModelList sorted(ModelList ms) {
    canonicalize(ms);
    return ms;
}

inline Program prog(std::string_view text) { return parse_program(text); }

inline const char* const kP1 = "a | b. a | c.";
inline const char* const kP4 = "l1: a | b. l2: a | c.";
inline const char* const kP5 = "a | b. a. b :- not b.";
inline const char* const kP6 = "p :- p.";
inline const char* const kP7 = "p. :- c. a | b. b | a :- p.";

} // namespace forklab::test
