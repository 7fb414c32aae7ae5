#pragma once

// Boolean operations and decision procedures on data languages of session automata.
// Every witness is the smallest-fresh concretization of a shortest symbolic witness.

#include <optional>

#include "sessa/automaton.hh"
#include "sessa/words.hh"

namespace sessa {

/// L(a) ∩ L(b), over min(k_a, k_b) registers; product of the canonical automata.
Automaton intersect(const Automaton& a, const Automaton& b);

/// L(a) ∪ L(b), over max(k_a, k_b) registers; disjoint union with a fresh initial state.
Automaton unite(const Automaton& a, const Automaton& b);

/// B_k \ L(a) for the k registers of `a`. Symbolically deterministic, not
/// necessarily data deterministic.
Automaton complement_bounded(const Automaton& a);

/// nullopt iff L(a) ⊆ L(b); otherwise a word of L(a) \ L(b).
std::optional<DataWord> includes(const Automaton& a, const Automaton& b);

/// nullopt iff L(a) = L(b); otherwise a word of the symmetric difference.
std::optional<DataWord> equivalent(const Automaton& a, const Automaton& b);

/// nullopt iff L(a) is empty; otherwise an accepted word.
std::optional<DataWord> is_empty(const Automaton& a);

/// nullopt iff B_k ⊆ L(a); otherwise a k-bounded word outside L(a).
std::optional<DataWord> is_universal_bounded(const Automaton& a, unsigned k);

} // namespace sessa
