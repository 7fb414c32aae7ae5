#pragma once

// Finite automata over the symbolic alphabet Σ×Γ_k. Each TransitionLabel is an atomic
// letter; states are dense indices.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sessa/words.hh"

namespace sessa {

using SymState = std::size_t;

struct SymbolicNfa {
    std::set<TransitionLabel> alphabet;
    std::vector<std::map<TransitionLabel, std::set<SymState>>> delta;
    std::set<SymState> initials;
    std::set<SymState> finals;

    std::size_t num_states() const { return delta.size(); }
    SymState add_state();
    void add_transition(SymState from, const TransitionLabel& letter, SymState to);
    bool accepts(const SymbolicWord& u) const;
};

/// Partial DFA; missing transitions go to an implicit sink.
struct SymbolicDfa {
    std::set<TransitionLabel> alphabet;
    std::vector<std::map<TransitionLabel, SymState>> delta;
    SymState initial = 0;
    std::set<SymState> finals;
    bool complete = false;

    std::size_t num_states() const { return delta.size(); }
    SymState add_state();
    void set_transition(SymState from, const TransitionLabel& letter, SymState to);
    std::optional<SymState> run(const SymbolicWord& u) const;
    bool accepts(const SymbolicWord& u) const;
    /// Largest register index in the alphabet.
    unsigned registers() const;
    SymbolicNfa to_nfa() const;
};

/// Σ×Γ_k in the TransitionLabel order, ⊛ and ↑ letters only.
std::set<TransitionLabel> session_alphabet(const std::set<Label>& labels, unsigned k);

SymbolicDfa determinize(const SymbolicNfa& n);

/// Adds an explicit sink if needed so every (state, letter) over `alphabet` is defined.
SymbolicDfa complete(const SymbolicDfa& d, const std::set<TransitionLabel>& alphabet);
SymbolicDfa complete(const SymbolicDfa& d);

/// Reachable and co-reachable part; a DFA with empty language keeps just its initial state.
SymbolicDfa trim(const SymbolicDfa& d);

/// Renumbers reachable states breadth-first from the initial state, letters in order.
SymbolicDfa canonical_numbering(const SymbolicDfa& d);

/// Hopcroft refinement on the completed DFA; result is trim and canonically numbered.
SymbolicDfa minimize(const SymbolicDfa& d);

SymbolicNfa product(const SymbolicNfa& x, const SymbolicNfa& y);
SymbolicNfa nfa_union(const SymbolicNfa& x, const SymbolicNfa& y);
SymbolicDfa complement(const SymbolicDfa& d);
SymbolicDfa complement(const SymbolicDfa& d, const std::set<TransitionLabel>& alphabet);

/// Shortlex-least accepted word, or nullopt when the language is empty.
std::optional<SymbolicWord> shortest_accepted(const SymbolicNfa& n);
std::optional<SymbolicWord> shortest_accepted(const SymbolicDfa& d);

/// Shortest word of L(x) \ L(y), nullopt iff L(x) ⊆ L(y).
std::optional<SymbolicWord> symbolic_inclusion(const SymbolicNfa& x, const SymbolicNfa& y);
/// Shortest word of the symmetric difference, nullopt iff the languages are equal.
std::optional<SymbolicWord> symbolic_equivalence(const SymbolicNfa& x, const SymbolicNfa& y);

/// Structural equality of the trim, canonically numbered DFAs (alphabets are ignored).
bool trim_isomorphic(const SymbolicDfa& x, const SymbolicDfa& y);

} // namespace sessa
