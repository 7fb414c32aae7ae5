#pragma once

// Symbolic normal forms at the automaton level: the NF_k and well-formedness
// automata, the register-renaming construction Ã and canonical session automata.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sessa/automaton.hh"
#include "sessa/symbolic.hh"
#include "sessa/words.hh"

namespace sessa {

/// Partial injective map on {1..k}; `image[r-1] == 0` means r is unmapped.
class PartialInjection {
public:
    explicit PartialInjection(unsigned k = 0) : image_(k, 0) {}

    unsigned size() const { return static_cast<unsigned>(image_.size()); }
    std::optional<unsigned> operator()(unsigned r) const;
    bool empty() const;
    std::vector<std::pair<unsigned, unsigned>> pairs() const;

    /// σ[from ↦ to] applied to the maximal sub-mapping of σ that keeps the result
    /// injective: drop whatever mapped onto `to` and whatever `from` mapped to.
    PartialInjection rebind(unsigned from, unsigned to) const;

    std::string to_string() const;

    friend auto operator<=>(const PartialInjection&, const PartialInjection&) = default;

private:
    std::vector<unsigned> image_;
};

/// (greatest initialized register, registers promised to be reused before reset)
struct NfState {
    unsigned top = 0;
    std::uint64_t promised = 0;  // bit r-1 for register r

    friend auto operator<=>(const NfState&, const NfState&) = default;
};

std::optional<NfState> nf_step(const NfState& q, const RegisterOp& op, unsigned k);
inline bool nf_accepting(const NfState& q) { return q.promised == 0; }

/// Reachable NF_k states in breadth-first order; index i is DFA state i of nf_automaton.
std::vector<NfState> nf_states(unsigned k, const std::set<Label>& labels);

/// Symbolically deterministic automaton for NF_k over `labels`.
SymbolicDfa nf_automaton(unsigned k, const std::set<Label>& labels);

/// Word-level NF test: u is in NF_{max_register(u)} (ε is).
bool is_normal_form(const SymbolicWord& u);

/// WF ∩ (Σ×Γ_k)*: states are sets of initialized registers.
SymbolicDfa wf_automaton(unsigned k, const std::set<Label>& labels);

/// The session automaton viewed as a finite automaton over Σ×Γ_k.
SymbolicNfa symbolic_view(const Automaton& a);

struct TildeAutomaton {
    SymbolicNfa nfa;
    /// origin[i] = (state of the source automaton, register correspondence) of nfa state i
    std::vector<std::pair<StateId, PartialInjection>> origin;
};

/// Well-formed words sharing a concretization with some word of L_symb(a).
/// Only reachable (state, injection) pairs are built.
TildeAutomaton tilde(const Automaton& a);

/// Minimal DFA for snf(L(a)); its alphabet is Σ×Γ_k with k = a.registers.
SymbolicDfa canonicalize(const Automaton& a);

/// Session automaton with the DFA's transitions; states are named `__q<i>`.
Automaton to_automaton(const SymbolicDfa& d, const std::set<Label>& labels, unsigned k, std::string name);

} // namespace sessa
