#pragma once

// Fresh-register automata and their register/session subclasses.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sessa/words.hh"

namespace sessa {

using StateId = std::string;

struct Transition {
    StateId source;
    TransitionLabel label;
    StateId target;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// States keep their declaration order; synthesized states are named with a `__` prefix.
struct Automaton {
    std::string name = "A";
    std::set<Label> alphabet;
    unsigned registers = 1;
    std::vector<StateId> states;
    StateId initial;
    std::set<StateId> finals;
    std::set<Transition> transitions;

    bool has_state(const StateId& s) const;
    void add_state(const StateId& s);

    friend bool operator==(const Automaton&, const Automaton&) = default;
};

enum class AutomatonClass {
    FreshRegister,
    Register,
    Session,
};

const char* class_name(AutomatonClass c) noexcept;

enum class DiagnosticKind {
    NoRegisters,
    DuplicateState,
    InitialNotAState,
    FinalNotAState,
    EndpointNotAState,
    LabelNotInAlphabet,
    RegisterOutOfRange,
    TooManyRegisters,
};

const char* diagnostic_name(DiagnosticKind kind) noexcept;

struct Diagnostic {
    DiagnosticKind kind;
    std::string message;
};

std::vector<Diagnostic> validate(const Automaton& a);

/// Throws Invalid when `validate` reports anything.
void require_valid(const Automaton& a);

/// Throws Invalid, or NotSessionAutomaton when the automaton uses ⊙.
void require_session(const Automaton& a);

/// Mixed ⊛/⊙ use is FreshRegister. Automata using only ↑ (or nothing) satisfy both
/// syntactic restrictions and are reported as Session.
AutomatonClass classify(const Automaton& a);

bool is_symbolically_deterministic(const Automaton& a);
bool is_data_deterministic(const Automaton& a);

/// Set-of-configurations simulation. Every configuration reachable after a prefix shares
/// the same used-value set U (the values of that prefix), so a frontier stores only
/// (state, register assignment) pairs.
class Simulator {
public:
    struct Config {
        std::uint32_t state = 0;
        std::uint64_t defined = 0;          // bit r-1 set iff register r holds a value
        std::vector<DataValue> values;      // indexed by register - 1

        friend auto operator<=>(const Config&, const Config&) = default;
    };
    using Frontier = std::vector<Config>;   // sorted, duplicate free

    explicit Simulator(const Automaton& a);

    Frontier initial() const;
    /// `value_used` tells whether `letter.value` occurs in the prefix read so far.
    Frontier step(const Frontier& from, const DataLetter& letter, bool value_used) const;
    bool accepting(const Frontier& f) const;

    bool accepts(const DataWord& w) const;

private:
    struct Edge {
        RegisterOp op;
        std::uint32_t target;
    };
    std::vector<Label> labels_;                      // sorted alphabet
    std::vector<std::vector<std::vector<Edge>>> out_;  // [state][label index]
    std::vector<bool> final_;
    std::uint32_t initial_ = 0;
    unsigned registers_ = 1;
};

/// Membership of a data word. Throws UnknownLabel.
bool simulate(const Automaton& a, const DataWord& w);

/// Plain finite-automaton acceptance over Σ×Γ_k. Throws NotSessionAutomaton.
bool accepts_symbolic(const Automaton& a, const SymbolicWord& u);

} // namespace sessa
