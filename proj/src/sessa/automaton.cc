#include "sessa/automaton.hh"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "sessa/error.hh"

namespace sessa {

namespace {

constexpr unsigned kMaxRegisters = 64;

std::string describe(const Transition& t) {
    const char* kind = t.label.op.kind == OpKind::GlobalFresh ? "fresh"
                     : t.label.op.kind == OpKind::Reuse       ? "reuse"
                                                               : "local";
    return t.source + " " + t.label.label + " " + kind + " " + std::to_string(t.label.op.reg) + " " + t.target;
}

} // namespace

bool Automaton::has_state(const StateId& s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
}

void Automaton::add_state(const StateId& s) {
    if (!has_state(s)) {
        states.push_back(s);
    }
}

const char* class_name(AutomatonClass c) noexcept {
    switch (c) {
    case AutomatonClass::FreshRegister: return "fresh-register";
    case AutomatonClass::Register: return "register";
    case AutomatonClass::Session: return "session";
    }
    return "unknown";
}

const char* diagnostic_name(DiagnosticKind kind) noexcept {
    switch (kind) {
    case DiagnosticKind::NoRegisters: return "NoRegisters";
    case DiagnosticKind::DuplicateState: return "DuplicateState";
    case DiagnosticKind::InitialNotAState: return "InitialNotAState";
    case DiagnosticKind::FinalNotAState: return "FinalNotAState";
    case DiagnosticKind::EndpointNotAState: return "EndpointNotAState";
    case DiagnosticKind::LabelNotInAlphabet: return "LabelNotInAlphabet";
    case DiagnosticKind::RegisterOutOfRange: return "RegisterOutOfRange";
    case DiagnosticKind::TooManyRegisters: return "TooManyRegisters";
    }
    return "Unknown";
}

std::vector<Diagnostic> validate(const Automaton& a) {
    std::vector<Diagnostic> out;
    if (a.registers == 0) {
        out.push_back({DiagnosticKind::NoRegisters, "an automaton needs at least one register"});
    }
    if (a.registers > kMaxRegisters) {
        out.push_back({DiagnosticKind::TooManyRegisters,
                       std::to_string(a.registers) + " registers exceed the supported maximum of " +
                           std::to_string(kMaxRegisters)});
    }
    std::unordered_set<StateId> states;
    for (const auto& s : a.states) {
        if (!states.insert(s).second) {
            out.push_back({DiagnosticKind::DuplicateState, "state '" + s + "' is declared twice"});
        }
    }
    if (!states.contains(a.initial)) {
        out.push_back({DiagnosticKind::InitialNotAState, "initial state '" + a.initial + "' is not a state"});
    }
    for (const auto& f : a.finals) {
        if (!states.contains(f)) {
            out.push_back({DiagnosticKind::FinalNotAState, "final state '" + f + "' is not a state"});
        }
    }
    for (const auto& t : a.transitions) {
        if (!states.contains(t.source) || !states.contains(t.target)) {
            out.push_back({DiagnosticKind::EndpointNotAState,
                           "transition '" + describe(t) + "' has an endpoint that is not a state"});
        }
        if (!a.alphabet.contains(t.label.label)) {
            out.push_back({DiagnosticKind::LabelNotInAlphabet,
                           "transition '" + describe(t) + "' uses label '" + t.label.label +
                               "' outside the alphabet"});
        }
        if (t.label.op.reg < 1 || t.label.op.reg > a.registers) {
            out.push_back({DiagnosticKind::RegisterOutOfRange,
                           "transition '" + describe(t) + "' uses register " + std::to_string(t.label.op.reg) +
                               " of a " + std::to_string(a.registers) + "-register automaton"});
        }
    }
    return out;
}

void require_valid(const Automaton& a) {
    const auto diagnostics = validate(a);
    if (!diagnostics.empty()) {
        throw Error(ErrorCode::Invalid, "invalid automaton '" + a.name + "': " + diagnostics.front().message);
    }
}

AutomatonClass classify(const Automaton& a) {
    require_valid(a);
    bool global = false;
    bool local = false;
    for (const auto& t : a.transitions) {
        global |= t.label.op.kind == OpKind::GlobalFresh;
        local |= t.label.op.kind == OpKind::LocalFresh;
    }
    if (local) {
        return global ? AutomatonClass::FreshRegister : AutomatonClass::Register;
    }
    return AutomatonClass::Session;
}

void require_session(const Automaton& a) {
    if (classify(a) != AutomatonClass::Session) {
        throw Error(ErrorCode::NotSessionAutomaton, "automaton '" + a.name + "' is not a session automaton");
    }
}

bool is_symbolically_deterministic(const Automaton& a) {
    std::map<std::pair<StateId, TransitionLabel>, StateId> seen;
    for (const auto& t : a.transitions) {
        auto [it, inserted] = seen.emplace(std::pair{t.source, t.label}, t.target);
        if (!inserted && it->second != t.target) {
            return false;
        }
    }
    return true;
}

bool is_data_deterministic(const Automaton& a) {
    require_session(a);
    if (!is_symbolically_deterministic(a)) {
        return false;
    }
    std::map<std::pair<StateId, Label>, unsigned> fresh_register;
    for (const auto& t : a.transitions) {
        if (t.label.op.kind != OpKind::GlobalFresh) {
            continue;
        }
        auto [it, inserted] = fresh_register.emplace(std::pair{t.source, t.label.label}, t.label.op.reg);
        if (!inserted && it->second != t.label.op.reg) {
            return false;
        }
    }
    return true;
}

Simulator::Simulator(const Automaton& a) : registers_(a.registers) {
    require_valid(a);
    labels_.assign(a.alphabet.begin(), a.alphabet.end());
    std::map<StateId, std::uint32_t> index;
    for (const auto& s : a.states) {
        index.emplace(s, static_cast<std::uint32_t>(index.size()));
    }
    out_.assign(a.states.size(), std::vector<std::vector<Edge>>(labels_.size()));
    final_.assign(a.states.size(), false);
    for (const auto& f : a.finals) {
        final_[index.at(f)] = true;
    }
    initial_ = index.at(a.initial);
    for (const auto& t : a.transitions) {
        const auto label = std::lower_bound(labels_.begin(), labels_.end(), t.label.label) - labels_.begin();
        out_[index.at(t.source)][label].push_back({t.label.op, index.at(t.target)});
    }
}

Simulator::Frontier Simulator::initial() const {
    return {Config{initial_, 0, std::vector<DataValue>(registers_, 0)}};
}

Simulator::Frontier Simulator::step(const Frontier& from, const DataLetter& letter, bool value_used) const {
    const auto pos = std::lower_bound(labels_.begin(), labels_.end(), letter.label);
    if (pos == labels_.end() || *pos != letter.label) {
        throw Error(ErrorCode::UnknownLabel, "label '" + letter.label + "' is not in the alphabet");
    }
    const auto label = static_cast<std::size_t>(pos - labels_.begin());
    const DataValue d = letter.value;

    Frontier next;
    for (const auto& config : from) {
        bool stored = false;
        for (unsigned r = 0; r < registers_; ++r) {
            if ((config.defined >> r & 1U) && config.values[r] == d) {
                stored = true;
                break;
            }
        }
        for (const auto& edge : out_[config.state][label]) {
            const unsigned r = edge.op.reg - 1;
            bool enabled = false;
            switch (edge.op.kind) {
            case OpKind::Reuse:
                enabled = (config.defined >> r & 1U) && config.values[r] == d;
                break;
            case OpKind::LocalFresh:
                enabled = !stored;
                break;
            case OpKind::GlobalFresh:
                enabled = !value_used;
                break;
            }
            if (!enabled) {
                continue;
            }
            Config c{edge.target, config.defined | (std::uint64_t{1} << r), config.values};
            c.values[r] = d;
            next.push_back(std::move(c));
        }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    return next;
}

bool Simulator::accepting(const Frontier& f) const {
    return std::any_of(f.begin(), f.end(), [&](const Config& c) { return final_[c.state]; });
}

bool Simulator::accepts(const DataWord& w) const {
    std::unordered_set<DataValue> used;
    Frontier frontier = initial();
    for (const auto& letter : w) {
        frontier = step(frontier, letter, used.contains(letter.value));
        used.insert(letter.value);
    }
    return accepting(frontier);
}

bool simulate(const Automaton& a, const DataWord& w) {
    return Simulator(a).accepts(w);
}

bool accepts_symbolic(const Automaton& a, const SymbolicWord& u) {
    require_session(a);
    std::set<StateId> current{a.initial};
    for (const auto& letter : u) {
        std::set<StateId> next;
        for (const auto& t : a.transitions) {
            if (t.label == letter && current.contains(t.source)) {
                next.insert(t.target);
            }
        }
        current = std::move(next);
        if (current.empty()) {
            return false;
        }
    }
    return std::any_of(current.begin(), current.end(), [&](const StateId& s) { return a.finals.contains(s); });
}

} // namespace sessa
