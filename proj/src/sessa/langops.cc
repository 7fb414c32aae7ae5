#include "sessa/langops.hh"

#include <algorithm>

#include "sessa/canonical.hh"
#include "sessa/error.hh"
#include "sessa/symbolic.hh"

namespace sessa {

namespace {

std::set<Label> joint_alphabet(const Automaton& a, const Automaton& b) {
    std::set<Label> labels = a.alphabet;
    labels.insert(b.alphabet.begin(), b.alphabet.end());
    return labels;
}

std::optional<DataWord> concretized(const std::optional<SymbolicWord>& u) {
    if (!u) {
        return std::nullopt;
    }
    return concretize(*u);
}

} // namespace

Automaton intersect(const Automaton& a, const Automaton& b) {
    require_session(a);
    require_session(b);
    const SymbolicDfa both = minimize(determinize(product(canonicalize(a).to_nfa(), canonicalize(b).to_nfa())));
    return to_automaton(both, joint_alphabet(a, b), std::min(a.registers, b.registers),
                        a.name + "_and_" + b.name);
}

Automaton unite(const Automaton& a, const Automaton& b) {
    require_session(a);
    require_session(b);
    Automaton out;
    out.name = a.name + "_or_" + b.name;
    out.alphabet = joint_alphabet(a, b);
    out.registers = std::max(a.registers, b.registers);
    out.initial = "__init";
    out.states.push_back(out.initial);

    auto copy = [&](const Automaton& src, const std::string& prefix) {
        for (const auto& s : src.states) {
            out.states.push_back(prefix + s);
        }
        for (const auto& f : src.finals) {
            out.finals.insert(prefix + f);
        }
        if (src.finals.contains(src.initial)) {
            out.finals.insert(out.initial);
        }
        for (const auto& t : src.transitions) {
            out.transitions.insert({prefix + t.source, t.label, prefix + t.target});
            if (t.source == src.initial) {
                out.transitions.insert({out.initial, t.label, prefix + t.target});
            }
        }
    };
    copy(a, "__a_");
    copy(b, "__b_");
    return out;
}

Automaton complement_bounded(const Automaton& a) {
    require_session(a);
    const unsigned k = a.registers;
    // Complementing within NF_k keeps exactly one symbolic word per ≈-class of B_k.
    const SymbolicDfa outside = complement(canonicalize(a), session_alphabet(a.alphabet, k));
    const SymbolicDfa result =
        minimize(determinize(product(nf_automaton(k, a.alphabet).to_nfa(), outside.to_nfa())));
    return to_automaton(result, a.alphabet, k, "not_" + a.name);
}

std::optional<DataWord> includes(const Automaton& a, const Automaton& b) {
    require_session(a);
    require_session(b);
    return concretized(symbolic_inclusion(canonicalize(a).to_nfa(), canonicalize(b).to_nfa()));
}

std::optional<DataWord> equivalent(const Automaton& a, const Automaton& b) {
    require_session(a);
    require_session(b);
    return concretized(symbolic_equivalence(canonicalize(a).to_nfa(), canonicalize(b).to_nfa()));
}

std::optional<DataWord> is_empty(const Automaton& a) {
    require_session(a);
    const SymbolicNfa view = symbolic_view(a);
    return concretized(shortest_accepted(product(view, wf_automaton(a.registers, a.alphabet).to_nfa())));
}

std::optional<DataWord> is_universal_bounded(const Automaton& a, unsigned k) {
    require_session(a);
    if (k == 0) {
        throw Error(ErrorCode::Invalid, "universality needs a bound k >= 1");
    }
    return concretized(symbolic_inclusion(nf_automaton(k, a.alphabet).to_nfa(), canonicalize(a).to_nfa()));
}

} // namespace sessa
