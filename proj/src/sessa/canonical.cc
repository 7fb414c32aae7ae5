#include "sessa/canonical.hh"

#include <map>

#include "sessa/error.hh"

namespace sessa {

std::optional<unsigned> PartialInjection::operator()(unsigned r) const {
    if (r == 0 || r > image_.size() || image_[r - 1] == 0) {
        return std::nullopt;
    }
    return image_[r - 1];
}

bool PartialInjection::empty() const {
    for (unsigned v : image_) {
        if (v != 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::pair<unsigned, unsigned>> PartialInjection::pairs() const {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned r = 1; r <= image_.size(); ++r) {
        if (image_[r - 1] != 0) {
            out.emplace_back(r, image_[r - 1]);
        }
    }
    return out;
}

PartialInjection PartialInjection::rebind(unsigned from, unsigned to) const {
    PartialInjection next = *this;
    for (auto& v : next.image_) {
        if (v == to) {
            v = 0;
        }
    }
    next.image_[from - 1] = to;
    return next;
}

std::string PartialInjection::to_string() const {
    std::string out = "{";
    for (const auto& [from, to] : pairs()) {
        if (out.size() > 1) {
            out += ", ";
        }
        out += std::to_string(from) + "->" + std::to_string(to);
    }
    return out + "}";
}

std::optional<NfState> nf_step(const NfState& q, const RegisterOp& op, unsigned k) {
    const unsigned r = op.reg;
    if (r < 1 || r > k) {
        return std::nullopt;
    }
    const std::uint64_t bit = std::uint64_t{1} << (r - 1);
    switch (op.kind) {
    case OpKind::Reuse:
        if (r > q.top) {
            return std::nullopt;
        }
        return NfState{q.top, q.promised & ~bit};
    case OpKind::GlobalFresh:
        if (r - 1 > q.top || (q.promised & bit) != 0) {
            return std::nullopt;
        }
        return NfState{std::max(q.top, r), q.promised | (bit - 1)};
    case OpKind::LocalFresh:
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

struct NfBuild {
    std::vector<NfState> states;
    SymbolicDfa dfa;
};

NfBuild build_nf(unsigned k, const std::set<Label>& labels) {
    NfBuild b;
    b.dfa.alphabet = session_alphabet(labels, k);
    std::map<NfState, SymState> index;
    auto intern = [&](const NfState& q) {
        auto [it, inserted] = index.emplace(q, b.states.size());
        if (inserted) {
            b.states.push_back(q);
            const SymState s = b.dfa.add_state();
            if (nf_accepting(q)) {
                b.dfa.finals.insert(s);
            }
        }
        return it->second;
    };
    b.dfa.initial = intern(NfState{});
    for (SymState s = 0; s < b.states.size(); ++s) {
        for (const auto& letter : b.dfa.alphabet) {
            if (auto next = nf_step(b.states[s], letter.op, k)) {
                const SymState to = intern(*next);
                b.dfa.delta[s].emplace(letter, to);
            }
        }
    }
    return b;
}

} // namespace

std::vector<NfState> nf_states(unsigned k, const std::set<Label>& labels) {
    return build_nf(k, labels).states;
}

SymbolicDfa nf_automaton(unsigned k, const std::set<Label>& labels) {
    return build_nf(k, labels).dfa;
}

bool is_normal_form(const SymbolicWord& u) {
    const unsigned k = max_register(u);
    NfState q;
    for (const auto& letter : u) {
        auto next = nf_step(q, letter.op, k);
        if (!next) {
            return false;
        }
        q = *next;
    }
    return nf_accepting(q);
}

SymbolicDfa wf_automaton(unsigned k, const std::set<Label>& labels) {
    SymbolicDfa d;
    d.alphabet = session_alphabet(labels, k);
    std::map<std::uint64_t, SymState> index;
    std::vector<std::uint64_t> subsets;
    auto intern = [&](std::uint64_t initialized) {
        auto [it, inserted] = index.emplace(initialized, subsets.size());
        if (inserted) {
            subsets.push_back(initialized);
            d.finals.insert(d.add_state());
        }
        return it->second;
    };
    d.initial = intern(0);
    for (SymState s = 0; s < subsets.size(); ++s) {
        for (const auto& letter : d.alphabet) {
            const std::uint64_t bit = std::uint64_t{1} << (letter.op.reg - 1);
            if (letter.op.kind == OpKind::GlobalFresh) {
                const SymState to = intern(subsets[s] | bit);
                d.delta[s].emplace(letter, to);
            } else if ((subsets[s] & bit) != 0) {
                d.delta[s].emplace(letter, s);
            }
        }
    }
    d.complete = false;
    return d;
}

SymbolicNfa symbolic_view(const Automaton& a) {
    require_session(a);
    SymbolicNfa n;
    n.alphabet = session_alphabet(a.alphabet, a.registers);
    std::map<StateId, SymState> index;
    for (const auto& s : a.states) {
        index.emplace(s, n.add_state());
    }
    n.initials = {index.at(a.initial)};
    for (const auto& f : a.finals) {
        n.finals.insert(index.at(f));
    }
    for (const auto& t : a.transitions) {
        n.add_transition(index.at(t.source), t.label, index.at(t.target));
    }
    return n;
}

TildeAutomaton tilde(const Automaton& a) {
    require_session(a);
    const unsigned k = a.registers;
    std::map<StateId, std::vector<const Transition*>> outgoing;
    for (const auto& t : a.transitions) {
        outgoing[t.source].push_back(&t);
    }

    TildeAutomaton result;
    SymbolicNfa& n = result.nfa;
    n.alphabet = session_alphabet(a.alphabet, k);
    std::map<std::pair<StateId, PartialInjection>, SymState> index;
    auto intern = [&](const StateId& s, const PartialInjection& sigma) {
        auto [it, inserted] = index.emplace(std::pair{s, sigma}, n.num_states());
        if (inserted) {
            const SymState id = n.add_state();
            if (a.finals.contains(s)) {
                n.finals.insert(id);
            }
            result.origin.emplace_back(s, sigma);
        }
        return it->second;
    };

    n.initials = {intern(a.initial, PartialInjection(k))};
    for (SymState id = 0; id < result.origin.size(); ++id) {
        const auto [s, sigma] = result.origin[id];
        for (const Transition* t : outgoing[s]) {
            const auto& [label, op] = t->label;
            if (op.kind == OpKind::Reuse) {
                if (auto renamed = sigma(op.reg)) {
                    const SymState to = intern(t->target, sigma);
                    n.delta[id][reuse(label, *renamed)].insert(to);
                }
                continue;
            }
            for (unsigned r2 = 1; r2 <= k; ++r2) {
                const SymState to = intern(t->target, sigma.rebind(op.reg, r2));
                n.delta[id][fresh(label, r2)].insert(to);
            }
        }
    }
    return result;
}

SymbolicDfa canonicalize(const Automaton& a) {
    require_session(a);
    const SymbolicNfa normal_forms = nf_automaton(a.registers, a.alphabet).to_nfa();
    SymbolicDfa result = minimize(determinize(product(normal_forms, tilde(a).nfa)));
    result.alphabet = session_alphabet(a.alphabet, a.registers);
    return result;
}

Automaton to_automaton(const SymbolicDfa& d, const std::set<Label>& labels, unsigned k, std::string name) {
    Automaton a;
    a.name = std::move(name);
    a.alphabet = labels;
    a.registers = std::max(1U, k);
    auto state_name = [](SymState s) { return "__q" + std::to_string(s); };
    for (SymState s = 0; s < d.num_states(); ++s) {
        a.states.push_back(state_name(s));
    }
    a.initial = state_name(d.initial);
    for (SymState f : d.finals) {
        a.finals.insert(state_name(f));
    }
    for (SymState s = 0; s < d.num_states(); ++s) {
        for (const auto& [letter, to] : d.delta[s]) {
            a.transitions.insert({state_name(s), letter, state_name(to)});
        }
    }
    return a;
}

} // namespace sessa
