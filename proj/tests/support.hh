#pragma once

// Shared helpers for the test binaries: fixture loading, random session automata and
// exhaustive enumeration of small data words.

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sessa/automaton.hh"
#include "sessa/io.hh"
#include "sessa/symbolic.hh"
#include "sessa/words.hh"

namespace sessa::testing {

inline Automaton fixture(const std::string& name) {
    return load_automaton(std::string(SESSA_FIXTURE_DIR) + "/" + name);
}

inline std::string fixture_path(const std::string& name) {
    return std::string(SESSA_FIXTURE_DIR) + "/" + name;
}

struct RandomShape {
    unsigned max_states = 4;
    unsigned max_registers = 2;
    unsigned max_labels = 2;
    double density = 0.3;   // chance of an edge per (state, letter)
    double final_ratio = 0.5;
};

/// Random session automaton; may be nondeterministic and may have unreachable states.
inline Automaton random_session_automaton(std::mt19937& rng, const RandomShape& shape = {},
                                          const std::string& name = "R") {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    Automaton a;
    a.name = name;
    const unsigned n = 1 + rng() % shape.max_states;
    a.registers = 1 + rng() % shape.max_registers;
    const unsigned labels = 1 + rng() % shape.max_labels;
    for (unsigned i = 0; i < labels; ++i) {
        a.alphabet.insert(std::string(1, static_cast<char>('a' + i)));
    }
    for (unsigned i = 0; i < n; ++i) {
        a.states.push_back("s" + std::to_string(i));
        if (coin(rng) < shape.final_ratio) {
            a.finals.insert(a.states.back());
        }
    }
    a.initial = a.states.front();
    for (const auto& s : a.states) {
        for (const auto& letter : session_alphabet(a.alphabet, a.registers)) {
            if (coin(rng) < shape.density) {
                a.transitions.insert({s, letter, a.states[rng() % n]});
                if (coin(rng) < 0.15) {
                    a.transitions.insert({s, letter, a.states[rng() % n]});
                }
            }
        }
    }
    return a;
}

/// Calls `visit(w, accepted)` for every data word over `labels` × {1..max_value} of length
/// <= max_len, where accepted[i] is membership in automata[i]. Runs the simulators
/// incrementally along a depth-first walk of the word tree.
inline void for_each_word(const std::vector<const Automaton*>& automata, const std::set<Label>& labels,
                          std::size_t max_len, DataValue max_value,
                          const std::function<void(const DataWord&, const std::vector<bool>&)>& visit) {
    std::vector<Simulator> sims;
    for (const auto* a : automata) {
        sims.emplace_back(*a);
    }
    const std::size_t m = sims.size();
    std::vector<std::vector<Simulator::Frontier>> frontiers(max_len + 1, std::vector<Simulator::Frontier>(m));
    for (std::size_t i = 0; i < m; ++i) {
        frontiers[0][i] = sims[i].initial();
    }
    DataWord w;
    std::vector<bool> accepted(m);

    std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t depth, std::uint64_t used) {
        for (std::size_t i = 0; i < m; ++i) {
            accepted[i] = sims[i].accepting(frontiers[depth][i]);
        }
        visit(w, accepted);
        if (depth == max_len) {
            return;
        }
        for (const auto& label : labels) {
            for (DataValue d = 1; d <= max_value; ++d) {
                const DataLetter letter{label, d};
                const bool seen = (used >> d) & 1U;
                for (std::size_t i = 0; i < m; ++i) {
                    const auto& from = frontiers[depth][i];
                    frontiers[depth + 1][i] = from.empty() || !automata[i]->alphabet.contains(label)
                                                  ? Simulator::Frontier{}
                                                  : sims[i].step(from, letter, seen);
                }
                w.push_back(letter);
                walk(depth + 1, used | (std::uint64_t{1} << d));
                w.pop_back();
            }
        }
    };
    walk(0, 0);
}

/// All symbolic words over `letters` of length <= max_len, shortlex order.
inline std::vector<SymbolicWord> all_symbolic_words(const std::set<TransitionLabel>& letters, std::size_t max_len) {
    std::vector<SymbolicWord> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& letter : letters) {
                SymbolicWord u = out[i];
                u.push_back(letter);
                out.push_back(std::move(u));
            }
        }
        begin = end;
    }
    return out;
}

} // namespace sessa::testing
