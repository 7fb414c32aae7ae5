#include <doctest.h>

#include <cstdint>
#include <functional>
#include <random>

#include "sessa/canonical.hh"
#include "sessa/io.hh"
#include "sessa/symbolic.hh"

using namespace sessa;

namespace {

SymbolicWord sw(const char* text) { return parse_symbolic_word(text); }

SymbolicNfa random_nfa(std::mt19937& rng) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::set<Label> labels = (rng() % 2) ? std::set<Label>{"a"} : std::set<Label>{"a", "b"};
    const unsigned k = 1 + rng() % 2;
    SymbolicNfa n;
    n.alphabet = session_alphabet(labels, k);
    const std::size_t states = 1 + rng() % 5;
    for (std::size_t i = 0; i < states; ++i) {
        n.add_state();
        if (coin(rng) < 0.4) {
            n.finals.insert(i);
        }
    }
    n.initials.insert(0);
    if (coin(rng) < 0.2) {
        n.initials.insert(rng() % states);
    }
    for (std::size_t s = 0; s < states; ++s) {
        for (const auto& letter : n.alphabet) {
            if (coin(rng) < 0.35) {
                n.add_transition(s, letter, rng() % states);
            }
            if (coin(rng) < 0.1) {
                n.add_transition(s, letter, rng() % states);
            }
        }
    }
    return n;
}

// Runs every NFA along a depth-first walk of all words over `letters` up to `max_len`
// and hands the acceptance vector to `visit`.
void walk_words(const std::vector<const SymbolicNfa*>& nfas, const std::set<TransitionLabel>& letters,
                std::size_t max_len, const std::function<void(const SymbolicWord&, const std::vector<bool>&)>& visit) {
    const std::size_t m = nfas.size();
    for (const auto* n : nfas) {
        REQUIRE(n->num_states() <= 64);
    }
    using Sets = std::vector<std::uint64_t>;
    auto bits = [](const std::set<SymState>& s) {
        std::uint64_t b = 0;
        for (auto q : s) {
            b |= std::uint64_t{1} << q;
        }
        return b;
    };
    Sets start(m);
    std::vector<std::uint64_t> finals(m);
    for (std::size_t i = 0; i < m; ++i) {
        start[i] = bits(nfas[i]->initials);
        finals[i] = bits(nfas[i]->finals);
    }
    SymbolicWord u;
    std::vector<bool> acc(m);
    std::function<void(const Sets&)> go = [&](const Sets& cur) {
        for (std::size_t i = 0; i < m; ++i) {
            acc[i] = (cur[i] & finals[i]) != 0;
        }
        visit(u, acc);
        if (u.size() == max_len) {
            return;
        }
        for (const auto& letter : letters) {
            Sets next(m, 0);
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t q = 0; q < nfas[i]->num_states(); ++q) {
                    if (!(cur[i] >> q & 1U)) {
                        continue;
                    }
                    const auto it = nfas[i]->delta[q].find(letter);
                    if (it != nfas[i]->delta[q].end()) {
                        next[i] |= bits(it->second);
                    }
                }
            }
            u.push_back(letter);
            go(next);
            u.pop_back();
        }
    };
    go(start);
}

std::set<TransitionLabel> joined(const std::set<TransitionLabel>& x, const std::set<TransitionLabel>& y) {
    std::set<TransitionLabel> out = x;
    out.insert(y.begin(), y.end());
    return out;
}

} // namespace

TEST_CASE("session_alphabet order") {
    const auto letters = session_alphabet({"a", "b"}, 1);
    const std::vector<TransitionLabel> v(letters.begin(), letters.end());
    CHECK(v == std::vector<TransitionLabel>{fresh("a", 1), reuse("a", 1), fresh("b", 1), reuse("b", 1)});
    CHECK(session_alphabet({"a"}, 3).size() == 6);
}

TEST_CASE("determinize") {
    SymbolicNfa n;
    n.alphabet = {fresh("x", 1), fresh("y", 1)};
    const auto s0 = n.add_state();
    const auto s1 = n.add_state();
    const auto f0 = n.add_state();
    const auto f1 = n.add_state();
    n.initials = {s0, s1};
    n.add_transition(s0, fresh("x", 1), f0);
    n.add_transition(s1, fresh("y", 1), f1);
    n.finals = {f0, f1};
    const SymbolicDfa d = determinize(n);
    CHECK(d.accepts(sw("x:*1")));
    CHECK(d.accepts(sw("y:*1")));
    CHECK_FALSE(d.accepts({}));
    CHECK_FALSE(d.accepts(sw("x:*1 y:*1")));

    const SymbolicDfa nf = nf_automaton(2, {"a"});
    CHECK(trim_isomorphic(determinize(nf.to_nfa()), nf));
}

TEST_CASE("minimize") {
    const SymbolicDfa nf = nf_automaton(2, {"a", "b"});
    CHECK(minimize(nf).num_states() == nf.num_states());

    // two copies of the same loop collapse
    SymbolicDfa d;
    d.alphabet = {fresh("a", 1)};
    const auto p = d.add_state();
    const auto q = d.add_state();
    d.set_transition(p, fresh("a", 1), q);
    d.set_transition(q, fresh("a", 1), p);
    d.finals = {p, q};
    CHECK(minimize(d).num_states() == 1);

    // empty language keeps one state
    SymbolicDfa e;
    e.alphabet = {fresh("a", 1)};
    e.add_state();
    e.set_transition(0, fresh("a", 1), 0);
    const SymbolicDfa me = minimize(e);
    CHECK(me.num_states() == 1);
    CHECK(me.finals.empty());
}

TEST_CASE("product, union and complement") {
    const SymbolicDfa nf = nf_automaton(2, {"a"});
    CHECK_FALSE(shortest_accepted(product(nf.to_nfa(), complement(nf).to_nfa())).has_value());
    CHECK_FALSE(symbolic_equivalence(product(nf.to_nfa(), nf.to_nfa()), nf.to_nfa()).has_value());
    CHECK_FALSE(symbolic_equivalence(complement(complement(nf)).to_nfa(), nf.to_nfa()).has_value());
    CHECK_FALSE(symbolic_equivalence(nfa_union(nf.to_nfa(), nf.to_nfa()), nf.to_nfa()).has_value());
}

TEST_CASE("shortest_accepted") {
    SymbolicDfa eps;
    eps.alphabet = {fresh("a", 1)};
    eps.add_state();
    eps.finals = {0};
    CHECK(shortest_accepted(eps) == SymbolicWord{});

    SymbolicDfa none = eps;
    none.finals.clear();
    none.set_transition(0, fresh("a", 1), 0);
    CHECK_FALSE(shortest_accepted(none).has_value());

    CHECK(shortest_accepted(nf_automaton(2, {"a"})) == SymbolicWord{});

    // ties go to the smallest letter: label, then ⊛ before ↑, then register
    SymbolicNfa n;
    n.alphabet = {fresh("a", 2), reuse("a", 1), fresh("b", 1)};
    n.add_state();
    n.add_state();
    n.initials = {0};
    n.finals = {1};
    n.add_transition(0, fresh("b", 1), 1);
    n.add_transition(0, reuse("a", 1), 1);
    n.add_transition(0, fresh("a", 2), 1);
    CHECK(shortest_accepted(n) == SymbolicWord{fresh("a", 2)});
}

TEST_CASE("symbolic inclusion and equivalence") {
    const SymbolicDfa nf2 = nf_automaton(2, {"a"});
    CHECK_FALSE(symbolic_inclusion(nf2.to_nfa(), nf2.to_nfa()).has_value());

    SymbolicNfa x;
    x.alphabet = {fresh("a", 1)};
    x.add_state();
    x.add_state();
    x.initials = {0};
    x.finals = {1};
    x.add_transition(0, fresh("a", 1), 1);
    SymbolicNfa empty;
    empty.alphabet = x.alphabet;
    empty.add_state();
    empty.initials = {0};
    CHECK(symbolic_inclusion(x, empty) == sw("a:*1"));
    CHECK_FALSE(symbolic_inclusion(empty, x).has_value());

    CHECK(symbolic_equivalence(nf_automaton(1, {"a"}).to_nfa(), nf2.to_nfa()) == sw("a:*1 a:*2 a:^1"));
}

TEST_CASE("symbolic operations agree with brute force up to length 6") {
    std::mt19937 rng(424242);
    int checked = 0;
    for (int iter = 0; iter < 40; ++iter) {
        const SymbolicNfa x = random_nfa(rng);
        const SymbolicNfa y = random_nfa(rng);
        const auto letters = joined(x.alphabet, y.alphabet);
        const std::size_t len = letters.size() > 4 ? 4 : 6;

        const SymbolicDfa dx = determinize(x);
        const SymbolicDfa mx = minimize(dx);
        const SymbolicNfa mx_nfa = mx.to_nfa();
        const SymbolicNfa dx_nfa = dx.to_nfa();
        const SymbolicNfa prod = product(x, y);
        const SymbolicNfa uni = nfa_union(x, y);
        const SymbolicNfa comp = complement(dx, letters).to_nfa();
        const auto incl = symbolic_inclusion(x, y);
        const auto eq = symbolic_equivalence(x, y);
        const auto shortest = shortest_accepted(x);

        CHECK(minimize(mx).num_states() == mx.num_states());
        CHECK(trim_isomorphic(minimize(mx), mx));

        bool any_x = false;
        bool x_not_y = false;
        bool differ = false;
        std::optional<SymbolicWord> first_x;
        walk_words({&x, &y, &dx_nfa, &mx_nfa, &prod, &uni, &comp}, letters, len,
                   [&](const SymbolicWord& u, const std::vector<bool>& acc) {
                       CAPTURE(to_string(u));
                       CHECK(acc[2] == acc[0]);
                       CHECK(acc[3] == acc[0]);
                       CHECK(acc[4] == (acc[0] && acc[1]));
                       CHECK(acc[5] == (acc[0] || acc[1]));
                       CHECK(acc[6] == !acc[0]);
                       if (acc[0] && (!first_x || shortlex_less(u, *first_x))) {
                           first_x = u;
                       }
                       any_x = any_x || acc[0];
                       x_not_y = x_not_y || (acc[0] && !acc[1]);
                       differ = differ || (acc[0] != acc[1]);
                   });
        // witnesses: valid, and shortest when the brute-force space contains one
        if (incl) {
            CHECK(x.accepts(*incl));
            CHECK_FALSE(y.accepts(*incl));
        }
        if (x_not_y) {
            REQUIRE(incl.has_value());
            CHECK(incl->size() <= len);
        }
        if (eq) {
            CHECK(x.accepts(*eq) != y.accepts(*eq));
        }
        if (differ) {
            CHECK(eq.has_value());
        }
        if (any_x) {
            REQUIRE(shortest.has_value());
            CHECK(*shortest == *first_x);
        } else if (shortest) {
            CHECK(shortest->size() > len);
        }
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("minimized language-equal DFAs are identical") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 40; ++iter) {
        const SymbolicNfa x = random_nfa(rng);
        // same language, different shape: union with itself, then determinize
        const SymbolicDfa a = minimize(determinize(x));
        const SymbolicDfa b = minimize(determinize(nfa_union(x, x)));
        CHECK(trim_isomorphic(a, b));
        CHECK(a.delta == b.delta);
        CHECK(a.finals == b.finals);
    }
}
