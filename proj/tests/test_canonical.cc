#include <doctest.h>

#include <random>

#include "sessa/canonical.hh"
#include "sessa/error.hh"
#include "sessa/io.hh"
#include "support.hh"

using namespace sessa;
using sessa::testing::fixture;

namespace {

SymbolicWord sw(const char* text) { return parse_symbolic_word(text); }

// NF_2 over {a}, written out state by state:
// 0 = (0,∅), 1 = (1,∅), 2 = (2,{1}), 3 = (2,∅)
SymbolicDfa hand_nf2() {
    SymbolicDfa d;
    d.alphabet = session_alphabet({"a"}, 2);
    for (int i = 0; i < 4; ++i) {
        d.add_state();
    }
    d.initial = 0;
    d.finals = {0, 1, 3};
    d.set_transition(0, fresh("a", 1), 1);
    d.set_transition(1, fresh("a", 1), 1);
    d.set_transition(1, reuse("a", 1), 1);
    d.set_transition(1, fresh("a", 2), 2);
    d.set_transition(2, fresh("a", 2), 2);
    d.set_transition(2, reuse("a", 2), 2);
    d.set_transition(2, reuse("a", 1), 3);
    d.set_transition(3, fresh("a", 2), 2);
    d.set_transition(3, fresh("a", 1), 3);
    d.set_transition(3, reuse("a", 1), 3);
    d.set_transition(3, reuse("a", 2), 3);
    return d;
}

SymbolicDfa as_dfa(const Automaton& a) {
    return determinize(symbolic_view(a));
}

} // namespace

TEST_CASE("PartialInjection") {
    PartialInjection s(2);
    CHECK(s.empty());
    CHECK(s.to_string() == "{}");
    const auto t = s.rebind(1, 2);
    CHECK(t(1) == 2u);
    CHECK_FALSE(t(2).has_value());
    // 2 ↦ 2 must evict 1 ↦ 2
    const auto u = t.rebind(2, 2);
    CHECK_FALSE(u(1).has_value());
    CHECK(u(2) == 2u);
    // rebinding 1 drops its previous image
    const auto v = t.rebind(2, 1).rebind(1, 1);
    CHECK(v.pairs() == std::vector<std::pair<unsigned, unsigned>>{{1, 1}});
    CHECK(t.rebind(2, 1).to_string() == "{1->2, 2->1}");
}

TEST_CASE("nf_step rules") {
    const NfState start{};
    CHECK(nf_step(start, {OpKind::GlobalFresh, 1}, 2) == NfState{1, 0});
    CHECK_FALSE(nf_step(start, {OpKind::GlobalFresh, 2}, 2).has_value());
    CHECK_FALSE(nf_step(start, {OpKind::Reuse, 1}, 2).has_value());
    CHECK(nf_step(NfState{1, 0}, {OpKind::GlobalFresh, 2}, 2) == NfState{2, 1});
    CHECK_FALSE(nf_step(NfState{2, 1}, {OpKind::GlobalFresh, 1}, 2).has_value());
    CHECK(nf_step(NfState{2, 1}, {OpKind::Reuse, 1}, 2) == NfState{2, 0});
    CHECK(nf_accepting(NfState{2, 0}));
    CHECK_FALSE(nf_accepting(NfState{2, 1}));
}

TEST_CASE("NF_2 automaton matches the hand-written one") {
    const SymbolicDfa nf = nf_automaton(2, {"a"});
    CHECK(nf.num_states() == 4);
    CHECK(trim_isomorphic(nf, hand_nf2()));
    CHECK(nf.delta == canonical_numbering(hand_nf2()).delta);

    const auto states = nf_states(2, {"a"});
    REQUIRE(states.size() == 4);
    CHECK(states[0] == NfState{0, 0});
    CHECK(states[1] == NfState{1, 0});
    CHECK(states[2] == NfState{2, 1});
    CHECK(states[3] == NfState{2, 0});

    const SymbolicDfa nf1 = nf_automaton(1, {"a"});
    CHECK(nf1.accepts(sw("a:*1 a:^1")));
    CHECK_FALSE(nf1.accepts(sw("a:^1")));
}

TEST_CASE("NF_k membership equals snf stability") {
    for (unsigned k = 1; k <= 3; ++k) {
        const std::set<Label> labels{"a", "b"};
        const SymbolicDfa nf = nf_automaton(k, labels);
        const std::size_t len = k == 3 ? 3 : 4;
        for (const auto& u : sessa::testing::all_symbolic_words(session_alphabet(labels, k), len)) {
            if (!is_well_formed(u)) {
                CHECK_FALSE(nf.accepts(u));
                continue;
            }
            CAPTURE(to_string(u));
            CHECK(nf.accepts(u) == (snf(concretize(u)) == u));
            CHECK(is_normal_form(u) == nf.accepts(u));
        }
    }
    CHECK(is_normal_form({}));
}

TEST_CASE("wf_automaton") {
    const SymbolicDfa wf = wf_automaton(2, {"a", "b"});
    CHECK(wf.accepts(sw("a:*1 b:^1")));
    CHECK_FALSE(wf.accepts(sw("b:^1")));
    CHECK(wf.accepts({}));
    for (const auto& u : sessa::testing::all_symbolic_words(session_alphabet({"a", "b"}, 2), 4)) {
        CHECK(wf.accepts(u) == is_well_formed(u));
    }
    for (const auto& u : sessa::testing::all_symbolic_words(session_alphabet({"a"}, 2), 5)) {
        CHECK(wf_automaton(2, {"a"}).accepts(u) == is_well_formed(u));
    }
}

TEST_CASE("tilde of the two-session loop automaton") {
    const TildeAutomaton t = tilde(fixture("two_session_loops.sra"));
    CHECK(t.nfa.num_states() == 7);
    std::set<std::string> injections;
    for (const auto& [state, sigma] : t.origin) {
        injections.insert(sigma.to_string());
    }
    CHECK(injections == std::set<std::string>{"{}", "{1->1}", "{2->1}", "{1->2}", "{2->2}", "{1->1, 2->2}",
                                              "{1->2, 2->1}"});

    const TildeAutomaton e = tilde(fixture("epsilon_only.sra"));
    CHECK(e.nfa.accepts({}));
    CHECK_FALSE(shortest_accepted(product(e.nfa, complement(determinize(e.nfa)).to_nfa())).has_value());
    CHECK(determinize(e.nfa).accepts({}));
    CHECK_FALSE(determinize(e.nfa).accepts(sw("a:*1")));

    CHECK_THROWS_AS(tilde(fixture("register_req_ack.sra")), Error);
}

TEST_CASE("canonicalize the two-session loop automaton") {
    const SymbolicDfa can = canonicalize(fixture("two_session_loops.sra"));
    CHECK(can.num_states() == 4);
    CHECK(trim_isomorphic(can, as_dfa(fixture("two_session_canonical.sra"))));
    CHECK(can.finals.size() == 3);
}

TEST_CASE("canonicalize small fixtures") {
    const SymbolicDfa eps = canonicalize(fixture("epsilon_only.sra"));
    CHECK(eps.num_states() == 1);
    CHECK(eps.finals == std::set<SymState>{0});
    CHECK(eps.delta[0].empty());

    const SymbolicDfa all2 = canonicalize(fixture("bounded2_universal.sra"));
    CHECK_FALSE(symbolic_equivalence(all2.to_nfa(), nf_automaton(2, {"a"}).to_nfa()).has_value());
    CHECK(trim_isomorphic(all2, nf_automaton(2, {"a"})));

    const SymbolicDfa a2 = canonicalize(fixture("session_req_ack.sra"));
    const SymbolicDfa pruned = canonicalize(fixture("session_req_ack_pruned.sra"));
    CHECK(trim_isomorphic(a2, pruned));

    CHECK_THROWS_AS(canonicalize(fixture("fresh_register_req_ack.sra")), Error);
}

TEST_CASE("to_automaton keeps the language") {
    const SymbolicDfa can = canonicalize(fixture("two_session_loops.sra"));
    const Automaton a = to_automaton(can, {"a", "b"}, 2, "can");
    CHECK(validate(a).empty());
    CHECK(a.states.front() == "__q0");
    CHECK(trim_isomorphic(canonicalize(a), can));
}

TEST_CASE("canonical forms on random automata") {
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 40; ++iter) {
        const Automaton a = sessa::testing::random_session_automaton(rng);
        CAPTURE(serialize_automaton(a));
        const SymbolicDfa can = canonicalize(a);
        const SymbolicDfa nf = nf_automaton(a.registers, a.alphabet);

        // only normal forms are accepted
        CHECK_FALSE(symbolic_inclusion(can.to_nfa(), nf.to_nfa()).has_value());

        // tilde state ceiling: |S| times the number of partial injections on {1..k}
        const std::size_t inj = a.registers == 1 ? 2 : 7;
        CHECK(tilde(a).nfa.num_states() <= a.states.size() * inj);

        // tilde words are well formed and share classes with an accepted symbolic word
        const TildeAutomaton t = tilde(a);
        const auto letters = session_alphabet(a.alphabet, a.registers);
        const auto words = sessa::testing::all_symbolic_words(letters, 3);
        for (const auto& u : words) {
            if (!t.nfa.accepts(u)) {
                continue;
            }
            CHECK(is_well_formed(u));
            bool matched = false;
            for (const auto& v : words) {
                if (v.size() == u.size() && labels_of(v) == labels_of(u) &&
                    symbolic_classes(v) == symbolic_classes(u) && accepts_symbolic(a, v)) {
                    matched = true;
                    break;
                }
            }
            CHECK(matched);
        }

        // language preservation on k-bounded words
        sessa::testing::for_each_word({&a}, a.alphabet, 4, 4, [&](const DataWord& w, const std::vector<bool>& acc) {
            if (bound(w) <= a.registers) {
                CAPTURE(to_string(w));
                CHECK(acc[0] == can.accepts(snf(w)));
            } else {
                CHECK_FALSE(acc[0]);
            }
        });
    }
}
