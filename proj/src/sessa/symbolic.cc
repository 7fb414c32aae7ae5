#include "sessa/symbolic.hh"

#include <algorithm>
#include <deque>
#include <limits>

namespace sessa {

namespace {

constexpr SymState kNone = std::numeric_limits<SymState>::max();

bool is_complete(const SymbolicDfa& d) {
    return std::all_of(d.delta.begin(), d.delta.end(),
                       [&](const auto& out) { return out.size() == d.alphabet.size(); });
}

std::set<TransitionLabel> merged(const std::set<TransitionLabel>& x, const std::set<TransitionLabel>& y) {
    std::set<TransitionLabel> out = x;
    out.insert(y.begin(), y.end());
    return out;
}

// States reachable from the initial state, in breadth-first order over sorted letters.
std::vector<SymState> bfs_order(const SymbolicDfa& d) {
    std::vector<SymState> order{d.initial};
    std::vector<bool> seen(d.num_states(), false);
    seen[d.initial] = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (const auto& [letter, to] : d.delta[order[i]]) {
            if (!seen[to]) {
                seen[to] = true;
                order.push_back(to);
            }
        }
    }
    return order;
}

SymbolicDfa restrict_to(const SymbolicDfa& d, const std::vector<SymState>& keep) {
    std::vector<SymState> renumber(d.num_states(), kNone);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        renumber[keep[i]] = i;
    }
    SymbolicDfa out;
    out.alphabet = d.alphabet;
    out.delta.resize(keep.size());
    out.initial = renumber[d.initial];
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const SymState s = keep[i];
        if (d.finals.contains(s)) {
            out.finals.insert(i);
        }
        for (const auto& [letter, to] : d.delta[s]) {
            if (renumber[to] != kNone) {
                out.delta[i].emplace(letter, renumber[to]);
            }
        }
    }
    out.complete = is_complete(out);
    return out;
}

} // namespace

SymState SymbolicNfa::add_state() {
    delta.emplace_back();
    return delta.size() - 1;
}

void SymbolicNfa::add_transition(SymState from, const TransitionLabel& letter, SymState to) {
    alphabet.insert(letter);
    delta[from][letter].insert(to);
}

bool SymbolicNfa::accepts(const SymbolicWord& u) const {
    std::set<SymState> current = initials;
    for (const auto& letter : u) {
        std::set<SymState> next;
        for (SymState s : current) {
            auto it = delta[s].find(letter);
            if (it != delta[s].end()) {
                next.insert(it->second.begin(), it->second.end());
            }
        }
        current = std::move(next);
    }
    return std::any_of(current.begin(), current.end(), [&](SymState s) { return finals.contains(s); });
}

SymState SymbolicDfa::add_state() {
    delta.emplace_back();
    return delta.size() - 1;
}

void SymbolicDfa::set_transition(SymState from, const TransitionLabel& letter, SymState to) {
    alphabet.insert(letter);
    delta[from][letter] = to;
}

std::optional<SymState> SymbolicDfa::run(const SymbolicWord& u) const {
    SymState s = initial;
    for (const auto& letter : u) {
        auto it = delta[s].find(letter);
        if (it == delta[s].end()) {
            return std::nullopt;
        }
        s = it->second;
    }
    return s;
}

bool SymbolicDfa::accepts(const SymbolicWord& u) const {
    const auto s = run(u);
    return s && finals.contains(*s);
}

unsigned SymbolicDfa::registers() const {
    unsigned k = 0;
    for (const auto& letter : alphabet) {
        k = std::max(k, letter.op.reg);
    }
    return k;
}

SymbolicNfa SymbolicDfa::to_nfa() const {
    SymbolicNfa n;
    n.alphabet = alphabet;
    n.delta.resize(num_states());
    for (SymState s = 0; s < num_states(); ++s) {
        for (const auto& [letter, to] : delta[s]) {
            n.delta[s][letter].insert(to);
        }
    }
    n.initials = {initial};
    n.finals = finals;
    return n;
}

std::set<TransitionLabel> session_alphabet(const std::set<Label>& labels, unsigned k) {
    std::set<TransitionLabel> out;
    for (const auto& a : labels) {
        for (unsigned r = 1; r <= k; ++r) {
            out.insert(fresh(a, r));
            out.insert(reuse(a, r));
        }
    }
    return out;
}

SymbolicDfa determinize(const SymbolicNfa& n) {
    SymbolicDfa d;
    d.alphabet = n.alphabet;
    std::map<std::set<SymState>, SymState> index;
    std::vector<std::set<SymState>> subsets;

    auto intern = [&](std::set<SymState> subset) {
        auto [it, inserted] = index.emplace(subset, d.num_states());
        if (inserted) {
            const SymState s = d.add_state();
            if (std::any_of(subset.begin(), subset.end(), [&](SymState q) { return n.finals.contains(q); })) {
                d.finals.insert(s);
            }
            subsets.push_back(std::move(subset));
        }
        return it->second;
    };

    d.initial = intern(n.initials);
    for (SymState s = 0; s < subsets.size(); ++s) {
        std::map<TransitionLabel, std::set<SymState>> successors;
        for (SymState q : subsets[s]) {
            for (const auto& [letter, targets] : n.delta[q]) {
                successors[letter].insert(targets.begin(), targets.end());
            }
        }
        for (auto& [letter, targets] : successors) {
            if (!targets.empty()) {
                const SymState to = intern(std::move(targets));
                d.delta[s].emplace(letter, to);
            }
        }
    }
    d.complete = is_complete(d);
    return d;
}

SymbolicDfa complete(const SymbolicDfa& d, const std::set<TransitionLabel>& alphabet) {
    SymbolicDfa out = d;
    out.alphabet = merged(d.alphabet, alphabet);
    SymState sink = kNone;
    for (SymState s = 0; s < d.num_states(); ++s) {
        for (const auto& letter : out.alphabet) {
            if (!out.delta[s].contains(letter)) {
                if (sink == kNone) {
                    sink = out.add_state();
                }
                out.delta[s].emplace(letter, sink);
            }
        }
    }
    if (sink != kNone) {
        for (const auto& letter : out.alphabet) {
            out.delta[sink].emplace(letter, sink);
        }
    }
    out.complete = true;
    return out;
}

SymbolicDfa complete(const SymbolicDfa& d) {
    return complete(d, d.alphabet);
}

SymbolicDfa trim(const SymbolicDfa& d) {
    const auto reachable = bfs_order(d);
    std::vector<std::vector<SymState>> inverse(d.num_states());
    for (SymState s = 0; s < d.num_states(); ++s) {
        for (const auto& [letter, to] : d.delta[s]) {
            inverse[to].push_back(s);
        }
    }
    std::vector<bool> useful(d.num_states(), false);
    std::deque<SymState> queue(d.finals.begin(), d.finals.end());
    for (SymState f : d.finals) {
        useful[f] = true;
    }
    while (!queue.empty()) {
        const SymState s = queue.front();
        queue.pop_front();
        for (SymState p : inverse[s]) {
            if (!useful[p]) {
                useful[p] = true;
                queue.push_back(p);
            }
        }
    }
    std::vector<SymState> keep;
    for (SymState s : reachable) {
        if (useful[s] || s == d.initial) {
            keep.push_back(s);
        }
    }
    return restrict_to(d, keep);
}

SymbolicDfa canonical_numbering(const SymbolicDfa& d) {
    return restrict_to(d, bfs_order(d));
}

SymbolicDfa minimize(const SymbolicDfa& input) {
    const SymbolicDfa d = canonical_numbering(complete(input));
    const std::size_t n = d.num_states();
    const std::vector<TransitionLabel> letters(d.alphabet.begin(), d.alphabet.end());

    // inverse[c][q] = predecessors of q on letters[c]
    std::vector<std::vector<std::vector<SymState>>> inverse(letters.size(), std::vector<std::vector<SymState>>(n));
    for (SymState s = 0; s < n; ++s) {
        std::size_t c = 0;
        for (const auto& [letter, to] : d.delta[s]) {
            inverse[c++][to].push_back(s);
        }
    }

    std::vector<std::vector<SymState>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<SymState> accepting;
        std::vector<SymState> rejecting;
        for (SymState s = 0; s < n; ++s) {
            (d.finals.contains(s) ? accepting : rejecting).push_back(s);
        }
        for (auto* part : {&accepting, &rejecting}) {
            if (!part->empty()) {
                for (SymState s : *part) {
                    block_of[s] = blocks.size();
                }
                blocks.push_back(std::move(*part));
            }
        }
    }

    std::vector<bool> pending(blocks.size(), false);
    std::vector<std::size_t> worklist;
    if (blocks.size() == 2) {
        const std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
        worklist.push_back(smaller);
        pending[smaller] = true;
    }

    while (!worklist.empty()) {
        const std::size_t splitter_id = worklist.back();
        worklist.pop_back();
        pending[splitter_id] = false;
        const std::vector<SymState> splitter = blocks[splitter_id];

        for (std::size_t c = 0; c < letters.size(); ++c) {
            std::vector<SymState> marked;
            for (SymState q : splitter) {
                for (SymState p : inverse[c][q]) {
                    marked.push_back(p);
                }
            }
            std::sort(marked.begin(), marked.end());
            marked.erase(std::unique(marked.begin(), marked.end()), marked.end());

            std::map<std::size_t, std::vector<SymState>> touched;
            for (SymState p : marked) {
                touched[block_of[p]].push_back(p);
            }
            for (auto& [y, inside] : touched) {
                if (inside.size() == blocks[y].size()) {
                    continue;
                }
                std::vector<SymState> outside;
                std::set<SymState> in_set(inside.begin(), inside.end());
                for (SymState s : blocks[y]) {
                    if (!in_set.contains(s)) {
                        outside.push_back(s);
                    }
                }
                const std::size_t fresh_id = blocks.size();
                blocks[y] = std::move(outside);
                for (SymState s : inside) {
                    block_of[s] = fresh_id;
                }
                blocks.push_back(std::move(inside));
                pending.push_back(false);
                if (pending[y]) {
                    worklist.push_back(fresh_id);
                    pending[fresh_id] = true;
                } else {
                    const std::size_t smaller = blocks[y].size() <= blocks[fresh_id].size() ? y : fresh_id;
                    worklist.push_back(smaller);
                    pending[smaller] = true;
                }
            }
        }
    }

    SymbolicDfa quotient;
    quotient.alphabet = d.alphabet;
    quotient.delta.resize(blocks.size());
    quotient.initial = block_of[d.initial];
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const SymState representative = blocks[b].front();
        if (d.finals.contains(representative)) {
            quotient.finals.insert(b);
        }
        for (const auto& [letter, to] : d.delta[representative]) {
            quotient.delta[b].emplace(letter, block_of[to]);
        }
    }
    return canonical_numbering(trim(quotient));
}

SymbolicNfa product(const SymbolicNfa& x, const SymbolicNfa& y) {
    SymbolicNfa out;
    for (const auto& letter : x.alphabet) {
        if (y.alphabet.contains(letter)) {
            out.alphabet.insert(letter);
        }
    }
    std::map<std::pair<SymState, SymState>, SymState> index;
    std::vector<std::pair<SymState, SymState>> pairs;
    auto intern = [&](SymState p, SymState q) {
        auto [it, inserted] = index.emplace(std::pair{p, q}, out.num_states());
        if (inserted) {
            const SymState s = out.add_state();
            if (x.finals.contains(p) && y.finals.contains(q)) {
                out.finals.insert(s);
            }
            pairs.emplace_back(p, q);
        }
        return it->second;
    };
    for (SymState p : x.initials) {
        for (SymState q : y.initials) {
            out.initials.insert(intern(p, q));
        }
    }
    for (SymState s = 0; s < pairs.size(); ++s) {
        const auto [p, q] = pairs[s];
        for (const auto& [letter, xs] : x.delta[p]) {
            auto it = y.delta[q].find(letter);
            if (it == y.delta[q].end()) {
                continue;
            }
            for (SymState p2 : xs) {
                for (SymState q2 : it->second) {
                    const SymState to = intern(p2, q2);
                    out.delta[s][letter].insert(to);
                }
            }
        }
    }
    return out;
}

SymbolicNfa nfa_union(const SymbolicNfa& x, const SymbolicNfa& y) {
    SymbolicNfa out = x;
    out.alphabet.insert(y.alphabet.begin(), y.alphabet.end());
    const SymState offset = x.num_states();
    for (SymState s = 0; s < y.num_states(); ++s) {
        out.add_state();
    }
    for (SymState s = 0; s < y.num_states(); ++s) {
        for (const auto& [letter, targets] : y.delta[s]) {
            for (SymState t : targets) {
                out.delta[s + offset][letter].insert(t + offset);
            }
        }
    }
    for (SymState s : y.initials) {
        out.initials.insert(s + offset);
    }
    for (SymState s : y.finals) {
        out.finals.insert(s + offset);
    }
    return out;
}

SymbolicDfa complement(const SymbolicDfa& d, const std::set<TransitionLabel>& alphabet) {
    SymbolicDfa out = complete(d, alphabet);
    std::set<SymState> flipped;
    for (SymState s = 0; s < out.num_states(); ++s) {
        if (!out.finals.contains(s)) {
            flipped.insert(s);
        }
    }
    out.finals = std::move(flipped);
    return out;
}

SymbolicDfa complement(const SymbolicDfa& d) {
    return complement(d, d.alphabet);
}

std::optional<SymbolicWord> shortest_accepted(const SymbolicNfa& n) {
    // States are discovered in shortlex order of their least access words.
    std::vector<SymState> parent(n.num_states(), kNone);
    std::vector<const TransitionLabel*> via(n.num_states(), nullptr);
    std::vector<bool> seen(n.num_states(), false);
    std::deque<SymState> queue;

    auto word_to = [&](SymState s) {
        SymbolicWord u;
        for (; via[s] != nullptr; s = parent[s]) {
            u.push_back(*via[s]);
        }
        std::reverse(u.begin(), u.end());
        return u;
    };

    for (SymState s : n.initials) {
        seen[s] = true;
        queue.push_back(s);
    }
    for (SymState s : n.initials) {
        if (n.finals.contains(s)) {
            return SymbolicWord{};
        }
    }
    while (!queue.empty()) {
        const SymState s = queue.front();
        queue.pop_front();
        for (const auto& [letter, targets] : n.delta[s]) {
            for (SymState t : targets) {
                if (seen[t]) {
                    continue;
                }
                seen[t] = true;
                parent[t] = s;
                via[t] = &letter;
                if (n.finals.contains(t)) {
                    return word_to(t);
                }
                queue.push_back(t);
            }
        }
    }
    return std::nullopt;
}

std::optional<SymbolicWord> shortest_accepted(const SymbolicDfa& d) {
    return shortest_accepted(d.to_nfa());
}

std::optional<SymbolicWord> symbolic_inclusion(const SymbolicNfa& x, const SymbolicNfa& y) {
    const SymbolicDfa not_y = complement(determinize(y), merged(x.alphabet, y.alphabet));
    return shortest_accepted(product(x, not_y.to_nfa()));
}

std::optional<SymbolicWord> symbolic_equivalence(const SymbolicNfa& x, const SymbolicNfa& y) {
    auto left = symbolic_inclusion(x, y);
    auto right = symbolic_inclusion(y, x);
    if (left && right) {
        return shortlex_less(*right, *left) ? right : left;
    }
    return left ? left : right;
}

bool trim_isomorphic(const SymbolicDfa& x, const SymbolicDfa& y) {
    const SymbolicDfa a = canonical_numbering(trim(x));
    const SymbolicDfa b = canonical_numbering(trim(y));
    return a.delta == b.delta && a.finals == b.finals && a.initial == b.initial;
}

} // namespace sessa
