#include "sessa/learner.hh"

#include <algorithm>
#include <utility>

#include <json.hpp>

#include "sessa/canonical.hh"
#include "sessa/error.hh"
#include "sessa/io.hh"

namespace sessa {

// ---- teachers ----

ReferenceTeacher::ReferenceTeacher(const Automaton& target) {
    require_session(target);
    canonical_ = canonicalize(target);
}

bool ReferenceTeacher::membership(const DataWord& w) {
    return canonical_.accepts(snf(w));
}

std::optional<DataWord> ReferenceTeacher::equivalence(const Automaton& hypothesis) {
    const auto diff = symbolic_equivalence(canonicalize(hypothesis).to_nfa(), canonical_.to_nfa());
    if (!diff) {
        return std::nullopt;
    }
    return concretize(*diff);
}

ScriptedTeacher::ScriptedTeacher(const Automaton& target, std::vector<DataWord> counterexamples)
    : reference_(target), script_(std::move(counterexamples)) {}

bool ScriptedTeacher::membership(const DataWord& w) {
    return reference_.membership(w);
}

std::optional<DataWord> ScriptedTeacher::equivalence(const Automaton& hypothesis) {
    if (next_ < script_.size()) {
        return script_[next_++];
    }
    if (auto diff = reference_.equivalence(hypothesis)) {
        throw Error(ErrorCode::ScriptExhausted,
                    "counterexample script exhausted but the hypothesis still differs on " + to_string(*diff));
    }
    return std::nullopt;
}

// ---- observation table ----

ObservationTable::ObservationTable(std::set<Label> labels, unsigned k) : labels_(std::move(labels)), k_(k) {
    const auto letters = session_alphabet(labels_, k_);
    letters_.assign(letters.begin(), letters.end());
    upper_.push_back({});
    columns_.push_back({});
    rows_[{}];
}

std::vector<SymbolicWord> ObservationTable::lower() const {
    std::set<SymbolicWord> out;
    const std::set<SymbolicWord> up(upper_.begin(), upper_.end());
    for (const auto& u : upper_) {
        for (const auto& letter : letters_) {
            SymbolicWord ua = u;
            ua.push_back(letter);
            if (!up.contains(ua)) {
                out.insert(std::move(ua));
            }
        }
    }
    return {out.begin(), out.end()};
}

const std::vector<bool>& ObservationTable::row(const SymbolicWord& u) const {
    static const std::vector<bool> none;
    const auto it = rows_.find(u);
    return it == rows_.end() ? none : it->second;
}

std::optional<std::size_t> ObservationTable::matching_upper(const SymbolicWord& u) const {
    const auto& r = row(u);
    for (std::size_t i = 0; i < upper_.size(); ++i) {
        if (row(upper_[i]) == r) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<SymbolicWord> ObservationTable::unmatched_lower() const {
    std::vector<SymbolicWord> out;
    for (auto& u : lower()) {
        if (!matching_upper(u)) {
            out.push_back(std::move(u));
        }
    }
    return out;
}

void ObservationTable::add_upper(const SymbolicWord& u) {
    if (std::find(upper_.begin(), upper_.end(), u) == upper_.end()) {
        upper_.push_back(u);
        rows_[u];
    }
}

void ObservationTable::add_column(const SymbolicWord& v) {
    if (std::find(columns_.begin(), columns_.end(), v) == columns_.end()) {
        columns_.push_back(v);
    }
}

void ObservationTable::extend_registers(unsigned k) {
    if (k <= k_) {
        return;
    }
    k_ = k;
    const auto letters = session_alphabet(labels_, k_);
    letters_.assign(letters.begin(), letters.end());
}

void ObservationTable::fill(const std::function<bool(const SymbolicWord&)>& member) {
    auto fill_row = [&](const SymbolicWord& u) {
        auto& r = rows_[u];
        while (r.size() < columns_.size()) {
            SymbolicWord uv = u;
            const auto& v = columns_[r.size()];
            uv.insert(uv.end(), v.begin(), v.end());
            r.push_back(member(uv));
        }
    };
    for (const auto& u : upper_) {
        fill_row(u);
    }
    for (const auto& u : lower()) {
        fill_row(u);
    }
}

// ---- hypothesis ----

std::size_t Hypothesis::run(const SymbolicWord& u) const {
    std::size_t q = 0;
    for (const auto& letter : u) {
        const auto it = next_[q].find(letter);
        if (it == next_[q].end()) {
            throw Error(ErrorCode::UnknownLabel, "hypothesis has no transition on " + to_string(letter));
        }
        q = it->second;
    }
    return q;
}

Hypothesis build_hypothesis(const ObservationTable& table) {
    if (!table.is_closed()) {
        throw Error(ErrorCode::NotClosed, "observation table is not closed");
    }
    Hypothesis h;
    h.access = table.upper();
    h.next_.resize(h.access.size());
    Automaton& a = h.automaton;
    a.name = "hypothesis";
    a.alphabet = table.labels();
    a.registers = table.registers();
    for (std::size_t i = 0; i < h.access.size(); ++i) {
        a.states.push_back("u" + std::to_string(i));
    }
    a.initial = a.states.front();
    for (std::size_t i = 0; i < h.access.size(); ++i) {
        if (table.row(h.access[i]).front()) {
            a.finals.insert(a.states[i]);
        }
        for (const auto& letter : table.letters()) {
            SymbolicWord ua = h.access[i];
            ua.push_back(letter);
            const std::size_t j = *table.matching_upper(ua);
            h.next_[i][letter] = j;
            a.transitions.insert({a.states[i], letter, a.states[j]});
        }
    }
    return h;
}

std::optional<SymbolicWord> nf_violation_witness(const Automaton& hypothesis) {
    const unsigned k = hypothesis.registers;
    const SymbolicDfa outside =
        complement(nf_automaton(k, hypothesis.alphabet), session_alphabet(hypothesis.alphabet, k));
    return shortest_accepted(product(symbolic_view(hypothesis), outside.to_nfa()));
}

// ---- trace ----

const char* trace_kind_name(TraceKind kind) noexcept {
    switch (kind) {
    case TraceKind::MembershipQuery: return "MembershipQuery";
    case TraceKind::EquivalenceQuery: return "EquivalenceQuery";
    case TraceKind::NfViolation: return "NfViolation";
    case TraceKind::CounterexampleProcessed: return "CounterexampleProcessed";
    case TraceKind::AlphabetExtended: return "AlphabetExtended";
    case TraceKind::TableClosed: return "TableClosed";
    }
    return "?";
}

std::string to_json_lines(const LearnTrace& trace) {
    std::string out;
    for (const auto& e : trace) {
        nlohmann::json j;
        j["event"] = trace_kind_name(e.kind);
        j["detail"] = e.detail;
        j["k"] = e.k;
        j["upper_rows"] = e.upper_rows;
        j["columns"] = e.columns;
        out += j.dump();
        out += '\n';
    }
    return out;
}

// ---- learner ----

Learner::Learner(Teacher& teacher, std::set<Label> labels, LearnOptions options)
    : teacher_(teacher), options_(std::move(options)), table_(std::move(labels), 1) {}

void Learner::emit(TraceKind kind, std::string detail) {
    trace_.push_back({kind, std::move(detail), table_.registers(), table_.upper().size(), table_.columns().size()});
    if (options_.observer) {
        options_.observer(trace_.back(), table_);
    }
}

void Learner::charge_query() {
    if (options_.max_queries != 0 &&
        stats_.membership_queries + stats_.equivalence_queries >= options_.max_queries) {
        throw Error(ErrorCode::QueryBudgetExceeded,
                    "query budget of " + std::to_string(options_.max_queries) + " exhausted");
    }
}

bool Learner::symbolic_membership(const SymbolicWord& u) {
    if (const auto it = answers_.find(u); it != answers_.end()) {
        return it->second;
    }
    ++stats_.symbolic_queries;
    bool answer = false;
    if (is_normal_form(u)) {
        charge_query();
        ++stats_.membership_queries;
        const DataWord w = concretize(u);
        answer = teacher_.membership(w);
        if (options_.trace_membership) {
            emit(TraceKind::MembershipQuery, to_string(w) + (answer ? " +" : " -"));
        }
    }
    answers_.emplace(u, answer);
    return answer;
}

void Learner::close_table() {
    table_.fill([this](const SymbolicWord& u) { return ask(u); });
    std::string promoted;
    for (auto open = table_.unmatched_lower(); !open.empty(); open = table_.unmatched_lower()) {
        // greatest first: matches the order in which rows appear in the golden tables
        table_.add_upper(open.back());
        table_.fill([this](const SymbolicWord& u) { return ask(u); });
        if (!promoted.empty()) {
            promoted += ", ";
        }
        promoted += to_string(open.back());
    }
    emit(TraceKind::TableClosed, promoted.empty() ? "-" : promoted);
}

namespace {

// Distinguishing word of a break-point of z, or nullopt if the hypothesis and the
// membership answers agree on z.
std::optional<SymbolicWord> find_breakpoint(const Hypothesis& h, const SymbolicWord& z,
                                            const std::function<bool(const SymbolicWord&)>& member) {
    const std::size_t m = z.size();
    // g(i) = member(s_i · v_i), 1 <= i <= m+1
    auto g = [&](std::size_t i) {
        SymbolicWord prefix(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(i - 1));
        SymbolicWord word = h.access[h.run(prefix)];
        word.insert(word.end(), z.begin() + static_cast<std::ptrdiff_t>(i - 1), z.end());
        return member(word);
    };
    std::size_t lo = 1;
    std::size_t hi = m + 1;
    const bool g_lo = g(lo);
    if (g_lo == g(hi)) {
        return std::nullopt;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (g(mid) == g_lo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return SymbolicWord(z.begin() + static_cast<std::ptrdiff_t>(lo), z.end());
}

} // namespace

void Learner::process_counterexample(const Hypothesis& hypothesis, const SymbolicWord& z) {
    for (const auto& letter : z) {
        if (!table_.labels().contains(letter.label)) {
            throw Error(ErrorCode::TeacherInconsistent, "counterexample uses unknown label '" + letter.label + "'");
        }
        if (letter.op.kind == OpKind::LocalFresh) {
            throw Error(ErrorCode::TeacherInconsistent, "counterexample is not a session word");
        }
    }
    auto member = [this](const SymbolicWord& u) { return ask(u); };
    auto add_distinguishing = [&](const SymbolicWord& v) {
        const auto& cols = table_.columns();
        if (std::find(cols.begin(), cols.end(), v) != cols.end()) {
            return false;
        }
        table_.add_column(v);
        table_.fill(member);
        emit(TraceKind::CounterexampleProcessed, to_string(v));
        return true;
    };

    const unsigned wider = max_register(z);
    if (wider > table_.registers()) {
        table_.extend_registers(wider);
        table_.fill(member);
        emit(TraceKind::AlphabetExtended, std::to_string(wider));
        if (!table_.is_closed()) {
            return;
        }
        // still closed after widening: use a hypothesis over the new letters
        const Hypothesis widened = build_hypothesis(table_);
        if (const auto v = find_breakpoint(widened, z, member)) {
            add_distinguishing(*v);
        }
        return;
    }
    if (!table_.is_closed()) {
        throw Error(ErrorCode::NotClosed, "counterexample processing needs a closed table");
    }
    const auto v = find_breakpoint(hypothesis, z, member);
    if (!v || !add_distinguishing(*v)) {
        throw Error(ErrorCode::NoBreakpoint, "no break-point along " + to_string(z));
    }
}

LearnResult Learner::run() {
    try {
        for (;;) {
            close_table();
            stats_.upper_rows_per_round.push_back(table_.upper().size());
            const Hypothesis h = build_hypothesis(table_);

            SymbolicWord z;
            if (auto bad = nf_violation_witness(h.automaton)) {
                ++stats_.nf_violations;
                emit(TraceKind::NfViolation, to_string(*bad));
                z = std::move(*bad);
            } else {
                charge_query();
                ++stats_.equivalence_queries;
                const auto cex = teacher_.equivalence(h.automaton);
                if (!cex) {
                    emit(TraceKind::EquivalenceQuery, "yes");
                    return {h.automaton, trace_, stats_};
                }
                emit(TraceKind::EquivalenceQuery, to_string(*cex));
                stats_.longest_counterexample = std::max(stats_.longest_counterexample, cex->size());
                for (const auto& letter : *cex) {
                    if (!table_.labels().contains(letter.label)) {
                        throw Error(ErrorCode::TeacherInconsistent,
                                    "counterexample uses unknown label '" + letter.label + "'");
                    }
                }
                z = snf(*cex);
            }
            process_counterexample(h, z);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NoBreakpoint) {
            throw Error(ErrorCode::TeacherInconsistent, std::string("teacher answers are inconsistent: ") + e.what());
        }
        throw;
    }
}

} // namespace sessa
