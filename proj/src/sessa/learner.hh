#pragma once

// Active learning of canonical session automata from membership and equivalence
// queries: an observation table over Σ×Γ_k with Rivest-Schapire counterexample
// processing, starting at k = 1 and widening the register alphabet on demand.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sessa/automaton.hh"
#include "sessa/symbolic.hh"
#include "sessa/words.hh"

namespace sessa {

/// Minimally adequate teacher over data words.
class Teacher {
public:
    virtual ~Teacher() = default;
    virtual bool membership(const DataWord& w) = 0;
    /// nullopt when the hypothesis is correct, otherwise a data word it misclassifies.
    virtual std::optional<DataWord> equivalence(const Automaton& hypothesis) = 0;
};

/// Knows the target automaton; answers through its canonical form.
class ReferenceTeacher : public Teacher {
public:
    explicit ReferenceTeacher(const Automaton& target);

    bool membership(const DataWord& w) override;
    std::optional<DataWord> equivalence(const Automaton& hypothesis) override;

    const SymbolicDfa& canonical() const { return canonical_; }

private:
    SymbolicDfa canonical_;
};

/// Hands out a fixed list of counterexamples in order. Once the list is used up the
/// hypothesis must be correct, otherwise ScriptExhausted is thrown.
class ScriptedTeacher : public Teacher {
public:
    ScriptedTeacher(const Automaton& target, std::vector<DataWord> counterexamples);

    bool membership(const DataWord& w) override;
    std::optional<DataWord> equivalence(const Automaton& hypothesis) override;

private:
    ReferenceTeacher reference_;
    std::vector<DataWord> script_;
    std::size_t next_ = 0;
};

/// (T, U, V): rows for U ∪ U·(Σ×Γ_k), one +/- entry per column of V.
class ObservationTable {
public:
    ObservationTable(std::set<Label> labels, unsigned k);

    unsigned registers() const { return k_; }
    const std::set<Label>& labels() const { return labels_; }
    const std::vector<TransitionLabel>& letters() const { return letters_; }
    /// Upper rows in promotion order; the first one is ε.
    const std::vector<SymbolicWord>& upper() const { return upper_; }
    const std::vector<SymbolicWord>& columns() const { return columns_; }
    /// U·(Σ×Γ_k) \ U, sorted.
    std::vector<SymbolicWord> lower() const;

    /// Filled entries of `u`, one per column; empty if `u` has no row.
    const std::vector<bool>& row(const SymbolicWord& u) const;
    std::optional<std::size_t> matching_upper(const SymbolicWord& u) const;
    /// Lower rows whose content matches no upper row, sorted.
    std::vector<SymbolicWord> unmatched_lower() const;
    bool is_closed() const { return unmatched_lower().empty(); }

    void add_upper(const SymbolicWord& u);
    void add_column(const SymbolicWord& v);
    void extend_registers(unsigned k);
    /// Queries every missing entry.
    void fill(const std::function<bool(const SymbolicWord&)>& member);

private:
    std::set<Label> labels_;
    unsigned k_;
    std::vector<TransitionLabel> letters_;
    std::vector<SymbolicWord> upper_;
    std::vector<SymbolicWord> columns_;
    std::map<SymbolicWord, std::vector<bool>> rows_;
};

/// Automaton of a closed table: state `u<i>` is upper row i.
struct Hypothesis {
    Automaton automaton;
    std::vector<SymbolicWord> access;  // access[i] = upper row of state `u<i>`

    /// Index of the state reached by `u`.
    std::size_t run(const SymbolicWord& u) const;

private:
    friend Hypothesis build_hypothesis(const ObservationTable& table);
    std::vector<std::map<TransitionLabel, std::size_t>> next_;
};

/// Throws NotClosed.
Hypothesis build_hypothesis(const ObservationTable& table);

/// Shortest accepted word that is not a symbolic normal form.
std::optional<SymbolicWord> nf_violation_witness(const Automaton& hypothesis);

enum class TraceKind {
    MembershipQuery,
    EquivalenceQuery,
    NfViolation,
    CounterexampleProcessed,
    AlphabetExtended,
    TableClosed,
};

const char* trace_kind_name(TraceKind kind) noexcept;

struct TraceEvent {
    TraceKind kind;
    std::string detail;
    unsigned k = 1;
    std::size_t upper_rows = 0;
    std::size_t columns = 0;
};

using LearnTrace = std::vector<TraceEvent>;

/// One JSON object per line with fields event, detail, k, upper_rows, columns.
std::string to_json_lines(const LearnTrace& trace);

struct LearnStats {
    std::size_t membership_queries = 0;    // answered by the teacher
    std::size_t symbolic_queries = 0;      // distinct symbolic words asked
    std::size_t equivalence_queries = 0;   // answered by the teacher
    std::size_t nf_violations = 0;         // hypotheses rejected without the teacher
    std::size_t longest_counterexample = 0;
    std::vector<std::size_t> upper_rows_per_round;
};

struct LearnOptions {
    /// Cap on teacher queries (membership + equivalence); 0 means unlimited.
    std::size_t max_queries = 0;
    bool trace_membership = true;
    std::function<void(const TraceEvent&, const ObservationTable&)> observer;
};

struct LearnResult {
    Automaton hypothesis;
    LearnTrace trace;
    LearnStats stats;
};

class Learner {
public:
    Learner(Teacher& teacher, std::set<Label> labels, LearnOptions options = {});

    /// − without consulting the teacher unless u is a normal form; memoized.
    bool symbolic_membership(const SymbolicWord& u);

    /// Fills missing entries, then promotes the greatest unmatched lower row until the
    /// table is closed.
    void close_table();

    /// Widens the alphabet if z needs more registers; if the table is then closed,
    /// adds the distinguishing word of a break-point of z to the columns.
    void process_counterexample(const Hypothesis& hypothesis, const SymbolicWord& z);

    /// The full learning loop. Throws TeacherInconsistent or QueryBudgetExceeded.
    LearnResult run();

    const ObservationTable& table() const { return table_; }
    const LearnStats& stats() const { return stats_; }
    const LearnTrace& trace() const { return trace_; }

private:
    void emit(TraceKind kind, std::string detail);
    void charge_query();
    bool ask(const SymbolicWord& u) { return symbolic_membership(u); }

    Teacher& teacher_;
    LearnOptions options_;
    ObservationTable table_;
    std::map<SymbolicWord, bool> answers_;
    LearnStats stats_;
    LearnTrace trace_;
};

inline LearnResult learn(Teacher& teacher, const std::set<Label>& labels, LearnOptions options = {}) {
    return Learner(teacher, labels, std::move(options)).run();
}

} // namespace sessa
