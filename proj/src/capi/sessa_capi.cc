#include "sessa.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "sessa/automaton.hh"
#include "sessa/canonical.hh"
#include "sessa/error.hh"
#include "sessa/io.hh"
#include "sessa/langops.hh"
#include "sessa/learner.hh"

struct sessa_automaton {
    sessa::Automaton a;
};

namespace {

thread_local std::string last_error;

sessa_status to_status(sessa::ErrorCode code) {
    using sessa::ErrorCode;
    switch (code) {
    case ErrorCode::ValueAbsent: return SESSA_ERR_VALUE_ABSENT;
    case ErrorCode::UnsupportedOp: return SESSA_ERR_UNSUPPORTED_OP;
    case ErrorCode::NotWellFormed: return SESSA_ERR_NOT_WELL_FORMED;
    case ErrorCode::Invalid: return SESSA_ERR_INVALID;
    case ErrorCode::NotSessionAutomaton: return SESSA_ERR_NOT_SESSION;
    case ErrorCode::UnknownLabel: return SESSA_ERR_UNKNOWN_LABEL;
    case ErrorCode::NotClosed: return SESSA_ERR_NOT_CLOSED;
    case ErrorCode::NoBreakpoint: return SESSA_ERR_NO_BREAKPOINT;
    case ErrorCode::TeacherInconsistent: return SESSA_ERR_TEACHER_INCONSISTENT;
    case ErrorCode::QueryBudgetExceeded: return SESSA_ERR_QUERY_BUDGET;
    case ErrorCode::ScriptExhausted: return SESSA_ERR_SCRIPT_EXHAUSTED;
    case ErrorCode::SyntaxError: return SESSA_ERR_SYNTAX;
    case ErrorCode::Io: return SESSA_ERR_IO;
    }
    return SESSA_ERR_INTERNAL;
}

sessa_status fail(sessa_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// runs f, turning exceptions into status codes
template <class F>
sessa_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return SESSA_OK;
    } catch (const sessa::Error& e) {
        return fail(to_status(e.code()), std::string(sessa::error_code_name(e.code())) + ": " + e.what());
    } catch (const std::bad_alloc&) {
        return fail(SESSA_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(SESSA_ERR_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sessa_automaton* wrap(sessa::Automaton a) { return new sessa_automaton{std::move(a)}; }

#define SESSA_REQUIRE(...)                                                      \
    do {                                                                        \
        const void* args_[] = {__VA_ARGS__};                                    \
        for (const void* p_ : args_) {                                          \
            if (!p_) {                                                          \
                return fail(SESSA_ERR_NULL_ARGUMENT, "null argument");          \
            }                                                               \
        }                                                                       \
    } while (0)

sessa_status decision(std::optional<sessa::DataWord> w, int* holds, char** witness) {
    *holds = w ? 0 : 1;
    if (witness) {
        *witness = w ? dup(sessa::to_string(*w)) : nullptr;
    }
    return SESSA_OK;
}

std::vector<sessa::DataWord> parse_script(const char* text) {
    std::vector<sessa::DataWord> out;
    std::istringstream in(text);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') {
            continue;
        }
        try {
            out.push_back(sessa::parse_data_word(line));
        } catch (const sessa::SyntaxError& e) {
            throw sessa::SyntaxError(n, e.what());
        }
    }
    return out;
}

} // namespace

extern "C" {

const char* sessa_last_error(void) { return last_error.c_str(); }

const char* sessa_status_name(sessa_status status) {
    switch (status) {
    case SESSA_OK: return "OK";
    case SESSA_ERR_VALUE_ABSENT: return "ValueAbsent";
    case SESSA_ERR_UNSUPPORTED_OP: return "UnsupportedOp";
    case SESSA_ERR_NOT_WELL_FORMED: return "NotWellFormed";
    case SESSA_ERR_INVALID: return "Invalid";
    case SESSA_ERR_NOT_SESSION: return "NotSessionAutomaton";
    case SESSA_ERR_UNKNOWN_LABEL: return "UnknownLabel";
    case SESSA_ERR_NOT_CLOSED: return "NotClosed";
    case SESSA_ERR_NO_BREAKPOINT: return "NoBreakpoint";
    case SESSA_ERR_TEACHER_INCONSISTENT: return "TeacherInconsistent";
    case SESSA_ERR_QUERY_BUDGET: return "QueryBudgetExceeded";
    case SESSA_ERR_SCRIPT_EXHAUSTED: return "ScriptExhausted";
    case SESSA_ERR_SYNTAX: return "SyntaxError";
    case SESSA_ERR_IO: return "Io";
    case SESSA_ERR_NULL_ARGUMENT: return "NullArgument";
    case SESSA_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* sessa_class_name(sessa_class c) {
    switch (c) {
    case SESSA_CLASS_FRESH_REGISTER: return sessa::class_name(sessa::AutomatonClass::FreshRegister);
    case SESSA_CLASS_REGISTER: return sessa::class_name(sessa::AutomatonClass::Register);
    case SESSA_CLASS_SESSION: return sessa::class_name(sessa::AutomatonClass::Session);
    }
    return "Unknown";
}

void sessa_string_free(char* s) { std::free(s); }

sessa_status sessa_automaton_parse(const char* text, sessa_automaton** out) {
    SESSA_REQUIRE(text, out);
    return guarded([&] { *out = wrap(sessa::parse_automaton(text)); });
}

sessa_status sessa_automaton_load(const char* path, sessa_automaton** out) {
    SESSA_REQUIRE(path, out);
    return guarded([&] { *out = wrap(sessa::load_automaton(path)); });
}

void sessa_automaton_free(sessa_automaton* a) { delete a; }

sessa_status sessa_automaton_serialize(const sessa_automaton* a, char** out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] { *out = dup(sessa::serialize_automaton(a->a)); });
}

sessa_status sessa_automaton_save(const sessa_automaton* a, const char* path) {
    SESSA_REQUIRE(a, path);
    return guarded([&] { sessa::save_text(path, sessa::serialize_automaton(a->a)); });
}

sessa_status sessa_automaton_dot(const sessa_automaton* a, char** out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] { *out = dup(sessa::dot_export(a->a)); });
}

sessa_status sessa_automaton_registers(const sessa_automaton* a, unsigned* out) {
    SESSA_REQUIRE(a, out);
    *out = a->a.registers;
    return SESSA_OK;
}

sessa_status sessa_automaton_state_count(const sessa_automaton* a, size_t* out) {
    SESSA_REQUIRE(a, out);
    *out = a->a.states.size();
    return SESSA_OK;
}

sessa_status sessa_automaton_validate(const sessa_automaton* a, int* valid, char** diagnostics) {
    SESSA_REQUIRE(a, valid);
    return guarded([&] {
        const auto found = sessa::validate(a->a);
        std::string text;
        for (const auto& d : found) {
            text += sessa::diagnostic_name(d.kind);
            text += ": ";
            text += d.message;
            text += '\n';
        }
        if (diagnostics) {
            *diagnostics = dup(text);
        }
        *valid = found.empty() ? 1 : 0;
    });
}

sessa_status sessa_automaton_classify(const sessa_automaton* a, sessa_class* out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] {
        switch (sessa::classify(a->a)) {
        case sessa::AutomatonClass::FreshRegister: *out = SESSA_CLASS_FRESH_REGISTER; break;
        case sessa::AutomatonClass::Register: *out = SESSA_CLASS_REGISTER; break;
        case sessa::AutomatonClass::Session: *out = SESSA_CLASS_SESSION; break;
        }
    });
}

sessa_status sessa_automaton_is_symbolically_deterministic(const sessa_automaton* a, int* out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] { *out = sessa::is_symbolically_deterministic(a->a) ? 1 : 0; });
}

sessa_status sessa_automaton_is_data_deterministic(const sessa_automaton* a, int* out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] { *out = sessa::is_data_deterministic(a->a) ? 1 : 0; });
}

sessa_status sessa_snf(const char* data_word, char** out) {
    SESSA_REQUIRE(data_word, out);
    return guarded([&] { *out = dup(sessa::to_string(sessa::snf(sessa::parse_data_word(data_word)))); });
}

sessa_status sessa_bound(const char* data_word, size_t* out) {
    SESSA_REQUIRE(data_word, out);
    return guarded([&] { *out = sessa::bound(sessa::parse_data_word(data_word)); });
}

sessa_status sessa_concretize(const char* symbolic_word, char** out) {
    SESSA_REQUIRE(symbolic_word, out);
    return guarded(
        [&] { *out = dup(sessa::to_string(sessa::concretize(sessa::parse_symbolic_word(symbolic_word)))); });
}

sessa_status sessa_member(const sessa_automaton* a, const char* data_word, int* accepted) {
    SESSA_REQUIRE(a, data_word, accepted);
    return guarded([&] { *accepted = sessa::simulate(a->a, sessa::parse_data_word(data_word)) ? 1 : 0; });
}

sessa_status sessa_symbolic_member(const sessa_automaton* a, const char* symbolic_word, int* accepted) {
    SESSA_REQUIRE(a, symbolic_word, accepted);
    return guarded(
        [&] { *accepted = sessa::accepts_symbolic(a->a, sessa::parse_symbolic_word(symbolic_word)) ? 1 : 0; });
}

sessa_status sessa_canonicalize(const sessa_automaton* a, sessa_automaton** out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] {
        const auto& src = a->a;
        *out = wrap(sessa::to_automaton(sessa::canonicalize(src), src.alphabet, src.registers, src.name + "_canonical"));
    });
}

sessa_status sessa_union(const sessa_automaton* a, const sessa_automaton* b, sessa_automaton** out) {
    SESSA_REQUIRE(a, b, out);
    return guarded([&] { *out = wrap(sessa::unite(a->a, b->a)); });
}

sessa_status sessa_intersect(const sessa_automaton* a, const sessa_automaton* b, sessa_automaton** out) {
    SESSA_REQUIRE(a, b, out);
    return guarded([&] { *out = wrap(sessa::intersect(a->a, b->a)); });
}

sessa_status sessa_complement_bounded(const sessa_automaton* a, sessa_automaton** out) {
    SESSA_REQUIRE(a, out);
    return guarded([&] { *out = wrap(sessa::complement_bounded(a->a)); });
}

sessa_status sessa_includes(const sessa_automaton* a, const sessa_automaton* b, int* holds, char** witness) {
    SESSA_REQUIRE(a, b, holds);
    return guarded([&] { decision(sessa::includes(a->a, b->a), holds, witness); });
}

sessa_status sessa_equivalent(const sessa_automaton* a, const sessa_automaton* b, int* holds, char** witness) {
    SESSA_REQUIRE(a, b, holds);
    return guarded([&] { decision(sessa::equivalent(a->a, b->a), holds, witness); });
}

sessa_status sessa_is_empty(const sessa_automaton* a, int* holds, char** witness) {
    SESSA_REQUIRE(a, holds);
    return guarded([&] { decision(sessa::is_empty(a->a), holds, witness); });
}

sessa_status sessa_is_universal(const sessa_automaton* a, unsigned k, int* holds, char** witness) {
    SESSA_REQUIRE(a, holds);
    return guarded([&] { decision(sessa::is_universal_bounded(a->a, k), holds, witness); });
}

sessa_status sessa_learn(const sessa_automaton* target, const sessa_learn_options* options,
                         sessa_automaton** hypothesis, char** trace, sessa_learn_stats* stats) {
    SESSA_REQUIRE(target, hypothesis);
    return guarded([&] {
        sessa::LearnOptions opts;
        if (options) {
            opts.max_queries = options->max_queries;
            opts.trace_membership = options->trace_membership != 0;
        }
        std::unique_ptr<sessa::Teacher> teacher;
        if (options && options->script) {
            teacher = std::make_unique<sessa::ScriptedTeacher>(target->a, parse_script(options->script));
        } else {
            teacher = std::make_unique<sessa::ReferenceTeacher>(target->a);
        }
        sessa::Learner learner(*teacher, target->a.alphabet, opts);
        sessa::LearnResult result = learner.run();
        if (stats) {
            stats->membership_queries = result.stats.membership_queries;
            stats->equivalence_queries = result.stats.equivalence_queries;
            stats->nf_violations = result.stats.nf_violations;
            stats->longest_counterexample = result.stats.longest_counterexample;
            stats->upper_rows = learner.table().upper().size();
            stats->columns = learner.table().columns().size();
            stats->registers = learner.table().registers();
        }
        if (trace) {
            *trace = dup(sessa::to_json_lines(result.trace));
        }
        *hypothesis = wrap(std::move(result.hypothesis));
    });
}

} // extern "C"
