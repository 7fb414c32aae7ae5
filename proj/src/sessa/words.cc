#include "sessa/words.hh"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "sessa/error.hh"

namespace sessa {

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::ValueAbsent: return "ValueAbsent";
    case ErrorCode::UnsupportedOp: return "UnsupportedOp";
    case ErrorCode::NotWellFormed: return "NotWellFormed";
    case ErrorCode::Invalid: return "Invalid";
    case ErrorCode::NotSessionAutomaton: return "NotSessionAutomaton";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NoBreakpoint: return "NoBreakpoint";
    case ErrorCode::TeacherInconsistent: return "TeacherInconsistent";
    case ErrorCode::QueryBudgetExceeded: return "QueryBudgetExceeded";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool shortlex_less(const SymbolicWord& x, const SymbolicWord& y) {
    if (x.size() != y.size()) {
        return x.size() < y.size();
    }
    return x < y;
}

std::pair<std::size_t, std::size_t> occurrence_bounds(const DataWord& w, DataValue d) {
    std::size_t first = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].value == d) {
            if (first == 0) {
                first = i + 1;
            }
            last = i + 1;
        }
    }
    if (first == 0) {
        throw Error(ErrorCode::ValueAbsent, "data value " + std::to_string(d) + " does not occur in the word");
    }
    return {first, last};
}

bool data_equivalent(const DataWord& w, const DataWord& w2) {
    if (w.size() != w2.size()) {
        return false;
    }
    // A bijection between the value sets exists iff both partial maps stay functional.
    std::unordered_map<DataValue, DataValue> forward;
    std::unordered_map<DataValue, DataValue> backward;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i].label != w2[i].label) {
            return false;
        }
        auto [f, f_new] = forward.emplace(w[i].value, w2[i].value);
        auto [b, b_new] = backward.emplace(w2[i].value, w[i].value);
        if (f->second != w2[i].value || b->second != w[i].value) {
            return false;
        }
    }
    return true;
}

namespace {

// last occurrence index (0-based) of the value at each position
std::vector<std::size_t> last_occurrences(const DataWord& w) {
    std::unordered_map<DataValue, std::size_t> last;
    for (std::size_t i = 0; i < w.size(); ++i) {
        last[w[i].value] = i;
    }
    std::vector<std::size_t> result(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        result[i] = last[w[i].value];
    }
    return result;
}

} // namespace

std::size_t bound(const DataWord& w) {
    const auto last = last_occurrences(w);
    std::set<DataValue> seen;
    std::size_t open = 0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (seen.insert(w[i].value).second) {
            ++open;
        }
        best = std::max(best, open);
        if (last[i] == i) {
            --open;
        }
    }
    return best;
}

bool is_well_formed(const SymbolicWord& u) {
    std::set<unsigned> initialized;
    bool ok = true;
    for (const auto& letter : u) {
        switch (letter.op.kind) {
        case OpKind::LocalFresh:
            throw Error(ErrorCode::UnsupportedOp, "locally fresh operation in a session symbolic word");
        case OpKind::GlobalFresh:
            initialized.insert(letter.op.reg);
            break;
        case OpKind::Reuse:
            if (!initialized.contains(letter.op.reg)) {
                ok = false;
            }
            break;
        }
    }
    return ok;
}

std::vector<std::vector<std::size_t>> symbolic_classes(const SymbolicWord& u) {
    std::vector<std::vector<std::size_t>> classes;
    std::map<unsigned, std::size_t> current;  // register -> open class
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& op = u[i].op;
        if (op.kind == OpKind::LocalFresh) {
            throw Error(ErrorCode::UnsupportedOp, "locally fresh operation in a session symbolic word");
        }
        auto it = current.find(op.reg);
        if (op.kind == OpKind::GlobalFresh || it == current.end()) {
            current[op.reg] = classes.size();
            classes.push_back({i + 1});
        } else {
            classes[it->second].push_back(i + 1);
        }
    }
    return classes;
}

SymbolicWord snf(const DataWord& w) {
    const auto last = last_occurrences(w);
    // Free(i) = released ∪ {next_unused, next_unused + 1, ...}; released < next_unused.
    std::set<unsigned> released;
    unsigned next_unused = 1;
    std::unordered_map<DataValue, unsigned> reg_of;

    SymbolicWord u;
    u.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto& [label, d] = w[i];
        auto it = reg_of.find(d);
        unsigned reg = 0;
        if (it == reg_of.end()) {
            reg = released.empty() ? next_unused : *released.begin();
            reg_of.emplace(d, reg);
            u.push_back(fresh(label, reg));
            if (last[i] != i) {
                if (released.empty()) {
                    ++next_unused;
                } else {
                    released.erase(released.begin());
                }
            }
        } else {
            reg = it->second;
            u.push_back(reuse(label, reg));
            if (last[i] == i) {
                released.insert(reg);
            }
        }
    }
    return u;
}

DataWord concretize(const SymbolicWord& u) {
    if (!is_well_formed(u)) {
        throw Error(ErrorCode::NotWellFormed, "cannot concretize a symbolic word that is not well-formed");
    }
    const auto classes = symbolic_classes(u);
    DataWord w(u.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t pos : classes[c]) {
            w[pos - 1] = {u[pos - 1].label, static_cast<DataValue>(c + 1)};
        }
    }
    return w;
}

bool is_concretization(const DataWord& w, const SymbolicWord& u) {
    if (w.size() != u.size()) {
        return false;
    }
    for (const auto& letter : u) {
        if (letter.op.kind == OpKind::LocalFresh) {
            return false;
        }
    }
    if (!is_well_formed(u)) {
        return false;
    }
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (w[i].label != u[i].label) {
            return false;
        }
    }
    std::unordered_map<DataValue, std::size_t> class_of_value;
    const auto classes = symbolic_classes(u);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const DataValue d = w[classes[c].front() - 1].value;
        for (std::size_t pos : classes[c]) {
            if (w[pos - 1].value != d) {
                return false;
            }
        }
        if (!class_of_value.emplace(d, c).second) {
            return false;
        }
    }
    return true;
}

unsigned max_register(const SymbolicWord& u) {
    unsigned best = 0;
    for (const auto& letter : u) {
        best = std::max(best, letter.op.reg);
    }
    return best;
}

std::vector<Label> labels_of(const DataWord& w) {
    std::vector<Label> out;
    out.reserve(w.size());
    for (const auto& letter : w) {
        out.push_back(letter.label);
    }
    return out;
}

std::vector<Label> labels_of(const SymbolicWord& u) {
    std::vector<Label> out;
    out.reserve(u.size());
    for (const auto& letter : u) {
        out.push_back(letter.label);
    }
    return out;
}

} // namespace sessa
