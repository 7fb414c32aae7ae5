#include "sessa/io.hh"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "sessa/error.hh"

namespace sessa {

namespace {

std::vector<std::string_view> split_ws(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

bool is_label(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

template <typename T>
bool parse_unsigned(std::string_view s, T& out) {
    if (s.empty()) {
        return false;
    }
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && end == s.data() + s.size();
}

// Splits `label:rest` and checks the label.
std::pair<std::string_view, std::string_view> split_letter(std::string_view token) {
    const auto colon = token.find(':');
    if (colon == std::string_view::npos) {
        throw SyntaxError(0, "letter '" + std::string(token) + "' is missing ':'");
    }
    const auto label = token.substr(0, colon);
    if (!is_label(label)) {
        throw SyntaxError(0, "letter '" + std::string(token) + "' has an invalid label");
    }
    return {label, token.substr(colon + 1)};
}

bool is_empty_word(const std::vector<std::string_view>& tokens) {
    return tokens.empty() || (tokens.size() == 1 && tokens[0] == "-");
}

const char* op_keyword(OpKind kind) {
    switch (kind) {
    case OpKind::GlobalFresh: return "fresh";
    case OpKind::Reuse: return "reuse";
    case OpKind::LocalFresh: return "local";
    }
    return "?";
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

DataWord parse_data_word(std::string_view text) {
    const auto tokens = split_ws(text);
    DataWord w;
    if (is_empty_word(tokens)) {
        return w;
    }
    for (auto token : tokens) {
        const auto [label, value] = split_letter(token);
        DataValue d = 0;
        if (!parse_unsigned(value, d)) {
            throw SyntaxError(0, "letter '" + std::string(token) + "' needs an unsigned data value");
        }
        w.push_back({std::string(label), d});
    }
    return w;
}

SymbolicWord parse_symbolic_word(std::string_view text) {
    const auto tokens = split_ws(text);
    SymbolicWord u;
    if (is_empty_word(tokens)) {
        return u;
    }
    for (auto token : tokens) {
        const auto [label, op] = split_letter(token);
        if (op.empty()) {
            throw SyntaxError(0, "letter '" + std::string(token) + "' is missing its register operation");
        }
        OpKind kind{};
        switch (op.front()) {
        case '*': kind = OpKind::GlobalFresh; break;
        case '^': kind = OpKind::Reuse; break;
        case 'o': kind = OpKind::LocalFresh; break;
        default:
            throw SyntaxError(0, "letter '" + std::string(token) + "' has unknown operation '" +
                                     std::string(1, op.front()) + "' (expected *, ^ or o)");
        }
        unsigned reg = 0;
        if (!parse_unsigned(op.substr(1), reg) || reg == 0) {
            throw SyntaxError(0, "letter '" + std::string(token) + "' needs a register index >= 1");
        }
        u.push_back({std::string(label), {kind, reg}});
    }
    return u;
}

std::string to_string(const TransitionLabel& letter) {
    const char op = letter.op.kind == OpKind::GlobalFresh ? '*' : letter.op.kind == OpKind::Reuse ? '^' : 'o';
    return letter.label + ":" + op + std::to_string(letter.op.reg);
}

std::string to_string(const DataWord& w) {
    if (w.empty()) {
        return "-";
    }
    std::string out;
    for (const auto& [label, value] : w) {
        if (!out.empty()) {
            out += ' ';
        }
        out += label + ":" + std::to_string(value);
    }
    return out;
}

std::string to_string(const SymbolicWord& u) {
    if (u.empty()) {
        return "-";
    }
    std::string out;
    for (const auto& letter : u) {
        if (!out.empty()) {
            out += ' ';
        }
        out += to_string(letter);
    }
    return out;
}

std::string glyph(const TransitionLabel& letter) {
    const char* op = letter.op.kind == OpKind::GlobalFresh ? "⊛"
                   : letter.op.kind == OpKind::Reuse       ? "↑"
                                                           : "⊙";
    return letter.label + ", " + op + std::to_string(letter.op.reg);
}

Automaton parse_automaton(std::string_view text) {
    Automaton a;
    bool saw_registers = false;
    bool saw_initial = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        const auto keyword = tokens[0];
        const std::vector<std::string_view> args(tokens.begin() + 1, tokens.end());
        auto expect_args = [&](std::size_t n) {
            if (args.size() != n) {
                throw SyntaxError(line_no, "'" + std::string(keyword) + "' expects " + std::to_string(n) +
                                               " argument(s), got " + std::to_string(args.size()));
            }
        };

        if (keyword == "automaton") {
            expect_args(1);
            a.name = std::string(args[0]);
        } else if (keyword == "labels") {
            for (auto label : args) {
                if (!is_label(label)) {
                    throw SyntaxError(line_no, "invalid label '" + std::string(label) + "'");
                }
                a.alphabet.emplace(label);
            }
        } else if (keyword == "registers") {
            expect_args(1);
            if (!parse_unsigned(args[0], a.registers)) {
                throw SyntaxError(line_no, "register count '" + std::string(args[0]) + "' is not a number");
            }
            saw_registers = true;
        } else if (keyword == "states") {
            for (auto s : args) {
                a.states.emplace_back(s);
            }
        } else if (keyword == "initial") {
            expect_args(1);
            a.initial = std::string(args[0]);
            saw_initial = true;
        } else if (keyword == "final") {
            for (auto s : args) {
                a.finals.emplace(s);
            }
        } else if (keyword == "trans") {
            expect_args(5);
            OpKind kind{};
            if (args[2] == "fresh") {
                kind = OpKind::GlobalFresh;
            } else if (args[2] == "reuse") {
                kind = OpKind::Reuse;
            } else if (args[2] == "local") {
                kind = OpKind::LocalFresh;
            } else {
                throw SyntaxError(line_no, "unknown register operation '" + std::string(args[2]) +
                                               "' (expected fresh, local or reuse)");
            }
            if (!is_label(args[1])) {
                throw SyntaxError(line_no, "invalid label '" + std::string(args[1]) + "'");
            }
            unsigned reg = 0;
            if (!parse_unsigned(args[3], reg) || reg == 0) {
                throw SyntaxError(line_no, "register '" + std::string(args[3]) + "' must be an integer >= 1");
            }
            a.transitions.insert({std::string(args[0]), {std::string(args[1]), {kind, reg}}, std::string(args[4])});
        } else {
            throw SyntaxError(line_no, "unknown directive '" + std::string(keyword) + "'");
        }
    }
    if (!saw_registers) {
        throw SyntaxError(line_no, "missing 'registers' directive");
    }
    if (!saw_initial) {
        throw SyntaxError(line_no, "missing 'initial' directive");
    }
    return a;
}

std::string serialize_automaton(const Automaton& a) {
    std::ostringstream out;
    out << "automaton " << a.name << '\n';
    out << "labels";
    for (const auto& label : a.alphabet) {
        out << ' ' << label;
    }
    out << "\nregisters " << a.registers << '\n';
    out << "states";
    for (const auto& s : a.states) {
        out << ' ' << s;
    }
    out << "\ninitial " << a.initial << '\n';
    out << "final";
    for (const auto& s : a.states) {
        if (a.finals.contains(s)) {
            out << ' ' << s;
        }
    }
    for (const auto& f : a.finals) {
        if (!a.has_state(f)) {
            out << ' ' << f;
        }
    }
    out << '\n';
    for (const auto& t : a.transitions) {
        out << "trans " << t.source << ' ' << t.label.label << ' ' << op_keyword(t.label.op.kind) << ' '
            << t.label.op.reg << ' ' << t.target << '\n';
    }
    return out.str();
}

Automaton load_automaton(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_automaton(buffer.str());
}

void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    }
    out << text;
    if (!out) {
        throw Error(ErrorCode::Io, "failed writing '" + path + "'");
    }
}

std::string dot_export(const Automaton& a) {
    std::map<StateId, std::size_t> order;
    for (const auto& s : a.states) {
        order.emplace(s, order.size());
    }
    std::string start = "__start";
    while (order.contains(start)) {
        start += "_";
    }

    std::ostringstream out;
    out << "digraph " << quoted(a.name) << " {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    out << "  " << quoted(start) << " [shape=point, style=invis];\n";
    for (const auto& s : a.states) {
        out << "  " << quoted(s);
        if (a.finals.contains(s)) {
            out << " [shape=doublecircle]";
        }
        out << ";\n";
    }
    out << "  " << quoted(start) << " -> " << quoted(a.initial) << ";\n";

    // one edge per (source, target), labels stacked in letter order
    std::map<std::pair<std::size_t, std::size_t>, std::vector<TransitionLabel>> edges;
    for (const auto& t : a.transitions) {
        const auto src = order.find(t.source);
        const auto dst = order.find(t.target);
        if (src == order.end() || dst == order.end()) {
            continue;
        }
        edges[{src->second, dst->second}].push_back(t.label);
    }
    for (auto& [ends, letters] : edges) {
        std::sort(letters.begin(), letters.end());
        std::string label;
        for (const auto& letter : letters) {
            if (!label.empty()) {
                label += "\\n";
            }
            label += glyph(letter);
        }
        out << "  " << quoted(a.states[ends.first]) << " -> " << quoted(a.states[ends.second])
            << " [label=\"" << label << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string dot_export(const SymbolicDfa& d, const std::string& name) {
    Automaton a;
    a.name = name;
    for (SymState s = 0; s < d.num_states(); ++s) {
        a.states.push_back("q" + std::to_string(s));
    }
    a.initial = a.states.empty() ? "q0" : a.states[d.initial];
    for (SymState f : d.finals) {
        a.finals.insert(a.states[f]);
    }
    for (SymState s = 0; s < d.num_states(); ++s) {
        for (const auto& [letter, to] : d.delta[s]) {
            a.transitions.insert({a.states[s], letter, a.states[to]});
        }
    }
    return dot_export(a);
}

std::ostream& operator<<(std::ostream& os, const DataWord& w) {
    return os << to_string(w);
}

std::ostream& operator<<(std::ostream& os, const SymbolicWord& u) {
    return os << to_string(u);
}

} // namespace sessa
