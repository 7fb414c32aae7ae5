#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "sessa.h"

namespace {

enum Exit { Holds = 0, Fails = 1, Usage = 2 };

struct Failure {
    std::string message;
};

void check(sessa_status status) {
    if (status != SESSA_OK) {
        throw Failure{sessa_last_error()};
    }
}

struct AutomatonDeleter {
    void operator()(sessa_automaton* a) const { sessa_automaton_free(a); }
};
using Handle = std::unique_ptr<sessa_automaton, AutomatonDeleter>;

struct StringDeleter {
    void operator()(char* s) const { sessa_string_free(s); }
};
using Text = std::unique_ptr<char, StringDeleter>;

Handle load(const std::string& path) {
    sessa_automaton* a = nullptr;
    check(sessa_automaton_load(path.c_str(), &a));
    return Handle(a);
}

Text take(char* s) { return Text(s); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Failure{"Io: cannot read " + path};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw Failure{"Io: cannot write " + path};
    }
}

// 0 when the property holds, else prints the witness and returns 1
int verdict(int holds, char* witness) {
    const Text w = take(witness);
    if (holds) {
        return Holds;
    }
    std::cout << (w ? w.get() : "-") << '\n';
    return Fails;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Session automata toolkit: normal forms, canonical forms, decisions and learning."};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Expand all help");

    std::function<int()> action;
    std::string file, other, word, out, dot_out, trace, script, op_name;
    unsigned k = 0;
    std::size_t max_queries = 0;

    auto* validate = app.add_subcommand("validate", "Check an automaton file for problems");
    validate->add_option("F", file, "Automaton file")->required();
    validate->callback([&] {
        action = [&] {
            const Handle a = load(file);
            int valid = 0;
            char* diagnostics = nullptr;
            check(sessa_automaton_validate(a.get(), &valid, &diagnostics));
            const Text d = take(diagnostics);
            std::cout << d.get();
            if (valid) {
                std::cout << "valid\n";
            }
            return valid ? Holds : Fails;
        };
    });

    auto* classify = app.add_subcommand("classify", "Print the automaton class and determinism");
    classify->add_option("F", file, "Automaton file")->required();
    classify->callback([&] {
        action = [&] {
            const Handle a = load(file);
            sessa_class c{};
            int sym = 0, data = 0;
            check(sessa_automaton_classify(a.get(), &c));
            check(sessa_automaton_is_symbolically_deterministic(a.get(), &sym));
            std::cout << sessa_class_name(c) << '\n'
                      << "symbolically deterministic: " << (sym ? "yes" : "no") << '\n';
            if (c == SESSA_CLASS_SESSION) {
                check(sessa_automaton_is_data_deterministic(a.get(), &data));
                std::cout << "data deterministic: " << (data ? "yes" : "no") << '\n';
            }
            return Holds;
        };
    });

    auto* snf = app.add_subcommand("snf", "Symbolic normal form of a data word");
    snf->add_option("-w,--word", word, "Data word, e.g. \"a:8 b:4\"")->required();
    snf->callback([&] {
        action = [&] {
            char* s = nullptr;
            check(sessa_snf(word.c_str(), &s));
            std::cout << take(s).get() << '\n';
            return Holds;
        };
    });

    auto* bound = app.add_subcommand("bound", "Maximal number of simultaneously open values");
    bound->add_option("-w,--word", word, "Data word")->required();
    bound->callback([&] {
        action = [&] {
            std::size_t b = 0;
            check(sessa_bound(word.c_str(), &b));
            std::cout << b << '\n';
            return Holds;
        };
    });

    auto* member = app.add_subcommand("member", "Data word membership");
    member->add_option("F", file, "Automaton file")->required();
    member->add_option("-w,--word", word, "Data word")->required();
    member->callback([&] {
        action = [&] {
            const Handle a = load(file);
            int accepted = 0;
            check(sessa_member(a.get(), word.c_str(), &accepted));
            std::cout << (accepted ? "accepted" : "rejected") << '\n';
            return accepted ? Holds : Fails;
        };
    });

    auto* symbolic_member = app.add_subcommand("symbolic-member", "Symbolic word membership");
    symbolic_member->add_option("F", file, "Automaton file")->required();
    symbolic_member->add_option("-u,--word", word, "Symbolic word, e.g. \"a:*1 b:^1\"")->required();
    symbolic_member->callback([&] {
        action = [&] {
            const Handle a = load(file);
            int accepted = 0;
            check(sessa_symbolic_member(a.get(), word.c_str(), &accepted));
            std::cout << (accepted ? "accepted" : "rejected") << '\n';
            return accepted ? Holds : Fails;
        };
    });

    auto* canonical = app.add_subcommand("canonical", "Canonical session automaton");
    canonical->add_option("F", file, "Automaton file")->required();
    canonical->add_option("-o,--output", out, "Write the automaton here instead of standard output");
    canonical->add_option("--dot", dot_out, "Also write DOT here");
    canonical->callback([&] {
        action = [&] {
            const Handle a = load(file);
            sessa_automaton* raw = nullptr;
            check(sessa_canonicalize(a.get(), &raw));
            const Handle c(raw);
            if (out.empty()) {
                char* s = nullptr;
                check(sessa_automaton_serialize(c.get(), &s));
                std::cout << take(s).get();
            } else {
                check(sessa_automaton_save(c.get(), out.c_str()));
            }
            if (!dot_out.empty()) {
                char* s = nullptr;
                check(sessa_automaton_dot(c.get(), &s));
                write_file(dot_out, take(s).get());
            }
            return Holds;
        };
    });

    auto* op = app.add_subcommand("op", "Boolean operations");
    op->add_option("OP", op_name, "union, intersect or complement")
        ->required()
        ->check(CLI::IsMember({"union", "intersect", "complement"}));
    op->add_option("A", file, "First automaton")->required();
    op->add_option("B", other, "Second automaton (union, intersect)");
    op->add_option("-o,--output", out, "Result file")->required();
    op->callback([&] {
        const bool binary = op_name != "complement";
        if (binary == other.empty()) {
            throw CLI::ValidationError("op", binary ? op_name + " needs two automata" : "complement takes one automaton");
        }
        action = [&] {
            const Handle a = load(file);
            sessa_automaton* raw = nullptr;
            if (op_name == "complement") {
                check(sessa_complement_bounded(a.get(), &raw));
            } else {
                const Handle b = load(other);
                check(op_name == "union" ? sessa_union(a.get(), b.get(), &raw)
                                         : sessa_intersect(a.get(), b.get(), &raw));
            }
            const Handle r(raw);
            check(sessa_automaton_save(r.get(), out.c_str()));
            return Holds;
        };
    });

    auto* include = app.add_subcommand("include", "Check L(A) is contained in L(B)");
    include->add_option("A", file, "Automaton file")->required();
    include->add_option("B", other, "Automaton file")->required();
    include->callback([&] {
        action = [&] {
            const Handle a = load(file), b = load(other);
            int holds = 0;
            char* w = nullptr;
            check(sessa_includes(a.get(), b.get(), &holds, &w));
            return verdict(holds, w);
        };
    });

    auto* equiv = app.add_subcommand("equiv", "Check L(A) = L(B)");
    equiv->add_option("A", file, "Automaton file")->required();
    equiv->add_option("B", other, "Automaton file")->required();
    equiv->callback([&] {
        action = [&] {
            const Handle a = load(file), b = load(other);
            int holds = 0;
            char* w = nullptr;
            check(sessa_equivalent(a.get(), b.get(), &holds, &w));
            return verdict(holds, w);
        };
    });

    auto* empty = app.add_subcommand("empty", "Check the language is empty");
    empty->add_option("F", file, "Automaton file")->required();
    empty->callback([&] {
        action = [&] {
            const Handle a = load(file);
            int holds = 0;
            char* w = nullptr;
            check(sessa_is_empty(a.get(), &holds, &w));
            return verdict(holds, w);
        };
    });

    auto* universal = app.add_subcommand("universal", "Check every k-bounded word is accepted");
    universal->add_option("F", file, "Automaton file")->required();
    universal->add_option("-k", k, "Bound")->required();
    universal->callback([&] {
        action = [&] {
            const Handle a = load(file);
            int holds = 0;
            char* w = nullptr;
            check(sessa_is_universal(a.get(), k, &holds, &w));
            return verdict(holds, w);
        };
    });

    auto* learn = app.add_subcommand("learn", "Learn the canonical automaton of a target");
    learn->add_option("F", file, "Target automaton file")->required();
    learn->add_option("--trace", trace, "Write JSON-lines learner events here");
    learn->add_option("--max-queries", max_queries, "Cap on teacher queries (0 = none)");
    learn->add_option("--script", script, "Counterexamples, one data word per line");
    learn->add_option("-o,--output", out, "Write the hypothesis here instead of standard output");
    learn->callback([&] {
        action = [&] {
            const Handle target = load(file);
            std::string script_text;
            sessa_learn_options options{max_queries, nullptr, 1};
            if (!script.empty()) {
                script_text = read_file(script);
                options.script = script_text.c_str();
            }
            sessa_automaton* raw = nullptr;
            char* events = nullptr;
            sessa_learn_stats stats{};
            check(sessa_learn(target.get(), &options, &raw, trace.empty() ? nullptr : &events, &stats));
            const Handle h(raw);
            const Text ev = take(events);
            if (!trace.empty()) {
                write_file(trace, ev.get());
            }
            std::cout << "# membership queries: " << stats.membership_queries << '\n'
                      << "# equivalence queries: " << stats.equivalence_queries << '\n'
                      << "# nf violations: " << stats.nf_violations << '\n'
                      << "# longest counterexample: " << stats.longest_counterexample << '\n'
                      << "# table: " << stats.upper_rows << " rows, " << stats.columns << " columns, k = "
                      << stats.registers << '\n';
            if (out.empty()) {
                char* s = nullptr;
                check(sessa_automaton_serialize(h.get(), &s));
                std::cout << take(s).get();
            } else {
                check(sessa_automaton_save(h.get(), out.c_str()));
            }
            return Holds;
        };
    });

    auto* dot = app.add_subcommand("dot", "Export an automaton to DOT");
    dot->add_option("F", file, "Automaton file")->required();
    dot->add_option("-o,--output", out, "DOT file")->required();
    dot->callback([&] {
        action = [&] {
            const Handle a = load(file);
            char* s = nullptr;
            check(sessa_automaton_dot(a.get(), &s));
            write_file(out, take(s).get());
            return Holds;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }

    try {
        const int code = action();
        std::cout.flush();
        return code;
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << '\n';
        return Usage;
    }
}
