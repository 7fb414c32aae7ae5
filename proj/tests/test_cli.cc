#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "sessa.h"

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string fx(const char* name) { return std::string(SESSA_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Run cli(const std::string& args) {
    const std::string err_path = "cli_stderr.txt";
    const std::string cmd = std::string("'") + SESSA_CLI + "' " + args + " 2>" + err_path;
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

// witness lines must parse back as data words
bool reparses(const std::string& line) {
    char* s = nullptr;
    const bool ok = sessa_snf(line.c_str(), &s) == SESSA_OK;
    sessa_string_free(s);
    return ok;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("cli snf and bound") {
    auto r = cli("snf -w \"a:8 b:4 a:8 c:3 a:4 b:3 a:9\"");
    CHECK(r.code == 0);
    CHECK(r.out == "a:*1 b:*2 a:^1 c:*1 a:^2 b:^1 a:*1\n");

    r = cli("bound -w \"a:8 b:4 a:8 c:3 a:4 b:3 a:9\"");
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    r = cli("snf -w \"a:8 b:\"");
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error: SyntaxError", 0) == 0);
}

TEST_CASE("cli membership") {
    auto r = cli("member " + fx("session_req_ack.sra") + " -w \"req:8 req:4 ack:8 req:3 ack:4 ack:3\"");
    CHECK(r.code == 0);
    r = cli("member " + fx("session_req_ack.sra") + " -w \"ack:1\"");
    CHECK(r.code == 1);
    r = cli("member " + fx("session_req_ack.sra") + " -w \"zap:1\"");
    CHECK(r.code == 2);
    CHECK(r.err.find("UnknownLabel") != std::string::npos);
    r = cli("symbolic-member " + fx("session_req_ack.sra") + " -u \"req:*1 ack:^1\"");
    CHECK(r.code == 0);
    r = cli("symbolic-member " + fx("session_req_ack.sra") + " -u \"ack:^1\"");
    CHECK(r.code == 1);
}

TEST_CASE("cli validate and classify") {
    auto r = cli("validate " + fx("session_req_ack.sra"));
    CHECK(r.code == 0);
    r = cli("classify " + fx("register_req_ack.sra"));
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "register");
    r = cli("classify " + fx("fresh_register_req_ack.sra"));
    CHECK(first_line(r.out) == "fresh-register");

    std::ofstream("cli_bad.sra") << "automaton bad\nlabels a\nregisters 1\nstates s\ninitial s\ntrans s a reuse 3 s\n";
    r = cli("validate cli_bad.sra");
    CHECK(r.code == 1);
    CHECK_FALSE(r.out.empty());
    std::ofstream("cli_bad.sra") << "automaton bad\nwhat is this\n";
    r = cli("validate cli_bad.sra");
    CHECK(r.code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
    std::remove("cli_bad.sra");

    r = cli("validate /no/such/file.sra");
    CHECK(r.code == 2);
    CHECK(r.err.find("\n") == r.err.size() - 1);
}

TEST_CASE("cli decisions") {
    const std::string a2 = fx("session_req_ack.sra");
    auto r = cli("equiv " + a2 + " " + a2);
    CHECK(r.code == 0);
    CHECK(r.out.empty());

    r = cli("equiv " + a2 + " " + fx("session_req_ack_pruned.sra"));
    CHECK(r.code == 0);

    r = cli("equiv " + fx("two_session_loops.sra") + " " + fx("epsilon_only.sra"));
    CHECK(r.code == 1);
    CHECK(r.out == "a:1\n");
    CHECK(reparses(first_line(r.out)));

    r = cli("include " + fx("epsilon_only.sra") + " " + fx("two_session_loops.sra"));
    CHECK(r.code == 0);
    r = cli("include " + fx("two_session_loops.sra") + " " + fx("epsilon_only.sra"));
    CHECK(r.code == 1);
    CHECK(reparses(first_line(r.out)));

    r = cli("empty " + a2);
    CHECK(r.code == 1);
    CHECK(r.out == "-\n");

    r = cli("universal " + fx("bounded2_universal.sra") + " -k 2");
    CHECK(r.code == 0);
    r = cli("universal " + fx("bounded2_universal.sra") + " -k 3");
    CHECK(r.code == 1);
    CHECK(r.out == "a:1 a:2 a:3 a:1 a:2\n");
    r = cli("universal " + fx("bounded2_universal.sra"));
    CHECK(r.code == 2);

    r = cli("equiv " + a2 + " " + fx("register_req_ack.sra"));
    CHECK(r.code == 2);
    CHECK(r.err.find("NotSessionAutomaton") != std::string::npos);
}

TEST_CASE("cli canonical, op and dot") {
    auto r = cli("canonical " + fx("two_session_loops.sra") + " -o cli_can.sra --dot cli_can.dot");
    CHECK(r.code == 0);
    r = cli("equiv cli_can.sra " + fx("two_session_canonical.sra"));
    CHECK(r.code == 0);
    const std::string dot = slurp("cli_can.dot");
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("⊛") != std::string::npos);

    r = cli("canonical " + fx("two_session_loops.sra"));
    CHECK(r.code == 0);
    CHECK(r.out == slurp("cli_can.sra"));

    r = cli("op union " + fx("two_session_loops.sra") + " " + fx("epsilon_only.sra") + " -o cli_u.sra");
    CHECK(r.code == 0);
    CHECK(cli("equiv cli_u.sra " + fx("two_session_loops.sra")).code == 0);

    r = cli("op intersect " + fx("two_session_loops.sra") + " " + fx("epsilon_only.sra") + " -o cli_i.sra");
    CHECK(r.code == 0);
    CHECK(cli("member cli_i.sra -w -").code == 0);
    CHECK(cli("member cli_i.sra -w a:1").code == 1);

    r = cli("op complement " + fx("two_session_loops.sra") + " -o cli_c.sra");
    CHECK(r.code == 0);
    CHECK(cli("member cli_c.sra -w a:1").code == 1);
    CHECK(cli("member cli_c.sra -w b:1").code == 0);

    CHECK(cli("op complement " + fx("two_session_loops.sra") + " " + fx("epsilon_only.sra") + " -o x.sra").code == 2);
    CHECK(cli("op union " + fx("two_session_loops.sra") + " -o x.sra").code == 2);
    CHECK(cli("op xor " + fx("two_session_loops.sra") + " -o x.sra").code == 2);

    r = cli("dot " + fx("epsilon_only.sra") + " -o cli_e.dot");
    CHECK(r.code == 0);
    const std::string e1 = slurp("cli_e.dot");
    cli("dot " + fx("epsilon_only.sra") + " -o cli_e.dot");
    CHECK(slurp("cli_e.dot") == e1);
    CHECK(e1.find("doublecircle") != std::string::npos);

    for (const char* f : {"cli_can.sra", "cli_can.dot", "cli_u.sra", "cli_i.sra", "cli_c.sra", "cli_e.dot"}) {
        std::remove(f);
    }
}

TEST_CASE("cli learn") {
    auto r = cli("learn " + fx("two_session_loops.sra") + " --script " + fx("two_session_script.txt") +
                 " --trace cli_trace.jsonl -o cli_h.sra");
    CHECK(r.code == 0);
    CHECK(r.out.find("# equivalence queries: 4") != std::string::npos);
    CHECK(cli("equiv cli_h.sra " + fx("two_session_canonical.sra")).code == 0);
    const std::string trace = slurp("cli_trace.jsonl");
    CHECK(trace.find("\"event\":\"TableClosed\"") != std::string::npos);
    CHECK(trace.find("\"event\":\"EquivalenceQuery\"") != std::string::npos);

    r = cli("learn " + fx("session_req_ack.sra"));
    CHECK(r.code == 0);
    CHECK(r.out.find("automaton hypothesis") != std::string::npos);

    r = cli("learn " + fx("session_req_ack.sra") + " --max-queries 2");
    CHECK(r.code == 2);
    CHECK(r.err.find("QueryBudgetExceeded") != std::string::npos);

    std::remove("cli_trace.jsonl");
    std::remove("cli_h.sra");
}

TEST_CASE("cli usage errors") {
    CHECK(cli("").code == 2);
    CHECK(cli("frobnicate").code == 2);
    CHECK(cli("snf").code == 2);
    CHECK(cli("member " + fx("session_req_ack.sra")).code == 2);
    CHECK(cli("--help").code == 0);
}
