#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch() {
    static const auto dir = [] {
        auto d = std::filesystem::temp_directory_path() / ("pcpa_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return dir;
}

Run cli(const std::string& args) {
    const auto out = scratch() / "out.txt";
    const auto err = scratch() / "err.txt";
    const std::string cmd = std::string("\"") + PCPA_CLI + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                            err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string fx(const std::string& name) { return "\"" + oracle::fixture_path(name) + "\""; }

std::string write_scratch(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return "\"" + p.string() + "\"";
}

}  // namespace

TEST_CASE("cli member") {
    auto r = cli("member " + fx("m_anbn.json") + " aabb");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("accepted\nSTEP 0 initial (p0,aabb,Z)\n", 0) == 0);
    CHECK(r.err.empty());
    r = cli("member " + fx("m_anbn.json") + " aab");
    CHECK(r.code == 1);
    CHECK(r.out == "rejected\n");
    r = cli("member " + fx("m_anbn.json") + " aabb --max-steps 1 --max-configs 1");
    CHECK(r.code == 2);
    CHECK(r.out == "unknown\n");
    r = cli("member " + fx("m_anbn.json") + " abx");
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
    CHECK(cli("member " + fx("mh_anbn.json") + " ab").code == 0);
}

TEST_CASE("cli analyze lists both simplicity violations") {
    const auto r = cli("analyze " + fx("nonsimple5.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("simple no\n") != std::string::npos);
    CHECK(r.out.find("violation shared-target") != std::string::npos);
    CHECK(r.out.find("violation querier-queried") != std::string::npos);
}

TEST_CASE("cli compare and transforms") {
    const auto kc = write_scratch("kc.json", cli("transform kc " + fx("sys_abc.json")).out);
    auto r = cli("compare " + fx("sys_abc.json") + " " + kc + " --max-len 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n0 disagreements\n") != std::string::npos);

    const auto mh = write_scratch("mh.json", cli("compile mh " + fx("sys_abc.json")).out);
    r = cli("compare " + fx("sys_abc.json") + " " + mh + " --max-len 5");
    CHECK(r.code == 0);
    CHECK(r.out.find("\n0 disagreements\n") != std::string::npos);

    r = cli("compare " + fx("m_anbn.json") + " " + fx("m_anbm.json") + " --max-len 3");
    CHECK(r.code == 1);
    CHECK(r.out.find("disagree abb rejected accepted\n") != std::string::npos);

    r = cli("compare " + fx("m_anbn.json") + " " + fx("sys_abc.json"));
    CHECK(r.code == 3);
    CHECK(r.err.find("AlphabetMismatch") != std::string::npos);

    r = cli("check-switch " + kc + " aabbcc");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("holds\n", 0) == 0);

    r = cli("transform kc " + fx("nr_anbn.json"));
    CHECK(r.code == 3);
    CHECK(r.out.empty());
}

TEST_CASE("cli decompose") {
    auto r = cli("decompose " + fx("sys_simple4.json"));
    CHECK(r.code == 0);
    CHECK(r.out.front() == '[');
    r = cli("decompose --multihead " + fx("sys_simple4.json"));
    CHECK(r.code == 0);
    CHECK(r.out.find("\"kind\": \"mhpda\"") != std::string::npos);
    r = cli("decompose " + fx("nonsimple5.json"));
    CHECK(r.code == 3);
    CHECK(r.err.find("NotSimple") != std::string::npos);
}

TEST_CASE("cli validate and error codes") {
    CHECK(cli("validate " + fx("sys_abc.json")).out == "valid pcpa degree 2 mode returning centralized yes master 1\n");
    auto r = cli("validate " + write_scratch("bad.json", "{ \"kind\": \"pcpa\", "));
    CHECK(r.code == 3);
    CHECK(r.err.rfind("parse error:", 0) == 0);
    CHECK(r.out.empty());

    auto text = slurp(oracle::fixture_path("m_anbn.json"));
    text.replace(text.find("\"query_map\": []"), 15, "\"query_map\": [[\"K9\", 1]]");
    r = cli("validate " + write_scratch("undeclared.json", text));
    CHECK(r.code == 3);
    CHECK(r.err.rfind("validation error:", 0) == 0);

    CHECK(cli("frobnicate").code == 3);
    CHECK(cli("member").code == 3);
    CHECK(cli("validate /nonexistent/file.json").code == 3);
}

TEST_CASE("cli output is deterministic") {
    for (const std::string args : {"sample " + fx("sys_abc.json") + " --max-len 4",
                                   "member " + fx("sys_abc.json") + " aabbcc",
                                   "compile mh " + fx("sys_abc.json"), "decompose --multihead " + fx("sys_simple4.json")}) {
        const auto a = cli(args), b = cli(args);
        CHECK(a.code == b.code);
        CHECK(a.out == b.out);
    }
    const auto a = cli("sample " + fx("sys_abc.json") + " --max-len 5");
    const auto b = cli("sample " + fx("sys_abc.json") + " --max-len 5 --jobs 3");
    CHECK(a.out == b.out);
}
