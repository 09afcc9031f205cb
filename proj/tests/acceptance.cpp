// One PASS/FAIL line per acceptance criterion. Limits and sizes are fixed here.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "pcpa/io.hpp"
#include "pcpa/transforms.hpp"

using namespace pcpa;

namespace {

struct Result {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
        }
    }
    void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Result()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Result r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!r.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " (" << r.detail << ", "
              << timing << ")" << std::endl;
}

Word letters(const std::string& s) {
    Word w;
    for (char c : s) w.emplace_back(1, c);
    return w;
}

std::string count(const char* label, std::size_t n) { return std::string(label) + "=" + std::to_string(n); }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string run_cli(const std::string& args, int& code) {
    const std::string cmd = std::string("\"") + PCPA_CLI + "\" " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot start the CLI");
    char buf[4096];
    for (std::size_t got; (got = std::fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, got);
    code = pclose(pipe);
    return out;
}

const std::vector<std::string> kFixtures = {"m_anbn.json", "m_anbm.json",     "mh_anbn.json", "nr_anbn.json",
                                            "sys_abc.json", "sys_simple4.json", "nonsimple5.json"};

}  // namespace

int main() {
    criterion(1, "M_ANBN accepts exactly {ab, aabb, aaabbb, aaaabbbb} among words of length <= 8", [] {
        Result r;
        const SearchLimits limits{10000, 100000};
        const auto s = language_sample(oracle::load_fixture("m_anbn.json"), 8, limits);
        const std::vector<Word> expected{letters("ab"), letters("aabb"), letters("aaabbb"), letters("aaaabbbb")};
        r.require(s.accepted == expected, "accepted set");
        r.require(s.unknown.empty(), "zero unknown");
        for (const auto& w : s.words) {
            if (oracle::split_anbn(w) != (std::find(s.accepted.begin(), s.accepted.end(), w) != s.accepted.end())) {
                r.require(false, "independent recognizer on " + format_word(s.alphabet, w));
            }
        }
        r.note(count("words", s.words.size()) + " " + count("accepted", s.accepted.size()) + " " +
               count("unknown", s.unknown.size()));
        return r;
    });

    criterion(2, "communication examples and 1000 random configurations", [] {
        Result r;
        PcpaSystem sys;
        sys.input_alphabet = {"a"};
        sys.stack_alphabet = {"Z1", "Z2", "A", "B", "C", "K1", "K2"};
        sys.query_map = {{5, 0}, {6, 1}};
        for (SymbolId z : {0u, 1u}) {
            PdaComponent c;
            c.states = {"q"};
            c.initial_stack = z;
            sys.components.push_back(c);
        }
        const SystemConfiguration ex{{{0, 0, {6, 2}}, {0, 0, {3, 4}}}};
        sys.mode = Mode::non_returning;
        auto nr = communication_step(sys, ex);
        r.require(nr && nr->parts[0].stack == std::vector<SymbolId>{3, 4, 2} &&
                      nr->parts[1].stack == std::vector<SymbolId>{3, 4},
                  "non-returning append");
        sys.mode = Mode::returning;
        auto ret = communication_step(sys, ex);
        r.require(ret && ret->parts[0].stack == std::vector<SymbolId>{3, 4, 2} &&
                      ret->parts[1].stack == std::vector<SymbolId>{1},
                  "returning reset");
        r.require(!communication_step(sys, {{{0, 0, {6}}, {0, 0, {5, 2}}}}), "circular block");

        std::mt19937 rng(1014);
        std::size_t comms = 0;
        for (int round = 0; round < 1000; ++round) {
            oracle::RandomShape shape;
            shape.degree = 2 + round % 3;
            const auto mode = round % 2 ? Mode::returning : Mode::non_returning;
            const auto rs = oracle::random_system(rng, shape, mode);
            auto c = oracle::random_configuration(rng, rs, 4, 4);
            // force a query top on component 1
            c.parts[0].stack.insert(c.parts[0].stack.begin(), rs.query_map[1 + round % (rs.degree() - 1)].symbol);
            const auto next = communication_step(rs, c);
            if (!next) continue;
            ++comms;
            std::set<std::size_t> sources;
            for (std::size_t i = 0; i < c.parts.size(); ++i) {
                const auto& st = c.parts[i].stack;
                if (st.empty() || !rs.is_query(st.front())) continue;
                const auto j = *rs.query_target(st.front());
                const auto& src = c.parts[j].stack;
                if (!src.empty() && !rs.is_query(src.front())) sources.insert(j);
            }
            for (std::size_t i = 0; i < c.parts.size(); ++i) {
                if (next->parts[i].state != c.parts[i].state || next->parts[i].consumed != c.parts[i].consumed) {
                    r.require(false, "state/input preserved (round " + std::to_string(round) + ")");
                }
            }
            for (auto j : sources) {
                const auto want = mode == Mode::returning
                                      ? std::vector<SymbolId>{rs.components[j].initial_stack}
                                      : c.parts[j].stack;
                if (next->parts[j].stack != want) {
                    r.require(false, "source stack postcondition (round " + std::to_string(round) + ")");
                }
            }
        }
        r.require(comms >= 500, "enough satisfiable communications");
        r.note(count("random_configs", 1000) + " " + count("communicating", comms));
        return r;
    });

    criterion(3, "known-communication transform: 0 disagreements, 0 unknowns at length 8; exact counts", [] {
        Result r;
        const SearchLimits limits{};
        for (const char* name : {"m_anbn.json", "sys_abc.json"}) {
            const auto sys = oracle::load_system(name);
            const auto kc = to_known_communication(sys);
            const auto report = compare_languages(sys, kc, 8, limits);
            r.require(report.disagreements.empty(), std::string(name) + " disagreements");
            r.require(report.unknown_words.empty(), std::string(name) + " unknowns");
            r.require(kc.stack_alphabet.size() == sys.stack_alphabet.size() + sys.degree(), "|Δ'| = |Δ|+n");
            for (std::size_t i = 0; i < sys.degree(); ++i) {
                r.require(kc.components[i].states.size() == 4 * sys.components[i].states.size() + 3,
                          "|Q'_i| = 4|Q_i|+3");
            }
            r.note(std::string(name) + " " + count("disagreements", report.disagreements.size()) + " " +
                   count("unknown", report.unknown_words.size()));
        }
        return r;
    });

    criterion(4, "switch property on every word of length <= 6, planted mutant caught", [] {
        Result r;
        const SearchLimits limits{5000, 50000};
        const auto kc = to_known_communication(oracle::load_system("sys_abc.json"));
        std::size_t words = 0, incomplete = 0;
        for (const auto& w : enumerate_words(kc.input_alphabet, 6)) {
            const auto p = check_switch_property(kc, w, limits);
            ++words;
            if (!p.holds) r.require(false, "holds on " + format_word(kc.input_alphabet, w));
            if (!p.complete) ++incomplete;
        }
        r.require(incomplete == 0, "all traces explored");

        auto bad = kc;
        auto& c = bad.components[0];
        c.transitions.push_back({*c.find_state("m0@init"), std::nullopt, *bad.find_stack("Z1"),
                                 *c.find_state("m0@s2:1"), {*bad.find_stack("Z1'")}});
        const auto caught = check_switch_property(bad, letters("abc"), limits);
        r.require(!caught.holds && caught.counterexample.has_value(), "mutant counterexample");
        r.note(count("words", words) + " " + count("incomplete", incomplete) + " mutant " +
               (caught.holds ? "missed" : "caught at step " + std::to_string(caught.counterexample->size() - 1)));
        return r;
    });

    criterion(5, "multi-head compilation: 0 disagreements, 0 unknowns at length 8", [] {
        Result r;
        const SearchLimits limits{20000, 500000};
        const auto sys = oracle::load_system("sys_abc.json");
        const auto mh = compile_to_multihead(to_known_communication(sys));
        const auto report = compare_languages(sys, mh, 8, limits);
        r.require(report.disagreements.empty(), "disagreements");
        r.require(report.unknown_words.empty(), "unknowns");
        r.note(count("words", report.agree_count + report.disagreements.size() + report.unknown_words.size()) + " " +
               count("disagreements", report.disagreements.size()) + " " +
               count("unknown", report.unknown_words.size()) + " " + count("mh_states", mh.states.size()));
        return r;
    });

    criterion(6, "decomposition: intersection matches at length 8, 2 parts, both simplicity violations", [] {
        Result r;
        const SearchLimits limits{20000, 500000};
        const auto src = oracle::load_system("sys_simple4.json");
        const auto parts = decompose(src);
        r.require(parts.size() == 2, "decompose returns 2 systems");
        const auto machines = decompose_to_multihead(src);
        const std::vector<Machine> m(machines.begin(), machines.end());
        const auto report = intersection_check(src, m, 8, limits);
        r.require(report.disagreements.empty(), "disagreements");
        r.require(report.unknown_words.empty(), "unknowns");

        const auto simple = is_simple(oracle::load_system("nonsimple5.json"));
        std::set<SimplicityViolation::Kind> kinds;
        for (const auto& v : simple.violations) kinds.insert(v.kind);
        r.require(!simple.simple && kinds.size() == 2, "NONSIMPLE5 rejected with both kinds");
        r.note(count("parts", parts.size()) + " " + count("disagreements", report.disagreements.size()) + " " +
               count("unknown", report.unknown_words.size()) + " " + count("nonsimple_violations", simple.violations.size()));
        return r;
    });

    criterion(7, "doubling limits never flips a verdict; CLI output byte-identical", [] {
        Result r;
        std::size_t compared = 0, resolved = 0;
        for (const auto& name : kFixtures) {
            const auto m = oracle::load_fixture(name);
            const std::size_t len = input_alphabet(m).size() > 2 ? 6 : 8;
            for (SearchLimits lo : {SearchLimits{4, 16}, SearchLimits{16, 200}, SearchLimits{}}) {
                const SearchLimits hi{lo.max_steps * 2, lo.max_configs * 2};
                const auto a = language_sample(m, len, lo);
                const auto b = language_sample(m, len, hi);
                for (std::size_t k = 0; k < a.words.size(); ++k) {
                    ++compared;
                    if (a.verdicts[k] == Outcome::unknown) {
                        resolved += b.verdicts[k] != Outcome::unknown;
                        continue;
                    }
                    if (b.verdicts[k] != a.verdicts[k]) {
                        r.require(false, name + " flips on " + format_word(a.alphabet, a.words[k]));
                    }
                }
            }
        }
        const std::string f = std::string("\"") + PCPA_FIXTURES + "/";
        int code = 0;
        const auto kc_path = std::filesystem::temp_directory_path() / "pcpa_acceptance_kc.json";
        std::ofstream(kc_path) << run_cli("transform kc " + f + "sys_abc.json\"", code);
        const std::vector<std::string> commands = {
            "member " + f + "sys_abc.json\" aabbcc",
            "sample " + f + "sys_abc.json\" --max-len 5",
            "transform kc " + f + "sys_abc.json\"",
            "compile mh " + f + "sys_abc.json\"",
            "analyze " + f + "nonsimple5.json\"",
            "decompose --multihead " + f + "sys_simple4.json\"",
            "compare " + f + "m_anbn.json\" " + f + "m_anbm.json\" --max-len 6",
            "check-switch \"" + kc_path.string() + "\" aabbcc",
        };
        for (const auto& cmd : commands) {
            int c1 = 0, c2 = 0;
            const auto o1 = run_cli(cmd, c1);
            const auto o2 = run_cli(cmd, c2);
            if (o1 != o2 || c1 != c2 || o1.empty()) r.require(false, "identical output for: " + cmd);
        }
        r.note(count("verdict_pairs", compared) + " " + count("unknown_resolved", resolved) + " " +
               count("cli_commands", commands.size()));
        return r;
    });

    criterion(8, "parse/serialize round trip on every shipped fixture", [] {
        Result r;
        std::size_t files = 0;
        for (const auto& entry : std::filesystem::directory_iterator(PCPA_FIXTURES)) {
            if (entry.path().extension() != ".json") continue;
            ++files;
            const auto m = parse_machine(slurp(entry.path().string()));
            const auto text = serialize_machine(m);
            const auto back = parse_machine(text);
            r.require(back == m && serialize_machine(back) == text, entry.path().filename().string());
        }
        r.require(files == kFixtures.size(), "fixture count");
        r.note(count("fixtures", files));
        return r;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
    return failures == 0 ? 0 : 1;
}
