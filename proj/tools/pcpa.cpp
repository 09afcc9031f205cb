// Command-line front end for the pcpa toolkit.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "pcpa/io.hpp"
#include "pcpa/transforms.hpp"

namespace {

using namespace pcpa;

enum Exit : int { ok = 0, negative = 1, unknown = 2, usage = 3, internal = 4 };

struct Shared {
    std::size_t max_steps = SearchLimits{}.max_steps;
    std::size_t max_configs = SearchLimits{}.max_configs;
    unsigned jobs = 1;

    SearchLimits limits() const {
        SearchLimits l{max_steps, max_configs};
        require_valid(l);
        return l;
    }
};

Machine load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::parse_error, path + ": cannot open file");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_machine(text.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

PcpaSystem load_system(const std::string& path) {
    auto m = load(path);
    if (auto* sys = std::get_if<PcpaSystem>(&m)) return std::move(*sys);
    throw Error(ErrorCode::invalid_system, path + ": expected a pcpa machine");
}

bool annotated(const PcpaSystem& sys) {
    return std::all_of(sys.components.begin(), sys.components.end(),
                       [](const auto& c) { return c.kc_annotated(); });
}

int outcome_exit(Outcome o) {
    switch (o) {
        case Outcome::accepted: return Exit::ok;
        case Outcome::rejected: return Exit::negative;
        case Outcome::unknown: break;
    }
    return Exit::unknown;
}

void print_stats(const SearchStats& s) {
    std::cout << "explored " << s.explored << " frontier_peak " << s.frontier_peak
              << " step_bound_hit " << (s.step_bound_hit ? 1 : 0) << " config_bound_hit "
              << (s.config_bound_hit ? 1 : 0) << "\n";
}

std::string index_set(const std::vector<std::size_t>& set) {
    std::string out = "{";
    for (std::size_t k = 0; k < set.size(); ++k) out += (k ? "," : "") + std::to_string(set[k] + 1);
    return out + "}";
}

int cmd_validate(const std::string& path) {
    const auto m = load(path);
    if (const auto* sys = std::get_if<PcpaSystem>(&m)) {
        const auto c = classify(*sys);
        std::cout << "valid pcpa degree " << sys->degree() << " mode " << to_string(sys->mode)
                  << " centralized " << (c.centralized ? "yes" : "no") << " master "
                  << (c.master ? std::to_string(*c.master + 1) : std::string("none")) << "\n";
    } else {
        const auto& mh = std::get<MhpdaMachine>(m);
        std::cout << "valid mhpda heads " << mh.heads << " states " << mh.states.size() << "\n";
    }
    return Exit::ok;
}

int cmd_member(const std::string& path, const std::string& word_text, const Shared& sh, bool stats) {
    const auto m = load(path);
    const auto word = parse_word(input_alphabet(m), word_text);
    const auto limits = sh.limits();
    if (const auto* sys = std::get_if<PcpaSystem>(&m)) {
        const auto v = run_bounded(*sys, word, limits);
        std::cout << to_string(v.outcome) << "\n";
        if (v.witness) std::cout << format_trace(*sys, word, *v.witness);
        if (stats) print_stats(v.stats);
        return outcome_exit(v.outcome);
    }
    const auto& mh = std::get<MhpdaMachine>(m);
    const auto v = mh_run_bounded(mh, word, limits);
    std::cout << to_string(v.outcome) << "\n";
    if (v.witness) std::cout << format_trace(mh, word, *v.witness);
    if (stats) print_stats(v.stats);
    return outcome_exit(v.outcome);
}

int cmd_sample(const std::string& path, std::size_t max_len, const Shared& sh) {
    const auto m = load(path);
    const auto s = language_sample(m, max_len, sh.limits(), sh.jobs);
    for (std::size_t w = 0; w < s.words.size(); ++w) {
        std::cout << format_word(s.alphabet, s.words[w]) << " " << to_string(s.verdicts[w]) << "\n";
    }
    std::cout << "accepted " << s.accepted.size() << " rejected " << s.rejected.size() << " unknown "
              << s.unknown.size() << "\n";
    return s.unknown.empty() ? Exit::ok : Exit::unknown;
}

int cmd_transform(const std::string& kind, const std::string& path) {
    const auto sys = load_system(path);
    const auto out = kind == "kc" ? to_known_communication(sys) : normalize_bottom_preserving(sys);
    std::cout << serialize_machine(out);
    return Exit::ok;
}

int cmd_compile(const std::string& path) {
    const auto sys = load_system(path);
    std::cout << serialize_machine(compile_to_multihead(annotated(sys) ? sys : to_known_communication(sys)));
    return Exit::ok;
}

int cmd_analyze(const std::string& path) {
    const auto sys = load_system(path);
    const auto c = classify(sys);
    const auto g = query_graph(sys);
    std::cout << "degree " << sys.degree() << " mode " << to_string(sys.mode) << "\n";
    std::cout << "centralized " << (c.centralized ? "yes" : "no") << " master "
              << (c.master ? std::to_string(*c.master + 1) : std::string("none")) << "\n";
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        std::cout << "component " << i + 1 << " IN " << index_set(g.in_sets[i]) << " OUT "
                  << index_set(g.out_sets[i]) << "\n";
    }
    std::cout << "queriers " << index_set(g.queriers) << " queried " << index_set(g.queried) << "\n";
    if (sys.mode != Mode::returning) {
        std::cout << "simple n/a (non-returning)\n";
        return Exit::ok;
    }
    const auto r = is_simple(sys);
    std::cout << "simple " << (r.simple ? "yes" : "no") << "\n";
    for (const auto& v : r.violations) std::cout << "violation " << v.describe() << "\n";
    return Exit::ok;
}

int cmd_decompose(const std::string& path, bool multihead) {
    const auto sys = load_system(path);
    std::vector<Machine> parts;
    if (multihead) {
        for (auto& m : decompose_to_multihead(sys)) parts.emplace_back(std::move(m));
    } else {
        for (auto& p : decompose(sys)) parts.emplace_back(std::move(p));
    }
    std::cout << serialize_machines(parts);
    return Exit::ok;
}

void print_word_list(const char* tag, const std::vector<std::string>& alphabet, const std::vector<Word>& words) {
    for (const auto& w : words) std::cout << tag << " " << format_word(alphabet, w) << "\n";
}

int cmd_compare(const std::string& left_path, const std::vector<std::string>& right_paths, std::size_t max_len,
                const Shared& sh) {
    const auto left = load(left_path);
    std::vector<Machine> rights;
    for (const auto& p : right_paths) rights.push_back(load(p));
    const auto limits = sh.limits();
    const auto report = rights.size() == 1 ? compare_languages(left, rights.front(), max_len, limits, sh.jobs)
                                           : intersection_check(left, rights, max_len, limits, sh.jobs);
    const auto& alphabet = input_alphabet(left);
    for (const auto& d : report.disagreements) {
        std::cout << "disagree " << format_word(alphabet, d.word) << " " << to_string(d.left) << " "
                  << to_string(d.right) << "\n";
    }
    print_word_list("unknown", alphabet, report.unknown_words);
    std::cout << "agree " << report.agree_count << " unknown " << report.unknown_words.size() << "\n";
    std::cout << report.disagreements.size() << " disagreements\n";
    if (!report.disagreements.empty()) return Exit::negative;
    return report.unknown_words.empty() ? Exit::ok : Exit::unknown;
}

int cmd_check_switch(const std::string& path, const std::string& word_text, const Shared& sh) {
    const auto sys = load_system(path);
    const auto word = parse_word(sys.input_alphabet, word_text);
    const auto r = check_switch_property(sys, word, sh.limits());
    if (!r.holds) {
        std::cout << "violated\n" << r.message << "\n";
        if (r.counterexample) std::cout << format_trace(sys, word, *r.counterexample);
        return Exit::negative;
    }
    std::cout << (r.complete ? "holds" : "holds within limits (incomplete)") << "\n";
    print_stats(r.stats);
    return r.complete ? Exit::ok : Exit::unknown;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel communicating pushdown automata toolkit"};
    app.require_subcommand(1);
    Shared sh;
    auto add_limits = [&sh](CLI::App* sub) {
        sub->add_option("--max-steps", sh.max_steps, "search depth bound")->capture_default_str();
        sub->add_option("--max-configs", sh.max_configs, "distinct configuration bound")->capture_default_str();
    };
    auto add_jobs = [&sh](CLI::App* sub) {
        sub->add_option("--jobs", sh.jobs, "worker threads for per-word sampling")->check(CLI::PositiveNumber);
    };

    std::string file, word, kind, left;
    std::vector<std::string> rights;
    std::size_t max_len = 6;
    bool multihead = false, stats = false;

    auto* validate = app.add_subcommand("validate", "parse and validate a machine file");
    validate->add_option("file", file)->required();

    auto* member = app.add_subcommand("member", "bounded membership test with witness trace");
    member->add_option("file", file)->required();
    member->add_option("word", word, "input word (\"\" or - for the empty word)")->required();
    member->add_flag("--stats", stats, "print search statistics");
    add_limits(member);

    auto* sample = app.add_subcommand("sample", "verdict for every word up to a length");
    sample->add_option("file", file)->required();
    sample->add_option("--max-len", max_len)->required();
    add_limits(sample);
    add_jobs(sample);

    auto* transform = app.add_subcommand("transform", "rewrite a pcpa system");
    transform->add_option("kind", kind)->required()->check(CLI::IsMember({"kc", "normalize"}));
    transform->add_option("file", file)->required();

    auto* compile = app.add_subcommand("compile", "compile a centralized returning system");
    compile->add_option("target", kind)->required()->check(CLI::IsMember({"mh"}));
    compile->add_option("file", file)->required();

    auto* analyze = app.add_subcommand("analyze", "query graph, centralization and simplicity");
    analyze->add_option("file", file)->required();

    auto* decomp = app.add_subcommand("decompose", "split a simple returning system per querier");
    decomp->add_option("file", file)->required();
    decomp->add_flag("--multihead", multihead, "emit compiled multi-head machines");

    auto* compare = app.add_subcommand("compare", "compare languages up to a length");
    compare->add_option("left", left)->required();
    compare->add_option("right", rights, "one machine, or several to compare against their intersection")
        ->required();
    compare->add_option("--max-len", max_len)->capture_default_str();
    add_limits(compare);
    add_jobs(compare);

    auto* check = app.add_subcommand("check-switch", "check the switch property over all traces");
    check->add_option("file", file)->required();
    check->add_option("word", word)->required();
    add_limits(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Exit::usage;
    }

    try {
        if (*validate) return cmd_validate(file);
        if (*member) return cmd_member(file, word, sh, stats);
        if (*sample) return cmd_sample(file, max_len, sh);
        if (*transform) return cmd_transform(kind, file);
        if (*compile) return cmd_compile(file);
        if (*analyze) return cmd_analyze(file);
        if (*decomp) return cmd_decompose(file, multihead);
        if (*compare) return cmd_compare(left, rights, max_len, sh);
        if (*check) return cmd_check_switch(file, word, sh);
    } catch (const Error& e) {
        switch (e.code()) {
            case ErrorCode::parse_error: std::cerr << "parse error: " << e.what() << "\n"; break;
            case ErrorCode::validation_error: std::cerr << "validation error: " << e.what() << "\n"; break;
            default: std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n"; break;
        }
        return Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Exit::internal;
    }
    return Exit::internal;
}
