#include "pcpa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <iterator>
#include <mutex>
#include <set>
#include <thread>

namespace pcpa {

const std::vector<std::string>& input_alphabet(const Machine& machine) noexcept {
    return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.input_alphabet; },
                      machine);
}

Outcome decide(const Machine& machine, const Word& word, const SearchLimits& limits) {
    if (const auto* sys = std::get_if<PcpaSystem>(&machine)) {
        return run_bounded(*sys, word, limits).outcome;
    }
    return mh_run_bounded(std::get<MhpdaMachine>(machine), word, limits).outcome;
}

std::vector<Word> enumerate_words(const std::vector<std::string>& alphabet, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t level_begin = 0;
    for (std::size_t len = 1; len <= max_len && !alphabet.empty(); ++len) {
        const auto level_end = out.size();
        for (std::size_t w = level_begin; w < level_end; ++w) {
            for (const auto& a : alphabet) {
                Word next = out[w];
                next.push_back(a);
                out.push_back(std::move(next));
            }
        }
        level_begin = level_end;
    }
    return out;
}

namespace {

std::vector<Outcome> decide_all(const Machine& machine, const std::vector<Word>& words,
                                const SearchLimits& limits, unsigned jobs) {
    std::vector<Outcome> verdicts(words.size(), Outcome::unknown);
    if (jobs <= 1 || words.size() < 2) {
        for (std::size_t w = 0; w < words.size(); ++w) verdicts[w] = decide(machine, words[w], limits);
        return verdicts;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t w; (w = next++) < words.size();) {
                try {
                    verdicts[w] = decide(machine, words[w], limits);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
    return verdicts;
}

void require_same_alphabet(const Machine& left, const Machine& right) {
    const auto& a = input_alphabet(left);
    const auto& b = input_alphabet(right);
    if (std::set(a.begin(), a.end()) != std::set(b.begin(), b.end())) {
        throw Error(ErrorCode::alphabet_mismatch, "machines have different input alphabets");
    }
}

void tally(ComparisonReport& report, const Word& word, Outcome left, Outcome right) {
    if (left == Outcome::unknown || right == Outcome::unknown) {
        report.unknown_words.push_back(word);
    } else if (left == right) {
        ++report.agree_count;
    } else {
        report.disagreements.push_back({word, left, right});
    }
}

void require_valid_machine(const Machine& machine) {
    std::visit([](const auto& m) { require_valid(m); }, machine);
}

}  // namespace

LanguageSample language_sample(const Machine& machine, std::size_t max_len,
                               const SearchLimits& limits, unsigned jobs) {
    require_valid_machine(machine);
    LanguageSample s;
    s.alphabet = input_alphabet(machine);
    s.max_len = max_len;
    s.limits = limits;
    s.words = enumerate_words(s.alphabet, max_len);
    s.verdicts = decide_all(machine, s.words, limits, jobs);
    for (std::size_t w = 0; w < s.words.size(); ++w) {
        switch (s.verdicts[w]) {
            case Outcome::accepted: s.accepted.push_back(s.words[w]); break;
            case Outcome::rejected: s.rejected.push_back(s.words[w]); break;
            case Outcome::unknown: s.unknown.push_back(s.words[w]); break;
        }
    }
    return s;
}

ComparisonReport compare_languages(const Machine& left, const Machine& right, std::size_t max_len,
                                   const SearchLimits& limits, unsigned jobs) {
    require_same_alphabet(left, right);
    const auto l = language_sample(left, max_len, limits, jobs);
    require_valid_machine(right);
    const auto r = decide_all(right, l.words, limits, jobs);
    ComparisonReport report;
    for (std::size_t w = 0; w < l.words.size(); ++w) tally(report, l.words[w], l.verdicts[w], r[w]);
    return report;
}

ComparisonReport intersection_check(const Machine& source, const std::vector<Machine>& parts,
                                    std::size_t max_len, const SearchLimits& limits,
                                    unsigned jobs) {
    if (parts.empty()) throw Error(ErrorCode::precondition_violated, "intersection of no machines");
    for (const auto& p : parts) require_same_alphabet(source, p);
    const auto l = language_sample(source, max_len, limits, jobs);
    std::vector<Outcome> right(l.words.size(), Outcome::accepted);
    for (const auto& part : parts) {
        require_valid_machine(part);
        const auto v = decide_all(part, l.words, limits, jobs);
        for (std::size_t w = 0; w < v.size(); ++w) {
            if (right[w] == Outcome::rejected || v[w] == Outcome::accepted) continue;
            right[w] = v[w];  // rejected dominates, unknown otherwise
        }
    }
    ComparisonReport report;
    for (std::size_t w = 0; w < l.words.size(); ++w) tally(report, l.words[w], l.verdicts[w], right[w]);
    return report;
}

namespace {

struct SwitchNode {
    SystemConfiguration config;
    std::vector<std::size_t> sources;  // sources of the step that led here
    bool violated = false;

    bool operator==(const SwitchNode&) const = default;
};

struct SwitchNodeHash {
    std::size_t operator()(const SwitchNode& n) const noexcept {
        std::size_t h = SystemConfigurationHash{}(n.config);
        for (auto s : n.sources) h = h * 31 + s + 1;
        return h * 2 + (n.violated ? 1 : 0);
    }
};

}  // namespace

PropertyReport check_switch_property(const PcpaSystem& sys, const Word& word,
                                     const SearchLimits& limits) {
    require_valid(sys);
    for (const auto& comp : sys.components) {
        if (!comp.kc_annotated()) {
            throw Error(ErrorCode::not_known_comm_shaped, "states carry no switch annotations");
        }
    }
    const auto ids = encode_word(sys.input_alphabet, word);
    const Stepper stepper(sys);
    const auto n = sys.degree();

    std::vector<std::pair<StepKind, SystemConfiguration>> raw;
    auto expand = [&](const SwitchNode& node, auto& out) {
        raw.clear();
        stepper.successors(node.config, ids, raw);
        for (auto& [kind, next] : raw) {
            SwitchNode child{std::move(next), {}, false};
            if (kind == StepKind::communication) {
                // chained communications: sources accumulate until the next usual step
                auto comm = stepper.communicate(node.config);
                std::set_union(node.sources.begin(), node.sources.end(), comm->sources.begin(),
                               comm->sources.end(), std::back_inserter(child.sources));
            } else {
                for (std::size_t i = 0; i < n; ++i) {
                    const bool entered = sys.components[i].kc[child.config.parts[i].state].switch_on;
                    const bool was_source = std::find(node.sources.begin(), node.sources.end(), i) !=
                                            node.sources.end();
                    if (entered != was_source) child.violated = true;
                }
            }
            out.emplace_back(kind, std::move(child));
        }
    };

    auto verdict = breadth_first<SwitchNode, SwitchNodeHash>(
        SwitchNode{initial_configuration(sys, word), {}, false}, expand,
        [](const SwitchNode& node) { return node.violated; }, limits);

    PropertyReport report;
    report.stats = verdict.stats;
    report.complete = verdict.outcome != Outcome::unknown;
    if (verdict.outcome == Outcome::accepted) {
        report.holds = false;
        report.complete = true;
        Trace<SystemConfiguration> trace;
        for (auto& step : *verdict.witness) trace.push_back({step.kind, std::move(step.config.config)});
        report.counterexample = std::move(trace);
        const auto& last = report.counterexample->back().config;
        const auto& prev = (*verdict.witness)[verdict.witness->size() - 2].config;
        for (std::size_t i = 0; i < n; ++i) {
            const bool entered = sys.components[i].kc[last.parts[i].state].switch_on;
            const bool was_source =
                std::find(prev.sources.begin(), prev.sources.end(), i) != prev.sources.end();
            if (entered != was_source) {
                report.message = "component " + std::to_string(i + 1) +
                                 (entered ? " switched on without having communicated"
                                          : " communicated but did not switch on");
                break;
            }
        }
    } else {
        report.message = report.complete ? "holds on every trace" : "no violation within limits";
    }
    return report;
}

}  // namespace pcpa
