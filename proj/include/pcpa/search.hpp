#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcpa/error.hpp"

namespace pcpa {

struct SearchLimits {
    std::size_t max_steps = 10000;    // depth bound on step applications
    std::size_t max_configs = 100000; // distinct configurations explored
};

void require_valid(const SearchLimits& limits);

enum class Outcome { accepted, rejected, unknown };
enum class StepKind { initial, usual, communication };

std::string_view to_string(Outcome outcome) noexcept;
std::string_view to_string(StepKind kind) noexcept;

template <class Config>
struct TraceStep {
    StepKind kind = StepKind::initial;
    Config config;
};

template <class Config>
using Trace = std::vector<TraceStep<Config>>;

struct SearchStats {
    std::size_t explored = 0;
    std::size_t frontier_peak = 0;
    bool step_bound_hit = false;
    bool config_bound_hit = false;

    bool any_limit_hit() const noexcept { return step_bound_hit || config_bound_hit; }
};

template <class Config>
struct Verdict {
    Outcome outcome = Outcome::unknown;
    std::optional<Trace<Config>> witness;
    SearchStats stats;
};

namespace detail {

template <class Config, class Hash>
Trace<Config> rebuild_trace(const std::vector<const Config*>& configs,
                            const std::vector<std::size_t>& parents,
                            const std::vector<StepKind>& kinds, std::size_t last) {
    Trace<Config> trace;
    for (std::size_t at = last;; at = parents[at]) {
        trace.push_back({kinds[at], *configs[at]});
        if (at == 0) break;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
}

}  // namespace detail

/// Breadth-first search over a configuration graph with a visited set.
///
/// `expand(config, out)` appends `(StepKind, Config)` successors in canonical
/// order; `accept(config)` tests acceptance. A configuration is tested when it
/// is first discovered, so the witness is a shortest path. Configurations at
/// depth `max_steps` are not expanded; if any of them would reach a new
/// configuration the step bound counts as hit.
template <class Config, class Hash, class Expand, class Accept>
Verdict<Config> breadth_first(Config initial, Expand&& expand, Accept&& accept,
                              const SearchLimits& limits) {
    require_valid(limits);
    Verdict<Config> verdict;

    std::unordered_map<Config, std::size_t, Hash> index;
    std::vector<const Config*> configs;
    std::vector<std::size_t> parents;
    std::vector<StepKind> kinds;
    std::vector<std::size_t> depths;

    auto [first, inserted] = index.emplace(std::move(initial), 0);
    configs.push_back(&first->first);
    parents.push_back(0);
    kinds.push_back(StepKind::initial);
    depths.push_back(0);

    auto finish = [&](Outcome outcome) {
        verdict.outcome = outcome;
        verdict.stats.explored = configs.size();
        return verdict;
    };

    if (accept(*configs[0])) {
        verdict.witness = detail::rebuild_trace<Config, Hash>(configs, parents, kinds, 0);
        return finish(Outcome::accepted);
    }

    std::vector<std::pair<StepKind, Config>> successors;
    for (std::size_t head = 0; head < configs.size(); ++head) {
        verdict.stats.frontier_peak =
            std::max(verdict.stats.frontier_peak, configs.size() - head);
        successors.clear();
        expand(*configs[head], successors);

        if (depths[head] >= limits.max_steps) {
            for (const auto& [kind, next] : successors) {
                if (!index.contains(next)) {
                    verdict.stats.step_bound_hit = true;
                    break;
                }
            }
            continue;
        }

        for (auto& [kind, next] : successors) {
            if (index.contains(next)) continue;
            if (configs.size() >= limits.max_configs) {
                verdict.stats.config_bound_hit = true;
                return finish(Outcome::unknown);
            }
            const std::size_t id = configs.size();
            auto [it, fresh] = index.emplace(std::move(next), id);
            configs.push_back(&it->first);
            parents.push_back(head);
            kinds.push_back(kind);
            depths.push_back(depths[head] + 1);
            if (accept(it->first)) {
                verdict.witness =
                    detail::rebuild_trace<Config, Hash>(configs, parents, kinds, id);
                return finish(Outcome::accepted);
            }
        }
    }
    return finish(verdict.stats.any_limit_hit() ? Outcome::unknown : Outcome::rejected);
}

}  // namespace pcpa
