#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pcpa/multihead.hpp"
#include "pcpa/system.hpp"

namespace pcpa {

/// Static who-queries-whom relation. All indices are 0-based and every set is
/// sorted ascending.
struct QueryGraph {
    std::vector<std::vector<std::size_t>> in_sets;   // in_sets[i]: components that i queries
    std::vector<std::vector<std::size_t>> out_sets;  // out_sets[j]: components that query j
    std::vector<std::size_t> queriers;
    std::vector<std::size_t> queried;
};

QueryGraph query_graph(const PcpaSystem& sys);

struct SimplicityViolation {
    enum class Kind { shared_target, querier_queried };

    Kind kind = Kind::shared_target;
    // shared_target:   first and second both query `target`
    // querier_queried: first queries `target` and is itself queried by second
    std::size_t first = 0;
    std::size_t second = 0;
    std::size_t target = 0;

    std::string describe() const;
};

struct SimplicityReport {
    bool simple = true;
    std::vector<SimplicityViolation> violations;
};

SimplicityReport is_simple(const PcpaSystem& sys);

/// Rewrites every (q, a, Z_i) -> (p, ε) of component i into (q, a, Z_i) -> (p, Z_i).
PcpaSystem normalize_bottom_preserving(const PcpaSystem& sys);

/// Known-communication transform of a returning system. Each component gets
/// 4|Q_i|+3 annotated states and the stack alphabet gains one duplicate bottom
/// symbol Z'_i per component.
PcpaSystem to_known_communication(const PcpaSystem& sys);

/// Name of the duplicate bottom symbol the transform would introduce for
/// component `i` of `sys`.
std::string duplicate_bottom_name(const PcpaSystem& sys, std::size_t i);

/// Single-stack n-head simulation of a centralized returning system that
/// already carries known-communication annotations.
MhpdaMachine compile_to_multihead(const PcpaSystem& sys_kc);

/// Splits a simple returning system into one centralized system per querier.
std::vector<PcpaSystem> decompose(const PcpaSystem& sys);

std::vector<MhpdaMachine> decompose_to_multihead(const PcpaSystem& sys);

}  // namespace pcpa
