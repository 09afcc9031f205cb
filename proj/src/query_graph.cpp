#include <algorithm>
#include <set>

#include "pcpa/transforms.hpp"

namespace pcpa {

QueryGraph query_graph(const PcpaSystem& sys) {
    require_valid(sys);
    const auto n = sys.degree();
    std::vector<std::set<std::size_t>> in(n), out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& tr : sys.components[i].transitions) {
            for (auto s : tr.push) {
                if (auto j = sys.query_target(s)) {
                    in[i].insert(*j);
                    out[*j].insert(i);
                }
            }
        }
    }
    QueryGraph g;
    g.in_sets.resize(n);
    g.out_sets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.in_sets[i].assign(in[i].begin(), in[i].end());
        g.out_sets[i].assign(out[i].begin(), out[i].end());
        if (!in[i].empty()) g.queriers.push_back(i);
        if (!out[i].empty()) g.queried.push_back(i);
    }
    return g;
}

std::string SimplicityViolation::describe() const {
    const auto one = [](std::size_t i) { return std::to_string(i + 1); };
    if (kind == Kind::shared_target) {
        return "shared-target: components " + one(first) + " and " + one(second) +
               " both query component " + one(target);
    }
    return "querier-queried: component " + one(first) + " queries component " + one(target) +
           " and is queried by component " + one(second);
}

SimplicityReport is_simple(const PcpaSystem& sys) {
    if (sys.mode != Mode::returning) {
        throw Error(ErrorCode::unsupported_mode, "simplicity is defined for returning systems only");
    }
    const auto g = query_graph(sys);
    const auto n = sys.degree();
    SimplicityReport report;
    // IN(A_i) ∩ IN(A_j) = ∅ for i ≠ j
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            std::vector<std::size_t> shared;
            std::set_intersection(g.in_sets[i].begin(), g.in_sets[i].end(), g.in_sets[j].begin(),
                                  g.in_sets[j].end(), std::back_inserter(shared));
            for (auto t : shared) {
                report.violations.push_back({SimplicityViolation::Kind::shared_target, i, j, t});
            }
        }
    }
    // A_j ∈ IN(A_i) ⇒ A_i ∉ IN(A_k), k = i included (a self-query violates it)
    for (auto i : g.queriers) {
        for (auto k : g.out_sets[i]) {
            report.violations.push_back(
                {SimplicityViolation::Kind::querier_queried, i, k, g.in_sets[i].front()});
        }
    }
    report.simple = report.violations.empty();
    return report;
}

}  // namespace pcpa
