#include <algorithm>

#include "pcpa/transforms.hpp"

namespace pcpa {

std::vector<PcpaSystem> decompose(const PcpaSystem& sys) {
    const auto report = is_simple(sys);
    if (!report.simple) {
        std::string msg = "system is not simple:";
        for (const auto& v : report.violations) msg += " " + v.describe() + ";";
        throw Error(ErrorCode::not_simple, msg);
    }
    const auto g = query_graph(sys);
    if (g.queriers.empty()) {
        throw Error(ErrorCode::no_queriers, "no component queries; use the system directly");
    }

    std::vector<std::size_t> orphans;
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        if (g.in_sets[i].empty() && g.out_sets[i].empty()) orphans.push_back(i);
    }

    std::vector<PcpaSystem> parts;
    for (std::size_t k = 0; k < g.queriers.size(); ++k) {
        const auto master = g.queriers[k];
        std::vector<std::size_t> rest = g.in_sets[master];
        if (k == 0) rest.insert(rest.end(), orphans.begin(), orphans.end());
        std::sort(rest.begin(), rest.end());

        std::vector<std::size_t> members{master};
        members.insert(members.end(), rest.begin(), rest.end());

        PcpaSystem part;
        part.input_alphabet = sys.input_alphabet;
        part.stack_alphabet = sys.stack_alphabet;
        part.mode = sys.mode;
        for (auto m : members) part.components.push_back(sys.components[m]);
        for (const auto& q : sys.query_map) {
            auto it = std::find(members.begin(), members.end(), q.target);
            if (it != members.end()) {
                part.query_map.push_back({q.symbol, static_cast<std::size_t>(it - members.begin())});
            }
        }
        require_valid(part);
        parts.push_back(std::move(part));
    }
    return parts;
}

std::vector<MhpdaMachine> decompose_to_multihead(const PcpaSystem& sys) {
    std::vector<MhpdaMachine> out;
    for (const auto& part : decompose(sys)) {
        out.push_back(compile_to_multihead(to_known_communication(part)));
    }
    return out;
}

}  // namespace pcpa
