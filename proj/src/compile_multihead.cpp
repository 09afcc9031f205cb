#include <deque>
#include <limits>
#include <map>

#include "pcpa/transforms.hpp"

namespace pcpa {

namespace {

constexpr StateId kEnd = std::numeric_limits<StateId>::max();

/// [p_1, ..., p_n, active]; an ordinate equal to kEnd stands for End_k.
struct Tag {
    std::vector<StateId> ordinates;
    std::size_t active = 0;

    auto operator<=>(const Tag&) const = default;
};

class Compiler {
public:
    explicit Compiler(const PcpaSystem& sys) : sys_(sys), n_(sys.degree()) {
        for (SymbolId x = 0; x < sys.stack_alphabet.size(); ++x) {
            if (!sys.is_query(x)) non_query_.push_back(x);
        }
        const auto graph = query_graph(sys);
        for (auto j : graph.in_sets[0]) {
            if (j == 0) continue;
            for (const auto& q : sys.query_map) {
                if (q.target == j) master_queries_.emplace_back(q.symbol, j);
            }
        }
        m_.heads = n_;
        m_.input_alphabet = sys.input_alphabet;
        m_.stack_alphabet = sys.stack_alphabet;
        m_.initial_stack = sys.components[0].initial_stack;
    }

    MhpdaMachine run() {
        Tag start;
        for (const auto& c : sys_.components) start.ordinates.push_back(c.initial);
        m_.initial = intern(start);
        Tag accept{std::vector<StateId>(n_, kEnd), n_ - 1};
        m_.finals = {intern(accept)};
        while (!pending_.empty()) {
            const Tag tag = pending_.front();
            pending_.pop_front();
            expand(tag);
        }
        require_valid(m_);
        return std::move(m_);
    }

private:
    StateId intern(const Tag& tag) {
        auto [it, fresh] = ids_.emplace(tag, static_cast<StateId>(m_.states.size()));
        if (fresh) {
            m_.states.push_back(name(tag));
            pending_.push_back(tag);
        }
        return it->second;
    }

    std::string name(const Tag& tag) const {
        std::string s = "[";
        for (std::size_t k = 0; k < n_; ++k) {
            if (tag.ordinates[k] == kEnd) {
                s += "End" + std::to_string(k + 1);
            } else {
                s += sys_.components[k].states[tag.ordinates[k]];
            }
            s += ';';
        }
        return s + std::to_string(tag.active + 1) + "]";
    }

    void emit(const Tag& from, std::vector<HeadRead> reads, SymbolId pop, const Tag& to,
              std::vector<bool> advances, std::vector<SymbolId> push) {
        const auto src = ids_.at(from);
        const auto dst = intern(to);
        m_.transitions.push_back(
            {src, std::move(reads), pop, dst, std::move(advances), std::move(push)});
    }

    // Moves of component j on head j; heads before `ends_before` must sit on $.
    void simulate(const Tag& tag, std::size_t j, std::size_t ends_before) {
        const auto& comp = sys_.components[j];
        for (const auto& tr : comp.transitions) {
            if (tr.from != tag.ordinates[j]) continue;
            std::vector<HeadRead> reads(n_);
            std::vector<bool> advances(n_, false);
            for (std::size_t h = 0; h < ends_before; ++h) reads[h] = HeadRead::end();
            if (tr.read) {
                reads[j] = HeadRead::of(*tr.read);
                advances[j] = true;
            }
            Tag next = tag;
            next.ordinates[j] = tr.to;
            emit(tag, std::move(reads), tr.pop, next, std::move(advances), tr.push);
        }
    }

    // Component j is final and its head reads $: ordinate j becomes End_j.
    void finish(const Tag& tag, std::size_t j) {
        if (!sys_.components[j].is_final(tag.ordinates[j])) return;
        std::vector<HeadRead> reads(n_);
        for (std::size_t h = 0; h <= j; ++h) reads[h] = HeadRead::end();
        Tag next = tag;
        next.ordinates[j] = kEnd;
        const bool last = j + 1 == n_;
        if (!last) next.active = j + 1;
        for (SymbolId x = 0; x < sys_.stack_alphabet.size(); ++x) {
            std::vector<SymbolId> push{x};
            // fresh floor for the next component over whatever is left below
            if (!last) push.insert(push.begin(), sys_.components[j + 1].initial_stack);
            emit(tag, reads, x, next, std::vector<bool>(n_, false), std::move(push));
        }
    }

    void expand(const Tag& tag) {
        const auto j = tag.active;
        if (tag.ordinates[j] == kEnd) return;  // accepting tag
        const bool finishing = tag.ordinates[0] == kEnd;

        if (finishing) {
            simulate(tag, j, j);
            finish(tag, j);
            return;
        }
        if (j == 0) {
            simulate(tag, 0, 0);
            // query K_j on top: hand control to j over a bare Z_j, the value its
            // stack was reset to by the previous communication
            for (const auto& [symbol, target] : master_queries_) {
                Tag next = tag;
                next.active = target;
                emit(tag, std::vector<HeadRead>(n_), symbol, next, std::vector<bool>(n_, false),
                     {sys_.components[target].initial_stack});
            }
            finish(tag, 0);
            return;
        }
        // serving a query for component j
        simulate(tag, j, 0);
        const auto& comp = sys_.components[j];
        const auto& ann = comp.kc[tag.ordinates[j]];
        if (ann.phase != KcPhase::sim1 || ann.switch_on) return;
        // j may have been the source of this communication: its segment of the
        // stack is what the master receives in place of K_j
        Tag back = tag;
        back.active = 0;
        for (auto x : non_query_) {
            if (x == comp.initial_stack) continue;
            emit(tag, std::vector<HeadRead>(n_), x, back, std::vector<bool>(n_, false), {x});
        }
    }

    const PcpaSystem& sys_;
    std::size_t n_;
    std::vector<SymbolId> non_query_;
    std::vector<std::pair<SymbolId, std::size_t>> master_queries_;
    MhpdaMachine m_;
    std::map<Tag, StateId> ids_;
    std::deque<Tag> pending_;
};

}  // namespace

MhpdaMachine compile_to_multihead(const PcpaSystem& sys) {
    require_valid(sys);
    if (sys.mode != Mode::returning) {
        throw Error(ErrorCode::unsupported_mode, "multi-head compilation needs a returning system");
    }
    const auto cls = classify(sys);
    if (!cls.centralized) throw Error(ErrorCode::not_centralized, "system has several queriers");
    if (cls.master && *cls.master != 0) {
        throw Error(ErrorCode::not_centralized, "the master must be component 1");
    }
    for (const auto& comp : sys.components) {
        if (!comp.kc_annotated()) {
            throw Error(ErrorCode::missing_known_communication,
                        "components lack known-communication annotations; transform first");
        }
    }
    return Compiler(sys).run();
}

}  // namespace pcpa
