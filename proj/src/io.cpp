#include "pcpa/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace pcpa {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::parse_error, where + ": " + what);
}

[[noreturn]] void validation_fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::validation_error, where + ": " + what);
}

void require_clean(const ValidationReport& report) {
    if (report.ok()) return;
    std::string text;
    for (const auto& v : report.violations) {
        if (!text.empty()) text += "\n  ";
        text += v.location + ": " + v.message + " [" + v.code + "]";
    }
    throw Error(ErrorCode::validation_error, text);
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) parse_fail(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) parse_fail(where, "expected a string");
    return j.get<std::string>();
}

std::size_t as_index(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) parse_fail(where, "expected a non-negative integer");
    return j.get<std::size_t>();
}

const json& as_array(const json& j, const std::string& where) {
    if (!j.is_array()) parse_fail(where, "expected an array");
    return j;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    std::vector<std::string> out;
    const auto& arr = as_array(j, where);
    for (std::size_t k = 0; k < arr.size(); ++k) {
        out.push_back(as_string(arr[k], where + "[" + std::to_string(k) + "]"));
    }
    return out;
}

SymbolId lookup(const std::vector<std::string>& alphabet, const std::string& name,
                const std::string& where, const char* which) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) validation_fail(where, "'" + name + "' is not declared in " + which);
    return static_cast<SymbolId>(it - alphabet.begin());
}

std::vector<SymbolId> symbol_list(const json& j, const std::vector<std::string>& alphabet,
                                  const std::string& where, const char* which) {
    std::vector<SymbolId> out;
    for (const auto& name : string_list(j, where)) out.push_back(lookup(alphabet, name, where, which));
    return out;
}

std::vector<StateId> finals_list(const json& j, const std::vector<std::string>& states,
                                 const std::string& where) {
    auto out = symbol_list(j, states, where, "states");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_header(const json& doc, std::string_view kind) {
    const auto version = field(doc, "format_version", "document");
    if (!version.is_number_integer() || version.get<int>() != kFormatVersion) {
        parse_fail("format_version", "unsupported format version");
    }
    if (as_string(field(doc, "kind", "document"), "kind") != kind) {
        parse_fail("kind", "unexpected kind");
    }
}

PcpaSystem parse_pcpa(const json& doc) {
    PcpaSystem sys;
    sys.input_alphabet = string_list(field(doc, "input_alphabet", "document"), "input_alphabet");
    sys.stack_alphabet = string_list(field(doc, "stack_alphabet", "document"), "stack_alphabet");
    const auto mode = as_string(field(doc, "mode", "document"), "mode");
    if (mode == "returning") {
        sys.mode = Mode::returning;
    } else if (mode == "non_returning") {
        sys.mode = Mode::non_returning;
    } else {
        parse_fail("mode", "expected \"returning\" or \"non_returning\"");
    }

    const auto& comps = as_array(field(doc, "components", "document"), "components");
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const std::string where = "components[" + std::to_string(i) + "]";
        const auto& c = comps[i];
        PdaComponent comp;
        comp.states = string_list(field(c, "states", where), where + ".states");
        comp.initial = lookup(comp.states, as_string(field(c, "initial", where), where + ".initial"),
                              where + ".initial", "states");
        comp.initial_stack =
            lookup(sys.stack_alphabet, as_string(field(c, "initial_stack", where), where + ".initial_stack"),
                   where + ".initial_stack", "stack_alphabet");
        comp.finals = finals_list(field(c, "finals", where), comp.states, where + ".finals");
        const auto& trs = as_array(field(c, "transitions", where), where + ".transitions");
        for (std::size_t t = 0; t < trs.size(); ++t) {
            const std::string at = where + ".transitions[" + std::to_string(t) + "]";
            const auto& r = as_array(trs[t], at);
            if (r.size() != 5) parse_fail(at, "expected [from, read, pop, to, push]");
            Transition tr;
            tr.from = lookup(comp.states, as_string(r[0], at), at, "states");
            const auto read = as_string(r[1], at);
            if (!read.empty()) tr.read = lookup(sys.input_alphabet, read, at, "input_alphabet");
            tr.pop = lookup(sys.stack_alphabet, as_string(r[2], at), at, "stack_alphabet");
            tr.to = lookup(comp.states, as_string(r[3], at), at, "states");
            tr.push = symbol_list(r[4], sys.stack_alphabet, at, "stack_alphabet");
            comp.transitions.push_back(std::move(tr));
        }
        if (auto kc = c.find("kc"); kc != c.end()) {
            const auto& arr = as_array(*kc, where + ".kc");
            for (std::size_t s = 0; s < arr.size(); ++s) {
                const std::string at = where + ".kc[" + std::to_string(s) + "]";
                const auto& e = as_array(arr[s], at);
                if (e.size() != 3) parse_fail(at, "expected [base, phase, switch]");
                auto phase = kc_phase_from_string(as_string(e[1], at));
                if (!phase) parse_fail(at, "unknown phase");
                const auto sw = as_index(e[2], at);
                if (sw > 1) parse_fail(at, "switch must be 0 or 1");
                comp.kc.push_back({as_string(e[0], at), *phase, sw == 1});
            }
        }
        sys.components.push_back(std::move(comp));
    }

    const auto& qm = as_array(field(doc, "query_map", "document"), "query_map");
    for (std::size_t k = 0; k < qm.size(); ++k) {
        const std::string at = "query_map[" + std::to_string(k) + "]";
        const auto& e = as_array(qm[k], at);
        if (e.size() != 2) parse_fail(at, "expected [symbol, component]");
        const auto sym = lookup(sys.stack_alphabet, as_string(e[0], at), at, "stack_alphabet");
        const auto target = as_index(e[1], at);
        if (target < 1 || target > sys.degree()) validation_fail(at, "component index out of range");
        sys.query_map.push_back({sym, target - 1});
    }

    require_clean(validate_system(sys));
    return sys;
}

MhpdaMachine parse_mhpda(const json& doc) {
    MhpdaMachine m;
    m.heads = as_index(field(doc, "heads", "document"), "heads");
    m.endmarker = as_string(field(doc, "endmarker", "document"), "endmarker");
    m.input_alphabet = string_list(field(doc, "input_alphabet", "document"), "input_alphabet");
    m.stack_alphabet = string_list(field(doc, "stack_alphabet", "document"), "stack_alphabet");
    m.states = string_list(field(doc, "states", "document"), "states");
    m.initial = lookup(m.states, as_string(field(doc, "initial", "document"), "initial"), "initial", "states");
    m.initial_stack = lookup(m.stack_alphabet, as_string(field(doc, "initial_stack", "document"), "initial_stack"),
                             "initial_stack", "stack_alphabet");
    m.finals = finals_list(field(doc, "finals", "document"), m.states, "finals");
    const auto& trs = as_array(field(doc, "transitions", "document"), "transitions");
    for (std::size_t t = 0; t < trs.size(); ++t) {
        const std::string at = "transitions[" + std::to_string(t) + "]";
        const auto& r = as_array(trs[t], at);
        if (r.size() != 6) parse_fail(at, "expected [from, reads, pop, to, advances, push]");
        MhTransition tr;
        tr.from = lookup(m.states, as_string(r[0], at), at, "states");
        for (const auto& name : string_list(r[1], at + ".reads")) {
            if (name.empty()) {
                tr.reads.push_back(HeadRead::skip());
            } else if (name == m.endmarker) {
                tr.reads.push_back(HeadRead::end());
            } else {
                tr.reads.push_back(HeadRead::of(lookup(m.input_alphabet, name, at, "input_alphabet")));
            }
        }
        tr.pop = lookup(m.stack_alphabet, as_string(r[2], at), at, "stack_alphabet");
        tr.to = lookup(m.states, as_string(r[3], at), at, "states");
        for (const auto& a : as_array(r[4], at + ".advances")) {
            const auto bit = as_index(a, at + ".advances");
            if (bit > 1) parse_fail(at, "advances must be 0 or 1");
            tr.advances.push_back(bit == 1);
        }
        tr.push = symbol_list(r[5], m.stack_alphabet, at, "stack_alphabet");
        m.transitions.push_back(std::move(tr));
    }
    require_clean(validate_mhpda(m));
    return m;
}

json names(const std::vector<std::string>& alphabet, const std::vector<SymbolId>& ids) {
    json arr = json::array();
    for (auto id : ids) arr.push_back(alphabet[id]);
    return arr;
}

// One field per line, one transition per line.
class Writer {
public:
    void field(std::string_view key, const json& value, int indent, bool last) {
        line(indent, json(key).dump() + ": " + value.dump() + (last ? "" : ","));
    }
    void open(std::string_view key, char bracket, int indent) {
        line(indent, json(key).dump() + ": " + bracket);
    }
    void line(int indent, const std::string& text) {
        out_ << std::string(static_cast<std::size_t>(indent) * 2, ' ') << text << '\n';
    }
    template <class Items>
    void rows(const Items& items, int indent) {
        for (std::size_t k = 0; k < items.size(); ++k) {
            line(indent, items[k].dump() + (k + 1 < items.size() ? "," : ""));
        }
    }
    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

void write_pcpa(Writer& w, const PcpaSystem& sys, int base) {
    w.line(base, "{");
    const int in = base + 1;
    w.field("format_version", kFormatVersion, in, false);
    w.field("kind", "pcpa", in, false);
    w.field("mode", std::string(to_string(sys.mode)), in, false);
    w.field("input_alphabet", sys.input_alphabet, in, false);
    w.field("stack_alphabet", sys.stack_alphabet, in, false);
    json qm = json::array();
    for (const auto& q : sys.query_map) qm.push_back({sys.stack_alphabet[q.symbol], q.target + 1});
    w.field("query_map", qm, in, false);
    w.open("components", '[', in);
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        const auto& c = sys.components[i];
        w.line(in + 1, "{");
        const int f = in + 2;
        w.field("states", c.states, f, false);
        w.field("initial", c.states[c.initial], f, false);
        w.field("initial_stack", sys.stack_alphabet[c.initial_stack], f, false);
        w.field("finals", names(c.states, c.finals), f, false);
        std::vector<json> rows;
        for (const auto& tr : c.transitions) {
            rows.push_back({c.states[tr.from], tr.read ? sys.input_alphabet[*tr.read] : std::string(),
                            sys.stack_alphabet[tr.pop], c.states[tr.to],
                            names(sys.stack_alphabet, tr.push)});
        }
        w.open("transitions", '[', f);
        w.rows(rows, f + 1);
        if (c.kc.empty()) {
            w.line(f, "]");
        } else {
            w.line(f, "],");
            std::vector<json> kc;
            for (const auto& k : c.kc) kc.push_back({k.base, std::string(to_string(k.phase)), k.switch_on ? 1 : 0});
            w.open("kc", '[', f);
            w.rows(kc, f + 1);
            w.line(f, "]");
        }
        w.line(in + 1, i + 1 < sys.degree() ? "}," : "}");
    }
    w.line(in, "]");
    w.line(base, "}");
}

void write_mhpda(Writer& w, const MhpdaMachine& m, int base) {
    w.line(base, "{");
    const int in = base + 1;
    w.field("format_version", kFormatVersion, in, false);
    w.field("kind", "mhpda", in, false);
    w.field("heads", m.heads, in, false);
    w.field("endmarker", m.endmarker, in, false);
    w.field("input_alphabet", m.input_alphabet, in, false);
    w.field("stack_alphabet", m.stack_alphabet, in, false);
    w.field("states", m.states, in, false);
    w.field("initial", m.states[m.initial], in, false);
    w.field("initial_stack", m.stack_alphabet[m.initial_stack], in, false);
    w.field("finals", names(m.states, m.finals), in, false);
    std::vector<json> rows;
    for (const auto& tr : m.transitions) {
        json reads = json::array();
        for (const auto& r : tr.reads) {
            switch (r.kind) {
                case HeadRead::Kind::skip: reads.push_back(""); break;
                case HeadRead::Kind::letter: reads.push_back(m.input_alphabet[r.letter]); break;
                case HeadRead::Kind::endmarker: reads.push_back(m.endmarker); break;
            }
        }
        json adv = json::array();
        for (bool a : tr.advances) adv.push_back(a ? 1 : 0);
        rows.push_back({m.states[tr.from], reads, m.stack_alphabet[tr.pop], m.states[tr.to], adv,
                        names(m.stack_alphabet, tr.push)});
    }
    w.open("transitions", '[', in);
    w.rows(rows, in + 1);
    w.line(in, "]");
    w.line(base, "}");
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

bool single_char(const std::vector<std::string>& alphabet) {
    return std::all_of(alphabet.begin(), alphabet.end(), [](const auto& s) { return s.size() == 1; });
}

std::string join(const std::vector<std::string>& names, const std::vector<SymbolId>& ids,
                 std::string_view sep) {
    if (ids.empty()) return "ε";
    std::string out;
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (k) out += sep;
        out += names[ids[k]];
    }
    return out;
}

}  // namespace

Machine parse_machine(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail("line " + std::to_string(line_of(text, e.byte)), "malformed JSON");
    }
    const auto kind = as_string(field(doc, "kind", "document"), "kind");
    if (kind == "pcpa") {
        check_header(doc, "pcpa");
        return parse_pcpa(doc);
    }
    if (kind == "mhpda") {
        check_header(doc, "mhpda");
        return parse_mhpda(doc);
    }
    parse_fail("kind", "expected \"pcpa\" or \"mhpda\"");
}

std::string serialize_machine(const Machine& machine) {
    Writer w;
    if (const auto* sys = std::get_if<PcpaSystem>(&machine)) {
        write_pcpa(w, *sys, 0);
    } else {
        write_mhpda(w, std::get<MhpdaMachine>(machine), 0);
    }
    return w.str();
}

std::string serialize_machines(const std::vector<Machine>& machines) {
    std::string out = "[\n";
    for (std::size_t k = 0; k < machines.size(); ++k) {
        std::istringstream doc(serialize_machine(machines[k]));
        std::string line;
        std::vector<std::string> lines;
        while (std::getline(doc, line)) lines.push_back(line);
        for (std::size_t l = 0; l < lines.size(); ++l) {
            out += "  " + lines[l];
            if (l + 1 == lines.size() && k + 1 < machines.size()) out += ",";
            out += "\n";
        }
    }
    return out + "]\n";
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& word) {
    if (word.empty()) return "ε";
    std::string out;
    const bool compact = single_char(alphabet);
    for (std::size_t k = 0; k < word.size(); ++k) {
        if (k && !compact) out += '.';
        out += word[k];
    }
    return out;
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
    Word word;
    if (text.empty() || text == "ε" || text == "-") return word;
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            const auto dot = text.find('.', start);
            word.emplace_back(text.substr(start, dot - start));
            if (dot == std::string_view::npos) break;
            start = dot + 1;
        }
    } else if (single_char(alphabet)) {
        for (char c : text) word.emplace_back(1, c);
    } else {
        word.emplace_back(text);
    }
    encode_word(alphabet, word);
    return word;
}

std::string format_trace(const PcpaSystem& sys, const Word& word,
                         const Trace<SystemConfiguration>& trace) {
    const auto ids = encode_word(sys.input_alphabet, word);
    std::string out;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out += "STEP " + std::to_string(k) + " " + std::string(to_string(trace[k].kind)) + " (";
        const auto& parts = trace[k].config.parts;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += " | ";
            const auto& p = parts[i];
            const Word unread(word.begin() + static_cast<long>(p.consumed), word.end());
            out += sys.components[i].states[p.state] + "," + format_word(sys.input_alphabet, unread) +
                   "," + join(sys.stack_alphabet, p.stack, ".");
        }
        out += ")\n";
    }
    return out;
}

std::string format_trace(const MhpdaMachine& m, const Word& word, const Trace<MhConfiguration>& trace) {
    encode_word(m.input_alphabet, word);
    std::string out;
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto& c = trace[k].config;
        std::string positions;
        for (std::size_t h = 0; h < c.positions.size(); ++h) {
            if (h) positions += ';';
            positions += std::to_string(c.positions[h]);
        }
        out += "STEP " + std::to_string(k) + " " + std::string(to_string(trace[k].kind)) + " (" +
               m.states[c.state] + "," + positions + "," + join(m.stack_alphabet, c.stack, ".") + ")\n";
    }
    return out;
}

}  // namespace pcpa
