#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "pcpa/step.hpp"
#include "pcpa/system.hpp"

using namespace pcpa;

namespace {

// Two components, each one state, pushes configurable per component.
PcpaSystem two_queriers(bool second_queries) {
    PcpaSystem sys;
    sys.input_alphabet = {"a"};
    sys.stack_alphabet = {"Z1", "Z2", "Z3", "K2"};
    sys.query_map = {{3, 1}};
    for (SymbolId z : {0u, 1u, 2u}) {
        PdaComponent c;
        c.states = {"s"};
        c.initial_stack = z;
        c.finals = {0};
        c.transitions.push_back({0, 0, z, 0, {z}});
        sys.components.push_back(c);
    }
    sys.components[0].transitions.push_back({0, std::nullopt, 0, 0, {3, 0}});
    if (second_queries) sys.components[2].transitions.push_back({0, std::nullopt, 2, 0, {3, 2}});
    return sys;
}

bool has_code(const ValidationReport& r, const std::string& code) {
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const auto& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("validate_system accepts a well-formed degree-1 system") {
    const auto sys = oracle::load_system("m_anbn.json");
    const auto r = validate_system(sys);
    CHECK(r.ok());
    CHECK(r.querying_components.empty());
}

TEST_CASE("validate_system flags a query symbol in the input alphabet") {
    auto sys = oracle::load_system("sys_abc.json");
    sys.input_alphabet.push_back("K2");
    const auto r = validate_system(sys);
    CHECK_FALSE(r.ok());
    CHECK(has_code(r, "query-symbol-in-input-alphabet"));
}

TEST_CASE("validate_system flags a non-injective query map") {
    auto sys = oracle::load_system("sys_abc.json");
    sys.stack_alphabet.push_back("K2b");
    sys.query_map.push_back({static_cast<SymbolId>(sys.stack_alphabet.size() - 1), 1});
    const auto r = validate_system(sys);
    CHECK(has_code(r, "query-map-not-injective"));
}

TEST_CASE("validate_system flags popped query symbols and dangling references") {
    auto sys = oracle::load_system("sys_abc.json");
    sys.components[0].transitions.push_back({0, std::nullopt, 5, 0, {}});
    CHECK(has_code(validate_system(sys), "query-symbol-popped"));

    sys = oracle::load_system("sys_abc.json");
    sys.query_map.push_back({2, 7});
    CHECK(has_code(validate_system(sys), "query-target-out-of-range"));

    sys = oracle::load_system("sys_abc.json");
    sys.components[1].transitions[0].to = 42;
    CHECK_FALSE(validate_system(sys).ok());

    sys = oracle::load_system("sys_abc.json");
    sys.components.clear();
    CHECK(has_code(validate_system(sys), "no-components"));
}

TEST_CASE("symbol and state names") {
    CHECK(is_valid_symbol_name("Z1'"));
    CHECK(is_valid_symbol_name("a_b"));
    CHECK_FALSE(is_valid_symbol_name(""));
    CHECK_FALSE(is_valid_symbol_name("a b"));
    CHECK_FALSE(is_valid_symbol_name("$"));
    CHECK(is_valid_state_name("m0@s1:0"));
    CHECK_FALSE(is_valid_state_name("a,b"));
}

TEST_CASE("classify") {
    SUBCASE("single querier is the master") {
        const auto c = classify(two_queriers(false));
        CHECK(c.centralized);
        REQUIRE(c.master);
        CHECK(*c.master == 0);
    }
    SUBCASE("two queriers") {
        const auto c = classify(two_queriers(true));
        CHECK_FALSE(c.centralized);
        CHECK_FALSE(c.master);
    }
    SUBCASE("no querier at all") {
        const auto sys = oracle::load_system("m_anbn.json");
        const auto c = classify(sys);
        CHECK(c.centralized);
        CHECK_FALSE(c.master);
        // independent count of transitions pushing a query symbol
        std::size_t pushing = 0;
        for (const auto& comp : sys.components) {
            for (const auto& t : comp.transitions) {
                pushing += std::count_if(t.push.begin(), t.push.end(), [&](auto s) { return sys.is_query(s); });
            }
        }
        CHECK(pushing == 0);
    }
    SUBCASE("invalid input") {
        auto sys = two_queriers(false);
        sys.input_alphabet.push_back("K2");
        CHECK_THROWS_AS(classify(sys), Error);
    }
}

TEST_CASE("initial_configuration") {
    const auto sys = oracle::load_system("sys_abc.json");
    const auto c = initial_configuration(sys, {"a", "b"});
    REQUIRE(c.parts.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(c.parts[i].state == sys.components[i].initial);
        CHECK(c.parts[i].consumed == 0);
        CHECK(c.parts[i].stack == std::vector<SymbolId>{sys.components[i].initial_stack});
    }
    const auto e = initial_configuration(sys, {});
    CHECK(e.parts[0].consumed == 0);
    try {
        (void)initial_configuration(sys, {"a", "x"});
        FAIL("expected AlphabetError");
    } catch (const Error& err) {
        CHECK(err.code() == ErrorCode::alphabet_error);
    }
}
