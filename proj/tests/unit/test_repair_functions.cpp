#include <random>
#include <sstream>

#include "doctest.h"
#include "swipe/repair_functions.hpp"

using namespace swipe;

namespace {
ValueBag bag(std::initializer_list<const char*> values, std::size_t width = 3) {
    ValueBag b;
    b.schema_width = width;
    for (const char* v : values) b.entries.push_back({std::string(v) == "~" ? Value::null() : Value(v), 0});
    return b;
}
}  // namespace

TEST_CASE("majority vote") {
    Rng rng(0);
    CHECK(majority_vote(bag({"10006", "10006", "1006", "10006"}), rng) == Value("10006"));
    CHECK(majority_vote(bag({"v", "v", "v", "v", "v"}), rng) == Value("v"));
    CHECK(majority_vote(bag({"x", "~", "~"}), rng) == Value::null());
    CHECK(majority_vote(bag({"x", "~"}), rng) == Value("x"));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng r1(seed);
        Rng r2(seed);
        const Value a = majority_vote(bag({"p", "q"}), r1);
        CHECK((a == Value("p") || a == Value("q")));
        CHECK(majority_vote(bag({"p", "q"}), r2) == a);
    }
    std::set<Value> winners;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng r(seed);
        winners.insert(majority_vote(bag({"p", "q"}), r));
    }
    CHECK(winners.size() == 2);
}

TEST_CASE("weighted vote") {
    Rng rng(0);
    ValueBag b;
    b.schema_width = 5;
    b.entries = {{Value("u"), 0}, {Value("v"), 2}, {Value("v"), 2}};
    CHECK(weighted_vote(b, rng) == Value("u"));

    b.entries = {{Value("u"), 0}, {Value("v"), 1}, {Value("v"), 1}, {Value("v"), 1}};  // 625 vs 3 * 256
    CHECK(weighted_vote(b, rng) == Value("v"));

    CHECK(weighted_vote(bag({"only"}), rng) == Value("only"));

    std::mt19937_64 gen(3);
    for (int round = 0; round < 200; ++round) {
        ValueBag equal;
        equal.schema_width = 6;
        const std::size_t n = 1 + gen() % 7;
        const std::size_t nulls = gen() % 6;
        for (std::size_t i = 0; i < n; ++i) equal.entries.push_back({Value(std::to_string(gen() % 3)), nulls});
        Rng r1(round);
        Rng r2(round);
        CHECK(weighted_vote(equal, r1) == majority_vote(equal, r2));
    }
}

TEST_CASE("max value") {
    CHECK(max_value(bag({"0", "2", "1"})) == Value("2"));
    CHECK(max_value(bag({"v"})) == Value("v"));
    CHECK(max_value(bag({"10", "9"})) == Value("10"));
    CHECK(max_value(bag({"10", "9", "x"})) == Value("x"));
    CHECK(max_value(bag({"b", "a"})) == Value("b"));
    CHECK(max_value(bag({"~", "-3"})) == Value("-3"));
    CHECK(max_value(bag({"~"})) == Value::null());
    CHECK(max_value(bag({"1e3", "999", "~"})) == Value("1e3"));
}

TEST_CASE("comparator") {
    CHECK(value_less(Value("9"), Value("10"), true));
    CHECK_FALSE(value_less(Value("9"), Value("10"), false));
    CHECK(value_less(Value::null(), Value(""), true));
    CHECK_FALSE(value_less(Value::null(), Value::null(), true));
    CHECK(all_numeric(bag({"1", "-2.5", "~", "+3"})));
    CHECK_FALSE(all_numeric(bag({"1", "two"})));
    CHECK_FALSE(all_numeric(bag({""})));
}

TEST_CASE("built-in functions are preservative and idempotent") {
    std::mt19937_64 gen(17);
    Rng rng(1);
    const std::vector<RepairFunction> fns{RepairFunction::majority(), RepairFunction::weighted(),
                                          RepairFunction::max()};
    for (const auto& fn : fns) CHECK(is_preservative(fn));
    for (int round = 0; round < 10000; ++round) {
        ValueBag b;
        b.schema_width = 1 + gen() % 8;
        const std::size_t n = 1 + gen() % 10;
        for (std::size_t i = 0; i < n; ++i) {
            const auto v = gen() % 12;
            Value value = v == 11 ? Value::null() : (v < 6 ? Value(std::to_string(v)) : Value("s" + std::to_string(v)));
            b.entries.push_back({std::move(value), gen() % b.schema_width});
        }
        for (const auto& fn : fns) REQUIRE(b.contains(fn(b, rng)));
    }
    for (const auto& fn : fns) {
        CHECK(fn(bag({"k", "k", "k"}), rng) == Value("k"));
    }
}

TEST_CASE("repair function wrapper") {
    Rng rng(0);
    CHECK_THROWS_AS(RepairFunction::majority()(ValueBag{}, rng), RepairFunctionError);

    const auto liar = RepairFunction::custom("liar", [](const ValueBag&, Rng&) { return Value("new"); }, true);
    CHECK_THROWS_AS(liar(bag({"a"}), rng), RepairFunctionError);

    const auto honest = RepairFunction::custom("const", [](const ValueBag&, Rng&) { return Value("new"); }, false);
    CHECK(honest(bag({"a"}), rng) == Value("new"));
    CHECK_FALSE(is_preservative(honest));

    CHECK(parse_repair_function("wv").kind() == RepairKind::kWeighted);
    CHECK_THROWS_AS(parse_repair_function("median"), RepairFunctionError);
}

TEST_CASE("function map") {
    const Schema s({"#provider", "city", "zip"});
    std::istringstream in("# overrides\n\"#provider\" = max  # numeric ids\ncity=wv\n\n");
    FunctionRegistry reg;
    load_function_map(in, s, reg);
    CHECK(reg.for_attribute(0).kind() == RepairKind::kMax);
    CHECK(reg.for_attribute(1).kind() == RepairKind::kWeighted);
    CHECK(reg.for_attribute(2).kind() == RepairKind::kMajority);

    for (const char* bad : {"nope=mv", "city", "city=median", "\"city=mv"}) {
        std::istringstream bad_in(bad);
        FunctionRegistry r;
        CHECK_THROWS_AS(load_function_map(bad_in, s, r), RepairFunctionError);
    }
}
