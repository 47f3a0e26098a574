#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "swipe/relation.hpp"

namespace swipe {

using Rng = std::mt19937_64;

class RepairFunctionError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct BagEntry {
    Value value;
    /// NULL cells in the tuple the value was taken from.
    std::size_t null_count = 0;
};

/// The rhs values of the tuples in one violating class, in row order.
struct ValueBag {
    std::vector<BagEntry> entries;
    std::size_t schema_width = 0;

    bool empty() const { return entries.empty(); }
    bool contains(const Value& v) const;
};

/// Most frequent value. Ties prefer constants over NULL, then go to `rng`.
Value majority_vote(const ValueBag& bag, Rng& rng);

/// Each entry weighs (schema_width - null_count)^4; the heaviest value wins,
/// with the same tie rules as majority_vote.
Value weighted_vote(const ValueBag& bag, Rng& rng);

/// Largest value. Numeric order when every constant in the bag parses as a
/// number, byte order otherwise. NULL is the minimum.
Value max_value(const ValueBag& bag);

/// Comparator behind max_value, exposed for tests.
bool value_less(const Value& lhs, const Value& rhs, bool numeric);
bool all_numeric(const ValueBag& bag);

enum class RepairKind { kMajority, kWeighted, kMax, kCustom };

class RepairFunction {
  public:
    using Body = std::function<Value(const ValueBag&, Rng&)>;

    static RepairFunction majority();
    static RepairFunction weighted();
    static RepairFunction max();
    /// When `preservative` is set, every result is checked for bag membership.
    static RepairFunction custom(std::string name, Body body, bool preservative);

    /// Throws RepairFunctionError on an empty bag or a broken preservative claim.
    Value operator()(const ValueBag& bag, Rng& rng) const;

    RepairKind kind() const { return kind_; }
    bool preservative() const { return preservative_; }
    const std::string& name() const { return name_; }

  private:
    RepairFunction(RepairKind kind, std::string name, Body body, bool preservative)
        : kind_(kind), name_(std::move(name)), body_(std::move(body)), preservative_(preservative) {}

    RepairKind kind_;
    std::string name_;
    Body body_;
    bool preservative_;
};

inline bool is_preservative(const RepairFunction& fn) { return fn.preservative(); }

/// "mv", "wv" or "max".
RepairFunction parse_repair_function(const std::string& name);

/// A default function plus per-attribute overrides.
class FunctionRegistry {
  public:
    FunctionRegistry() : default_(RepairFunction::majority()) {}
    explicit FunctionRegistry(RepairFunction fallback) : default_(std::move(fallback)) {}

    void set(AttrIndex a, RepairFunction fn) { overrides_.insert_or_assign(a, std::move(fn)); }
    const RepairFunction& for_attribute(AttrIndex a) const;
    const RepairFunction& fallback() const { return default_; }
    const std::map<AttrIndex, RepairFunction>& overrides() const { return overrides_; }

  private:
    RepairFunction default_;
    std::map<AttrIndex, RepairFunction> overrides_;
};

/// `attribute=fn` lines; `#` comments. Names may be double-quoted.
void load_function_map(std::istream& in, const Schema& schema, FunctionRegistry& registry);

}  // namespace swipe
