#include "swipe/repair_functions.hpp"

#include <algorithm>
#include <charconv>
#include <istream>

namespace swipe {

bool ValueBag::contains(const Value& v) const {
    return std::any_of(entries.begin(), entries.end(), [&](const BagEntry& e) { return e.value == v; });
}

namespace {

// Scores each distinct value (first-appearance order), then picks the best.
template <typename Score>
Value pick_best(const ValueBag& bag, Rng& rng, Score score) {
    if (bag.empty()) throw RepairFunctionError("repair function applied to an empty bag");
    std::vector<const Value*> distinct;
    std::vector<double> totals;
    std::map<Value, std::size_t> position;
    for (const auto& entry : bag.entries) {
        auto [it, inserted] = position.try_emplace(entry.value, distinct.size());
        if (inserted) {
            distinct.push_back(&entry.value);
            totals.push_back(0.0);
        }
        totals[it->second] += score(entry);
    }
    const double best = *std::max_element(totals.begin(), totals.end());
    std::vector<const Value*> tied;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        if (totals[i] == best) tied.push_back(distinct[i]);
    }
    if (tied.size() > 1) {
        std::erase_if(tied, [](const Value* v) { return v->is_null(); });
        if (tied.empty()) return Value::null();
    }
    if (tied.size() == 1) return *tied.front();
    return *tied[static_cast<std::size_t>(rng() % tied.size())];
}

bool parse_number(const std::string& text, double& out) {
    if (text.empty()) return false;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

Value majority_vote(const ValueBag& bag, Rng& rng) {
    return pick_best(bag, rng, [](const BagEntry&) { return 1.0; });
}

Value weighted_vote(const ValueBag& bag, Rng& rng) {
    return pick_best(bag, rng, [&](const BagEntry& e) {
        const double w = static_cast<double>(bag.schema_width) - static_cast<double>(e.null_count);
        return w * w * w * w;
    });
}

bool all_numeric(const ValueBag& bag) {
    double scratch = 0;
    return std::all_of(bag.entries.begin(), bag.entries.end(),
                       [&](const BagEntry& e) { return e.value.is_null() || parse_number(e.value.text(), scratch); });
}

bool value_less(const Value& lhs, const Value& rhs, bool numeric) {
    if (lhs.is_null() || rhs.is_null()) return lhs.is_null() && !rhs.is_null();
    if (numeric) {
        double l = 0;
        double r = 0;
        if (parse_number(lhs.text(), l) && parse_number(rhs.text(), r)) return l < r;
    }
    return lhs.text() < rhs.text();
}

Value max_value(const ValueBag& bag) {
    if (bag.empty()) throw RepairFunctionError("repair function applied to an empty bag");
    const bool numeric = all_numeric(bag);
    const Value* best = &bag.entries.front().value;
    for (const auto& e : bag.entries) {
        if (value_less(*best, e.value, numeric)) best = &e.value;
    }
    return *best;
}

RepairFunction RepairFunction::majority() {
    return RepairFunction(RepairKind::kMajority, "mv", majority_vote, true);
}

RepairFunction RepairFunction::weighted() {
    return RepairFunction(RepairKind::kWeighted, "wv", weighted_vote, true);
}

RepairFunction RepairFunction::max() {
    return RepairFunction(RepairKind::kMax, "max", [](const ValueBag& bag, Rng&) { return max_value(bag); }, true);
}

RepairFunction RepairFunction::custom(std::string name, Body body, bool preservative) {
    return RepairFunction(RepairKind::kCustom, std::move(name), std::move(body), preservative);
}

Value RepairFunction::operator()(const ValueBag& bag, Rng& rng) const {
    if (bag.empty()) throw RepairFunctionError("repair function '" + name_ + "' applied to an empty bag");
    Value out = body_(bag, rng);
    if (preservative_ && !bag.contains(out)) {
        throw RepairFunctionError("repair function '" + name_ + "' claims to be preservative but returned '" +
                                  to_display(out) + "' which is not in the bag");
    }
    return out;
}

RepairFunction parse_repair_function(const std::string& name) {
    if (name == "mv") return RepairFunction::majority();
    if (name == "wv") return RepairFunction::weighted();
    if (name == "max") return RepairFunction::max();
    throw RepairFunctionError("unknown repair function '" + name + "' (expected mv, wv or max)");
}

const RepairFunction& FunctionRegistry::for_attribute(AttrIndex a) const {
    auto it = overrides_.find(a);
    return it == overrides_.end() ? default_ : it->second;
}

void load_function_map(std::istream& in, const Schema& schema, FunctionRegistry& registry) {
    auto trim = [](const std::string& s) {
        const auto* ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string{};
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = "function map line " + std::to_string(line_no) + ": ";
        std::string line = trim(raw);
        std::string attr;
        // A quoted attribute name may contain '#' or '='.
        if (!line.empty() && line.front() == '"') {
            std::size_t i = 1;
            for (;; ++i) {
                if (i >= line.size()) throw RepairFunctionError(where + "unterminated quoted name");
                if (line[i] != '"') {
                    attr.push_back(line[i]);
                } else if (i + 1 < line.size() && line[i + 1] == '"') {
                    attr.push_back('"');
                    ++i;
                } else {
                    break;
                }
            }
            line = trim(line.substr(i + 1));
            if (line.empty() || line.front() != '=') throw RepairFunctionError(where + "expected attribute=fn");
            line = line.substr(1);
        }
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (attr.empty()) {
            if (line.empty()) continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) throw RepairFunctionError(where + "expected attribute=fn");
            attr = trim(line.substr(0, eq));
            line = trim(line.substr(eq + 1));
        }
        const auto idx = schema.find(attr);
        if (!idx) throw RepairFunctionError(where + "unknown attribute '" + attr + "'");
        registry.set(*idx, parse_repair_function(line));
    }
}

}  // namespace swipe
