#include "swipe/swipe.hpp"

#include <istream>
#include <map>
#include <utility>

namespace swipe {

std::size_t RepairOutcome::total_revisions() const {
    std::size_t total = 0;
    for (const auto& c : classes) total += c.repair.stats.revisions;
    return total;
}

namespace {

std::vector<CellChange> consolidate(const std::vector<CellChange>& raw) {
    std::map<std::pair<Tid, AttrIndex>, std::size_t> position;
    std::vector<CellChange> net;
    for (const auto& change : raw) {
        auto [it, inserted] = position.try_emplace({change.tid, change.attr}, net.size());
        if (inserted) net.push_back(change);
        else net[it->second].after = change.after;
    }
    std::erase_if(net, [](const CellChange& c) { return c.before == c.after; });
    return net;
}

}  // namespace

RepairOutcome swipe(const Relation& rel, const FDSet& fds, const SwipeOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const Schema& schema = rel.schema();
    for (const auto& fd : fds) {
        schema.check(fd.lhs);
        schema.check(AttributeSet{fd.rhs});
    }

    RepairOutcome out;
    out.seed = options.seed;
    out.cover = minimal_cover(fds);
    out.partition = build_partition(out.cover, schema.arity());
    const AttributeSet repairable = out.partition.attributes();
    for (AttrIndex a = 0; a < schema.arity(); ++a) {
        if (!repairable.contains(a)) out.non_repairable.insert(a);
    }
    for (const auto& [index, order] : options.priority_overrides) {
        if (index == 0 || index > out.partition.size()) {
            throw RepairError("priority override for class " + std::to_string(index) + " but the partition has " +
                              std::to_string(out.partition.size()) + " classes");
        }
        manual_priority(order, out.partition[index - 1]);
    }

    Rng rng(options.seed);
    out.repaired = rel;
    std::vector<CellChange> raw_log;
    for (std::size_t i = 0; i < out.partition.size(); ++i) {
        const auto class_started = std::chrono::steady_clock::now();
        ClassReport report;
        report.attrs = out.partition[i];
        report.fds = class_fds(out.partition, i, out.cover.fds());

        std::optional<PriorityModel> manual;
        if (auto it = options.priority_overrides.find(i + 1); it != options.priority_overrides.end()) {
            manual = manual_priority(it->second, report.attrs);
        }
        report.repair = priority_repair(out.repaired, report.fds, report.attrs, options.functions, rng,
                                        manual ? &*manual : nullptr, options.repair, &raw_log);
        report.duration = std::chrono::steady_clock::now() - class_started;
        out.classes.push_back(std::move(report));
    }

    // FD implication assumes NULL = NULL; with distinct NULLs only the cover is guaranteed.
    const FDSet& sweep = options.repair.nulls == NullSemantics::kEqual ? fds : out.cover.fds();
    for (const auto& fd : sweep) {
        if (!violates(out.repaired, fd, options.repair.nulls).empty()) {
            throw RepairError("repair still violates " + format_fd(fd, schema));
        }
    }

    out.change_log = consolidate(raw_log);
    out.duration = std::chrono::steady_clock::now() - started;
    return out;
}

Relation replay(const Relation& dirty, const std::vector<CellChange>& log) {
    Relation out = dirty;
    for (const auto& change : log) {
        const std::size_t row = out.row_of(change.tid);
        if (!(out.at(row, change.attr) == change.before)) {
            throw RepairError("change log does not match relation at tid " + std::to_string(change.tid));
        }
        out.set(row, change.attr, change.after);
    }
    return out;
}

namespace {

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return std::string{};
    return std::string(s.substr(b, s.find_last_not_of(ws) - b + 1));
}

// Splits on `sep` outside double quotes and drops an unquoted '#' comment.
// Quoted pieces lose their quotes ("" stands for one quote).
std::vector<std::string> split_quoted(const std::string& line, char sep, bool& quoted_any) {
    std::vector<std::string> parts(1);
    bool in_quotes = false;
    quoted_any = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_quotes) {
            if (c != '"') {
                parts.back().push_back(c);
            } else if (i + 1 < line.size() && line[i + 1] == '"') {
                parts.back().push_back('"');
                ++i;
            } else {
                in_quotes = false;
            }
        } else if (c == '"') {
            in_quotes = true;
            quoted_any = true;
        } else if (c == '#') {
            break;
        } else if (c == sep) {
            parts.emplace_back();
        } else {
            parts.back().push_back(c);
        }
    }
    if (in_quotes) throw std::invalid_argument("unterminated quoted name");
    for (auto& p : parts) p = trim(p);
    return parts;
}

}  // namespace

std::map<std::size_t, std::vector<AttrIndex>> parse_priority_file(std::istream& in, const Schema& schema) {
    std::map<std::size_t, std::vector<AttrIndex>> out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto fail = [&](const std::string& what) {
            return RepairError("priority file line " + std::to_string(line_no) + ": " + what);
        };
        std::vector<std::string> names;
        bool quoted = false;
        try {
            names = split_quoted(raw, '>', quoted);
        } catch (const std::invalid_argument& e) {
            throw fail(e.what());
        }
        if (names.size() == 1 && names.front().empty() && !quoted) continue;

        auto colon = names.front().find(':');
        if (colon == std::string::npos) throw fail("expected 'class_index: a > b'");
        std::size_t index = 0;
        try {
            std::size_t used = 0;
            const std::string number = trim(names.front().substr(0, colon));
            index = std::stoul(number, &used);
            if (used != number.size()) throw std::invalid_argument(number);
        } catch (const std::exception&) {
            throw fail("malformed class index");
        }
        names.front() = trim(names.front().substr(colon + 1));

        std::vector<AttrIndex> order;
        for (const auto& name : names) {
            auto idx = schema.find(name);
            if (!idx) throw fail("unknown attribute '" + name + "'");
            order.push_back(*idx);
        }
        if (!out.emplace(index, std::move(order)).second) throw fail("duplicate class index");
    }
    return out;
}

}  // namespace swipe
