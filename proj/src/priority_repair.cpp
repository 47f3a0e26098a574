#include "swipe/priority_repair.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace swipe {

std::size_t PriorityModel::rank(AttrIndex a) const {
    auto it = std::find(order.begin(), order.end(), a);
    if (it == order.end()) throw LookupError("attribute " + std::to_string(a) + " not in priority model");
    return static_cast<std::size_t>(it - order.begin());
}

namespace {

// Rows grouped by lhs key, groups in order of first appearance.
std::vector<std::vector<std::size_t>> group_rows(const Relation& rel, const AttributeSet& lhs, NullSemantics nulls) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(rel.size());
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t row = 0; row < rel.size(); ++row) {
        auto [it, inserted] = index.try_emplace(group_key(rel, row, lhs, nulls), groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(row);
    }
    return groups;
}

ValueBag make_bag(const Relation& rel, const std::vector<std::size_t>& rows, AttrIndex a) {
    ValueBag bag;
    bag.schema_width = rel.schema().arity();
    bag.entries.reserve(rows.size());
    for (std::size_t row : rows) bag.entries.push_back({rel.at(row, a), rel.null_count(row)});
    return bag;
}

bool single_valued(const Relation& rel, const std::vector<std::size_t>& rows, AttrIndex a) {
    const Value& first = rel.at(rows.front(), a);
    return std::all_of(rows.begin() + 1, rows.end(), [&](std::size_t row) { return rel.at(row, a) == first; });
}

bool aligned(const Relation& rel, const DisjointSetForest& dsf) {
    if (dsf.size() != rel.size()) return false;
    for (std::size_t row = 0; row < rel.size(); ++row) {
        if (dsf.tid_of_slot(row) != rel.tuple(row).tid) return false;
    }
    return true;
}

}  // namespace

Value majority_value(const Relation& rel, const AttributeSet& lhs, const ValueVector& x, AttrIndex a, Rng& rng,
                     NullSemantics nulls) {
    rel.schema().check(lhs);
    if (x.size() != lhs.size()) throw SchemaError("lhs value vector does not match lhs arity");
    std::vector<std::size_t> rows;
    for (std::size_t row = 0; row < rel.size(); ++row) {
        bool match = true;
        std::size_t k = 0;
        for (AttrIndex b : lhs) {
            const Value& v = rel.at(row, b);
            if (!(v == x[k++]) || (nulls == NullSemantics::kDistinct && v.is_null())) {
                match = false;
                break;
            }
        }
        if (match) rows.push_back(row);
    }
    if (rows.empty()) throw LookupError("no tuple matches the given lhs values");
    return majority_vote(make_bag(rel, rows, a), rng);
}

std::set<Tid> vio_fd(const Relation& rel, const FD& fd, Rng& rng, NullSemantics nulls) {
    std::set<Tid> out;
    for (const auto& rows : group_rows(rel, fd.lhs, nulls)) {
        if (single_valued(rel, rows, fd.rhs)) continue;
        const Value mv = majority_vote(make_bag(rel, rows, fd.rhs), rng);
        for (std::size_t row : rows) {
            if (!(rel.at(row, fd.rhs) == mv)) out.insert(rel.tuple(row).tid);
        }
    }
    return out;
}

std::set<Tid> vio(const Relation& rel, AttrIndex a, const FDSet& fds, Rng& rng, NullSemantics nulls) {
    std::set<Tid> out;
    for (const auto& fd : fds) {
        if (fd.rhs != a) continue;
        out.merge(vio_fd(rel, fd, rng, nulls));
    }
    return out;
}

PriorityModel estimate_priority(const Relation& rel, const AttributeSet& class_attrs, const FDSet& fds, Rng& rng,
                                NullSemantics nulls) {
    PriorityModel model;
    model.source = PriorityModel::Source::kEstimated;
    for (AttrIndex a : class_attrs) model.vio_sizes[a] = vio(rel, a, fds, rng, nulls).size();
    model.order = class_attrs.items();
    std::stable_sort(model.order.begin(), model.order.end(),
                     [&](AttrIndex x, AttrIndex y) { return model.vio_sizes[x] > model.vio_sizes[y]; });
    return model;
}

PriorityModel manual_priority(std::vector<AttrIndex> order, const AttributeSet& class_attrs) {
    if (AttributeSet(order) != class_attrs || order.size() != class_attrs.size()) {
        throw SchemaError("manual priority must list every attribute of the class exactly once");
    }
    PriorityModel model;
    model.order = std::move(order);
    model.source = PriorityModel::Source::kManual;
    return model;
}

PilotSplit pilot_fds(const AttributeSet& class_attrs, const FDSet& fds_i, const PriorityModel& priority) {
    PilotSplit split;
    for (const auto& fd : fds_i) {
        (fd.lhs.intersects(class_attrs) ? split.non_pilot : split.pilot).push_back(fd);
    }
    std::stable_sort(split.non_pilot.begin(), split.non_pilot.end(), [&](const FD& x, const FD& y) {
        return priority.rank(x.rhs) < priority.rank(y.rhs);
    });
    return split;
}

void update_dsf(const Relation& rel, const FD& fd, DisjointSetForest& dsf, NullSemantics nulls) {
    if (aligned(rel, dsf)) {
        std::unordered_map<std::string, std::size_t> roots;
        roots.reserve(rel.size());
        for (std::size_t row = 0; row < rel.size(); ++row) {
            auto [it, inserted] = roots.try_emplace(group_key(rel, row, fd.lhs, nulls), row);
            if (!inserted) dsf.unite_slots(row, it->second);
            it->second = dsf.find_slot(row);
        }
        return;
    }
    std::unordered_map<std::string, Tid> roots;
    roots.reserve(rel.size());
    for (std::size_t row = 0; row < rel.size(); ++row) {
        const Tid tid = rel.tuple(row).tid;
        auto [it, inserted] = roots.try_emplace(group_key(rel, row, fd.lhs, nulls), tid);
        if (!inserted) dsf.unite(tid, it->second);
        it->second = dsf.find(tid);
    }
}

std::size_t fix(Relation& rel, const FD& fd, DisjointSetForest& dsf, const RepairFunction& fn, Rng& rng,
                std::vector<CellChange>* log, NullSemantics nulls) {
    update_dsf(rel, fd, dsf, nulls);

    // Classes in order of their first row.
    std::unordered_map<Tid, std::size_t> class_index;
    class_index.reserve(rel.size());
    std::vector<std::vector<std::size_t>> classes;
    const bool by_slot = aligned(rel, dsf);
    for (std::size_t row = 0; row < rel.size(); ++row) {
        const Tid root = by_slot ? static_cast<Tid>(dsf.find_slot(row)) : dsf.find(rel.tuple(row).tid);
        auto [it, inserted] = class_index.try_emplace(root, classes.size());
        if (inserted) classes.emplace_back();
        classes[it->second].push_back(row);
    }

    std::size_t fixes = 0;
    for (const auto& rows : classes) {
        if (single_valued(rel, rows, fd.rhs)) continue;
        const Value repaired = fn(make_bag(rel, rows, fd.rhs), rng);
        for (std::size_t row : rows) {
            if (rel.at(row, fd.rhs) == repaired) continue;
            if (log != nullptr) log->push_back({rel.tuple(row).tid, fd.rhs, rel.at(row, fd.rhs), repaired});
            rel.set(row, fd.rhs, repaired);
        }
        ++fixes;
    }
    return fixes;
}

bool skip_revision_unary(const FD& fd, const FunctionRegistry& registry) {
    return fd.is_unary() && registry.for_attribute(fd.lhs.front()).preservative();
}

ClassRepair priority_repair(Relation& rel, const FDSet& fds_i, const AttributeSet& class_attrs,
                            const FunctionRegistry& registry, Rng& rng, const PriorityModel* priority,
                            const RepairOptions& options, std::vector<CellChange>* log) {
    for (const auto& fd : fds_i) {
        if (!class_attrs.contains(fd.rhs)) {
            throw RepairError("FD right-hand side outside the class; partition is not forward repairable");
        }
    }
    ClassRepair result;
    const bool has_non_pilot =
        std::any_of(fds_i.begin(), fds_i.end(), [&](const FD& fd) { return fd.lhs.intersects(class_attrs); });
    if (priority != nullptr) {
        result.priority = manual_priority(priority->order, class_attrs);
    } else if (has_non_pilot) {
        result.priority = estimate_priority(rel, class_attrs, fds_i, rng, options.nulls);
    } else {
        result.priority.order = class_attrs.items();
    }

    const PilotSplit split = pilot_fds(class_attrs, fds_i, result.priority);
    std::vector<FD>& ranked = result.initial_order;
    ranked = split.pilot;
    ranked.insert(ranked.end(), split.non_pilot.begin(), split.non_pilot.end());

    std::map<AttrIndex, DisjointSetForest> forests;
    for (AttrIndex a : class_attrs) forests.emplace(a, DisjointSetForest::for_relation(rel));

    // The stack is kept sorted by initial rank; re-pushed FDs return to their slot.
    std::set<std::size_t> stack;
    for (std::size_t i = 0; i < ranked.size(); ++i) stack.insert(i);

    RepairStats& stats = result.stats;
    const std::size_t guard = ranked.size() * (class_attrs.size() * rel.size() + 1);
    const std::size_t log_start = log != nullptr ? log->size() : 0;
    std::vector<CellChange> local_log;
    std::vector<CellChange>* sink = log != nullptr ? log : &local_log;

    // FDs left off the stack by the unary skip rule since their last fix.
    std::set<std::size_t> skipped;
    for (;;) {
        while (!stack.empty()) {
            if (++stats.iterations > guard) {
                throw RepairError("priority repair exceeded its iteration bound");
            }
            const std::size_t idx = *stack.begin();
            stack.erase(stack.begin());
            skipped.erase(idx);
            const FD& fd = ranked[idx];
            const std::size_t fixes =
                fix(rel, fd, forests.at(fd.rhs), registry.for_attribute(fd.rhs), rng, sink, options.nulls);
            ++stats.fix_calls[fd];
            stats.fixes_per_fd[fd] += fixes;
            if (fixes == 0) continue;
            for (std::size_t j = 0; j < ranked.size(); ++j) {
                if (stack.contains(j) || !ranked[j].lhs.contains(fd.rhs)) continue;
                if (options.skip_unary_revisions && skip_revision_unary(ranked[j], registry)) {
                    ++stats.skipped_revisions;
                    skipped.insert(j);
                    continue;
                }
                stack.insert(j);
                ++stats.revisions;
            }
        }
        // The skip rule does not hold on every class (a cycle of three or more
        // unary FDs can break it), so skipped FDs are checked before returning.
        for (std::size_t j : skipped) {
            if (violates(rel, ranked[j], options.nulls).empty()) continue;
            stack.insert(j);
            ++stats.revisions;
            ++stats.fallback_revisions;
        }
        skipped.clear();
        if (stack.empty()) break;
    }
    stats.cells_changed = sink->size() - (log != nullptr ? log_start : 0);
    return result;
}

}  // namespace swipe
