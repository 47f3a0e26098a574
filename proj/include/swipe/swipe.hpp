#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "swipe/partition.hpp"
#include "swipe/priority_repair.hpp"

namespace swipe {

struct SwipeOptions {
    FunctionRegistry functions;
    std::uint64_t seed = 0;
    /// Manual priority per class, keyed by 1-based class index.
    std::map<std::size_t, std::vector<AttrIndex>> priority_overrides;
    RepairOptions repair;
};

struct ClassReport {
    AttributeSet attrs;
    FDSet fds;
    ClassRepair repair;
    std::chrono::nanoseconds duration{};
};

struct RepairOutcome {
    Relation repaired;
    /// Net cell differences, one entry per changed cell, in order of first change.
    std::vector<CellChange> change_log;
    MinimalCover cover;
    Partition partition;
    std::vector<ClassReport> classes;
    /// Schema attributes outside the cover; never modified.
    AttributeSet non_repairable;
    std::uint64_t seed = 0;
    std::chrono::nanoseconds duration{};

    std::size_t total_revisions() const;
};

/// Minimal cover, induced partition, then one priority repair per class in
/// natural order. Throws RepairError if the result violates an input FD.
RepairOutcome swipe(const Relation& rel, const FDSet& fds, const SwipeOptions& options = {});

/// Applies a change log to `dirty`. Throws RepairError when a recorded
/// before-value does not match.
Relation replay(const Relation& dirty, const std::vector<CellChange>& log);

/// `class_index: attr1 > attr2 > ...` lines with 1-based class indexes.
/// Names may be double-quoted; an unquoted `#` starts a comment.
std::map<std::size_t, std::vector<AttrIndex>> parse_priority_file(std::istream& in, const Schema& schema);

}  // namespace swipe
