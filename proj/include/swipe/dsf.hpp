#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "swipe/relation.hpp"

namespace swipe {

class DsfStateError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Union-find over tids: union by rank, full path compression on find.
class DisjointSetForest {
  public:
    DisjointSetForest() = default;

    /// Singleton class for every tid of `rel`.
    static DisjointSetForest for_relation(const Relation& rel);

    void makeset(Tid tid);
    Tid find(Tid tid);
    /// False when both tids already share a root.
    bool unite(Tid a, Tid b);

    bool contains(Tid tid) const { return slots_.contains(tid); }
    std::size_t size() const { return tids_.size(); }
    std::size_t class_count() const { return class_count_; }

    /// Exact partition of the registered tids. Each class is sorted and the
    /// classes are ordered by their smallest tid.
    std::vector<std::vector<Tid>> classes();

    /// Slot-level access for callers that register tids in row order:
    /// slot i is the i-th makeset.
    std::size_t find_slot(std::size_t slot);
    bool unite_slots(std::size_t a, std::size_t b);
    Tid tid_of_slot(std::size_t slot) const { return tids_[slot]; }

  private:
    std::size_t slot(Tid tid) const;

    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<Tid> tids_;
    std::unordered_map<Tid, std::size_t> slots_;
    std::size_t class_count_ = 0;
};

}  // namespace swipe
