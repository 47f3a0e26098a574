#include "swipe/dsf.hpp"

#include <algorithm>
#include <string>

namespace swipe {

DisjointSetForest DisjointSetForest::for_relation(const Relation& rel) {
    DisjointSetForest dsf;
    dsf.parent_.reserve(rel.size());
    dsf.rank_.reserve(rel.size());
    dsf.tids_.reserve(rel.size());
    dsf.slots_.reserve(rel.size());
    for (const auto& tuple : rel.tuples()) dsf.makeset(tuple.tid);
    return dsf;
}

void DisjointSetForest::makeset(Tid tid) {
    if (!slots_.emplace(tid, tids_.size()).second) {
        throw DsfStateError("tid " + std::to_string(tid) + " already registered");
    }
    parent_.push_back(tids_.size());
    rank_.push_back(0);
    tids_.push_back(tid);
    ++class_count_;
}

std::size_t DisjointSetForest::slot(Tid tid) const {
    auto it = slots_.find(tid);
    if (it == slots_.end()) throw LookupError("tid " + std::to_string(tid) + " not in forest");
    return it->second;
}

std::size_t DisjointSetForest::find_slot(std::size_t s) {
    std::size_t root = s;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[s] != root) {
        std::size_t next = parent_[s];
        parent_[s] = root;
        s = next;
    }
    return root;
}

bool DisjointSetForest::unite_slots(std::size_t a, std::size_t b) {
    std::size_t ra = find_slot(a);
    std::size_t rb = find_slot(b);
    if (ra == rb) return false;
    if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    if (rank_[ra] == rank_[rb]) ++rank_[ra];
    --class_count_;
    return true;
}

Tid DisjointSetForest::find(Tid tid) { return tids_[find_slot(slot(tid))]; }

bool DisjointSetForest::unite(Tid a, Tid b) { return unite_slots(slot(a), slot(b)); }

std::vector<std::vector<Tid>> DisjointSetForest::classes() {
    std::unordered_map<std::size_t, std::size_t> by_root;
    std::vector<std::vector<Tid>> out;
    by_root.reserve(class_count_);
    for (std::size_t s = 0; s < tids_.size(); ++s) {
        auto [it, inserted] = by_root.try_emplace(find_slot(s), out.size());
        if (inserted) out.emplace_back();
        out[it->second].push_back(tids_[s]);
    }
    for (auto& cls : out) std::sort(cls.begin(), cls.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
    return out;
}

}  // namespace swipe
