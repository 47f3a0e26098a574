#pragma once

// Brute-force reference implementations. None of these call into the
// library's closure, cover, partition or DSF code.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "swipe/fd.hpp"
#include "swipe/partition.hpp"
#include "swipe/relation.hpp"

namespace oracle {

using swipe::AttributeSet;
using swipe::AttrIndex;
using swipe::FD;
using swipe::FDSet;
using swipe::Relation;
using swipe::Tid;

using Mask = std::uint32_t;

inline Mask to_mask(const AttributeSet& s) {
    Mask m = 0;
    for (AttrIndex a : s) m |= Mask{1} << a;
    return m;
}

inline AttributeSet from_mask(Mask m) {
    AttributeSet s;
    for (AttrIndex a = 0; a < 32; ++a) {
        if (m & (Mask{1} << a)) s.insert(a);
    }
    return s;
}

/// Closure as the intersection of every Phi-closed subset of the universe
/// that contains `attrs`. Exponential in `arity`.
inline AttributeSet closure(const AttributeSet& attrs, const FDSet& fds, std::size_t arity) {
    const Mask x = to_mask(attrs);
    Mask result = (arity >= 32) ? ~Mask{0} : ((Mask{1} << arity) - 1);
    result |= x;
    for (Mask s = 0; s < (Mask{1} << arity); ++s) {
        if ((s & x) != x) continue;
        bool closed = true;
        for (const auto& fd : fds) {
            const Mask l = to_mask(fd.lhs);
            if ((s & l) == l && !(s & (Mask{1} << fd.rhs))) {
                closed = false;
                break;
            }
        }
        if (closed) result &= s;
    }
    return from_mask(result);
}

inline bool implies(const FDSet& fds, const FD& fd, std::size_t arity) {
    return closure(fd.lhs, fds, arity).contains(fd.rhs);
}

inline bool equivalent(const FDSet& a, const FDSet& b, std::size_t arity) {
    for (const auto& fd : a) {
        if (!implies(b, fd, arity)) return false;
    }
    for (const auto& fd : b) {
        if (!implies(a, fd, arity)) return false;
    }
    return true;
}

/// Pairwise check: two tuples equal on the lhs and different on the rhs.
/// NULL equals NULL.
inline bool violated(const Relation& rel, const FD& fd) {
    for (std::size_t i = 0; i < rel.size(); ++i) {
        for (std::size_t j = i + 1; j < rel.size(); ++j) {
            bool same_lhs = true;
            for (AttrIndex b : fd.lhs) {
                if (!(rel.at(i, b) == rel.at(j, b))) {
                    same_lhs = false;
                    break;
                }
            }
            if (same_lhs && !(rel.at(i, fd.rhs) == rel.at(j, fd.rhs))) return true;
        }
    }
    return false;
}

inline bool satisfies(const Relation& rel, const FDSet& fds) {
    return std::none_of(fds.begin(), fds.end(), [&](const FD& fd) { return violated(rel, fd); });
}

/// Direct evaluation of forward repairability over the ordered classes:
/// an FD applicable first at prefix i needs its rhs in class i.
inline bool forward_repairable(const std::vector<Mask>& classes, const FDSet& fds) {
    Mask prefix = 0;
    for (Mask c : classes) {
        const Mask before = prefix;
        prefix |= c;
        for (const auto& fd : fds) {
            const Mask all = to_mask(fd.lhs) | (Mask{1} << fd.rhs);
            const bool now = (all & prefix) == all;
            const bool earlier = (all & before) == all;
            if (now && !earlier && !(c & (Mask{1} << fd.rhs))) return false;
        }
    }
    return true;
}

/// Every ordered set partition of the bits in `universe`.
inline void for_each_ordered_partition(Mask universe, const std::function<void(const std::vector<Mask>&)>& visit) {
    std::vector<Mask> current;
    std::function<void(Mask)> rec = [&](Mask rest) {
        if (rest == 0) {
            visit(current);
            return;
        }
        // Non-empty submasks of rest.
        for (Mask sub = rest; sub != 0; sub = (sub - 1) & rest) {
            current.push_back(sub);
            rec(rest & ~sub);
            current.pop_back();
        }
    };
    rec(universe);
}

/// True when every block of `finer` sits inside a block of `coarser` and
/// the block counts differ.
inline bool strictly_refines(const std::vector<Mask>& finer, const std::vector<Mask>& coarser) {
    if (finer.size() <= coarser.size()) return false;
    return std::all_of(finer.begin(), finer.end(), [&](Mask f) {
        return std::any_of(coarser.begin(), coarser.end(), [&](Mask c) { return (f & c) == f; });
    });
}

/// Connected components of the graph with one edge per union call.
inline std::set<std::set<Tid>> quotient(const std::vector<Tid>& tids, const std::vector<std::pair<Tid, Tid>>& edges) {
    std::map<Tid, std::set<Tid>> adj;
    for (Tid t : tids) adj[t];
    for (auto [a, b] : edges) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    std::set<Tid> seen;
    std::set<std::set<Tid>> out;
    for (Tid t : tids) {
        if (seen.contains(t)) continue;
        std::set<Tid> comp;
        std::vector<Tid> todo{t};
        while (!todo.empty()) {
            Tid u = todo.back();
            todo.pop_back();
            if (!comp.insert(u).second) continue;
            for (Tid v : adj[u]) todo.push_back(v);
        }
        seen.insert(comp.begin(), comp.end());
        out.insert(std::move(comp));
    }
    return out;
}

/// Random FD set with `count` members over `arity` attributes. Trivial FDs
/// are allowed so callers exercise their removal.
inline FDSet random_fds(std::mt19937_64& rng, std::size_t arity, std::size_t count, std::size_t max_lhs) {
    FDSet out;
    std::uniform_int_distribution<std::size_t> pick_attr(0, arity - 1);
    std::uniform_int_distribution<std::size_t> pick_size(1, max_lhs);
    for (std::size_t i = 0; i < count; ++i) {
        FD fd;
        const std::size_t n = pick_size(rng);
        for (std::size_t k = 0; k < n; ++k) fd.lhs.insert(pick_attr(rng));
        fd.rhs = pick_attr(rng);
        out.add(std::move(fd));
    }
    return out;
}

}  // namespace oracle
