#pragma once

#include <chrono>
#include <map>
#include <set>
#include <vector>

#include "swipe/dsf.hpp"
#include "swipe/fd.hpp"
#include "swipe/repair_functions.hpp"

namespace swipe {

class RepairError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CellChange {
    Tid tid = 0;
    AttrIndex attr = 0;
    Value before;
    Value after;

    friend bool operator==(const CellChange&, const CellChange&) = default;
};

/// Total order over one class's attributes; earlier means repaired first.
struct PriorityModel {
    enum class Source { kEstimated, kManual };

    std::vector<AttrIndex> order;
    Source source = Source::kEstimated;
    /// |Vio(a)| per attribute; filled for estimated models only.
    std::map<AttrIndex, std::size_t> vio_sizes;

    /// Position of `a` in the order. Throws LookupError for foreign attributes.
    std::size_t rank(AttrIndex a) const;
};

/// Highest-multiplicity value of `a` among tuples whose `lhs` values equal
/// `x`. Throws LookupError for an empty selection.
Value majority_value(const Relation& rel, const AttributeSet& lhs, const ValueVector& x, AttrIndex a, Rng& rng,
                     NullSemantics nulls = NullSemantics::kEqual);

/// Tuples that a per-group majority resolution of `fd` would change.
std::set<Tid> vio_fd(const Relation& rel, const FD& fd, Rng& rng, NullSemantics nulls = NullSemantics::kEqual);

/// Union of vio_fd over the FDs in `fds` whose rhs is `a`.
std::set<Tid> vio(const Relation& rel, AttrIndex a, const FDSet& fds, Rng& rng,
                  NullSemantics nulls = NullSemantics::kEqual);

/// Orders attributes by decreasing |Vio|; equal sizes go to the lower index.
PriorityModel estimate_priority(const Relation& rel, const AttributeSet& class_attrs, const FDSet& fds, Rng& rng,
                                NullSemantics nulls = NullSemantics::kEqual);

/// Validates that `order` lists every attribute of the class exactly once.
PriorityModel manual_priority(std::vector<AttrIndex> order, const AttributeSet& class_attrs);

struct PilotSplit {
    /// Declaration order.
    std::vector<FD> pilot;
    /// Sorted by rank of rhs; declaration order within one rhs.
    std::vector<FD> non_pilot;
};

/// Pilot FDs have no lhs attribute inside the class.
PilotSplit pilot_fds(const AttributeSet& class_attrs, const FDSet& fds_i, const PriorityModel& priority);

/// After the call, any two tuples with equal lhs values share a root in `dsf`.
/// `dsf` must hold every tid of `rel`.
void update_dsf(const Relation& rel, const FD& fd, DisjointSetForest& dsf, NullSemantics nulls = NullSemantics::kEqual);

/// Updates `dsf`, then assigns fn(bag) to every class whose members disagree
/// on the rhs. Returns the number of such classes. Changes are appended to
/// `log` when given.
std::size_t fix(Relation& rel, const FD& fd, DisjointSetForest& dsf, const RepairFunction& fn, Rng& rng,
                std::vector<CellChange>* log = nullptr, NullSemantics nulls = NullSemantics::kEqual);

/// A unary FD whose lhs attribute has a preservative repair function never
/// needs revision.
bool skip_revision_unary(const FD& fd, const FunctionRegistry& registry);

struct RepairStats {
    std::map<FD, std::size_t> fixes_per_fd;
    /// Times each FD was polled and fixed.
    std::map<FD, std::size_t> fix_calls;
    /// Re-pushes, including fallback ones.
    std::size_t revisions = 0;
    /// Re-pushes left out by the unary skip rule.
    std::size_t skipped_revisions = 0;
    /// Skipped FDs found violated once the stack ran dry and pushed again.
    std::size_t fallback_revisions = 0;
    std::size_t cells_changed = 0;
    std::size_t iterations = 0;
};

struct RepairOptions {
    bool skip_unary_revisions = true;
    NullSemantics nulls = NullSemantics::kEqual;
};

struct ClassRepair {
    RepairStats stats;
    PriorityModel priority;
    std::vector<FD> initial_order;
};

/// Repairs `fds_i` by changing only `class_attrs`. The class must come from
/// a forward repairable partition. `priority` overrides the estimate when set.
ClassRepair priority_repair(Relation& rel, const FDSet& fds_i, const AttributeSet& class_attrs,
                            const FunctionRegistry& registry, Rng& rng, const PriorityModel* priority = nullptr,
                            const RepairOptions& options = {}, std::vector<CellChange>* log = nullptr);

}  // namespace swipe
