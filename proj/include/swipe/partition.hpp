#pragma once

#include <string>
#include <vector>

#include "swipe/fd.hpp"

namespace swipe {

class CapabilityError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Boolean k x k relation over schema attributes. (b, a) set means b must
/// not be placed in a class after the class of a.
class Preorder {
  public:
    explicit Preorder(std::size_t arity);

    std::size_t arity() const { return arity_; }
    bool contains(AttrIndex b, AttrIndex a) const { return bits_[b * arity_ + a]; }
    void add(AttrIndex b, AttrIndex a) { bits_[b * arity_ + a] = true; }
    bool equivalent(AttrIndex a, AttrIndex b) const { return contains(a, b) && contains(b, a); }

    /// Warshall transitive closure, in place.
    void close();

    friend bool operator==(const Preorder&, const Preorder&) = default;

  private:
    std::size_t arity_;
    std::vector<bool> bits_;
};

/// Ordered disjoint attribute classes [C1 ... Cm].
struct Partition {
    std::vector<AttributeSet> classes;

    std::size_t size() const { return classes.size(); }
    const AttributeSet& operator[](std::size_t i) const { return classes[i]; }
    AttributeSet attributes() const;
    /// Index of the class holding `a`, or size() when absent.
    std::size_t class_of(AttrIndex a) const;

    friend bool operator==(const Partition&, const Partition&) = default;
};

/// Reflexive relation with (b, a) for every lhs attribute b of every cover
/// FD with rhs a, closed under transitivity.
Preorder build_preorder(const MinimalCover& cover, std::size_t arity);
Preorder build_preorder(const FDSet& fds, std::size_t arity);

/// Equivalence classes of the preorder restricted to `attrs`, topologically
/// sorted; incomparable classes are ordered by their smallest attribute.
Partition induced_partition(const Preorder& preorder, const AttributeSet& attrs);

/// Cover -> preorder -> induced partition over the cover's attributes.
Partition build_partition(const MinimalCover& cover, std::size_t arity);

/// Phi[S_i] \ Phi[S_{i-1}] for class i (0-based).
FDSet class_fds(const Partition& partition, std::size_t i, const FDSet& fds);

/// Forward repairability: every FD that first becomes applicable at class
/// Ci has its rhs in Ci.
bool check_forward_repairable(const Partition& partition, const FDSet& fds);
bool check_forward_repairable(const Partition& partition, const MinimalCover& cover);

/// Tries every two-way split of every class, with both orders of the halves
/// in the place of the split class. True iff none is forward repairable.
/// Throws CapabilityError for classes larger than max_class_size.
bool assert_maximally_refined(const Partition& partition, const MinimalCover& cover,
                              std::size_t max_class_size = 12);

std::string format_partition(const Partition& partition, const Schema& schema);

}  // namespace swipe
