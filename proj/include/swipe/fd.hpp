#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swipe/relation.hpp"

namespace swipe {

class FdParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// X -> a with a single right-hand side attribute.
struct FD {
    AttributeSet lhs;
    AttrIndex rhs = 0;

    bool is_trivial() const { return lhs.contains(rhs); }
    bool is_unary() const { return lhs.size() == 1; }

    friend bool operator==(const FD&, const FD&) = default;
    friend auto operator<=>(const FD&, const FD&) = default;
};

/// Insertion-ordered set of FDs; duplicates are ignored.
class FDSet {
  public:
    FDSet() = default;
    FDSet(std::initializer_list<FD> fds);
    explicit FDSet(std::vector<FD> fds);

    bool add(FD fd);
    bool contains(const FD& fd) const;

    std::size_t size() const { return fds_.size(); }
    bool empty() const { return fds_.empty(); }
    auto begin() const { return fds_.begin(); }
    auto end() const { return fds_.end(); }
    const FD& operator[](std::size_t i) const { return fds_[i]; }
    const std::vector<FD>& items() const { return fds_; }

    /// Every attribute mentioned on either side.
    AttributeSet attributes() const;

    friend bool operator==(const FDSet&, const FDSet&) = default;

  private:
    std::vector<FD> fds_;
};

/// An FD set that is equivalent to its source, has irreducible left-hand
/// sides and contains no redundant member. Only minimal_cover builds one.
class MinimalCover {
  public:
    MinimalCover() = default;

    const FDSet& fds() const { return fds_; }
    std::size_t size() const { return fds_.size(); }
    auto begin() const { return fds_.begin(); }
    auto end() const { return fds_.end(); }

  private:
    friend MinimalCover minimal_cover(const FDSet& fds);
    explicit MinimalCover(FDSet fds) : fds_(std::move(fds)) {}

    FDSet fds_;
};

AttributeSet attribute_closure(const AttributeSet& attrs, const FDSet& fds);
bool implies(const FDSet& fds, const FD& fd);
bool equivalent(const FDSet& lhs, const FDSet& rhs);

/// Left-hand-side reduction followed by redundant-FD elimination, both in
/// input order. Trivial FDs are dropped.
MinimalCover minimal_cover(const FDSet& fds);

/// Phi[Z]: the members whose attributes all lie in `z`.
FDSet project_fds(const FDSet& fds, const AttributeSet& z);

/// Groups of tids that agree on the lhs but carry two or more rhs values.
/// Empty iff the relation satisfies the FD.
std::vector<std::vector<Tid>> violates(const Relation& rel, const FD& fd, NullSemantics nulls = NullSemantics::kEqual);

bool satisfies(const Relation& rel, const FDSet& fds, NullSemantics nulls = NullSemantics::kEqual);

/// Parses `a,b -> c` lines. An unquoted `#` starts a comment; names holding
/// `#`, `,` or `->` are written in double quotes. Blank lines are skipped.
FDSet parse_fds(std::istream& in, const Schema& schema);
FDSet load_fds(const std::filesystem::path& path, const Schema& schema);

std::string format_fd(const FD& fd, const Schema& schema);
void write_fds(std::ostream& out, const FDSet& fds, const Schema& schema);

}  // namespace swipe
