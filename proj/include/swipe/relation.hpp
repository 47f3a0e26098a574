#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swipe {

using Tid = std::int64_t;
using AttrIndex = std::size_t;

class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class LookupError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class CsvError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A cell value: either a constant (exact source text) or NULL.
class Value {
  public:
    Value() = default;
    explicit Value(std::string text) : text_(std::move(text)) {}

    static Value null() { return Value{}; }

    bool is_null() const { return !text_.has_value(); }
    /// Precondition: !is_null().
    const std::string& text() const { return *text_; }

    friend bool operator==(const Value&, const Value&) = default;
    /// NULL sorts before every constant; constants compare bytewise.
    friend auto operator<=>(const Value& lhs, const Value& rhs) {
        return lhs.text_ <=> rhs.text_;
    }

  private:
    std::optional<std::string> text_;
};

std::string to_display(const Value& value);

/// How NULLs behave when tuples are grouped on left-hand-side values.
enum class NullSemantics {
    kEqual,     ///< NULL groups with NULL, never with a constant
    kDistinct,  ///< a NULL in any grouping attribute makes the tuple its own group
};

/// An ordered set of attribute indexes. Kept sorted and duplicate-free.
class AttributeSet {
  public:
    AttributeSet() = default;
    AttributeSet(std::initializer_list<AttrIndex> attrs);
    explicit AttributeSet(std::vector<AttrIndex> attrs);

    static AttributeSet range(std::size_t n);

    bool contains(AttrIndex a) const;
    bool insert(AttrIndex a);
    bool erase(AttrIndex a);
    bool is_subset_of(const AttributeSet& other) const;
    bool intersects(const AttributeSet& other) const;
    AttributeSet united(const AttributeSet& other) const;

    std::size_t size() const { return attrs_.size(); }
    bool empty() const { return attrs_.empty(); }
    auto begin() const { return attrs_.begin(); }
    auto end() const { return attrs_.end(); }
    AttrIndex front() const { return attrs_.front(); }
    const std::vector<AttrIndex>& items() const { return attrs_; }

    friend bool operator==(const AttributeSet&, const AttributeSet&) = default;
    friend auto operator<=>(const AttributeSet&, const AttributeSet&) = default;

  private:
    std::vector<AttrIndex> attrs_;
};

/// Ordered attribute names. The tid column is never part of a schema.
class Schema {
  public:
    Schema() = default;
    explicit Schema(std::vector<std::string> names);

    std::size_t arity() const { return names_.size(); }
    const std::string& name(AttrIndex a) const { return names_.at(a); }
    const std::vector<std::string>& names() const { return names_; }

    /// Throws SchemaError for unknown names.
    AttrIndex index_of(std::string_view name) const;
    std::optional<AttrIndex> find(std::string_view name) const;

    void check(const AttributeSet& attrs) const;

    friend bool operator==(const Schema& lhs, const Schema& rhs) { return lhs.names_ == rhs.names_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, AttrIndex> index_;
};

struct Tuple {
    Tid tid = 0;
    std::vector<Value> cells;

    friend bool operator==(const Tuple&, const Tuple&) = default;
};

using ValueVector = std::vector<Value>;

class Relation {
  public:
    Relation() = default;
    explicit Relation(Schema schema) : schema_(std::move(schema)) {}

    const Schema& schema() const { return schema_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    const Tuple& tuple(std::size_t row) const { return tuples_[row]; }

    /// Appends a tuple. Throws SchemaError on arity mismatch or duplicate tid.
    void add(Tuple tuple);
    void add(Tid tid, std::vector<Value> cells) { add(Tuple{tid, std::move(cells)}); }

    const Value& at(std::size_t row, AttrIndex a) const { return tuples_[row].cells[a]; }
    void set(std::size_t row, AttrIndex a, Value value) { tuples_[row].cells[a] = std::move(value); }

    /// Row position of a tid. Throws LookupError when absent.
    std::size_t row_of(Tid tid) const;
    bool has_tid(Tid tid) const { return rows_by_tid_.contains(tid); }
    const Tuple& by_tid(Tid tid) const { return tuples_[row_of(tid)]; }

    std::size_t null_count(std::size_t row) const;

    friend bool operator==(const Relation& lhs, const Relation& rhs) {
        return lhs.schema_ == rhs.schema_ && lhs.tuples_ == rhs.tuples_;
    }

  private:
    Schema schema_;
    std::vector<Tuple> tuples_;
    std::unordered_map<Tid, std::size_t> rows_by_tid_;
};

/// R[X]: duplicate-free projection.
std::set<ValueVector> project(const Relation& rel, const AttributeSet& attrs);

/// <R>_X: projection that keeps multiplicities.
std::map<ValueVector, std::size_t> bag_project(const Relation& rel, const AttributeSet& attrs);

/// Sub-relation with the requested tids, in the original row order.
Relation select_by_tids(const Relation& rel, const std::set<Tid>& tids);

/// Byte-exact grouping key for the values of `attrs` in one row.
/// Under NullSemantics::kDistinct a row with a NULL in `attrs` gets a key
/// unique to its tid.
std::string group_key(const Relation& rel, std::size_t row, const AttributeSet& attrs,
                      NullSemantics nulls = NullSemantics::kEqual);

struct CsvOptions {
    std::string null_token;
    std::optional<std::string> tid_column;
};

Relation read_csv(std::istream& in, const CsvOptions& options = {});
Relation load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes the header and rows. When `tid_column` is set, tids are written
/// as the first column under that name.
void write_csv(std::ostream& out, const Relation& rel, const CsvOptions& options = {});
void save_csv(const Relation& rel, const std::filesystem::path& path, const CsvOptions& options = {});

}  // namespace swipe
