#include "swipe/relation.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace swipe {

std::string to_display(const Value& value) { return value.is_null() ? "NULL" : value.text(); }

AttributeSet::AttributeSet(std::initializer_list<AttrIndex> attrs)
    : AttributeSet(std::vector<AttrIndex>(attrs)) {}

AttributeSet::AttributeSet(std::vector<AttrIndex> attrs) : attrs_(std::move(attrs)) {
    std::sort(attrs_.begin(), attrs_.end());
    attrs_.erase(std::unique(attrs_.begin(), attrs_.end()), attrs_.end());
}

AttributeSet AttributeSet::range(std::size_t n) {
    AttributeSet out;
    out.attrs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.attrs_[i] = i;
    return out;
}

bool AttributeSet::contains(AttrIndex a) const {
    return std::binary_search(attrs_.begin(), attrs_.end(), a);
}

bool AttributeSet::insert(AttrIndex a) {
    auto it = std::lower_bound(attrs_.begin(), attrs_.end(), a);
    if (it != attrs_.end() && *it == a) return false;
    attrs_.insert(it, a);
    return true;
}

bool AttributeSet::erase(AttrIndex a) {
    auto it = std::lower_bound(attrs_.begin(), attrs_.end(), a);
    if (it == attrs_.end() || *it != a) return false;
    attrs_.erase(it);
    return true;
}

bool AttributeSet::is_subset_of(const AttributeSet& other) const {
    return std::includes(other.attrs_.begin(), other.attrs_.end(), attrs_.begin(), attrs_.end());
}

bool AttributeSet::intersects(const AttributeSet& other) const {
    auto a = attrs_.begin();
    auto b = other.attrs_.begin();
    while (a != attrs_.end() && b != other.attrs_.end()) {
        if (*a == *b) return true;
        if (*a < *b) ++a;
        else ++b;
    }
    return false;
}

AttributeSet AttributeSet::united(const AttributeSet& other) const {
    AttributeSet out;
    std::set_union(attrs_.begin(), attrs_.end(), other.attrs_.begin(), other.attrs_.end(),
                   std::back_inserter(out.attrs_));
    return out;
}

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
    for (AttrIndex i = 0; i < names_.size(); ++i) {
        if (!index_.emplace(names_[i], i).second) {
            throw SchemaError("duplicate attribute name '" + names_[i] + "'");
        }
    }
}

std::optional<AttrIndex> Schema::find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

AttrIndex Schema::index_of(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw SchemaError("unknown attribute '" + std::string(name) + "'");
}

void Schema::check(const AttributeSet& attrs) const {
    for (AttrIndex a : attrs) {
        if (a >= arity()) throw SchemaError("attribute index " + std::to_string(a) + " out of schema range");
    }
}

void Relation::add(Tuple tuple) {
    if (tuple.cells.size() != schema_.arity()) {
        throw SchemaError("tuple " + std::to_string(tuple.tid) + " has " + std::to_string(tuple.cells.size()) +
                          " cells, schema has " + std::to_string(schema_.arity()));
    }
    if (!rows_by_tid_.emplace(tuple.tid, tuples_.size()).second) {
        throw SchemaError("duplicate tid " + std::to_string(tuple.tid));
    }
    tuples_.push_back(std::move(tuple));
}

std::size_t Relation::row_of(Tid tid) const {
    auto it = rows_by_tid_.find(tid);
    if (it == rows_by_tid_.end()) throw LookupError("unknown tid " + std::to_string(tid));
    return it->second;
}

std::size_t Relation::null_count(std::size_t row) const {
    const auto& cells = tuples_[row].cells;
    return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const Value& v) { return v.is_null(); }));
}

namespace {

ValueVector restrict(const Tuple& tuple, const AttributeSet& attrs) {
    ValueVector out;
    out.reserve(attrs.size());
    for (AttrIndex a : attrs) out.push_back(tuple.cells[a]);
    return out;
}

}  // namespace

std::set<ValueVector> project(const Relation& rel, const AttributeSet& attrs) {
    rel.schema().check(attrs);
    std::set<ValueVector> out;
    for (const auto& tuple : rel.tuples()) out.insert(restrict(tuple, attrs));
    return out;
}

std::map<ValueVector, std::size_t> bag_project(const Relation& rel, const AttributeSet& attrs) {
    rel.schema().check(attrs);
    std::map<ValueVector, std::size_t> out;
    for (const auto& tuple : rel.tuples()) ++out[restrict(tuple, attrs)];
    return out;
}

Relation select_by_tids(const Relation& rel, const std::set<Tid>& tids) {
    for (Tid tid : tids) {
        if (!rel.has_tid(tid)) throw LookupError("unknown tid " + std::to_string(tid));
    }
    Relation out(rel.schema());
    for (const auto& tuple : rel.tuples()) {
        if (tids.contains(tuple.tid)) out.add(tuple);
    }
    return out;
}

std::string group_key(const Relation& rel, std::size_t row, const AttributeSet& attrs, NullSemantics nulls) {
    std::string key;
    const auto& tuple = rel.tuple(row);
    for (AttrIndex a : attrs) {
        const Value& v = tuple.cells[a];
        if (v.is_null()) {
            if (nulls == NullSemantics::kDistinct) {
                return "\x02" + std::to_string(tuple.tid);
            }
            key.push_back('\x00');
            continue;
        }
        const auto len = static_cast<std::uint32_t>(v.text().size());
        key.push_back('\x01');
        key.append(reinterpret_cast<const char*>(&len), sizeof(len));
        key.append(v.text());
    }
    return key;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

struct Field {
    std::string text;
    bool quoted = false;
};

// Reads one record. Returns false at end of input.
bool read_record(std::istream& in, std::vector<Field>& fields, std::size_t& line) {
    fields.clear();
    int c = in.get();
    if (c == EOF) return false;
    ++line;
    Field field;
    bool in_quotes = false;
    bool after_quote = false;
    for (;; c = in.get()) {
        if (in_quotes) {
            if (c == EOF) throw CsvError("line " + std::to_string(line) + ": unterminated quoted field");
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.text.push_back('"');
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line;
                field.text.push_back(static_cast<char>(c));
            }
            continue;
        }
        if (c == ',' ) {
            fields.push_back(std::move(field));
            field = {};
            after_quote = false;
        } else if (c == '\n' || c == EOF) {
            break;
        } else if (c == '\r') {
            if (in.peek() == '\n') in.get();
            break;
        } else if (c == '"') {
            if (!field.text.empty() || after_quote) {
                throw CsvError("line " + std::to_string(line) + ": stray quote inside field");
            }
            in_quotes = true;
            field.quoted = true;
        } else {
            if (after_quote) throw CsvError("line " + std::to_string(line) + ": text after closing quote");
            field.text.push_back(static_cast<char>(c));
        }
    }
    fields.push_back(std::move(field));
    return true;
}

Tid parse_tid(const std::string& text, std::size_t line) {
    Tid tid = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), tid);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw CsvError("line " + std::to_string(line) + ": malformed tid '" + text + "'");
    }
    return tid;
}

bool needs_quotes(const std::string& text) {
    return text.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& text, bool force_quotes) {
    if (!force_quotes && !needs_quotes(text)) {
        out << text;
        return;
    }
    out << '"';
    for (char c : text) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

Relation read_csv(std::istream& in, const CsvOptions& options) {
    std::vector<Field> fields;
    std::size_t line = 0;
    if (!read_record(in, fields, line)) throw CsvError("missing header row");

    std::optional<std::size_t> tid_pos;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (options.tid_column && fields[i].text == *options.tid_column) {
            tid_pos = i;
        } else {
            names.push_back(fields[i].text);
        }
    }
    if (options.tid_column && !tid_pos) {
        throw CsvError("tid column '" + *options.tid_column + "' not found in header");
    }
    const std::size_t width = fields.size();
    Relation rel{Schema(std::move(names))};

    Tid next_tid = 1;
    while (read_record(in, fields, line)) {
        if (fields.size() == 1 && fields[0].text.empty() && !fields[0].quoted && width != 1) {
            continue;  // blank line
        }
        if (fields.size() != width) {
            throw CsvError("line " + std::to_string(line) + ": expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()));
        }
        Tuple tuple;
        tuple.cells.reserve(rel.schema().arity());
        for (std::size_t i = 0; i < width; ++i) {
            if (tid_pos && i == *tid_pos) {
                tuple.tid = parse_tid(fields[i].text, line);
                continue;
            }
            if (!fields[i].quoted && fields[i].text == options.null_token) {
                tuple.cells.push_back(Value::null());
            } else {
                tuple.cells.emplace_back(std::move(fields[i].text));
            }
        }
        if (!tid_pos) tuple.tid = next_tid++;
        if (rel.has_tid(tuple.tid)) {
            throw CsvError("line " + std::to_string(line) + ": duplicate tid " + std::to_string(tuple.tid));
        }
        rel.add(std::move(tuple));
    }
    return rel;
}

Relation load_csv(const std::filesystem::path& path, const CsvOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CsvError("cannot open '" + path.string() + "'");
    return read_csv(in, options);
}

void write_csv(std::ostream& out, const Relation& rel, const CsvOptions& options) {
    bool first = true;
    auto sep = [&] {
        if (!first) out << ',';
        first = false;
    };
    if (options.tid_column) {
        sep();
        write_field(out, *options.tid_column, false);
    }
    for (const auto& name : rel.schema().names()) {
        sep();
        write_field(out, name, false);
    }
    out << '\n';
    for (const auto& tuple : rel.tuples()) {
        first = true;
        if (options.tid_column) {
            sep();
            out << tuple.tid;
        }
        for (const auto& cell : tuple.cells) {
            sep();
            if (cell.is_null()) {
                write_field(out, options.null_token, false);
            } else {
                // A constant spelled like the null token is quoted so it reads back as a constant.
                write_field(out, cell.text(), cell.text() == options.null_token);
            }
        }
        out << '\n';
    }
}

void save_csv(const Relation& rel, const std::filesystem::path& path, const CsvOptions& options) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("cannot write '" + path.string() + "'");
    write_csv(out, rel, options);
    out.flush();
    if (!out) throw CsvError("write failed for '" + path.string() + "'");
}

}  // namespace swipe
