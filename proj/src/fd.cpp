#include "swipe/fd.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace swipe {

FDSet::FDSet(std::initializer_list<FD> fds) {
    for (const auto& fd : fds) add(fd);
}

FDSet::FDSet(std::vector<FD> fds) {
    for (auto& fd : fds) add(std::move(fd));
}

bool FDSet::add(FD fd) {
    if (contains(fd)) return false;
    fds_.push_back(std::move(fd));
    return true;
}

bool FDSet::contains(const FD& fd) const { return std::find(fds_.begin(), fds_.end(), fd) != fds_.end(); }

AttributeSet FDSet::attributes() const {
    AttributeSet out;
    for (const auto& fd : fds_) {
        for (AttrIndex a : fd.lhs) out.insert(a);
        out.insert(fd.rhs);
    }
    return out;
}

AttributeSet attribute_closure(const AttributeSet& attrs, const FDSet& fds) {
    AttributeSet closure = attrs;
    std::vector<bool> used(fds.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < fds.size(); ++i) {
            if (used[i] || !fds[i].lhs.is_subset_of(closure)) continue;
            used[i] = true;
            if (closure.insert(fds[i].rhs)) changed = true;
        }
    }
    return closure;
}

bool implies(const FDSet& fds, const FD& fd) { return attribute_closure(fd.lhs, fds).contains(fd.rhs); }

bool equivalent(const FDSet& lhs, const FDSet& rhs) {
    return std::all_of(lhs.begin(), lhs.end(), [&](const FD& fd) { return implies(rhs, fd); }) &&
           std::all_of(rhs.begin(), rhs.end(), [&](const FD& fd) { return implies(lhs, fd); });
}

MinimalCover minimal_cover(const FDSet& fds) {
    // Reduce each lhs against the full input set: drop b from X whenever
    // (X \ {b}) -> a still follows.
    std::vector<FD> reduced;
    for (const auto& fd : fds) {
        if (fd.is_trivial()) continue;
        FD current = fd;
        for (AttrIndex b : fd.lhs) {
            if (current.lhs.size() == 1) break;
            AttributeSet smaller = current.lhs;
            smaller.erase(b);
            if (attribute_closure(smaller, fds).contains(fd.rhs)) current.lhs = std::move(smaller);
        }
        reduced.push_back(std::move(current));
    }
    FDSet working(std::move(reduced));

    // Drop members implied by the remaining ones, scanning in order.
    std::vector<FD> kept(working.begin(), working.end());
    for (std::size_t i = 0; i < kept.size();) {
        FDSet others;
        for (std::size_t j = 0; j < kept.size(); ++j) {
            if (j != i) others.add(kept[j]);
        }
        if (implies(others, kept[i])) {
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return MinimalCover(FDSet(std::move(kept)));
}

FDSet project_fds(const FDSet& fds, const AttributeSet& z) {
    FDSet out;
    for (const auto& fd : fds) {
        if (fd.lhs.is_subset_of(z) && z.contains(fd.rhs)) out.add(fd);
    }
    return out;
}

std::vector<std::vector<Tid>> violates(const Relation& rel, const FD& fd, NullSemantics nulls) {
    struct Group {
        std::vector<Tid> tids;
        const Value* first = nullptr;
        bool conflicting = false;
    };
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Group> groups;
    for (std::size_t row = 0; row < rel.size(); ++row) {
        auto [it, inserted] = index.try_emplace(group_key(rel, row, fd.lhs, nulls), groups.size());
        if (inserted) groups.emplace_back();
        Group& g = groups[it->second];
        const Value& v = rel.at(row, fd.rhs);
        if (g.first == nullptr) g.first = &v;
        else if (!(*g.first == v)) g.conflicting = true;
        g.tids.push_back(rel.tuple(row).tid);
    }
    std::vector<std::vector<Tid>> out;
    for (auto& g : groups) {
        if (g.conflicting) out.push_back(std::move(g.tids));
    }
    return out;
}

bool satisfies(const Relation& rel, const FDSet& fds, NullSemantics nulls) {
    return std::all_of(fds.begin(), fds.end(), [&](const FD& fd) { return violates(rel, fd, nulls).empty(); });
}

namespace {

std::string trim(std::string_view s) {
    const auto* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

enum class TokenKind { kName, kComma, kArrow };

struct Token {
    TokenKind kind;
    std::string text;
};

// Splits one line into names, commas and the arrow. Names may be wrapped in
// double quotes ("" escapes a quote); an unquoted '#' ends the line.
std::vector<Token> tokenize(const std::string& line, const std::string& where) {
    std::vector<Token> tokens;
    std::string name;
    bool have_name = false;
    auto flush = [&] {
        std::string t = trim(name);
        if (have_name || !t.empty()) tokens.push_back({TokenKind::kName, have_name ? name : t});
        name.clear();
        have_name = false;
    };
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '#') break;
        if (c == '"') {
            if (!trim(name).empty() || have_name) throw FdParseError(where + "unexpected quote");
            std::string quoted;
            for (++i;; ++i) {
                if (i >= line.size()) throw FdParseError(where + "unterminated quoted name");
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        quoted.push_back('"');
                        ++i;
                    } else {
                        break;
                    }
                } else {
                    quoted.push_back(line[i]);
                }
            }
            name = std::move(quoted);
            have_name = true;
        } else if (c == ',') {
            flush();
            tokens.push_back({TokenKind::kComma, {}});
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            flush();
            tokens.push_back({TokenKind::kArrow, {}});
            ++i;
        } else {
            if (have_name && c != ' ' && c != '\t' && c != '\r') throw FdParseError(where + "text after quoted name");
            if (!have_name) name.push_back(c);
        }
    }
    flush();
    return tokens;
}

bool needs_quoting(const std::string& name) {
    return name.find_first_of("#,\"") != std::string::npos || name.find("->") != std::string::npos ||
           trim(name) != name || name.empty();
}

std::string quote_name(const std::string& name) {
    if (!needs_quoting(name)) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

FDSet parse_fds(std::istream& in, const Schema& schema) {
    FDSet out;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        const auto tokens = tokenize(raw, where);
        if (tokens.empty()) continue;

        auto resolve = [&](const std::string& name) {
            auto idx = schema.find(name);
            if (!idx) throw FdParseError(where + "unknown attribute '" + name + "'");
            return *idx;
        };

        AttributeSet lhs;
        std::size_t i = 0;
        for (;;) {
            if (i >= tokens.size() || tokens[i].kind != TokenKind::kName) {
                throw FdParseError(where + "expected an attribute name in the left-hand side");
            }
            lhs.insert(resolve(tokens[i++].text));
            if (i < tokens.size() && tokens[i].kind == TokenKind::kComma) {
                ++i;
                continue;
            }
            break;
        }
        if (i >= tokens.size() || tokens[i].kind != TokenKind::kArrow) throw FdParseError(where + "missing '->'");
        ++i;
        if (i >= tokens.size() || tokens[i].kind != TokenKind::kName) {
            throw FdParseError(where + "empty right-hand side");
        }
        const AttrIndex rhs = resolve(tokens[i++].text);
        if (i != tokens.size()) throw FdParseError(where + "right-hand side must be one attribute");
        out.add(FD{std::move(lhs), rhs});
    }
    return out;
}

FDSet load_fds(const std::filesystem::path& path, const Schema& schema) {
    std::ifstream in(path);
    if (!in) throw FdParseError("cannot open '" + path.string() + "'");
    return parse_fds(in, schema);
}

std::string format_fd(const FD& fd, const Schema& schema) {
    std::string out;
    for (AttrIndex a : fd.lhs) {
        if (!out.empty()) out += ",";
        out += quote_name(schema.name(a));
    }
    return out + " -> " + quote_name(schema.name(fd.rhs));
}

void write_fds(std::ostream& out, const FDSet& fds, const Schema& schema) {
    for (const auto& fd : fds) out << format_fd(fd, schema) << '\n';
}

}  // namespace swipe
