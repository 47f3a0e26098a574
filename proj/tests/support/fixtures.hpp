#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>

#include "swipe/fd.hpp"
#include "swipe/relation.hpp"

namespace fixtures {

inline std::filesystem::path dir() { return SWIPE_FIXTURES_DIR; }

inline swipe::CsvOptions hospital_csv() {
    swipe::CsvOptions o;
    o.tid_column = "tid";
    return o;
}

inline swipe::Relation hospital() { return swipe::load_csv(dir() / "hospital_snippet.csv", hospital_csv()); }
inline swipe::Relation hospital_gold() {
    return swipe::load_csv(dir() / "hospital_snippet_gold.csv", hospital_csv());
}
inline swipe::FDSet hospital_fds(const swipe::Schema& schema) {
    return swipe::load_fds(dir() / "hospital_fds.txt", schema);
}

inline swipe::FD fd(const swipe::Schema& s, std::initializer_list<const char*> lhs, const char* rhs) {
    swipe::FD out;
    for (const char* name : lhs) out.lhs.insert(s.index_of(name));
    out.rhs = s.index_of(rhs);
    return out;
}

/// Relation over single-letter attributes from rows of strings; "~" is NULL.
inline swipe::Relation table(std::initializer_list<const char*> names,
                             std::initializer_list<std::initializer_list<const char*>> rows) {
    std::vector<std::string> cols(names.begin(), names.end());
    swipe::Relation rel{swipe::Schema(cols)};
    swipe::Tid tid = 1;
    for (const auto& row : rows) {
        std::vector<swipe::Value> cells;
        for (const char* v : row) {
            cells.push_back(std::string(v) == "~" ? swipe::Value::null() : swipe::Value(v));
        }
        rel.add(tid++, std::move(cells));
    }
    return rel;
}

}  // namespace fixtures
