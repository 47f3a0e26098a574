#include "swipe/partition.hpp"

#include <algorithm>
#include <numeric>

namespace swipe {

Preorder::Preorder(std::size_t arity) : arity_(arity), bits_(arity * arity, false) {
    for (AttrIndex a = 0; a < arity; ++a) add(a, a);
}

void Preorder::close() {
    for (std::size_t k = 0; k < arity_; ++k) {
        for (std::size_t i = 0; i < arity_; ++i) {
            if (!contains(i, k)) continue;
            for (std::size_t j = 0; j < arity_; ++j) {
                if (contains(k, j)) add(i, j);
            }
        }
    }
}

AttributeSet Partition::attributes() const {
    AttributeSet out;
    for (const auto& c : classes) out = out.united(c);
    return out;
}

std::size_t Partition::class_of(AttrIndex a) const {
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i].contains(a)) return i;
    }
    return classes.size();
}

Preorder build_preorder(const FDSet& fds, std::size_t arity) {
    Preorder pre(arity);
    for (const auto& fd : fds) {
        for (AttrIndex b : fd.lhs) pre.add(b, fd.rhs);
    }
    pre.close();
    return pre;
}

Preorder build_preorder(const MinimalCover& cover, std::size_t arity) { return build_preorder(cover.fds(), arity); }

Partition induced_partition(const Preorder& preorder, const AttributeSet& attrs) {
    // Quotient by mutual reachability.
    std::vector<AttributeSet> classes;
    std::vector<bool> placed(preorder.arity(), false);
    for (AttrIndex a : attrs) {
        if (placed[a]) continue;
        AttributeSet cls;
        for (AttrIndex b : attrs) {
            if (preorder.equivalent(a, b)) {
                cls.insert(b);
                placed[b] = true;
            }
        }
        classes.push_back(std::move(cls));
    }

    // Kahn-style topological sort. A class is ready once every class that
    // must precede it is emitted; ties go to the smallest attribute index.
    const std::size_t n = classes.size();
    auto precedes = [&](std::size_t i, std::size_t j) {
        return i != j && preorder.contains(classes[i].front(), classes[j].front());
    };
    Partition out;
    std::vector<bool> done(n, false);
    for (std::size_t emitted = 0; emitted < n; ++emitted) {
        std::size_t best = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (done[j]) continue;
            bool ready = true;
            for (std::size_t i = 0; i < n && ready; ++i) {
                if (!done[i] && precedes(i, j)) ready = false;
            }
            if (ready && (best == n || classes[j].front() < classes[best].front())) best = j;
        }
        done[best] = true;
        out.classes.push_back(classes[best]);
    }
    return out;
}

Partition build_partition(const MinimalCover& cover, std::size_t arity) {
    return induced_partition(build_preorder(cover, arity), cover.fds().attributes());
}

FDSet class_fds(const Partition& partition, std::size_t i, const FDSet& fds) {
    AttributeSet before;
    for (std::size_t j = 0; j < i; ++j) before = before.united(partition[j]);
    const AttributeSet upto = before.united(partition[i]);
    FDSet out;
    for (const auto& fd : fds) {
        const bool in_upto = fd.lhs.is_subset_of(upto) && upto.contains(fd.rhs);
        const bool in_before = fd.lhs.is_subset_of(before) && before.contains(fd.rhs);
        if (in_upto && !in_before) out.add(fd);
    }
    return out;
}

bool check_forward_repairable(const Partition& partition, const FDSet& fds) {
    for (std::size_t i = 0; i < partition.size(); ++i) {
        for (const auto& fd : class_fds(partition, i, fds)) {
            if (!partition[i].contains(fd.rhs)) return false;
        }
    }
    return true;
}

bool check_forward_repairable(const Partition& partition, const MinimalCover& cover) {
    return check_forward_repairable(partition, cover.fds());
}

bool assert_maximally_refined(const Partition& partition, const MinimalCover& cover, std::size_t max_class_size) {
    for (std::size_t i = 0; i < partition.size(); ++i) {
        const auto& members = partition[i].items();
        const std::size_t n = members.size();
        if (n < 2) continue;
        if (n > max_class_size) {
            throw CapabilityError("class of size " + std::to_string(n) + " exceeds exhaustive split limit " +
                                  std::to_string(max_class_size));
        }
        // Masks with the top bit clear enumerate each unordered split once.
        const std::uint64_t limit = std::uint64_t{1} << (n - 1);
        for (std::uint64_t mask = 1; mask < limit; ++mask) {
            AttributeSet first;
            AttributeSet second;
            for (std::size_t b = 0; b < n; ++b) {
                ((mask >> b) & 1U ? first : second).insert(members[b]);
            }
            for (int order = 0; order < 2; ++order) {
                Partition refined;
                for (std::size_t j = 0; j < partition.size(); ++j) {
                    if (j != i) {
                        refined.classes.push_back(partition[j]);
                    } else {
                        refined.classes.push_back(order == 0 ? first : second);
                        refined.classes.push_back(order == 0 ? second : first);
                    }
                }
                if (check_forward_repairable(refined, cover)) return false;
            }
        }
    }
    return true;
}

std::string format_partition(const Partition& partition, const Schema& schema) {
    std::string out;
    for (std::size_t i = 0; i < partition.size(); ++i) {
        out += "C" + std::to_string(i + 1) + ": {";
        bool first = true;
        for (AttrIndex a : partition[i]) {
            if (!first) out += ", ";
            out += schema.name(a);
            first = false;
        }
        out += "}\n";
    }
    return out;
}

}  // namespace swipe
