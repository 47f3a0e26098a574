#include "swipe/datagen.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "swipe/swipe.hpp"

namespace swipe {

Dataset generate(const GenConfig& cfg) {
    if (cfg.n_attrs < 2) throw std::invalid_argument("n_attrs must be at least 2");
    if (cfg.domain_size < 2) throw std::invalid_argument("domain_size must be at least 2");

    std::mt19937_64 rng(cfg.seed);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < cfg.n_attrs; ++i) names.push_back("a" + std::to_string(i + 1));
    Dataset out{Relation(Schema(std::move(names))), {}};

    std::vector<std::string> symbols;
    for (std::size_t s = 0; s < cfg.domain_size; ++s) symbols.push_back(std::to_string(s));

    std::uniform_int_distribution<std::size_t> pick_value(0, cfg.domain_size - 1);
    for (std::size_t row = 0; row < cfg.n_rows; ++row) {
        std::vector<Value> cells;
        cells.reserve(cfg.n_attrs);
        for (std::size_t a = 0; a < cfg.n_attrs; ++a) cells.emplace_back(symbols[pick_value(rng)]);
        out.relation.add(static_cast<Tid>(row + 1), std::move(cells));
    }

    const std::size_t max_lhs = std::min(cfg.n_attrs - 1, (cfg.n_attrs + 9) / 10);
    std::uniform_int_distribution<std::size_t> pick_lhs_size(1, max_lhs);
    std::vector<AttrIndex> attrs(cfg.n_attrs);
    std::iota(attrs.begin(), attrs.end(), AttrIndex{0});
    const std::size_t max_attempts = 1000 * cfg.n_attrs;
    std::size_t attempts = 0;
    while (out.fds.size() < cfg.n_attrs) {
        if (++attempts > max_attempts) throw std::runtime_error("could not sample enough distinct FDs");
        const std::size_t lhs_size = pick_lhs_size(rng);
        // Partial Fisher-Yates: the first lhs_size slots become the lhs, the next one the rhs.
        for (std::size_t i = 0; i <= lhs_size; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, cfg.n_attrs - 1);
            std::swap(attrs[i], attrs[pick(rng)]);
        }
        FD fd{AttributeSet(std::vector<AttrIndex>(attrs.begin(), attrs.begin() + static_cast<std::ptrdiff_t>(lhs_size))),
              attrs[lhs_size]};
        out.fds.add(std::move(fd));
    }
    return out;
}

std::vector<BenchCell> run_bench(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& attrs,
                                 std::size_t repetitions, std::uint64_t seed) {
    if (rows.empty() || attrs.empty()) throw std::invalid_argument("bench needs at least one row and attribute count");
    if (repetitions == 0) throw std::invalid_argument("bench needs at least one repetition");
    std::vector<BenchCell> cells;
    for (std::size_t n_attrs : attrs) {
        for (std::size_t n_rows : rows) {
            BenchCell cell{n_rows, n_attrs, {}, 0.0};
            for (std::size_t r = 0; r < repetitions; ++r) {
                const Dataset data = generate({n_rows, n_attrs, seed + r, 10});
                SwipeOptions options;
                options.seed = seed + r;
                const auto start = std::chrono::steady_clock::now();
                const RepairOutcome outcome = swipe(data.relation, data.fds, options);
                const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
                cell.samples_ms.push_back(elapsed.count());
            }
            cell.mean_ms = std::accumulate(cell.samples_ms.begin(), cell.samples_ms.end(), 0.0) /
                           static_cast<double>(cell.samples_ms.size());
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace swipe
