#include "swipe/evaluator.hpp"

namespace swipe {

QualityReport evaluate(const Relation& dirty, const Relation& repaired, const Relation& gold) {
    if (!(dirty.schema() == repaired.schema()) || !(dirty.schema() == gold.schema())) {
        throw SchemaError("dirty, repaired and gold relations must share one schema");
    }
    QualityReport q;
    for (const auto& gold_tuple : gold.tuples()) {
        if (!dirty.has_tid(gold_tuple.tid) || !repaired.has_tid(gold_tuple.tid)) {
            throw LookupError("gold tid " + std::to_string(gold_tuple.tid) + " missing from dirty or repaired data");
        }
        const auto& d = dirty.by_tid(gold_tuple.tid).cells;
        const auto& r = repaired.by_tid(gold_tuple.tid).cells;
        const auto& g = gold_tuple.cells;
        for (std::size_t a = 0; a < g.size(); ++a) {
            const bool changed = !(d[a] == r[a]);
            if (changed) ++q.repaired_cells;
            if (changed && r[a] == g[a]) ++q.correctly_repaired_cells;
            if (!(d[a] == g[a])) ++q.erroneous_cells;
        }
    }
    const auto correct = static_cast<double>(q.correctly_repaired_cells);
    if (q.repaired_cells > 0) q.precision = correct / static_cast<double>(q.repaired_cells);
    if (q.erroneous_cells > 0) q.recall = correct / static_cast<double>(q.erroneous_cells);
    if (q.precision + q.recall > 0) q.f_score = 2 * q.precision * q.recall / (q.precision + q.recall);
    return q;
}

}  // namespace swipe
