#pragma once

#include <cstddef>

#include "swipe/relation.hpp"

namespace swipe {

struct QualityReport {
    std::size_t repaired_cells = 0;
    std::size_t correctly_repaired_cells = 0;
    std::size_t erroneous_cells = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
};

/// Cell-level precision/recall of `repaired` against `gold`, counting only
/// tuples present in `gold`. A repaired cell differs between dirty and
/// repaired; an erroneous cell differs between dirty and gold; a correct
/// repair is a repaired cell equal to gold.
QualityReport evaluate(const Relation& dirty, const Relation& repaired, const Relation& gold);

}  // namespace swipe
