// Optional integration check on the full Hospital dataset. Registered only
// when SWIPE_HOSPITAL_DIR is set. Expects in that directory:
//   hospital.csv       dirty data with a header row
//   hospital_gold.csv  either the same layout as hospital.csv, or long format
//                      with header tid,attribute,correct_val (tid = 0-based row)
//   hospital_fds.txt   FDs in the usual text format

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "swipe/evaluator.hpp"
#include "swipe/swipe.hpp"

using namespace swipe;
namespace fs = std::filesystem;

namespace {

constexpr double kMinF = 0.88;
constexpr double kMaxF = 0.94;
constexpr double kMaxSeconds = 5.0;
constexpr std::uint64_t kSeeds = 5;

Relation load_gold(const fs::path& path, const Relation& dirty) {
    Relation gold = load_csv(path);
    const auto& names = gold.schema().names();
    if (names != std::vector<std::string>{"tid", "attribute", "correct_val"}) return gold;
    Relation out = dirty;
    for (std::size_t row = 0; row < gold.size(); ++row) {
        const std::size_t target = std::stoul(gold.at(row, 0).text());
        const auto attr = dirty.schema().find(gold.at(row, 1).text());
        if (!attr || target >= out.size()) continue;
        out.set(target, *attr, gold.at(row, 2));
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: hospital_integration <dir>\n");
        return 2;
    }
    const fs::path dir = argv[1];
    const Relation dirty = load_csv(dir / "hospital.csv");
    const Relation gold = load_gold(dir / "hospital_gold.csv", dirty);
    const FDSet fds = load_fds(dir / "hospital_fds.txt", dirty.schema());

    int failures = 0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        SwipeOptions o;
        o.seed = seed;
        const auto start = std::chrono::steady_clock::now();
        const RepairOutcome out = swipe::swipe(dirty, fds, o);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const QualityReport q = evaluate(dirty, out.repaired, gold);
        const bool ok = q.f_score >= kMinF && q.f_score <= kMaxF && seconds < kMaxSeconds;
        failures += !ok;
        std::printf("%s [11] hospital seed %llu: P=%.3f R=%.3f F=%.3f (need [%.2f, %.2f]) time=%.3fs (need < %.1fs)\n",
                    ok ? "PASS" : "FAIL", static_cast<unsigned long long>(seed), q.precision, q.recall, q.f_score,
                    kMinF, kMaxF, seconds, kMaxSeconds);
    }
    return failures;
}
