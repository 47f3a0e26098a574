#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "swipe/partition.hpp"

using namespace swipe;

namespace {
constexpr AttrIndex A = 0, B = 1, C = 2;

std::vector<oracle::Mask> masks(const Partition& p) {
    std::vector<oracle::Mask> out;
    for (const auto& c : p.classes) out.push_back(oracle::to_mask(c));
    return out;
}
}  // namespace

TEST_CASE("preorder") {
    SUBCASE("empty set gives the identity") {
        const Preorder p = build_preorder(minimal_cover({}), 3);
        for (AttrIndex x = 0; x < 3; ++x) {
            for (AttrIndex y = 0; y < 3; ++y) CHECK(p.contains(x, y) == (x == y));
        }
    }
    SUBCASE("transitivity") {
        const Preorder p = build_preorder(minimal_cover({{{A}, B}, {{B}, C}}), 3);
        CHECK(p.contains(A, C));
        CHECK_FALSE(p.contains(C, A));
    }
    SUBCASE("hospital name and #provider are equivalent") {
        const Relation rel = fixtures::hospital();
        const Schema& s = rel.schema();
        const Preorder p = build_preorder(minimal_cover(fixtures::hospital_fds(s)), s.arity());
        CHECK(p.equivalent(s.index_of("hospital name"), s.index_of("#provider")));
    }
}

TEST_CASE("induced partition") {
    CHECK(build_partition(minimal_cover({}), 2).size() == 0);
    CHECK(induced_partition(Preorder(2), {A, B}) == Partition{{{A}, {B}}});
    CHECK(build_partition(minimal_cover({{{A}, B}}), 2) == Partition{{{A}, {B}}});
    CHECK(build_partition(minimal_cover({{{B}, A}}), 2) == Partition{{{B}, {A}}});

    const Relation rel = fixtures::hospital();
    const Schema& s = rel.schema();
    const Partition p = build_partition(minimal_cover(fixtures::hospital_fds(s)), s.arity());
    REQUIRE(p.size() == 7);
    CHECK(p[0] == AttributeSet{s.index_of("hospital name"), s.index_of("#provider")});
    CHECK(p.class_of(s.index_of("condition")) > p.class_of(s.index_of("measure code")));
    CHECK(p.class_of(s.index_of("city")) > 0);
    CHECK(p[6] == AttributeSet{s.index_of("condition")});
    CHECK(format_partition(p, s).rfind("C1: {hospital name, #provider}\n", 0) == 0);
}

TEST_CASE("forward repairability") {
    const MinimalCover ab = minimal_cover({{{A}, B}});
    CHECK(check_forward_repairable(Partition{{{A, B}}}, ab));
    CHECK(check_forward_repairable(Partition{{{A}, {B}}}, ab));
    CHECK_FALSE(check_forward_repairable(Partition{{{B}, {A}}}, ab));

    const Relation rel = fixtures::hospital();
    const Schema& s = rel.schema();
    const MinimalCover cover = minimal_cover(fixtures::hospital_fds(s));
    CHECK(check_forward_repairable(build_partition(cover, s.arity()), cover));
}

TEST_CASE("maximal refinement") {
    CHECK(assert_maximally_refined(Partition{{{A}, {B}}}, minimal_cover({{{A}, B}})));
    CHECK(assert_maximally_refined(Partition{{{A, B}}}, minimal_cover({{{A}, B}, {{B}, A}})));
    CHECK_FALSE(assert_maximally_refined(Partition{{{A, B}}}, minimal_cover({{{A}, B}})));

    const Relation rel = fixtures::hospital();
    const Schema& s = rel.schema();
    const MinimalCover cover = minimal_cover(fixtures::hospital_fds(s));
    CHECK(assert_maximally_refined(build_partition(cover, s.arity()), cover));

    FDSet ring;
    for (AttrIndex a = 0; a < 13; ++a) ring.add({{a}, (a + 1) % 13});
    const MinimalCover big = minimal_cover(ring);
    CHECK_THROWS_AS(assert_maximally_refined(build_partition(big, 13), big), CapabilityError);
}

TEST_CASE("class FDs are the newly applicable ones") {
    const MinimalCover cover = minimal_cover({{{A}, B}, {{B}, C}, {{A, C}, B}});
    const Partition p = build_partition(cover, 3);
    REQUIRE(p.size() == 3);
    FDSet seen;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (const auto& fd : class_fds(p, i, cover.fds())) {
            CHECK(p.class_of(fd.rhs) == i);
            CHECK(seen.add(fd));
        }
    }
    CHECK(seen.size() == cover.size());
}

TEST_CASE("induced partition is forward repairable and cannot be refined") {
    std::mt19937_64 rng(5);
    for (int round = 0; round < 150; ++round) {
        const std::size_t arity = 2 + rng() % 5;
        const MinimalCover cover = minimal_cover(oracle::random_fds(rng, arity, 1 + rng() % 7, 2));
        const Partition p = build_partition(cover, arity);
        CHECK(p.attributes() == cover.fds().attributes());
        CHECK(oracle::forward_repairable(masks(p), cover.fds()));
        CHECK(check_forward_repairable(p, cover));
        CHECK(assert_maximally_refined(p, cover));

        bool refined = false;
        oracle::for_each_ordered_partition(oracle::to_mask(p.attributes()), [&](const std::vector<oracle::Mask>& q) {
            if (oracle::strictly_refines(q, masks(p)) && oracle::forward_repairable(q, cover.fds())) refined = true;
        });
        CHECK_FALSE(refined);
    }
}

TEST_CASE("check_forward_repairable agrees with the direct evaluation") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 100; ++round) {
        const std::size_t arity = 2 + rng() % 4;
        const FDSet fds = oracle::random_fds(rng, arity, 1 + rng() % 5, 2);
        oracle::for_each_ordered_partition(oracle::to_mask(AttributeSet::range(arity)),
                                           [&](const std::vector<oracle::Mask>& q) {
                                               Partition p;
                                               for (auto m : q) p.classes.push_back(oracle::from_mask(m));
                                               REQUIRE(check_forward_repairable(p, fds) ==
                                                       oracle::forward_repairable(q, fds));
                                           });
    }
}
