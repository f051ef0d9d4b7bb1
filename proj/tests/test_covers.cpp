#include <doctest.h>

#include "divcover/covers.hpp"
#include "divcover/landscape.hpp"
#include "test_util.hpp"

using namespace divcover;

namespace {
const Graph g = base_instance();
}

TEST_CASE("covers print as sorted vertex lists and msb-first bitstrings") {
    const VertexSet s = VertexSet::from_vertices(8, {4, 1, 2});
    CHECK(s.vertex_list_text() == "{1,2,4}");
    CHECK(s.bitstring() == "11010000");
    CHECK(VertexSet(3).vertex_list_text() == "{}");
    CHECK(VertexSet(3).bitstring() == "000");
}

TEST_CASE("is_cover on the base instance") {
    CHECK(is_cover(g, VertexSet::from_vertices(8, {1, 2, 4})));
    CHECK(is_cover(g, VertexSet::full(8)));
    CHECK_FALSE(is_cover(g, VertexSet::from_vertices(8, {1, 2})));
    CHECK_THROWS_AS(is_cover(g, VertexSet(5)), std::invalid_argument);
}

TEST_CASE("is_non_excessive distinguishes the named covers") {
    CHECK(is_non_excessive(g, cover_V1()));
    CHECK(is_non_excessive(g, cover_V2()));
    CHECK(is_non_excessive(g, cover_V4()));
    // v3 is isolated, hence removable
    CHECK_FALSE(is_non_excessive(g, cover_V3()));
    CHECK_FALSE(is_non_excessive(g, VertexSet::full(8)));
    CHECK_THROWS_AS(is_non_excessive(g, VertexSet::from_vertices(8, {1, 2})),
                    std::invalid_argument);
}

TEST_CASE("enumerate_covers pins the small-cover structure") {
    CHECK(enumerate_covers(g, 2).empty());

    const auto covers3 = enumerate_covers(g, 3);
    REQUIRE(covers3.size() == 1);
    CHECK(covers3[0] == VertexSet::from_vertices(8, {1, 2, 4}));

    // frozen from the full-subset scan: the 3-cover, its five 4-supersets,
    // plus V1, V2, V4, in bitstring-lexicographic order
    const auto covers4 = enumerate_covers(g, 4);
    const std::vector<VertexSet> expected = {
        cover_V4(),                                // 00001111
        cover_V2(),                                // 01011100
        cover_V1(),                                // 11000011
        VertexSet::from_vertices(8, {1, 2, 4}),    // 11010000
        VertexSet::from_vertices(8, {1, 2, 4, 8}), // 11010001
        VertexSet::from_vertices(8, {1, 2, 4, 7}), // 11010010
        VertexSet::from_vertices(8, {1, 2, 4, 6}), // 11010100
        VertexSet::from_vertices(8, {1, 2, 4, 5}), // 11011000
        cover_V3(),                                // 11110000
    };
    CHECK(covers4 == expected);
}

TEST_CASE("enumerate_covers agrees with an independent full-subset scan") {
    RandomStream rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const Graph h = testutil::random_graph(rng, 3 + static_cast<int>(rng.uniform_below(10)));
        const int k = static_cast<int>(rng.uniform_below(h.vertex_count() + 1));
        CHECK(enumerate_covers(h, k) == testutil::covers_by_full_scan(h, k));
    }
}

TEST_CASE("enumerate_covers respects its budget") {
    RandomStream rng(3);
    const Graph big = testutil::random_graph(rng, 20);
    CHECK_THROWS_AS(enumerate_covers(big, 10, /*budget=*/1000), OracleBudgetError);
}

TEST_CASE("enumerate_covers results satisfy the cover contract") {
    RandomStream rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph h = testutil::random_graph(rng, 4 + static_cast<int>(rng.uniform_below(6)));
        const int k = 1 + static_cast<int>(rng.uniform_below(4));
        for (const auto& c : enumerate_covers(h, k)) {
            CHECK(is_cover(h, c));
            CHECK(c.size() <= k);
        }
    }
}

TEST_CASE("non-excessiveness cross-checks against removability over the enumeration") {
    const auto covers = enumerate_covers(g, 4);
    for (const auto& c : covers) {
        bool removable = false;
        for (int v : c.vertices()) {
            VertexSet without = c;
            without.erase(v);
            if (is_cover(g, without)) {
                removable = true;
                break;
            }
        }
        CHECK(is_non_excessive(g, c) == !removable);
    }
}

TEST_CASE("initial_cover succeeds immediately when the matching cover fits") {
    RandomStream rng(1);
    const auto cover = initial_cover(g, 8, rng);
    REQUIRE(cover.has_value());
    CHECK(is_cover(g, *cover));
    CHECK(cover->size() <= 8);
}

TEST_CASE("initial_cover descends to the unique 3-cover") {
    RandomStream rng(2);
    const auto cover = initial_cover(g, 3, rng, 10000);
    REQUIRE(cover.has_value());
    CHECK(*cover == VertexSet::from_vertices(8, {1, 2, 4}));
}

TEST_CASE("initial_cover reports failure when no k-cover exists") {
    RandomStream rng(3);
    CHECK_FALSE(initial_cover(g, 2, rng, 2000).has_value());
}

TEST_CASE("initial_cover output is always a small-enough cover") {
    RandomStream rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph h = testutil::random_graph(rng, 3 + static_cast<int>(rng.uniform_below(8)));
        const int k = static_cast<int>(rng.uniform_below(h.vertex_count() + 1));
        const auto cover = initial_cover(h, k, rng, 4000);
        if (cover) {
            CHECK(is_cover(h, *cover));
            CHECK(cover->size() <= k);
        }
    }
}
