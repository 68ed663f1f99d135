#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "ktrees/enumerate.hpp"
#include "ktrees/trees.hpp"

using ktrees::histogram;
using ktrees::LabelComposition;
using ktrees::NoncrossingTree;
using ktrees::parse_plane;
using ktrees::PlaneTree;
using ktrees::render_plane;
using ktrees::rooted_orientation;
using ktrees::validate_noncrossing;
using ktrees::validate_plane;

namespace {

// A 19-vertex 4-plane tree exercising depth, repeated labels and wide nodes.
const std::string kBigPlane = "2(3(1(4,2(3),4,3(1(2,4)))),1,2(3,2(1(4(1),3))))";

NoncrossingTree big_noncrossing() {
    NoncrossingTree tree;
    tree.n = 12;
    tree.labels = {2, 3, 1, 2, 2, 1, 3, 2, 1, 3, 1, 3};
    tree.edges = {{1, 4}, {1, 8}, {1, 11}, {2, 3}, {2, 4}, {5, 6},
                  {5, 8}, {7, 8}, {8, 9},  {9, 10}, {11, 12}};
    return tree;
}

} // namespace

TEST_CASE("plane grammar round-trips") {
    for (const std::string& text :
         {std::string("1"), std::string("2(1)"), std::string("1(1,2)"), kBigPlane}) {
        PlaneTree tree = parse_plane(text);
        CHECK(render_plane(tree) == text);
    }
}

TEST_CASE("plane grammar rejects malformed input with offsets") {
    CHECK_THROWS_AS(parse_plane(""), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("2("), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("2(1"), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("1)"), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("1(,2)"), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("0"), ktrees::ParseError);
    CHECK_THROWS_AS(parse_plane("(1)"), ktrees::ParseError);
    try {
        parse_plane("2(");
        FAIL("expected a parse failure");
    } catch (const ktrees::ParseError& e) {
        CHECK(e.offset == 2);
        CHECK(std::string(e.what()).find("offset 2") != std::string::npos);
    }
}

TEST_CASE("big plane example: size, validity window, histogram") {
    PlaneTree tree = parse_plane(kBigPlane);
    CHECK(tree.size() == 19);
    CHECK(validate_plane(tree, 4));
    CHECK(validate_plane(tree, 5));
    CHECK_FALSE(validate_plane(tree, 3)); // contains label 4
    LabelComposition comp = histogram(tree, 4);
    CHECK(comp.counts == std::vector<long>{5, 5, 5, 4});
    CHECK(comp.n() == 19);
}

TEST_CASE("plane validation enforces the edge label-sum rule") {
    CHECK(validate_plane(parse_plane("2(1)"), 2));
    CHECK_FALSE(validate_plane(parse_plane("2(2)"), 2)); // 2+2 > 3
    CHECK(validate_plane(parse_plane("2(2)"), 3));
    CHECK(validate_plane(parse_plane("1(3)"), 3)); // 1+3 = k+1 exactly
    CHECK_FALSE(validate_plane(parse_plane("2(3)"), 3)); // 2+3 > 4
    CHECK_FALSE(validate_plane(parse_plane("3"), 2));    // label out of range
    // With k = 1 every edge sums to 2 = k + 1, so any all-1 tree is valid.
    CHECK(validate_plane(parse_plane("1(1(1),1,1(1,1))"), 1));
}

TEST_CASE("ordered trees: sibling order matters") {
    CHECK(parse_plane("1(1,2)") != parse_plane("1(2,1)"));
    CHECK(ktrees::tree_less(parse_plane("1(1,2)"), parse_plane("1(2,1)")));
    CHECK_FALSE(ktrees::tree_less(parse_plane("1(2,1)"), parse_plane("1(1,2)")));
    CHECK(ktrees::tree_less(parse_plane("1"), parse_plane("1(1)")));
}

TEST_CASE("big noncrossing example: validity, orientation, histogram") {
    NoncrossingTree tree = big_noncrossing();
    CHECK(validate_noncrossing(tree, 3));
    LabelComposition comp = histogram(tree, 3);
    CHECK(comp.counts == std::vector<long>{4, 4, 4});

    // The root side of each edge is fixed by breadth-first search from v1.
    auto oriented = rooted_orientation(tree);
    REQUIRE(oriented.size() == 11);
    int descending = 0, exempt_violations = 0;
    for (auto [parent, child] : oriented) {
        if (parent > child) {
            ++descending;
            if (tree.labels[static_cast<std::size_t>(parent) - 1] +
                    tree.labels[static_cast<std::size_t>(child) - 1] >
                4)
                ++exempt_violations;
        }
    }
    CHECK(descending == 3); // edges 4->2, 8->5 and 8->7
    // Two of them carry label sums the ascending-edge rule would reject,
    // so the tree is valid only because descending edges are exempt.
    CHECK(exempt_violations == 2);
}

TEST_CASE("noncrossing: ascending-edge rule is enforced, descending is waived") {
    NoncrossingTree tree = big_noncrossing();
    // v3 is reached by the ascending edge 2->3; labels 3 + 1 = 4 <= k+1 now.
    tree.labels[2] = 2; // makes the sum 3 + 2 = 5 > 4
    CHECK_FALSE(validate_noncrossing(tree, 3));

    tree = big_noncrossing();
    // v2 is reached only by the descending edge 4->2, so any label works.
    for (int label = 1; label <= 3; ++label) {
        tree.labels[1] = label;
        CHECK(validate_noncrossing(tree, 3));
    }
}

TEST_CASE("noncrossing: crossing chords are rejected") {
    NoncrossingTree tree;
    tree.n = 4;
    tree.labels = {1, 1, 1, 1};
    tree.edges = {{1, 3}, {2, 4}, {1, 2}};
    CHECK_FALSE(validate_noncrossing(tree, 1));
    tree.edges = {{1, 3}, {3, 4}, {1, 2}}; // same chords, no crossing
    CHECK(validate_noncrossing(tree, 1));
}

TEST_CASE("noncrossing: non-trees are rejected") {
    NoncrossingTree tree;
    tree.n = 4;
    tree.labels = {1, 1, 1, 1};
    tree.edges = {{1, 2}, {3, 4}};
    CHECK_FALSE(validate_noncrossing(tree, 1)); // too few edges
    tree.edges = {{1, 2}, {1, 2}, {3, 4}};
    CHECK_FALSE(validate_noncrossing(tree, 1)); // duplicate edge: cycle
    tree.edges = {{1, 2}, {2, 3}, {3, 4}};
    CHECK(validate_noncrossing(tree, 1));
}

TEST_CASE("noncrossing crossing predicate") {
    CHECK(ktrees::edges_cross({1, 3}, {2, 4}));
    CHECK(ktrees::edges_cross({2, 4}, {1, 3}));
    CHECK(ktrees::edges_cross({4, 2}, {3, 1})); // orientation-insensitive
    CHECK_FALSE(ktrees::edges_cross({1, 2}, {3, 4})); // disjoint
    CHECK_FALSE(ktrees::edges_cross({1, 4}, {2, 3})); // nested
    CHECK_FALSE(ktrees::edges_cross({1, 3}, {3, 4})); // shared endpoint
}

TEST_CASE("noncrossing JSON round-trip") {
    NoncrossingTree tree = big_noncrossing();
    int k = 0;
    NoncrossingTree again = ktrees::noncrossing_from_json(ktrees::noncrossing_to_json(tree, 3), &k);
    CHECK(k == 3);
    CHECK(again == tree);
    CHECK_THROWS_AS(ktrees::noncrossing_from_json("{", nullptr), ktrees::ParseError);
    CHECK_THROWS_AS(ktrees::noncrossing_from_json("[1,2]", nullptr), ktrees::ParseError);
    CHECK_THROWS_AS(ktrees::noncrossing_from_json(R"({"k":1,"labels":[1],"edges":[[1]]})", nullptr),
                    ktrees::ParseError);
}

TEST_CASE("round-trip over every enumerated tree") {
    for (int k = 1; k <= 3; ++k) {
        for (int n = 1; n <= 5; ++n) {
            ktrees::for_each_kplane(k, n, [&](const PlaneTree& tree) {
                CHECK(parse_plane(render_plane(tree)) == tree);
                CHECK(validate_plane(tree, k));
            });
        }
    }
}

TEST_CASE("single-vertex trees") {
    PlaneTree one = parse_plane("1");
    CHECK(one.size() == 1);
    CHECK(one.children.empty());
    CHECK(validate_plane(one, 1));

    NoncrossingTree single;
    single.n = 1;
    single.labels = {2};
    CHECK(validate_noncrossing(single, 2));
    CHECK(rooted_orientation(single).empty());
}
