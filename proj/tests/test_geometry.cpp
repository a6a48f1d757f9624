#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sptk/fixtures.hpp"
#include "sptk/geometry.hpp"

using namespace sptk;

namespace {

// independent oracle: brute-force distance from a cube to a finite set
double brute_cube_dist(const Cube& Q, const PointSet& E) {
    double best = kInf;
    for (const auto& e : E.points) best = std::min(best, Q.dist_point(e));
    return best;
}

bool whitney_predicate(const Cube& Q, const PointSet& E) {
    double d = brute_cube_dist(Q, E);
    return Q.diam() <= d + kGeomTol && d <= 4.0 * Q.diam() + kGeomTol;
}

}  // namespace

TEST_CASE("cube basics") {
    Cube q(Vec{0.0, 0.0}, 0.5);
    CHECK(q.diam() == 1.0);
    CHECK(q.dilate(2.0).half_side == 1.0);
    CHECK(q.dilate(2.0).center == q.center);
    CHECK(q.contains(Vec{0.5, 0.5}));
    CHECK(!q.contains(Vec{0.6, 0.0}));
    CHECK_THROWS(Cube(Vec{0.0}, 0.0));
}

TEST_CASE("dist_point_set examples") {
    PointSet single = points1d({0.0});
    CHECK(dist_point_set(Vec{0.0}, single).dist == 0.0);

    PointSet two = make_points({{0.0, 0.0}, {5.0, 0.0}});
    auto r = dist_point_set(Vec{3.0, 0.0}, two);
    CHECK(r.dist == doctest::Approx(2.0));
    CHECK(r.attained == Vec{5.0, 0.0});

    // uniform norm: max over coordinates
    PointSet origin = make_points({{0.0, 0.0}});
    CHECK(dist_point_set(Vec{1.0, 1.0}, origin).dist == doctest::Approx(1.0));

    CHECK_THROWS_WITH(dist_point_set(Vec{0.0}, PointSet{}), "empty set");
}

TEST_CASE("dist tie-break is lexicographic") {
    PointSet two = points1d({1.0, -1.0});
    auto r = dist_point_set(Vec{0.0}, two);
    CHECK(r.dist == doctest::Approx(1.0));
    CHECK(r.attained == Vec{-1.0});
}

TEST_CASE("whitney 1-D around origin") {
    PointSet E = points1d({0.0});
    Cube box(Vec{0.0}, 1.0);
    auto W = whitney_decompose(E, box, 8);
    CHECK(W.cubes.size() > 4);
    for (const auto& q : W.cubes) CHECK(whitney_predicate(q, E));
    // collar cubes hug E at the resolution floor
    for (const auto& q : W.collar) CHECK(brute_cube_dist(q, E) < q.diam());
    // non-overlap: interiors disjoint
    for (std::size_t i = 0; i < W.cubes.size(); ++i)
        for (std::size_t j = i + 1; j < W.cubes.size(); ++j) {
            const auto &a = W.cubes[i], &b = W.cubes[j];
            CHECK(std::abs(a.center[0] - b.center[0]) >=
                  a.half_side + b.half_side - kGeomTol);
        }
    // determinism
    auto W2 = whitney_decompose(E, box, 8);
    REQUIRE(W2.cubes.size() == W.cubes.size());
    for (std::size_t i = 0; i < W.cubes.size(); ++i) {
        CHECK(W2.cubes[i].center == W.cubes[i].center);
        CHECK(W2.cubes[i].half_side == W.cubes[i].half_side);
    }
}

TEST_CASE("whitney corners fixture covers the box") {
    PointSet E = make_points({{-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}, {1.0, 1.0}});
    Cube box(Vec{0.0, 0.0}, 1.0);
    auto W = whitney_decompose(E, box, 6);
    for (const auto& q : W.cubes) CHECK(whitney_predicate(q, E));
    // coverage: kept + collar cubes tile the box
    double vol = 0.0;
    for (const auto& q : W.cubes) vol += std::pow(q.diam(), 2);
    for (const auto& q : W.collar) vol += std::pow(q.diam(), 2);
    CHECK(vol == doctest::Approx(std::pow(box.diam(), 2)).epsilon(1e-12));
}

TEST_CASE("whitney box far from E gives a single cube") {
    PointSet E = points1d({6.0});
    Cube box(Vec{0.0}, 1.0);
    auto W = whitney_decompose(E, box, 6);
    REQUIRE(W.cubes.size() == 1);
    CHECK(W.cubes[0].half_side == 1.0);
}

TEST_CASE("whitney rejects E outside box") {
    PointSet E = points1d({0.0, 3.0});
    CHECK_THROWS(whitney_decompose(E, Cube(Vec{0.0}, 1.0), 6));
}

TEST_CASE("dense E leaves no room above the resolution floor") {
    std::vector<Vec> pts;
    for (int i = -8; i <= 8; ++i) pts.push_back(Vec{i / 8.0});
    auto W = whitney_decompose(PointSet(pts), Cube(Vec{0.0}, 1.0), 3);
    CHECK(W.cubes.empty());
    CHECK(!W.collar.empty());
}

TEST_CASE("touching family properties") {
    PointSet E = points1d({0.0});
    Cube box(Vec{0.0}, 1.0);
    auto W = whitney_decompose(E, box, 10);
    for (std::size_t k = 0; k < W.cubes.size(); ++k) {
        auto tk = touching_family(k, W);
        // K always touches itself
        CHECK(std::find(tk.begin(), tk.end(), k) != tk.end());
        // diameter ratios within [1/4, 4]
        for (auto qi : tk) {
            double ratio = W.cubes[qi].diam() / W.cubes[k].diam();
            CHECK(ratio >= 0.25 - kGeomTol);
            CHECK(ratio <= 4.0 + kGeomTol);
        }
        // implementation bound 12^n on the family size
        CHECK(tk.size() <= 12u);
        // Q* intersection equivalence
        for (std::size_t q = 0; q < W.cubes.size(); ++q) {
            bool touch = W.cubes[q].intersects(W.cubes[k]);
            bool star = W.cubes[q].dilate(9.0 / 8.0).intersects(W.cubes[k].dilate(9.0 / 8.0));
            CHECK(touch == star);
        }
    }
    // interior 1-D Whitney intervals touch exactly themselves + 2 neighbors
    std::size_t interior = 0;
    for (std::size_t k = 0; k < W.cubes.size(); ++k)
        if (touching_family(k, W).size() == 3) ++interior;
    CHECK(interior > 0);
    CHECK_THROWS(touching_family(W.cubes.size(), W));
}

TEST_CASE("single-cube decomposition touches only itself") {
    PointSet E = points1d({6.0});
    auto W = whitney_decompose(E, Cube(Vec{0.0}, 1.0), 6);
    auto tk = touching_family(0, W);
    CHECK(tk == std::vector<std::size_t>{0});
}

TEST_CASE("nearest anchor") {
    PointSet single = points1d({0.0});
    CHECK(nearest_anchor(Cube(Vec{0.375}, 0.125), single) == Vec{0.0});

    PointSet two = make_points({{0.0, 0.0}, {10.0, 0.0}});
    Cube box(Vec{5.0, 0.0}, 8.0);
    auto W = whitney_decompose(two, box, 7);
    for (const auto& q : W.cubes) {
        Vec a = nearest_anchor(q, two);  // throws when a_Q misses 9Q
        CHECK(q.dilate(9.0).dist_point(a) <= kGeomTol);
    }
}

TEST_CASE("covering multiplicity exact on hand cases") {
    // three intervals sharing the origin
    std::vector<Cube> threes{Cube(Vec{-0.5}, 0.6), Cube(Vec{0.0}, 0.3), Cube(Vec{0.5}, 0.6)};
    CHECK(covering_multiplicity(threes) == 3);
    std::vector<Cube> apart{Cube(Vec{-2.0}, 0.5), Cube(Vec{2.0}, 0.5)};
    CHECK(covering_multiplicity(apart) == 1);
}

TEST_CASE("partition_disjoint hand cases") {
    CHECK(partition_disjoint({}).empty());

    // pairwise disjoint input -> one family
    std::vector<Cube> apart{Cube(Vec{-2.0}, 0.5), Cube(Vec{2.0}, 0.5), Cube(Vec{6.0}, 0.5)};
    CHECK(partition_disjoint(apart).size() == 1);

    // k intervals sharing one point: exactly k families (bound met with equality)
    std::vector<Cube> shared;
    for (int i = 0; i < 5; ++i) shared.push_back(Cube(Vec{0.1 * i}, 1.0));
    auto fams = partition_disjoint(shared);
    CHECK(fams.size() == 5);

    // 2-D cross of 3 overlapping squares, M = 3 -> at most 2(M-1)+1 = 5
    std::vector<Cube> cross{Cube(Vec{0.0, 0.0}, 1.0), Cube(Vec{0.5, 0.0}, 1.0),
                            Cube(Vec{0.0, 0.5}, 1.0)};
    int M = covering_multiplicity(cross);
    CHECK(M == 3);
    auto cf = partition_disjoint(cross);
    CHECK(cf.size() <= 5);
    for (const auto& fam : cf)
        for (std::size_t a = 0; a < fam.size(); ++a)
            for (std::size_t b = a + 1; b < fam.size(); ++b)
                CHECK(!cross[fam[a]].intersects(cross[fam[b]]));
}

TEST_CASE("partition_disjoint seeded sweep meets the combinatorial bound") {
    Rng rng(7);
    for (int n : {1, 2}) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Cube> cubes;
            int k = uniform_int(rng, 3, 16);
            for (int i = 0; i < k; ++i) {
                Vec c(n);
                for (int a = 0; a < n; ++a) c[a] = uniform(rng, -1.0, 1.0);
                cubes.push_back(Cube(c, std::pow(2.0, uniform(rng, -4.0, -0.5))));
            }
            int M = covering_multiplicity(cubes);
            auto fams = partition_disjoint(cubes);
            int bound = (1 << (n - 1)) * (M - 1) + 1;
            CHECK((int)fams.size() <= bound);
            std::size_t total = 0;
            for (const auto& fam : fams) {
                total += fam.size();
                for (std::size_t a = 0; a < fam.size(); ++a)
                    for (std::size_t b = a + 1; b < fam.size(); ++b)
                        CHECK(!cubes[fam[a]].intersects(cubes[fam[b]]));
            }
            CHECK(total == cubes.size());
        }
    }
}

TEST_CASE("aligned grid holds E on nodes") {
    PointSet E = points1d({0.0, 1.0});
    Grid g = aligned_grid(E, Cube(Vec{0.5}, 8.0), 1024);
    for (const auto& e : E.points)
        CHECK(dist_inf(g.node(g.nearest_node(e)), e) <= 1e-12);
}
