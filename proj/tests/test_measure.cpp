#include <doctest.h>

#include <algorithm>

#include "majorder/generator.hpp"
#include "majorder/measure.hpp"
#include "oracles.hpp"

using namespace majorder;

namespace {

const TolerancePolicy kTol;

DiscreteMeasure uniform_measure(const OrderedSpace& space, std::vector<Point> pts) {
    const std::size_t n = pts.size();
    return DiscreteMeasure(space, std::vector<double>(n, 1.0 / static_cast<double>(n)),
                           std::move(pts));
}

std::vector<double> random_int_vector(Rng& rng, int n, int lo, int hi) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& e : v)
        e = static_cast<double>(lo + static_cast<int>(rng.below(
                                         static_cast<std::uint64_t>(hi - lo + 1))));
    return v;
}

} // namespace

TEST_CASE("scalar HLP prefix checks") {
    auto v = check_hlp({1, 1, 1}, {2, 1, 0}, false, kTol);
    CHECK(v.holds);
    CHECK(v.prefix_slacks == std::vector<double>{1.0, 1.0, 0.0});

    CHECK(check_hlp({3, 1, 2}, {3, 1, 2}, false, kTol).holds);

    // weak holds but the strict relation fails on unequal totals
    auto weak = check_hlp({1, 2}, {3, 1}, true, kTol);
    CHECK(weak.holds);
    auto strict = check_hlp({1, 2}, {3, 1}, false, kTol);
    CHECK_FALSE(strict.holds);
    CHECK(strict.equality_defect == doctest::Approx(1.0));

    // the k=2 prefix fails even weakly here
    auto bad = check_hlp({2, 2}, {3, 0}, true, kTol);
    CHECK_FALSE(bad.holds);
    CHECK(bad.failing_index == 1);

    CHECK_THROWS_AS(check_hlp({1.0}, {1.0, 2.0}, false, kTol), DimensionError);
}

TEST_CASE("L-down relation on measures") {
    const auto plane = OrderedSpace::orthant(2);
    const Point x({1.0, 1.0}), z({0.5, 0.25});

    SUBCASE("constant left support against a centered spread") {
        const auto mu = uniform_measure(plane, {x, x, x});
        const auto nu = uniform_measure(plane, {x, x + z, x - z});
        const auto v = check_L_down(mu, nu, false, kTol);
        CHECK(v.holds);
        CHECK(v.prefix_slacks.size() == 3);
        CHECK(v.equality_defect <= 1e-12);
    }

    SUBCASE("two-pair instance with equal barycenters") {
        const auto mu = uniform_measure(plane, {Point({1.5, 1.0}), Point({0.5, 1.0})});
        const auto nu = uniform_measure(plane, {Point({2.0, 2.0}), Point({0.0, 0.0})});
        CHECK(check_L_down(mu, nu, false, kTol).holds);
    }

    SUBCASE("incomparable left support is a structural error") {
        const auto mu = uniform_measure(plane, {Point({0.0, 1.0}), Point({1.0, 0.0})});
        const auto nu = uniform_measure(plane, {Point({1.0, 1.0}), Point({0.0, 0.0})});
        CHECK_THROWS_AS(check_L_down(mu, nu, false, kTol), ChainViolationError);
        try {
            check_L_down(mu, nu, false, kTol);
        } catch (const ChainViolationError& e) {
            CHECK(e.failing_index == 0);
        }
    }

    SUBCASE("weight arrays must match") {
        const auto mu = uniform_measure(plane, {x, x});
        const DiscreteMeasure nu(plane, {0.75, 0.25}, {x, x});
        CHECK_THROWS_AS(check_L_down(mu, nu, false, kTol), WeightMismatchError);
    }
}

TEST_CASE("R-up relation on measures") {
    const auto line = OrderedSpace::real_line();

    const auto same = uniform_measure(line, {Point({0.0}), Point({1.0})});
    CHECK(check_R_up(same, same, false, kTol).holds);

    const auto mu = uniform_measure(line, {Point({1.0}), Point({1.0})});
    const auto nu = uniform_measure(line, {Point({0.0}), Point({2.0})});
    const auto v = check_R_up(mu, nu, false, kTol);
    CHECK_FALSE(v.holds);
    CHECK(v.prefix_slacks[0] == doctest::Approx(-0.5));

    // swapped roles: prefix 0 <= 1/2 and equal totals
    const auto mu2 = uniform_measure(line, {Point({0.0}), Point({2.0})});
    const auto nu2 = uniform_measure(line, {Point({1.0}), Point({1.0})});
    CHECK(check_R_up(mu2, nu2, false, kTol).holds);

    // a decreasing right support is a chain violation for R-up
    const auto bad_nu = uniform_measure(line, {Point({2.0}), Point({0.0})});
    CHECK_THROWS_AS(check_R_up(mu2, bad_nu, false, kTol), ChainViolationError);
}

TEST_CASE("doubly stochastic application") {
    const auto plane = OrderedSpace::orthant(2);
    const std::vector<Point> pts{Point({2.0, 2.0}), Point({0.0, 0.0})};

    const auto same = apply_doubly_stochastic(plane, DoublyStochasticMatrix::identity(2), pts);
    CHECK(same[0] == pts[0]);
    CHECK(same[1] == pts[1]);

    const auto mixed = apply_doubly_stochastic(plane, DoublyStochasticMatrix::uniform(2), pts);
    CHECK(mixed[0] == Point({1.0, 1.0}));
    CHECK(mixed[1] == Point({1.0, 1.0}));

    CHECK_THROWS_AS(
        DoublyStochasticMatrix::from_entries(2, {0.5, 0.5, 0.25, 0.75}).validate(), Error);
}

TEST_CASE("averaging a decreasing chain yields an L-down dominated family") {
    const auto plane = OrderedSpace::orthant(2);
    CHECK(verify_ostrowski(plane, DoublyStochasticMatrix::identity(2),
                           {Point({2.0, 2.0}), Point({0.0, 0.0})}, kTol)
              .holds);
    CHECK(verify_ostrowski(plane, DoublyStochasticMatrix::uniform(2),
                           {Point({2.0, 2.0}), Point({0.0, 0.0})}, kTol)
              .holds);

    const auto line = OrderedSpace::real_line();
    const auto P = DoublyStochasticMatrix::from_entries(2, {0.75, 0.25, 0.25, 0.75});
    const auto image = apply_doubly_stochastic(line, P, {Point({3.0}), Point({1.0})});
    CHECK(image[0] == Point({2.5}));
    CHECK(image[1] == Point({1.5}));
    CHECK(verify_ostrowski(line, P, {Point({3.0}), Point({1.0})}, kTol).holds);
}

TEST_CASE("random mixing matrices keep the relation for generated chains") {
    Rng rng(31);
    const auto space = OrderedSpace::orthant(3);
    GeneratorConfig cfg;
    cfg.space = space;
    cfg.n_points = 4;
    cfg.domain_box = Box::cube(3, 0.0, 4.0);
    cfg.chain_scale = 0.6;

    int applicable = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto chain = gen_decreasing_chain(cfg, rng);
        // convex combination of the identity and the uniform matrix keeps
        // the image decreasing, so every instance is applicable
        const double t = rng.uniform();
        std::vector<double> entries(16, t / 4.0);
        for (int i = 0; i < 4; ++i) entries[static_cast<std::size_t>(i) * 4 + i] += 1.0 - t;
        const auto P = DoublyStochasticMatrix::from_entries(4, entries);
        CHECK(verify_ostrowski(space, P, chain, kTol).holds);
        ++applicable;
    }
    CHECK(applicable == 200);
}

TEST_CASE("scalar relation is equivalent to the hinge-family test") {
    Rng rng(41);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto x = random_int_vector(rng, 5, -5, 5);
        const auto y = random_int_vector(rng, 5, -5, 5);
        const bool lib = check_hlp(x, y, false, kTol).holds;
        const bool oracle = oracles::hinge_family_dominates(x, y);
        CHECK(lib == oracle);
        ++checked;
    }
    CHECK(checked == 1000);
}

TEST_CASE("weak relation implies domination by nondecreasing hinges") {
    Rng rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        // componentwise domination guarantees the weak relation
        auto y = random_int_vector(rng, 5, -5, 5);
        auto x = y;
        for (auto& v : x) v -= static_cast<double>(rng.below(3));
        REQUIRE(check_hlp(x, y, true, kTol).holds);
        CHECK(oracles::hinge_family_dominates(x, y, /*nondecreasing_only=*/true));
    }
    // and on arbitrary pairs the two tests agree in the holding direction
    for (int trial = 0; trial < 500; ++trial) {
        const auto x = random_int_vector(rng, 4, -4, 4);
        const auto y = random_int_vector(rng, 4, -4, 4);
        if (check_hlp(x, y, true, kTol).holds)
            CHECK(oracles::hinge_family_dominates(x, y, true));
    }
}

TEST_CASE("relation checkers are reflexive on monotone measures") {
    Rng rng(47);
    GeneratorConfig cfg;
    cfg.space = OrderedSpace::orthant(2);
    cfg.n_points = 4;
    cfg.domain_box = Box::cube(2, 0.0, 4.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto chain = gen_decreasing_chain(cfg, rng);
        const auto mu = uniform_measure(cfg.space, chain);
        CHECK(check_L_down(mu, mu, false, kTol).holds);
        std::reverse(chain.begin(), chain.end());
        const auto inc = uniform_measure(cfg.space, chain);
        CHECK(check_R_up(inc, inc, false, kTol).holds);
    }
}

TEST_CASE("relation is transitive on stacked generated pairs") {
    Rng rng(53);
    GeneratorConfig cfg;
    cfg.space = OrderedSpace::orthant(2);
    cfg.n_points = 3;
    cfg.domain_box = Box::cube(2, 0.0, 8.0);
    cfg.chain_scale = 0.8;
    cfg.deficit_scale = 0.05; // small deficits keep the middle support a chain

    int triples = 0;
    for (int trial = 0; trial < 400 && triples < 60; ++trial) {
        const auto first = gen_majorized_pair(cfg, rng);
        if (!is_monotone_chain(cfg.space, first.nu.support, ChainDirection::Decreasing, kTol))
            continue;
        // second hop starts from the middle support
        GeneratorConfig cfg2 = cfg;
        const auto deficits = [&] {
            std::vector<Point> d(3, cfg.space.zero());
            for (int k = 0; k < 2; ++k)
                d[static_cast<std::size_t>(k)] =
                    sample_cone_increment(cfg.space, cfg.deficit_scale, rng);
            return d;
        }();
        const auto far = support_from_deficits(cfg.space, first.nu.support,
                                               first.nu.weights, deficits);
        const auto rho = DiscreteMeasure(cfg.space, first.nu.weights, far);
        REQUIRE(check_L_down(first.nu, rho, false, kTol).holds);
        CHECK(check_L_down(first.mu, rho, false, kTol.scaled(2.0)).holds);
        ++triples;
    }
    CHECK(triples >= 60);
}

TEST_CASE("non-weak L-down pins the endpoints") {
    Rng rng(59);
    GeneratorConfig cfg;
    cfg.space = OrderedSpace::orthant(3);
    cfg.n_points = 4;
    cfg.domain_box = Box::cube(3, 0.0, 6.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        REQUIRE(check_L_down(pair.mu, pair.nu, false, kTol).holds);
        CHECK(leq(cfg.space, pair.nu.support.back(), pair.mu.support.back(), kTol.scaled(2.0)));
        CHECK(leq(cfg.space, pair.mu.support.front(), pair.nu.support.front(), kTol.scaled(2.0)));
    }
}

TEST_CASE("on the line with sorted supports the measure check matches scalar HLP") {
    Rng rng(61);
    const auto line = OrderedSpace::real_line();
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 4;
        std::vector<double> xs = random_int_vector(rng, n, -6, 6);
        std::vector<double> ys = random_int_vector(rng, n, -6, 6);
        std::sort(xs.begin(), xs.end(), std::greater<>());
        std::sort(ys.begin(), ys.end(), std::greater<>());
        std::vector<Point> xp, yp;
        for (double v : xs) xp.push_back(Point({v}));
        for (double v : ys) yp.push_back(Point({v}));
        const auto mu = uniform_measure(line, xp);
        const auto nu = uniform_measure(line, yp);
        for (bool weak : {false, true}) {
            // uniform weights 1/n turn the prefix conditions into prefix sums
            const auto lib = check_L_down(mu, nu, weak, kTol);
            const auto hlp = check_hlp(xs, ys, weak, kTol);
            CHECK(lib.holds == hlp.holds);
        }
    }
}
