#include <doctest.h>

#include <cmath>
#include <limits>

#include "majorder/generator.hpp"
#include "majorder/verifiers.hpp"

using namespace majorder;

namespace {

const TolerancePolicy kTol;

DiscreteMeasure uniform_measure(const OrderedSpace& space, std::vector<Point> pts) {
    const std::size_t n = pts.size();
    return DiscreteMeasure(space, std::vector<double>(n, 1.0 / static_cast<double>(n)),
                           std::move(pts));
}

GeneratorConfig plane_cfg(Relation rel, double lo, double hi, int points = 3) {
    GeneratorConfig cfg;
    cfg.space = OrderedSpace::orthant(2);
    cfg.relation = rel;
    cfg.n_points = points;
    cfg.domain_box = Box::cube(2, lo, hi);
    cfg.chain_scale = 0.15 * (hi - lo);
    cfg.deficit_scale = 0.08 * (hi - lo);
    return cfg;
}

} // namespace

TEST_CASE("first majorization consequence on certified pairs") {
    const auto entropy = negative_entropy(2);
    Rng rng(401);
    auto cfg = plane_cfg(Relation::Ldown, 0.2, 3.0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        const auto rep = verify_T4(entropy, Modulus::zero(), pair.mu, pair.nu,
                                   Relation::Ldown, kTol);
        CHECK(rep.holds);
        CHECK(rep.advisories.empty());
    }
}

TEST_CASE("the geometric mean violates the first consequence on its witness pair") {
    const auto f = neg_geometric_mean();
    const auto fix = necessity_fixture();
    const auto rep = verify_T4(f, Modulus::zero(), fix.mu, fix.nu, Relation::Ldown, kTol);
    CHECK_FALSE(rep.holds);
    CHECK(rep.lhs == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(rep.rhs == doctest::Approx(-(std::sqrt(1.5) + std::sqrt(0.5))).epsilon(1e-14));
    CHECK(rep.residual == doctest::Approx(-2.0 + std::sqrt(1.5) + std::sqrt(0.5)));
    CHECK(rep.residual < 0.0);
    CHECK_FALSE(rep.advisories.empty()); // the missing claim is surfaced
}

TEST_CASE("degenerate instances give zero residual") {
    const auto entropy = negative_entropy(2);
    const auto mu = uniform_measure(OrderedSpace::orthant(2),
                                    {Point({2.0, 2.0}), Point({1.0, 1.0})});
    CHECK(verify_T4(entropy, Modulus::zero(), mu, mu, Relation::Ldown, kTol).residual ==
          doctest::Approx(0.0));
    CHECK(verify_T5(entropy, 2.0, mu, mu, Relation::Ldown, kTol).residual ==
          doctest::Approx(0.0));
    CHECK(verify_T6(zoo_make("composite:square:1,1"), mu, mu, Relation::Ldown, kTol)
              .residual == doctest::Approx(0.0));
}

TEST_CASE("weak relation produces prefix reports") {
    const auto power = power_p_sum(2, 2.0);
    Rng rng(402);
    auto cfg = plane_cfg(Relation::wLdown, 0.1, 4.0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        const auto rep =
            verify_T4(power, Modulus::zero(), pair.mu, pair.nu, Relation::wLdown, kTol);
        REQUIRE(rep.prefix_reports.size() == 4);
        CHECK(rep.holds);
        for (const auto& pr : rep.prefix_reports) CHECK(pr.residual >= -1e-9);
    }
}

TEST_CASE("R-up reverses the roles of the two measures") {
    const auto entropy = negative_entropy(2);
    Rng rng(403);
    auto cfg = plane_cfg(Relation::Rup, 0.2, 3.0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        CHECK(verify_T4(entropy, Modulus::zero(), pair.mu, pair.nu, Relation::Rup, kTol)
                  .holds);
    }
}

TEST_CASE("direction duality: R-up equals L-down on the reflected instance") {
    // reflection: negate all points (chains flip direction) and swap the
    // measures; the function is composed with the reflection as well
    ScalarFunction exp_fn = scalar_exp();
    ScalarFunction exp_reflected = exp_fn;
    exp_reflected.name = "exp(-t)";
    exp_reflected.f = [](double t) { return std::exp(-t); };
    exp_reflected.df = [](double t) { return -std::exp(-t); };
    exp_reflected.ddf = [](double t) { return std::exp(-t); };
    const auto f = scalar_model(exp_fn);
    const auto f_ref = scalar_model(exp_reflected);

    GeneratorConfig cfg;
    cfg.space = OrderedSpace::real_line();
    cfg.relation = Relation::Rup;
    cfg.n_points = 4;
    cfg.domain_box = Box::cube(1, -3.0, 3.0);
    cfg.chain_scale = 0.5;
    cfg.deficit_scale = 0.3;

    Rng rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        const auto direct =
            verify_T4(f, Modulus::zero(), pair.mu, pair.nu, Relation::Rup, kTol);

        auto negate_support = [](const DiscreteMeasure& m) {
            std::vector<Point> pts;
            for (const auto& p : m.support) pts.push_back(-1.0 * p);
            return DiscreteMeasure(m.space, m.weights, std::move(pts));
        };
        const auto reflected = verify_T4(f_ref, Modulus::zero(), negate_support(pair.nu),
                                         negate_support(pair.mu), Relation::Ldown, kTol);
        CHECK(direct.residual == doctest::Approx(reflected.residual).epsilon(1e-10));
        CHECK(direct.holds == reflected.holds);
    }
}

TEST_CASE("relation preconditions are hard errors") {
    const auto entropy = negative_entropy(2);
    const auto space = OrderedSpace::orthant(2);
    const auto mu = uniform_measure(space, {Point({2.0, 2.0}), Point({1.0, 1.0})});
    const auto nu = uniform_measure(space, {Point({0.5, 0.5}), Point({0.7, 0.7})});
    CHECK_THROWS_AS(verify_T4(entropy, Modulus::zero(), mu, nu, Relation::Ldown, kTol),
                    PreconditionError);
}

TEST_CASE("smooth dual on certified pairs") {
    // -E has an antitone differential everywhere; the weak relations also
    // need -E itself antitone, which pins the box above 1/e
    const auto f = minus_entropy(2);
    Rng rng(405);
    for (Relation rel : {Relation::Ldown, Relation::Rup}) {
        auto cfg = plane_cfg(rel, 0.2, 3.0, 3);
        for (int trial = 0; trial < 150; ++trial) {
            const auto pair = gen_majorized_pair(cfg, rng);
            CHECK(verify_T5(f, 1.0 / 0.2, pair.mu, pair.nu, rel, kTol).holds);
        }
    }
    {
        auto cfg = plane_cfg(Relation::wLdown, 0.4, 3.0, 3);
        for (int trial = 0; trial < 150; ++trial) {
            const auto pair = gen_majorized_pair(cfg, rng);
            CHECK(verify_T5(f, 1.0 / 0.4, pair.mu, pair.nu, Relation::wLdown, kTol).holds);
        }
    }
    // the mirrored weak relation needs an isotone function with an antitone
    // differential; sqrt-sum is the canonical increasing concave example
    FunctionModel root;
    root.name = "sqrt_sum";
    root.domain_space = OrderedSpace::orthant(2);
    root.domain_box = Box(std::vector<double>(2, 0.0),
                          std::vector<double>(2, std::numeric_limits<double>::infinity()));
    root.eval_fn = [](const Point& p) { return std::sqrt(p[0]) + std::sqrt(p[1]); };
    root.gradient_fn = [](const Point& p) {
        return Point({0.5 / std::sqrt(p[0]), 0.5 / std::sqrt(p[1])});
    };
    root.claims.isotone = true;
    root.claims.antitone_differential = true;
    {
        auto cfg = plane_cfg(Relation::wRup, 0.4, 3.0, 3);
        const double sigma = 0.25 / std::pow(0.4, 1.5);
        for (int trial = 0; trial < 150; ++trial) {
            const auto pair = gen_majorized_pair(cfg, rng);
            CHECK(verify_T5(root, sigma, pair.mu, pair.nu, Relation::wRup, kTol).holds);
        }
    }
}

TEST_CASE("an antitone function refutes the mirrored weak smooth dual") {
    // with f antitone (rather than isotone) the weak R-up inequality can
    // genuinely fail; the verifier reports the violation instead of hiding it
    const auto f = minus_entropy(2);
    Rng rng(416);
    auto cfg = plane_cfg(Relation::wRup, 0.4, 3.0, 3);
    int violations = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        const auto rep = verify_T5(f, 2.5, pair.mu, pair.nu, Relation::wRup, kTol);
        if (!rep.holds) ++violations;
    }
    CHECK(violations > 0);
}

TEST_CASE("linear functions make the smooth dual slack exact") {
    const auto f = linear_functional({1.0, 0.5});
    Rng rng(406);
    auto cfg = plane_cfg(Relation::Ldown, 0.0, 4.0, 3);
    for (int trial = 0; trial < 100; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        const double sigma = 2.0;
        const auto rep = verify_T5(f, sigma, pair.mu, pair.nu, Relation::Ldown, kTol);
        double quad = 0.0;
        for (std::size_t k = 0; k < pair.mu.size(); ++k) {
            const double d =
                cfg.space.norm(pair.mu.support[k] - pair.nu.support[k]);
            quad += pair.mu.weights[k] * 0.5 * sigma * d * d;
        }
        CHECK(rep.residual == doctest::Approx(quad).epsilon(1e-12));
    }
}

TEST_CASE("nondifferentiable variant accepts the convex bound and composites") {
    Rng rng(407);
    auto cfg = plane_cfg(Relation::Ldown, 0.05, 0.95, 3);
    cfg.chain_scale = 0.1;
    cfg.deficit_scale = 0.05;
    const auto fh = frechet_hoeffding(FrechetHoeffdingKind::Upper);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pair = gen_majorized_pair(cfg, rng);
        CHECK(verify_T6(fh, pair.mu, pair.nu, Relation::Ldown, kTol).holds);
    }
    const auto comp = zoo_make("composite:square:1,1");
    auto cfg2 = plane_cfg(Relation::Ldown, 0.1, 3.0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pair = gen_majorized_pair(cfg2, rng);
        CHECK(verify_T6(comp, pair.mu, pair.nu, Relation::Ldown, kTol).holds);
    }
    // supports must live strictly inside the positive orthant
    auto neg_cfg = plane_cfg(Relation::Ldown, -1.0, 1.0, 3);
    Rng rng2(408);
    const auto pair = gen_majorized_pair(neg_cfg, rng2);
    CHECK_THROWS_AS(verify_T6(comp, pair.mu, pair.nu, Relation::Ldown, kTol),
                    PreconditionError);
}

TEST_CASE("Jensen gap contraction") {
    const auto sq = scalar_model(scalar_square());
    const auto rep = verify_T7(sq, Point({0.5}), Point({-0.5}), Point({1.0}), Point({-1.0}),
                               0.5, kTol);
    CHECK(rep.holds);
    CHECK(rep.lhs == doctest::Approx(1.0));  // outer gap
    CHECK(rep.rhs == doctest::Approx(0.25)); // inner gap
    CHECK(rep.residual == doctest::Approx(0.75));

    CHECK(verify_T7(sq, Point({1.0}), Point({-1.0}), Point({1.0}), Point({-1.0}), 0.5, kTol)
              .residual == doctest::Approx(0.0));

    CHECK_THROWS_WITH_AS(verify_T7(sq, Point({2.0}), Point({-0.5}), Point({1.0}),
                                   Point({-1.0}), 0.5, kTol),
                         doctest::Contains("x1 <= y1"), PreconditionError);

    SUBCASE("sound on generated order intervals") {
        const auto entropy = negative_entropy(2);
        Rng rng(409);
        const Box box = Box::cube(2, 0.2, 3.0);
        for (int trial = 0; trial < 200; ++trial) {
            const auto inst = gen_jensen_instance(OrderedSpace::orthant(2), box, rng);
            const auto r =
                verify_T7(entropy, inst.x1, inst.x2, inst.y1, inst.y2, inst.lambda, kTol);
            CHECK(r.holds);
        }
    }
}

TEST_CASE("parallelogram rule") {
    const auto sq = scalar_model(scalar_square());
    const auto rep = verify_parallelogram(sq, Point({1.0}), Point({-1.0}), Point({2.0}),
                                          Point({-2.0}), ParallelogramVariant::Equal, kTol);
    CHECK(rep.residual == doctest::Approx(6.0));
    CHECK(rep.holds);

    CHECK(verify_parallelogram(sq, Point({1.0}), Point({-1.0}), Point({1.0}), Point({-1.0}),
                               ParallelogramVariant::Equal, kTol)
              .residual == doctest::Approx(0.0));

    // midpoint mismatch is a precondition failure
    CHECK_THROWS_AS(verify_parallelogram(sq, Point({1.0}), Point({-1.0}), Point({2.0}),
                                         Point({-1.5}), ParallelogramVariant::Equal, kTol),
                    PreconditionError);

    SUBCASE("weak-sum variant on the positive cone") {
        const auto power = power_p_sum(2, 2.0);
        const auto r = verify_parallelogram(
            power, Point({2.0, 1.0}), Point({1.0, 1.0}), Point({3.0, 2.0}),
            Point({1.5, 1.5}), ParallelogramVariant::WeakSum, kTol);
        CHECK(r.holds);
        CHECK(r.residual == doctest::Approx(10.5));
    }

    SUBCASE("sound on generated instances") {
        const auto entropy = negative_entropy(2);
        Rng rng(410);
        const Box box = Box::cube(2, 0.2, 3.0);
        for (int trial = 0; trial < 150; ++trial) {
            const auto inst = gen_parallelogram_instance(OrderedSpace::orthant(2), box, rng,
                                                         ParallelogramVariant::Equal);
            CHECK(verify_parallelogram(entropy, inst.x1, inst.x2, inst.y1, inst.y2,
                                       ParallelogramVariant::Equal, kTol)
                      .holds);
        }
        const auto power = power_p_sum(2, 2.0);
        Rng rng2(411);
        const Box pos = Box::cube(2, 0.1, 3.0);
        for (int trial = 0; trial < 150; ++trial) {
            const auto inst = gen_parallelogram_instance(OrderedSpace::orthant(2), pos, rng2,
                                                         ParallelogramVariant::WeakSum);
            CHECK(verify_parallelogram(power, inst.x1, inst.x2, inst.y1, inst.y2,
                                       ParallelogramVariant::WeakSum, kTol)
                      .holds);
        }
    }
}

TEST_CASE("multiplicative parallelogram scenario on commuting SPD matrices") {
    // log-matrices on a shared eigenbasis with equal log sums
    const std::vector<double> la1{0.7, 0.5}, la2{0.2, 0.1}, lb1{1.2, 0.8}, lb2{-0.3, -0.2};
    const double theta = 0.6, c = std::cos(theta), s = std::sin(theta);
    auto rotate = [&](const std::vector<double>& d) {
        // Q diag(d) Q^T for the rotation by theta
        const double a = c * c * d[0] + s * s * d[1];
        const double b = c * s * (d[0] - d[1]);
        const double e = s * s * d[0] + c * c * d[1];
        return pack_symmetric({a, b, b, e}, 2);
    };
    const Point La1 = rotate(la1), La2 = rotate(la2), Lb1 = rotate(lb1), Lb2 = rotate(lb2);

    // trace h(L) with h = g(exp(t)) and g nondecreasing convex (g = t^2)
    ScalarFunction h{"sq_of_exp",
                     [](double t) { return std::exp(2.0 * t); },
                     [](double t) { return 2.0 * std::exp(2.0 * t); },
                     [](double t) { return 4.0 * std::exp(2.0 * t); },
                     -10.0, 10.0, true, true};
    const auto f = trace_function(h, 2);
    const auto rep = verify_parallelogram(f, La1, La2, Lb1, Lb2,
                                          ParallelogramVariant::Equal, kTol);
    CHECK(rep.holds);

    // the conclusion transfers to traces of g on the exponentiated family
    auto trace_g_exp = [&](const Point& l) {
        return spectral_sum([](double t) { return std::exp(2.0 * t); }, l, 2);
    };
    CHECK(trace_g_exp(La1) + trace_g_exp(La2) <= trace_g_exp(Lb1) + trace_g_exp(Lb2) + 1e-12);
}

TEST_CASE("alternating-sum inequality") {
    const auto sq = scalar_model(scalar_square());
    const auto rep = verify_T8(sq, Modulus::zero(), {Point({3.0}), Point({1.0})}, kTol);
    CHECK(rep.lhs == doctest::Approx(8.0));
    CHECK(rep.rhs == doctest::Approx(4.0));
    CHECK(rep.holds);

    CHECK(verify_T8(sq, Modulus::zero(), {Point({2.0})}, kTol).residual ==
          doctest::Approx(0.0));

    const auto power = power_p_sum(2, 2.0);
    const auto rep2 = verify_T8(power, Modulus::zero(),
                                {Point({2.0, 2.0}), Point({1.0, 1.0})}, kTol);
    CHECK(rep2.lhs == doctest::Approx(6.0));
    CHECK(rep2.rhs == doctest::Approx(2.0));

    CHECK_THROWS_AS(verify_T8(sq, Modulus::zero(), {Point({1.0}), Point({2.0})}, kTol),
                    PreconditionError);
    CHECK_THROWS_AS(verify_T8(sq, Modulus::zero(), {Point({-1.0})}, kTol),
                    PreconditionError);

    SUBCASE("sound on generated chains") {
        Rng rng(412);
        const auto space = OrderedSpace::orthant(2);
        const Box box = Box::cube(2, 0.0, 3.0);
        const auto comp = zoo_make("composite:square:1,1");
        for (int trial = 0; trial < 200; ++trial) {
            const auto chain = gen_t8_chain(space, box, 4, rng);
            CHECK(verify_T8(power, Modulus::zero(), chain, kTol).holds);
            CHECK(verify_T8(comp, Modulus::zero(), chain, kTol).holds);
        }
    }
}

TEST_CASE("trace families") {
    const auto rep = verify_T9(scalar_square(),
                               {diag_matrix({2.0, 1.0}), diag_matrix({1.0, 0.0})},
                               {diag_matrix({3.0, 1.0}), diag_matrix({1.0, 1.0})}, 2, kTol);
    CHECK(rep.lhs == doctest::Approx(12.0));
    CHECK(rep.rhs == doctest::Approx(6.0));
    CHECK(rep.holds);

    const std::vector<Point> fam{diag_matrix({2.0, 1.0}), diag_matrix({1.0, 0.5})};
    CHECK(verify_T9(scalar_square(), fam, fam, 2, kTol).residual == doctest::Approx(0.0));

    SUBCASE("single pair is Weyl monotonicity, no operator monotonicity needed") {
        Rng rng(413);
        for (int trial = 0; trial < 100; ++trial) {
            const Point a = sample_point(OrderedSpace::loewner(2), Box::cube(1, 0.1, 2.0),
                                         1e-3, rng);
            const Point b = a + sample_cone_increment(OrderedSpace::loewner(2), 0.7, rng);
            CHECK(verify_T9(scalar_square(), {a}, {b}, 2, kTol).holds);
            CHECK(verify_T9(scalar_exp(), {a}, {b}, 2, kTol).holds);
        }
    }

    SUBCASE("dominance failure names the prefix") {
        CHECK_THROWS_WITH_AS(
            verify_T9(scalar_square(), {diag_matrix({2.0, 2.0})}, {diag_matrix({1.0, 1.0})},
                      2, kTol),
            doctest::Contains("j = 1"), PreconditionError);
    }

    SUBCASE("sound on generated families (f' operator monotone)") {
        Rng rng(414);
        for (int trial = 0; trial < 150; ++trial) {
            const auto inst = gen_t9_instance(2, Box::cube(1, 0.05, 2.0), 3, rng);
            CHECK(verify_T9(scalar_square(), inst.a, inst.b, 2, kTol).holds);
        }
    }
}

TEST_CASE("ordered-triplet inequality") {
    const auto sq = scalar_model(scalar_square());
    for (PopoviciuCase which : {PopoviciuCase::A, PopoviciuCase::B}) {
        const auto rep = verify_T10(sq, Modulus::zero(), Point({2.0}), Point({1.0}),
                                    Point({0.0}), which, kTol);
        CHECK(rep.lhs == doctest::Approx(8.0 / 3.0));
        CHECK(rep.rhs == doctest::Approx(7.0 / 3.0));
        CHECK(rep.holds);
    }

    CHECK(verify_T10(sq, Modulus::zero(), Point({1.0}), Point({1.0}), Point({1.0}),
                     PopoviciuCase::A, kTol)
              .residual == doctest::Approx(0.0));

    const auto power = power_p_sum(2, 2.0);
    const auto rep = verify_T10(power, Modulus::zero(), Point({3.0, 3.0}), Point({2.0, 2.0}),
                                Point({1.0, 1.0}), PopoviciuCase::A, kTol);
    CHECK(rep.holds);
    CHECK(rep.residual == doctest::Approx(2.0 / 3.0));

    SUBCASE("case dispatch") {
        CHECK_THROWS_AS(verify_T10(power, Modulus::zero(), Point({3.0, 3.0}),
                                   Point({1.0, 2.0}), Point({0.0, 0.0}), PopoviciuCase::A,
                                   kTol),
                        AmbiguousCaseError);
        CHECK_THROWS_AS(verify_T10(power, Modulus::zero(), Point({3.0, 3.0}),
                                   Point({1.0, 1.0}), Point({0.0, 0.0}), PopoviciuCase::B,
                                   kTol),
                        PreconditionError);
    }

    SUBCASE("sound on generated triplets, including strongly convex moduli") {
        Rng rng(415);
        const auto space = OrderedSpace::orthant(2);
        const Box box = Box::cube(2, 0.2, 3.0);
        const auto entropy = negative_entropy(2);
        for (PopoviciuCase which : {PopoviciuCase::A, PopoviciuCase::B}) {
            for (int trial = 0; trial < 150; ++trial) {
                const auto inst = gen_t10_instance(space, box, which, rng);
                CHECK(verify_T10(power, Modulus::quadratic(2.0), inst.x, inst.y, inst.z,
                                 which, kTol)
                          .holds);
                CHECK(verify_T10(entropy, Modulus::quadratic(1.0 / 3.0), inst.x, inst.y,
                                 inst.z, which, kTol)
                          .holds);
            }
        }
    }
}

TEST_CASE("Jensen gap at one half is half the parallelogram residual") {
    const auto entropy = negative_entropy(2);
    const Point y1({1.75, 1.5}), y2({0.5, 0.5}), x1({1.5, 1.2}), x2({0.75, 0.8});
    const auto t7 = verify_T7(entropy, x1, x2, y1, y2, 0.5, kTol);
    const auto c1 =
        verify_parallelogram(entropy, x1, x2, y1, y2, ParallelogramVariant::Equal, kTol);
    CHECK(2.0 * t7.residual == doctest::Approx(c1.residual).epsilon(1e-10));
}
