#include <doctest.h>

#include <cmath>

#include "majorder/rng.hpp"
#include "majorder/space.hpp"

using namespace majorder;

namespace {

Point random_orthant_point(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
    Point p(std::vector<double>(static_cast<std::size_t>(n)));
    for (auto& v : p.coords) v = rng.uniform(lo, hi);
    return p;
}

Point random_symmetric(Rng& rng, int m, double scale = 2.0) {
    Point p(std::vector<double>(packed_size(m)));
    for (auto& v : p.coords) v = rng.uniform(-scale, scale);
    return p;
}

Point random_spd(Rng& rng, int m) {
    // G^T G + 0.1 I
    std::vector<double> g(static_cast<std::size_t>(m) * m);
    for (auto& v : g) v = rng.uniform(-1.0, 1.0);
    std::vector<double> full(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            double s = i == j ? 0.1 : 0.0;
            for (int k = 0; k < m; ++k)
                s += g[static_cast<std::size_t>(k) * m + i] * g[static_cast<std::size_t>(k) * m + j];
            full[static_cast<std::size_t>(i) * m + j] = s;
        }
    return pack_symmetric(full, m);
}

} // namespace

TEST_CASE("cone membership on orthants and the PSD cone") {
    const TolerancePolicy tol;
    CHECK(cone_contains(OrderedSpace::orthant(2), Point({0.0, 0.0}), tol));
    CHECK(cone_contains(OrderedSpace::loewner(2), Point({2.0, 1.0, 2.0}), tol));
    CHECK_FALSE(cone_contains(OrderedSpace::orthant(3), Point({1.0, -1.0, 1.0}),
                              TolerancePolicy::exact()));
    CHECK_THROWS_AS(cone_contains(OrderedSpace::orthant(2), Point({1.0}), tol),
                    DimensionError);
}

TEST_CASE("leq on the three space kinds") {
    const TolerancePolicy tol;
    const auto line = OrderedSpace::real_line();
    CHECK(leq(line, Point({1.0}), Point({1.0}), tol));
    CHECK(leq(line, Point({1.0}), Point({2.0}), tol));
    // diag(1,3) vs diag(2,2): the difference diag(1,-1) is indefinite
    const auto loewner = OrderedSpace::loewner(2);
    CHECK_FALSE(leq(loewner, diag_matrix({1.0, 3.0}), diag_matrix({2.0, 2.0}), tol));
    CHECK(leq(loewner, diag_matrix({1.0, 1.0}), diag_matrix({2.0, 2.0}), tol));
}

TEST_CASE("monotone chains") {
    const TolerancePolicy tol;
    const auto plane = OrderedSpace::orthant(2);
    CHECK(is_monotone_chain(plane, {Point({1.0, 1.0})}, ChainDirection::Decreasing, tol));
    CHECK(is_monotone_chain(plane, {Point({2.0, 2.0}), Point({1.0, 1.0}), Point({0.0, 0.0})},
                            ChainDirection::Decreasing, tol));
    CHECK_FALSE(is_monotone_chain(plane, {Point({2.0, 0.0}), Point({0.0, 2.0})},
                                  ChainDirection::Decreasing, tol));
    CHECK(is_monotone_chain(plane, {Point({0.0, 2.0}), Point({2.0, 2.0})},
                            ChainDirection::Increasing, tol));
    CHECK_THROWS_AS(is_monotone_chain(plane, {}, ChainDirection::Decreasing, tol),
                    EmptyChainError);
}

TEST_CASE("min_eigenvalue against closed-form roots") {
    CHECK(min_eigenvalue(diag_matrix({1.0, 1.0}), 2) == doctest::Approx(1.0).epsilon(1e-12));
    // roots of l^2 - 4l + 3
    const double low_root = (4.0 - std::sqrt(16.0 - 12.0)) / 2.0;
    CHECK(min_eigenvalue(Point({2.0, 1.0, 2.0}), 2) ==
          doctest::Approx(low_root).epsilon(1e-12));
    CHECK(min_eigenvalue(diag_matrix({-3.0, 5.0}), 2) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(min_eigenvalue(Point({1.0, std::nan(""), 1.0}), 2), NumericError);
}

TEST_CASE("sym_apply spectral calculus") {
    const Point m = Point({2.0, 1.0, 2.0});
    const Point same = sym_apply([](double t) { return t; }, m, 2);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(same[i] == doctest::Approx(m[i]).epsilon(1e-10));

    const Point e = sym_apply([](double t) { return std::exp(t); }, diag_matrix({0.0, 1.0}), 2);
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(e[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e[2] == doctest::Approx(std::exp(1.0)));

    // [[0,1],[1,0]] squared is the identity
    const Point sq = sym_apply([](double t) { return t * t; }, Point({0.0, 1.0, 0.0}), 2);
    CHECK(sq[0] == doctest::Approx(1.0));
    CHECK(sq[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sq[2] == doctest::Approx(1.0));

    CHECK_THROWS_AS(sym_apply([](double t) { return std::log(t); }, diag_matrix({-1.0, 1.0}), 2),
                    DomainError);
}

TEST_CASE("order axioms hold on random samples") {
    Rng rng(7);
    const TolerancePolicy tol;
    for (const auto& space : {OrderedSpace::orthant(3), OrderedSpace::loewner(2)}) {
        for (int trial = 0; trial < 200; ++trial) {
            Point a = space.is_loewner() ? random_symmetric(rng, space.n)
                                         : random_orthant_point(rng, space.n);
            CHECK(leq(space, a, a, tol)); // reflexive

            // build a <= b <= c by stacking cone elements
            Point inc1 = space.is_loewner() ? random_spd(rng, space.n)
                                            : random_orthant_point(rng, space.n, 0.0, 1.0);
            Point inc2 = space.is_loewner() ? random_spd(rng, space.n)
                                            : random_orthant_point(rng, space.n, 0.0, 1.0);
            Point b = a + inc1;
            Point c = b + inc2;
            REQUIRE(leq(space, a, b, tol));
            REQUIRE(leq(space, b, c, tol));
            CHECK(leq(space, a, c, tol.scaled(2.0))); // transitive at twice the tolerance
        }
    }
}

TEST_CASE("antisymmetry with zero tolerance on exact fixtures") {
    Rng rng(11);
    const TolerancePolicy exact = TolerancePolicy::exact();
    const auto space = OrderedSpace::orthant(3);
    for (int trial = 0; trial < 200; ++trial) {
        Point a(std::vector<double>(3));
        for (auto& v : a.coords) v = static_cast<double>(rng.below(7)) - 3.0;
        Point b = a;
        if (leq(space, a, b, exact) && leq(space, b, a, exact)) CHECK(a == b);
        b[rng.below(3)] += 1.0;
        CHECK_FALSE((leq(space, a, b, exact) && leq(space, b, a, exact)));
    }
}

TEST_CASE("Loewner order on diagonal matrices agrees exactly with the orthant order") {
    Rng rng(13);
    const TolerancePolicy exact = TolerancePolicy::exact();
    for (int m : {2, 3, 4}) {
        const auto loewner = OrderedSpace::loewner(m);
        const auto orthant = OrderedSpace::orthant(m);
        for (int trial = 0; trial < 350; ++trial) {
            std::vector<double> da(static_cast<std::size_t>(m)), db(da);
            for (auto& v : da) v = std::floor(rng.uniform(-3.0, 3.0) * 4.0) / 4.0;
            for (auto& v : db) v = std::floor(rng.uniform(-3.0, 3.0) * 4.0) / 4.0;
            const bool lw = leq(loewner, diag_matrix(da), diag_matrix(db), exact);
            const bool ot = leq(orthant, Point(da), Point(db), exact);
            CHECK(lw == ot);
        }
    }
}

TEST_CASE("Jacobi eigendecomposition reconstructs the matrix") {
    Rng rng(17);
    for (int m = 2; m <= 8; ++m) {
        for (int trial = 0; trial < 40; ++trial) {
            const Point a = random_symmetric(rng, m);
            const auto eig = jacobi_eigen(a, m);
            // A_ij = sum_k Q_ik l_k Q_jk
            Point rebuilt(std::vector<double>(packed_size(m)));
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    double s = 0.0;
                    for (int k = 0; k < m; ++k)
                        s += eig.vectors[static_cast<std::size_t>(i) * m + k] *
                             eig.values[static_cast<std::size_t>(k)] *
                             eig.vectors[static_cast<std::size_t>(j) * m + k];
                    rebuilt[packed_index(m, i, j)] = s;
                }
            const auto space = OrderedSpace::loewner(m);
            const double rel = space.norm(rebuilt - a) / space.norm(a);
            CHECK(rel <= 1e-9);
        }
    }
}

TEST_CASE("exp of log is the identity on SPD matrices") {
    Rng rng(23);
    for (int m : {2, 3, 5}) {
        const auto space = OrderedSpace::loewner(m);
        for (int trial = 0; trial < 30; ++trial) {
            const Point a = random_spd(rng, m);
            const Point roundtrip = sym_apply([](double t) { return std::exp(t); },
                                              sym_apply([](double t) { return std::log(t); }, a, m),
                                              m);
            CHECK(space.norm(roundtrip - a) <= 1e-8 * std::max(1.0, space.norm(a)));
        }
    }
}

TEST_CASE("packed layout round-trips and the Frobenius norm counts mirrors") {
    const Point p = pack_symmetric({2.0, 1.0, 1.0, 2.0}, 2);
    CHECK(p.coords == std::vector<double>{2.0, 1.0, 2.0});
    const auto full = unpack_symmetric(p, 2);
    CHECK(full == std::vector<double>{2.0, 1.0, 1.0, 2.0});
    CHECK(OrderedSpace::loewner(2).norm(p) ==
          doctest::Approx(std::sqrt(4.0 + 1.0 + 1.0 + 4.0)));
}
