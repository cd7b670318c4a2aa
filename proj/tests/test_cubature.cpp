#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conekit/cubature.hpp"

using namespace conekit;

TEST_CASE("degree-0 rule: cap-proportional weights, unit mass") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    auto S = build_separated_set(Domain::Surface, 2, 0.2, 1);
    auto rule = solve_positive_cubature(S, 0, w);
    CHECK(rule.size() == S.size());
    CHECK(rule.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rule.residual == 0.0);
}

TEST_CASE("positive cubature on the surface: residual, positivity, exactness") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    int n = 8;
    auto S = build_separated_set(Domain::Surface, 2, 1.0 / n, 3);
    auto rule = solve_positive_cubature(S, n, w);
    CHECK(rule.residual <= 1e-8);
    for (double lam : rule.weights) CHECK(lam > 0.0);
    CHECK(rule.total_weight() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(verify_exactness(rule, w, 50, 7) <= 1e-8);

    // negative control: a polynomial of degree rule.degree + 2 is generally
    // not integrated exactly
    BasisEvaluator B(w, n + 2);
    std::vector<double> v(B.dim());
    double node_sum = 0.0;
    int nu_hi = B.block_begin(n + 2);  // first element of the top degree block
    for (std::size_t i = 0; i < rule.size(); ++i) {
        B.values(rule.nodes[i], v);
        node_sum += rule.weights[i] * v[nu_hi];
    }
    CHECK(std::abs(node_sum - 0.0) > 1e-8);
}

TEST_CASE("random-polynomial integration against the reference oracle") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.5);
    int n = 8;
    auto S = build_separated_set(Domain::Surface, 2, 0.9 / n, 5);
    auto rule = solve_positive_cubature(S, n, w);
    auto ref = reference_quadrature(w, n);
    BasisEvaluator B(w, n);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(B.dim());
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> c(B.dim());
        for (auto& x : c) x = gauss(rng);
        auto eval = [&](const Point& p) {
            B.values(p, v);
            double s = 0.0;
            for (int nu = 0; nu < B.dim(); ++nu) s += c[nu] * v[nu];
            return s;
        };
        double got = 0.0, want = 0.0, sup = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            double val = eval(rule.nodes[i]);
            got += rule.weights[i] * val;
            sup = std::max(sup, std::abs(val));
        }
        for (std::size_t i = 0; i < ref.size(); ++i) want += ref.weights[i] * eval(ref.nodes[i]);
        CHECK(std::abs(got - want) <= 1e-8 * std::max(1.0, sup));
    }
}

TEST_CASE("weight comparability with cap measures (all-nodes construction)") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    int n = 8;
    double delta = 1.0;
    auto S = build_separated_set(Domain::Surface, 2, delta / n, 11);
    CubatureOptions opts;
    opts.keep_all_nodes = true;  // the construction the comparability theorem describes
    auto rule = solve_positive_cubature(S, n, w, opts);
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        double ratio = rule.weights[i] / cap_measure_formula(w, rule.nodes[i], delta / n);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    INFO("ratio band [", lo, ", ", hi, "]");
    CHECK(hi / lo <= 100.0);
    CHECK(lo >= 1.0 / 100.0);
    CHECK(hi <= 100.0);
}

TEST_CASE("determinism: identical inputs give identical weights") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    auto S = build_separated_set(Domain::Surface, 2, 0.15, 2);
    auto r1 = solve_positive_cubature(S, 6, w);
    auto r2 = solve_positive_cubature(S, 6, w);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1.weights[i] == r2.weights[i]);
}

TEST_CASE("cone cubature via the dense path") {
    WeightSpec w = WeightSpec::cone(2, 0.0, 0.0);
    int n = 6;
    auto S = build_separated_set(Domain::Cone, 2, 1.0 / n, 9);
    auto rule = solve_positive_cubature(S, n, w);
    CHECK(rule.residual <= 1e-8);
    for (double lam : rule.weights) CHECK(lam > 0.0);
    CHECK(verify_exactness(rule, w, 30, 3) <= 1e-8);
}

TEST_CASE("base-plus-correction path keeps every node strictly positive") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    int n = 8;
    auto S = build_separated_set(Domain::Surface, 2, 1.0 / n, 13);
    CubatureOptions opts;
    opts.keep_all_nodes = true;
    auto rule = solve_positive_cubature(S, n, w, opts);
    CHECK(rule.size() == S.size());
    CHECK(rule.residual <= 1e-8);
    double minw = 1e300;
    for (double lam : rule.weights) minw = std::min(minw, lam);
    CHECK(minw > 0.0);
    CHECK(verify_exactness(rule, w, 30, 5) <= 1e-8);
}

TEST_CASE("infeasible mesh signals InfeasibleCubature") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    auto S = build_separated_set(Domain::Surface, 2, 0.4, 1);  // far too coarse for n=12
    CHECK_THROWS_AS(solve_positive_cubature(S, 12, w), InfeasibleCubature);
}

TEST_CASE("MZ constants: sanity for f = 1 and stability in n") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    double delta = 0.8;
    std::vector<double> uppers, lowers;
    for (int n : {8, 16}) {
        auto S = build_separated_set(Domain::Surface, 2, delta / n, 3);
        auto [lo, hi] = mz_constants(S, n, w, 1.0, 10, 5);
        CHECK(lo > 0.0);
        CHECK(hi > 0.0);
        lowers.push_back(lo);
        uppers.push_back(hi);
    }
    CHECK(uppers[1] <= 4.0 * uppers[0] + 1.0);
    CHECK(lowers[1] <= 4.0 * lowers[0] + 1.0);

    // p = inf: ||f||_inf <= c max_z |f(z)|, c bounded; the grid sup is itself
    // approximate, so allow slack both ways
    auto S = build_separated_set(Domain::Surface, 2, delta / 8, 3);
    auto [loi, hii] = mz_constants(S, 8, w, 1e300, 10, 5);
    CHECK(loi >= 0.5);
    CHECK(loi <= 10.0);
    CHECK(hii <= 2.0);
}
