#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conekit/specfun.hpp"

using namespace conekit;

namespace {

// independent oracle: the 2F1 series for P_n^{(a,b)}(x), evaluated term by
// term in quad precision; the reflection P_n^{(a,b)}(x) = (-1)^n P_n^{(b,a)}(-x)
// keeps the series argument in [0, 1/2] to limit cancellation
__float128 jacobi_series_raw(int n, __float128 a, __float128 b, __float128 x) {
    __float128 front = 1.0Q;
    for (int k = 0; k < n; ++k) front *= (a + 1.0Q + k) / (k + 1.0Q);
    __float128 z = (1.0Q - x) / 2.0Q;
    __float128 term = 1.0Q, sum = 1.0Q;
    for (int k = 0; k < n; ++k) {
        term *= (-(__float128)n + k) * ((__float128)n + a + b + 1.0Q + k) /
                ((a + 1.0Q + k) * (k + 1.0Q)) * z;
        sum += term;
    }
    return front * sum;
}

double jacobi_series(int n, double a, double b, double x) {
    if (x < 0.0) {
        __float128 v = jacobi_series_raw(n, b, a, -(__float128)x);
        return double((n % 2 == 0 ? v : -v));
    }
    return double(jacobi_series_raw(n, a, b, x));
}

double beta_fn(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace

TEST_CASE("jacobi_eval basic values") {
    CHECK(jacobi_eval(0, JacobiParams(0.7, -0.3), 0.3) == doctest::Approx(1.0));
    CHECK(jacobi_eval(5, JacobiParams(0.0, 0.0), 1.0) == doctest::Approx(1.0));
    double want = jacobi_series(3, 1.5, -0.5, 0.2);
    CHECK(jacobi_eval(3, JacobiParams(1.5, -0.5), 0.2) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("jacobi_eval matches the series oracle for n <= 30") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ab(-0.95, 3.0), xx(-1.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        double a = ab(rng), b = ab(rng), x = xx(rng);
        int n = 1 + int(trial % 30);
        double got = jacobi_eval(n, JacobiParams(a, b), x);
        double want = jacobi_series(n, a, b, x);
        CHECK(got == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("jacobi_norm closed form") {
    CHECK(jacobi_norm(0, JacobiParams(1.2, 0.4)) == doctest::Approx(1.0));
    CHECK(jacobi_norm(1, JacobiParams(0.0, 0.0)) == doctest::Approx(1.0 / 3.0));
    // quadrature oracle at (0.5, 0.5)
    JacobiParams p(0.5, 0.5);
    auto rule = gauss_jacobi(10, p);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double v = jacobi_eval(2, p, rule.nodes[i]);
        s += rule.weights[i] * v * v;
    }
    CHECK(jacobi_norm(2, p) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("zonal values and quadratic transform") {
    CHECK(zonal_eval(0, 1.0, 0.4) == doctest::Approx(1.0));
    CHECK(zonal_eval(2, 1.0, 1.0) == doctest::Approx(9.0));
    // C_{2n}^lam(x) = (lam)_n/(1/2)_n P_n^{(lam-1/2,-1/2)}(2x^2-1), n=3, lam=2, x=0.4
    int n = 3;
    double lam = 2.0, x = 0.4;
    double lhs = zonal_eval(2 * n, lam, x) * lam / (2 * n + lam);  // C_{2n}
    double rhs = pochhammer(lam, n) / pochhammer(0.5, n) *
                 jacobi_eval(n, JacobiParams(lam - 0.5, -0.5), 2 * x * x - 1);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("zonal_even_sum equals direct summation") {
    std::vector<double> coef = {0.3, -1.2, 0.0, 2.5, 0.7};
    double lam = 1.5, x = -0.37;
    double want = 0.0;
    for (int k = 0; k < int(coef.size()); ++k) want += coef[k] * zonal_eval(2 * k, lam, x);
    CHECK(zonal_even_sum(coef, lam, x) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("gauss_jacobi exactness") {
    auto mid = gauss_jacobi(1, JacobiParams(0.0, 0.0));
    CHECK(mid.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(mid.weights[0] == doctest::Approx(1.0));

    auto leg = gauss_jacobi(5, JacobiParams(0.0, 0.0));
    double s = 0.0;
    for (std::size_t i = 0; i < leg.nodes.size(); ++i)
        s += leg.weights[i] * std::pow(leg.nodes[i], 4);
    CHECK(s == doctest::Approx(0.2).epsilon(1e-13));  // normalized: (1/2) int x^4

    // Beta oracle on [0,1] with weight (1-t)^{1.5}
    auto r = gauss_jacobi(8, JacobiParams(1.5, 0.0), 0.0, 1.0);
    double s3 = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        s3 += r.weights[i] * std::pow(r.nodes[i], 3);
    double mass = beta_fn(1.0, 2.5);
    CHECK(s3 * mass == doctest::Approx(beta_fn(4.0, 2.5)).epsilon(1e-12));
}

TEST_CASE("gauss_jacobi weights positive and rule deterministic") {
    auto a = gauss_jacobi(24, JacobiParams(-0.5, 1.7));
    auto b = gauss_jacobi(24, JacobiParams(-0.5, 1.7));
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.weights[i] > 0.0);
        CHECK(a.nodes[i] == b.nodes[i]);
        CHECK(a.weights[i] == b.weights[i]);
    }
}

TEST_CASE("cutoff TypeA plateau and support") {
    CutoffSpec a;
    CHECK(cutoff_eval(a, 0.5) == doctest::Approx(1.0));
    CHECK(cutoff_eval(a, 1.0) == doctest::Approx(1.0));
    CHECK(cutoff_eval(a, 2.5) == doctest::Approx(0.0));
    for (double t = 0.0; t <= 3.0; t += 0.01) {
        double v = cutoff_eval(a, t);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("cutoff TypeB-frame partition identity") {
    CutoffSpec b{CutoffKind::TypeBFrame, 8};
    double s = 0.0;
    for (int j = 0; j <= 8; ++j) {
        double v = cutoff_eval(b, 3.7 / std::pow(2.0, j));
        s += v * v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    for (double t : {1.0, 1.3, 2.7, 10.0, 100.0}) {
        double acc = 0.0;
        for (int j = 0; j < 60; ++j) {
            double v = cutoff_eval(b, t / std::pow(2.0, j));
            acc += v * v;
        }
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-13));
    }
    // support [1/2, 2] and lower bound on [3/5, 5/3]
    CHECK(cutoff_eval(b, 0.49) == 0.0);
    CHECK(cutoff_eval(b, 2.01) == 0.0);
    for (int i = 0; i <= 100; ++i) {
        double t = 0.6 + (5.0 / 3.0 - 0.6) * i / 100.0;
        CHECK(cutoff_eval(b, t) >= 0.1);
    }
}

TEST_CASE("circle harmonics orthonormal and addition identity") {
    CHECK(circle_harmonic(0, Trig::Const, 1.0) == doctest::Approx(1.0));
    // addition: sum over basis of degree <= m of Y(th1)Y(th2) = 1 + 2 sum cos k(th1-th2)
    double th1 = 0.7, th2 = 2.3;
    int m = 9;
    double lhs = 1.0;
    for (int k = 1; k <= m; ++k)
        lhs += circle_harmonic(k, Trig::Cos, th1) * circle_harmonic(k, Trig::Cos, th2) +
               circle_harmonic(k, Trig::Sin, th1) * circle_harmonic(k, Trig::Sin, th2);
    double rhs = 1.0;
    for (int k = 1; k <= m; ++k) rhs += 2.0 * std::cos(k * (th1 - th2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(JacobiParams(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(jacobi_eval(-1, JacobiParams(0, 0), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(zonal_eval(2, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(gauss_jacobi(0, JacobiParams(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(circle_harmonic(0, Trig::Cos, 0.1), std::invalid_argument);
}
