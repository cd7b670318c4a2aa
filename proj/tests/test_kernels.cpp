#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "conekit/kernels.hpp"

using namespace conekit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("orthonormal basis Gram matrix is the identity") {
    for (auto w : {WeightSpec::surface(2, -1.0, 0.0), WeightSpec::surface(2, 0.5, 1.5),
                   WeightSpec::cone(2, 0.0, 0.5), WeightSpec::cone(2, -0.5, 0.0),
                   WeightSpec::cone(2, 1.5, 1.0)}) {
        BasisEvaluator B(w, 6);
        auto rule = reference_quadrature(w, 12);
        std::vector<std::vector<double>> tab(rule.nodes.size());
        std::vector<double> v(B.dim());
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            B.values(rule.nodes[i], v);
            tab[i] = v;
        }
        double worst = 0.0;
        for (int a = 0; a < B.dim(); ++a)
            for (int b = a; b < B.dim(); ++b) {
                double s = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    s += rule.weights[i] * tab[i][a] * tab[i][b];
                worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
            }
        INFO(w.describe());
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("basis constant element and apex behavior") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    Point p = make_surface_point(0.37, 1.1);
    CHECK(basis_eval(w, 0, 0, 0, p) == doctest::Approx(1.0));
    CHECK(basis_norm(w, 0, 0) == doctest::Approx(1.0));
    Point apex{{0, 0, 0}, 0.0};
    for (int m = 1; m <= 3; ++m)
        CHECK(basis_eval(w, 4, m, 0, apex) == doctest::Approx(0.0));
}

TEST_CASE("kernel n=0 is 1 and methods agree") {
    std::mt19937_64 rng(5);
    for (double g : {-0.5, 0.0, 1.5}) {
        WeightSpec w = WeightSpec::surface(2, -1.0, g);
        KernelConfig cfg(w);
        auto ps = sample_points(Domain::Surface, 2, 60, 2);
        auto qs = sample_points(Domain::Surface, 2, 60, 3);
        CHECK(reprod_kernel(cfg, 0, ps[0], qs[0], KernelMethod::Addition) ==
              doctest::Approx(1.0).epsilon(1e-10));
        double worst = 0.0;
        for (int i = 0; i < 60; ++i) {
            int n = i % 21;
            double kb = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::BasisSum);
            double ka = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::Addition);
            worst = std::max(worst, std::abs(kb - ka) / (1.0 + std::abs(kb)));
            // symmetry
            double kb2 = reprod_kernel(cfg, n, qs[i], ps[i], KernelMethod::BasisSum);
            CHECK(kb2 == doctest::Approx(kb).epsilon(1e-12));
        }
        INFO("gamma = ", g);
        CHECK(worst <= 1e-8);
    }
    for (double m : {0.0, 0.5, 1.0})
        for (double g : {-0.5, 0.0}) {
            WeightSpec w = WeightSpec::cone(2, g, m);
            KernelConfig cfg(w);
            auto ps = sample_points(Domain::Cone, 2, 40, 4);
            auto qs = sample_points(Domain::Cone, 2, 40, 5);
            CHECK(reprod_kernel(cfg, 0, ps[0], qs[0], KernelMethod::Addition) ==
                  doctest::Approx(1.0).epsilon(1e-10));
            double worst = 0.0;
            for (int i = 0; i < 40; ++i) {
                int n = i % 15;
                double kb = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::BasisSum);
                double ka = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::Addition);
                worst = std::max(worst, std::abs(kb - ka) / (1.0 + std::abs(kb)));
            }
            INFO("mu = ", m, " gamma = ", g);
            CHECK(worst <= 1e-8);
        }
}

TEST_CASE("addition quadrature is exact: doubling the order changes nothing") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.7);
    Point p = make_surface_point(0.3, 0.4), q = make_surface_point(0.8, 2.0);
    int n = 9;
    std::vector<double> coef(n + 1, 0.0);
    coef[n] = 1.0;
    double k1 = filtered_kernel_addition(w, coef, p, q, n + 4);
    double k2 = filtered_kernel_addition(w, coef, p, q, 2 * (n + 4));
    CHECK(std::abs(k1 - k2) <= 1e-12 * (1.0 + std::abs(k1)));

    WeightSpec wc = WeightSpec::cone(2, 0.3, 0.8);
    Point pc{{0.1, -0.2, 0}, 0.5}, qc{{0.3, 0.1, 0}, 0.9};
    double c1 = filtered_kernel_addition(wc, coef, pc, qc, n + 4);
    double c2 = filtered_kernel_addition(wc, coef, pc, qc, 2 * (n + 4));
    CHECK(std::abs(c1 - c2) <= 1e-12 * (1.0 + std::abs(c1)));
}

TEST_CASE("localized kernel reproduces polynomials through cubature") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    KernelConfig cfg(w);
    CutoffSpec a;  // TypeA
    int n = 6;
    auto rule = reference_quadrature(w, 3 * n);
    BasisEvaluator B(w, n);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> c(B.dim());
    for (auto& x : c) x = gauss(rng);
    auto geval = [&](const Point& pt) {
        std::vector<double> v(B.dim());
        B.values(pt, v);
        double s = 0.0;
        for (int nu = 0; nu < B.dim(); ++nu) s += c[nu] * v[nu];
        return s;
    };
    auto probes = sample_points(Domain::Surface, 2, 10, 21);
    double worst = 0.0;
    for (const Point& p : probes) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * geval(rule.nodes[i]) *
                   localized_kernel(cfg, n, a, p, rule.nodes[i]);
        worst = std::max(worst, std::abs(acc - geval(p)));
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("localized kernel diagonal positivity with TypeB cutoff") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.5);
    KernelConfig cfg(w);
    CutoffSpec b{CutoffKind::TypeBFrame, 8};
    for (const Point& p : sample_points(Domain::Surface, 2, 30, 31)) {
        // sum a(k/n)^2 P_k(p,p) >= 0: square the filter
        std::vector<double> coef(2 * 8 + 1);
        for (int k = 0; k <= 16; ++k) {
            double v = cutoff_eval(b, k / 8.0);
            coef[k] = v * v;
        }
        CHECK(filtered_kernel_addition(w, coef, p, p) >= -1e-12);
    }
}

TEST_CASE("fractional kernel: mu(0) = 0 and BasisSum route agreement") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    KernelConfig cfg(w);
    CutoffSpec a;
    Point p = make_surface_point(0.4, 0.3), q = make_surface_point(0.6, 1.2);
    // n = 1: only the k=1 term contributes with TypeA (k=0 annihilated, a(2)=0)
    double v = localized_kernel_frac(cfg, 1, 2.0, a, p, q);
    double expect = w.eigenvalue(1) * reprod_kernel(cfg, 1, p, q, KernelMethod::BasisSum);
    CHECK(v == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("fast decay polynomial") {
    for (Domain dom : {Domain::Surface, Domain::Cone}) {
        auto centers = sample_points(dom, 2, 6, 41);
        auto pts = sample_points(dom, 2, 200, 42);
        for (const Point& c : centers) {
            CHECK(fast_decay_poly(dom, 2, c, 16, 3, c) == doctest::Approx(1.0).epsilon(1e-10));
            double bound16 = 0.0, bound32 = 0.0;
            for (const Point& p : pts) {
                double v16 = fast_decay_poly(dom, 2, c, 16, 3, p);
                double v32 = fast_decay_poly(dom, 2, c, 32, 3, p);
                CHECK(v16 >= 0.0);
                CHECK(v32 >= 0.0);
                double d16 = std::pow(1.0 + 16 * dist(dom, c, p, 2), 6);
                double d32 = std::pow(1.0 + 32 * dist(dom, c, p, 2), 6);
                bound16 = std::max(bound16, v16 * d16);
                bound32 = std::max(bound32, v32 * d32);
            }
            // decay constant stable across n (factor 4 headroom)
            CHECK(bound32 <= 4.0 * std::max(bound16, 1.0));
        }
    }
}

TEST_CASE("christoffel function basics and two-sided cap bound") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    KernelConfig cfg(w);
    Point p = make_surface_point(0.45, 0.8);
    CHECK(christoffel(cfg, 0, p) == doctest::Approx(1.0).epsilon(1e-10));
    double prev = 2.0;
    for (int n : {1, 2, 4, 8, 16}) {
        double lam = christoffel(cfg, n, p);
        CHECK(lam <= prev + 1e-14);
        prev = lam;
    }
    double lo = 1e300, hi = 0.0;
    for (int n : {4, 8, 16, 32})
        for (const Point& z : sample_points(Domain::Surface, 2, 20, 51)) {
            double ratio = christoffel(cfg, n, z) / cap_measure_formula(w, z, 1.0 / n);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
    CHECK(lo >= 1.0 / 50.0);
    CHECK(hi <= 50.0);
}

TEST_CASE("finite-difference eigenstructure: surface operator") {
    const double gamma = 0.5;
    WeightSpec w = WeightSpec::surface(2, -1.0, gamma);
    const double h = 1e-4;
    for (int n = 1; n <= 8; ++n)
        for (int m : {0, 1, std::min(n, 3)}) {
            double theta = 0.9;
            auto S = [&](double t) {
                Point p = make_surface_point(t, theta);
                return basis_eval(w, n, m, 0, p);
            };
            for (double t : {0.2, 0.37, 0.55, 0.78}) {
                double f0 = S(t), fp = S(t + h), fm = S(t - h);
                double d1 = (fp - fm) / (2 * h);
                double d2 = (fp - 2 * f0 + fm) / (h * h);
                double val = t * (1 - t) * d2 + (1.0 - (2.0 + gamma) * t) * d1 -
                             double(m) * m / t * f0;
                double eig = -w.eigenvalue(n);
                CHECK(val == doctest::Approx(eig * f0).epsilon(2e-4));
            }
        }
}

TEST_CASE("finite-difference eigenstructure: cone operator") {
    const double gamma = 0.0, mu = 0.5;
    WeightSpec w = WeightSpec::cone(2, gamma, mu);
    const double h = 1e-4;
    const int d = 2;
    auto Jf = [&](int n, int m, int idx, double x1, double x2, double t) {
        Point p{{x1, x2, 0.0}, t};
        return basis_eval(w, n, m, idx, p);
    };
    for (int n = 1; n <= 6; ++n)
        for (int m : {0, std::min(n, 2)}) {
            int idx = 0;
            for (auto [x1, x2, t] : {std::tuple{0.1, 0.05, 0.5}, {0.2, -0.1, 0.6},
                                     {-0.15, 0.2, 0.55}}) {
                auto F = [&](double a, double b, double c) { return Jf(n, m, idx, a, b, c); };
                double f0 = F(x1, x2, t);
                double ft = (F(x1, x2, t + h) - F(x1, x2, t - h)) / (2 * h);
                double ftt = (F(x1, x2, t + h) - 2 * f0 + F(x1, x2, t - h)) / (h * h);
                double f1 = (F(x1 + h, x2, t) - F(x1 - h, x2, t)) / (2 * h);
                double f11 = (F(x1 + h, x2, t) - 2 * f0 + F(x1 - h, x2, t)) / (h * h);
                double f2 = (F(x1, x2 + h, t) - F(x1, x2 - h, t)) / (2 * h);
                double f22 = (F(x1, x2 + h, t) - 2 * f0 + F(x1, x2 - h, t)) / (h * h);
                double f12 = (F(x1 + h, x2 + h, t) - F(x1 + h, x2 - h, t) -
                              F(x1 - h, x2 + h, t) + F(x1 - h, x2 - h, t)) /
                             (4 * h * h);
                double f1t = (F(x1 + h, x2, t + h) - F(x1 + h, x2, t - h) -
                              F(x1 - h, x2, t + h) + F(x1 - h, x2, t - h)) /
                             (4 * h * h);
                double f2t = (F(x1, x2 + h, t + h) - F(x1, x2 + h, t - h) -
                              F(x1, x2 - h, t + h) + F(x1, x2 - h, t - h)) /
                             (4 * h * h);
                double xdotgrad = x1 * f1 + x2 * f2;
                double val = t * (1 - t) * ftt + 2.0 * (1 - t) * (x1 * f1t + x2 * f2t) +
                             (t - x1 * x1) * f11 + (t - x2 * x2) * f22 -
                             2.0 * x1 * x2 * f12 + (2 * mu + d) * ft -
                             (2 * mu + gamma + d + 1) * (xdotgrad + t * ft);
                double eig = -w.eigenvalue(n);
                CHECK(val == doctest::Approx(eig * f0).epsilon(2e-4));
            }
        }
}

TEST_CASE("decay report: bounded for admissible cutoffs, growing for indicator") {
    WeightSpec w = WeightSpec::surface(2, -1.0, 0.0);
    KernelConfig cfg(w);
    std::vector<int> ns = {8, 16, 32};
    CutoffSpec a;
    auto rows = decay_report(cfg, a, ns, 6.0, 24, 7);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(r.sup_n1 > 0.0);
        CHECK(std::isfinite(r.sup_n1));
        CHECK(std::isfinite(r.sup_n3));
    }
    // admissible: bounded across doubling n (generous factor while small-n
    // transients die out)
    CHECK(rows[2].sup_n1 <= 4.0 * rows[0].sup_n1 + 1.0);
    CutoffSpec ind{CutoffKind::Indicator, 0};
    auto bad = decay_report(cfg, ind, ns, 6.0, 24, 7);
    CHECK(bad[2].sup_n1 >= 3.0 * bad[0].sup_n1);
}

TEST_CASE("kernel errors") {
    WeightSpec w = WeightSpec::surface(2, 0.5, 0.0);  // beta != -1: no addition formula
    KernelConfig cfg(w);
    Point p = make_surface_point(0.4, 0.0);
    CHECK_THROWS_AS(reprod_kernel(cfg, 2, p, p, KernelMethod::Addition), std::invalid_argument);
    CHECK_THROWS_AS(localized_kernel_frac(cfg, 4, 1.0, CutoffSpec{}, p, p),
                    std::invalid_argument);
    WeightSpec w2 = WeightSpec::surface(2, -1.0, 0.0);
    KernelConfig cfg2(w2);
    CHECK_THROWS_AS(localized_kernel(cfg2, 0, CutoffSpec{}, p, p), std::invalid_argument);
}
