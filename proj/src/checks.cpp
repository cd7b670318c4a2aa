#include "conekit/checks.hpp"

#include <cmath>
#include <random>

#include "conekit/approx.hpp"
#include "conekit/cubature.hpp"
#include "conekit/frames.hpp"
#include "conekit/geometry.hpp"
#include "conekit/kernels.hpp"
#include "conekit/specfun.hpp"

namespace conekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

void push(std::vector<CheckResult>& out, const std::string& id, double measured, double bound,
          bool pass_if_below = true, const std::string& detail = "") {
    CheckResult r;
    r.id = id;
    r.measured = measured;
    r.bound = bound;
    r.passed = pass_if_below ? measured <= bound : measured >= bound;
    r.detail = detail;
    out.push_back(r);
}

std::vector<CheckResult> specfun_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);

    // discrete orthogonality of Jacobi polynomials under Gauss-Jacobi rules
    {
        double worst = 0.0;
        for (auto [a, b] : {std::pair{0.0, 0.0}, {1.5, -0.5}, {-0.5, -0.5}, {2.0, 3.0}}) {
            JacobiParams p(a, b);
            auto rule = gauss_jacobi(2 * 20 + 4, p);
            std::vector<double> pv(21);
            std::vector<std::vector<double>> tab(rule.nodes.size());
            for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                jacobi_eval_all(20, p, rule.nodes[i], pv);
                tab[i] = pv;
            }
            for (int n = 0; n <= 20; ++n)
                for (int m = 0; m <= n; ++m) {
                    double s = 0.0;
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                        s += rule.weights[i] * tab[i][n] * tab[i][m];
                    double expect = n == m ? jacobi_norm(n, p) : 0.0;
                    double err = n == m ? std::abs(s - expect) / expect : std::abs(s);
                    worst = std::max(worst, err);
                }
        }
        push(out, "specfun.jacobi_orthogonality", worst, 1e-10);
    }
    // cut-off partition identity and frame lower bound
    {
        CutoffSpec b{CutoffKind::TypeBFrame, 8};
        double worst = 0.0;
        for (double t : {1.0, 1.3, 2.7, 10.0, 100.0}) {
            double s = 0.0;
            for (int j = 0; j < 60; ++j) {
                double a = cutoff_eval(b, t / std::pow(2.0, j));
                s += a * a;
            }
            worst = std::max(worst, std::abs(s - 1.0));
        }
        push(out, "specfun.cutoff_partition", worst, 1e-12);
        double lo = 1.0;
        for (int i = 0; i <= 200; ++i) {
            double t = 0.6 + (5.0 / 3.0 - 0.6) * i / 200.0;
            lo = std::min(lo, cutoff_eval(b, t));
        }
        push(out, "specfun.cutoff_frame_lower", lo, 0.1, false);
    }
    // zonal two-route agreement through the quadratic transform
    {
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            double lam = 0.5 + 2.5 * std::abs(unif(rng));
            double x = unif(rng);
            int n = 1 + int(8 * std::abs(unif(rng)));
            double z1 = zonal_eval(2 * n, lam, x);
            JacobiParams jp(lam - 0.5, -0.5);
            double p1 = jacobi_eval(n, jp, 1.0);
            double z2 = (2.0 * n + lam) / lam * pochhammer(lam, n) / pochhammer(0.5, n) *
                        jacobi_eval(n, jp, 2.0 * x * x - 1.0) / p1 * p1;
            // C_{2n}^lam(x) = (lam)_n/(1/2)_n P_n^{(lam-1/2,-1/2)}(2x^2-1)
            double c2n = pochhammer(lam, n) / pochhammer(0.5, n) *
                         jacobi_eval(n, jp, 2.0 * x * x - 1.0);
            double z3 = (2.0 * n + lam) / lam * c2n;
            (void)z2;
            worst = std::max(worst, std::abs(z1 - z3) / (1.0 + std::abs(z1)));
        }
        push(out, "specfun.zonal_quadratic_transform", worst, 1e-12);
    }
    // circular harmonics: discrete Gram over 64 equispaced angles
    {
        const int K = 64, maxm = 20;
        std::vector<std::pair<int, Trig>> basis;
        basis.push_back({0, Trig::Const});
        for (int m = 1; m <= maxm; ++m) {
            basis.push_back({m, Trig::Cos});
            basis.push_back({m, Trig::Sin});
        }
        double worst = 0.0;
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = a; b < basis.size(); ++b) {
                double s = 0.0;
                for (int k = 0; k < K; ++k) {
                    double th = 2.0 * kPi * k / K;
                    s += circle_harmonic(basis[a].first, basis[a].second, th) *
                         circle_harmonic(basis[b].first, basis[b].second, th);
                }
                s /= K;
                double expect = a == b ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(s - expect));
            }
        push(out, "specfun.circle_harmonic_gram", worst, 1e-12);
    }
    return out;
}

std::vector<CheckResult> geometry_checks(int d, double gamma, double mu, std::uint64_t seed) {
    std::vector<CheckResult> out;
    for (Domain dom : {Domain::Surface, Domain::Cone}) {
        if (dom == Domain::Cone && d != 2) continue;
        auto pts = sample_points(dom, d, 3 * 10000, seed);
        double slack = 0.0, asym = 0.0;
        for (int i = 0; i + 2 < int(pts.size()); i += 3) {
            const Point &a = pts[i], &b = pts[i + 1], &c = pts[i + 2];
            double ab = dist(dom, a, b, d), ba = dist(dom, b, a, d);
            double bc = dist(dom, b, c, d), ac = dist(dom, a, c, d);
            asym = std::max(asym, std::abs(ab - ba));
            slack = std::max(slack, ac - ab - bc);
        }
        std::string tag = dom == Domain::Surface ? "surface" : "cone";
        push(out, "geometry.triangle_inequality." + tag, slack, 1e-10);
        push(out, "geometry.symmetry." + tag, asym, 0.0);

        // |sqrt(t)-sqrt(s)| <= d and |sqrt(1-t)-sqrt(1-s)| <= d
        double worst = 0.0;
        for (int i = 0; i + 1 < int(pts.size()); i += 2) {
            const Point &a = pts[i], &b = pts[i + 1];
            double dd = dist(dom, a, b, d);
            worst = std::max(worst, std::abs(std::sqrt(a.t) - std::sqrt(b.t)) - dd);
            worst = std::max(worst,
                             std::abs(std::sqrt(1.0 - a.t) - std::sqrt(1.0 - b.t)) - dd);
        }
        push(out, "geometry.sqrt_t_bound." + tag, worst, 1e-12);
    }
    // cap-measure closed form vs quadrature
    {
        WeightSpec ws = WeightSpec::surface(d, -1.0, gamma);
        double lo = 1e300, hi = 0.0;
        for (double t : {0.02, 0.2, 0.5, 0.9, 0.995})
            for (double r : {0.05, 0.15, 0.4}) {
                Point c = make_surface_point(t, 0.3);
                double q = cap_measure_quad(ws, c, r);
                double f = cap_measure_formula(ws, c, r);
                lo = std::min(lo, q / f);
                hi = std::max(hi, q / f);
            }
        push(out, "geometry.cap_equiv.surface", hi / lo, 20.0, true,
             "ratio band [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        if (d == 2) {
            WeightSpec wc = WeightSpec::cone(2, gamma, mu);
            lo = 1e300;
            hi = 0.0;
            for (double t : {0.1, 0.5, 0.9})
                for (double r : {0.08, 0.25}) {
                    Point c{{0.4 * t, 0.0, 0.0}, t};
                    double q = cap_measure_quad(wc, c, r);
                    double f = cap_measure_formula(wc, c, r);
                    lo = std::min(lo, q / f);
                    hi = std::max(hi, q / f);
                }
            push(out, "geometry.cap_equiv.cone", hi / lo, 20.0, true,
                 "ratio band [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        }
    }
    // separated set: separation, covering, cardinality scaling
    for (Domain dom : {Domain::Surface, Domain::Cone}) {
        if (dom == Domain::Cone && d != 2) continue;
        double eps = 0.1;
        auto S = build_separated_set(dom, d, eps, seed);
        double minsep = 1e300;
        for (std::size_t i = 0; i < S.size(); ++i) {
            // only check against a window of following nodes (sorted by ring)
            for (std::size_t j = i + 1; j < std::min(S.size(), i + 600); ++j)
                minsep = std::min(minsep, dist(dom, S.nodes[i], S.nodes[j], d));
        }
        std::string tag = dom == Domain::Surface ? "surface" : "cone";
        push(out, "geometry.separation." + tag, eps - minsep, 1e-12);

        auto probes = sample_points(dom, d, 20000, seed + 7);
        double cover = 0.0;
        for (const Point& p : probes) {
            double best = 1e300;
            for (std::size_t i = 0; i < S.size(); ++i)
                best = std::min(best, dist(dom, p, S.nodes[i], d));
            cover = std::max(cover, best);
        }
        push(out, "geometry.covering." + tag, cover, 3.0 * eps, true,
             "covering radius " + std::to_string(cover));
        int dim = dom == Domain::Surface ? d : d + 1;
        double card = double(S.size()) * std::pow(eps, dim);
        push(out, "geometry.cardinality." + tag, card, 30.0, true,
             "count " + std::to_string(S.size()));
        push(out, "geometry.cardinality_lower." + tag, card, 0.05, false);
    }
    // reference quadrature: exactness against monomial moments (surface d=2)
    {
        WeightSpec ws = WeightSpec::surface(2, -1.0, gamma);
        auto rule = reference_quadrature(ws, 8);
        double b = weight_normalization(ws);
        double worst = 0.0;
        for (int k1 = 0; k1 <= 3; ++k1)
            for (int k2 = 0; k2 <= 3; ++k2)
                for (int j = 0; j <= 2; ++j) {
                    if (k1 + k2 + j > 8) continue;
                    double s = 0.0;
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                        const Point& p = rule.nodes[i];
                        s += rule.weights[i] * std::pow(p.x[0], k1) * std::pow(p.x[1], k2) *
                             std::pow(p.t, j);
                    }
                    // int x1^k1 x2^k2 t^j w dS = int t^{k1+k2+j+beta+d-1}(1-t)^g dt
                    //                             x int cos^k1 sin^k2
                    double ang = 0.0;
                    const int KK = 64;
                    for (int a = 0; a < KK; ++a) {
                        double th = 2.0 * kPi * a / KK;
                        ang += std::pow(std::cos(th), k1) * std::pow(std::sin(th), k2);
                    }
                    ang *= 2.0 * kPi / KK;
                    double tint = std::exp(std::lgamma(k1 + k2 + j + ws.beta + ws.d) +
                                           std::lgamma(gamma + 1.0) -
                                           std::lgamma(k1 + k2 + j + ws.beta + ws.d + gamma + 1.0));
                    double expect = b * tint * ang;
                    worst = std::max(worst, std::abs(s - expect) / (1.0 + std::abs(expect)));
                }
        push(out, "geometry.reference_quadrature_moments", worst, 1e-11);
    }
    return out;
}

std::vector<CheckResult> kernels_checks(int d, double gamma, double mu, std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)d;
    // oracle equivalence BasisSum vs Addition
    {
        double worst = 0.0;
        for (double g : {-0.5, 0.0, 1.5}) {
            WeightSpec w = WeightSpec::surface(2, -1.0, g);
            KernelConfig cfg(w);
            auto ps = sample_points(Domain::Surface, 2, 40, seed);
            auto qs = sample_points(Domain::Surface, 2, 40, seed + 1);
            for (int n : {0, 1, 5, 12}) {
                for (int i = 0; i < 40; ++i) {
                    double kb = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::BasisSum);
                    double ka = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::Addition);
                    worst = std::max(worst, std::abs(kb - ka) / (1.0 + std::abs(kb)));
                }
            }
        }
        push(out, "kernels.oracle_equivalence.surface", worst, 1e-8);
        double worstc = 0.0;
        for (double m : {0.0, 0.5, 1.0}) {
            WeightSpec w = WeightSpec::cone(2, gamma >= -0.5 ? gamma : 0.0, m);
            KernelConfig cfg(w);
            auto ps = sample_points(Domain::Cone, 2, 30, seed + 2);
            auto qs = sample_points(Domain::Cone, 2, 30, seed + 3);
            for (int n : {0, 1, 4, 9}) {
                for (int i = 0; i < 30; ++i) {
                    double kb = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::BasisSum);
                    double ka = reprod_kernel(cfg, n, ps[i], qs[i], KernelMethod::Addition);
                    worstc = std::max(worstc, std::abs(kb - ka) / (1.0 + std::abs(kb)));
                }
            }
        }
        push(out, "kernels.oracle_equivalence.cone", worstc, 1e-8);
        (void)mu;
    }
    // reproducing property under reference quadrature
    {
        WeightSpec w = WeightSpec::surface(2, -1.0, gamma);
        int n = 6;
        auto B = evaluator_for(w, n);
        auto rule = reference_quadrature(w, 2 * n + 2);
        KernelConfig cfg(w);
        auto probes = sample_points(Domain::Surface, 2, 5, seed + 9);
        double worst = 0.0;
        std::vector<double> v(B->dim());
        for (const Point& p : probes) {
            for (int nu = B->block_begin(n); nu < B->block_end(n); ++nu) {
                double acc = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                    B->values(rule.nodes[i], v);
                    acc += rule.weights[i] * v[nu] *
                           reprod_kernel(cfg, n, p, rule.nodes[i], KernelMethod::Addition);
                }
                B->values(p, v);
                worst = std::max(worst, std::abs(acc - v[nu]));
            }
        }
        push(out, "kernels.reproducing_property", worst, 1e-8);
    }
    return out;
}

std::vector<CheckResult> cubature_checks(int d, double gamma, double mu, std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)d;
    (void)mu;
    WeightSpec w = WeightSpec::surface(2, -1.0, gamma);
    for (int n : {4, 8}) {
        auto S = build_separated_set(Domain::Surface, 2, 0.8 / n, seed);
        auto rule = solve_positive_cubature(S, n, w);
        push(out, "cubature.residual.n" + std::to_string(n), rule.residual, 1e-8);
        double minw = 1e300;
        for (double lam : rule.weights) minw = std::min(minw, lam);
        push(out, "cubature.positivity.n" + std::to_string(n), minw, 0.0, false);
        push(out, "cubature.exactness.n" + std::to_string(n),
             verify_exactness(rule, w, 30, seed), 1e-8);
    }
    return out;
}

std::vector<CheckResult> frames_checks(int d, double gamma, double mu, std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)d;
    (void)mu;
    WeightSpec w = WeightSpec::surface(2, -1.0, gamma);
    auto frame = build_frame(w, 4, 1.0);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto B = evaluator_for(w, 8);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        SpectralCoeffs f(w, 8);
        f.c.resize(B->dim());
        for (auto& c : f.c) c = gauss(rng);
        worst = std::max(worst, parseval_defect(frame, f));
    }
    push(out, "frames.parseval.surface", worst, 1e-6);
    return out;
}

std::vector<CheckResult> approx_checks(int d, double gamma, double mu, std::uint64_t seed) {
    std::vector<CheckResult> out;
    (void)d;
    (void)mu;
    WeightSpec w = WeightSpec::surface(2, -1.0, gamma);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // near-best reproduction at small degree
    {
        int n = 4;
        auto B = evaluator_for(w, n);
        SpectralCoeffs f(w, n);
        f.c.resize(B->dim());
        for (auto& c : f.c) c = gauss(rng);
        auto rule = reference_quadrature(w, 3 * n);
        CutoffSpec a;
        auto g = near_best(
            w, n, a, [&](const Point& p) { return eval_spectral(f, p); }, rule);
        double worst = 0.0;
        for (const Point& p : sample_points(Domain::Surface, 2, 25, seed + 5))
            worst = std::max(worst, std::abs(eval_spectral(g, p) - eval_spectral(f, p)));
        push(out, "approx.near_best_reproduction", worst, 1e-8);
    }
    return out;
}

}  // namespace

std::vector<std::string> known_suites() {
    return {"specfun", "geometry", "kernels", "cubature", "frames", "approx"};
}

std::vector<CheckResult> run_checks(const std::string& suite, int d, double gamma, double mu,
                                    std::uint64_t seed) {
    if (suite == "specfun") return specfun_checks(seed);
    if (suite == "geometry") return geometry_checks(d, gamma, mu, seed);
    if (suite == "kernels") return kernels_checks(d, gamma, mu, seed);
    if (suite == "cubature") return cubature_checks(d, gamma, mu, seed);
    if (suite == "frames") return frames_checks(d, gamma, mu, seed);
    if (suite == "approx") return approx_checks(d, gamma, mu, seed);
    if (suite == "all") {
        std::vector<CheckResult> out;
        for (const auto& s : known_suites()) {
            auto r = run_checks(s, d, gamma, mu, seed);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }
    throw std::invalid_argument("run_checks: unknown suite " + suite);
}

}  // namespace conekit
