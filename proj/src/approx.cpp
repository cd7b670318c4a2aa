#include "conekit/approx.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace conekit {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::shared_ptr<const BasisEvaluator> evaluator_for(const WeightSpec& w, int N) {
    static std::mutex mtx;
    static std::map<std::tuple<int, int, double, double, double, int>,
                    std::shared_ptr<const BasisEvaluator>>
        cache;
    auto key = std::make_tuple(int(w.domain), w.d, w.beta, w.gamma, w.mu, N);
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ev = std::make_shared<const BasisEvaluator>(w, N);
    cache[key] = ev;
    return ev;
}

SpectralCoeffs project_all(const WeightSpec& w, int N, const PointFn& f, int quad_degree) {
    auto B = evaluator_for(w, N);
    int qd = quad_degree > 0 ? quad_degree : 2 * N + 8;
    auto rule = reference_quadrature(w, qd);
    SpectralCoeffs out(w, N);
    out.c.assign(B->dim(), 0.0);
    std::vector<double> vals(B->dim());
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double fw = rule.weights[k] * f(rule.nodes[k]);
        if (fw == 0.0) continue;
        B->values(rule.nodes[k], vals);
        for (int nu = 0; nu < B->dim(); ++nu) out.c[nu] += fw * vals[nu];
    }
    return out;
}

SpectralCoeffs proj_component(const SpectralCoeffs& f, int n) {
    auto B = evaluator_for(f.weight, f.N);
    SpectralCoeffs out(f.weight, f.N);
    out.c.assign(f.c.size(), 0.0);
    if (n <= f.N)
        for (int nu = B->block_begin(n); nu < B->block_end(n); ++nu) out.c[nu] = f.c[nu];
    return out;
}

double eval_spectral(const SpectralCoeffs& f, const Point& p) {
    auto B = evaluator_for(f.weight, f.N);
    std::vector<double> vals(B->dim());
    B->values(p, vals);
    double s = 0.0;
    for (std::size_t nu = 0; nu < f.c.size(); ++nu) s += f.c[nu] * vals[nu];
    return s;
}

SpectralCoeffs apply_multiplier(const SpectralCoeffs& f, const std::function<double(int)>& mult) {
    auto B = evaluator_for(f.weight, f.N);
    SpectralCoeffs out = f;
    for (int n = 0; n <= f.N; ++n) {
        double m = mult(n);
        for (int nu = B->block_begin(n); nu < B->block_end(n); ++nu) out.c[nu] *= m;
    }
    return out;
}

SpectralCoeffs near_best(const WeightSpec& w, int n, const CutoffSpec& cutoff, const PointFn& f,
                         const CubatureRule& rule) {
    if (rule.degree < 3 * n)
        throw std::invalid_argument("near_best: cubature degree must be >= 3n");
    auto B = evaluator_for(w, 2 * n);
    SpectralCoeffs out(w, 2 * n);
    out.c.assign(B->dim(), 0.0);
    std::vector<double> vals(B->dim());
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        double fw = rule.weights[k] * f(rule.nodes[k]);
        if (fw == 0.0) continue;
        B->values(rule.nodes[k], vals);
        for (int nu = 0; nu < B->dim(); ++nu) out.c[nu] += fw * vals[nu];
    }
    for (int k = 0; k <= 2 * n; ++k) {
        double a = cutoff_eval(cutoff, double(k) / double(n));
        for (int nu = B->block_begin(k); nu < B->block_end(k); ++nu) out.c[nu] *= a;
    }
    return out;
}

SpectralCoeffs near_best_spectral(const SpectralCoeffs& f, int n, const CutoffSpec& cutoff) {
    return apply_multiplier(f, [&](int k) { return cutoff_eval(cutoff, double(k) / double(n)); });
}

SpectralCoeffs cesaro_mean(const SpectralCoeffs& f, int n, double delta_order) {
    // multiplier binom(n-k+delta, n-k) / binom(n+delta, n) for k <= n, 0 beyond
    auto logbinom = [](double top, double bottom) {
        return std::lgamma(top + 1.0) - std::lgamma(bottom + 1.0) -
               std::lgamma(top - bottom + 1.0);
    };
    double denom = logbinom(n + delta_order, double(n));
    return apply_multiplier(f, [&](int k) {
        if (k > n) return 0.0;
        return std::exp(logbinom(n - k + delta_order, double(n - k)) - denom);
    });
}

double translate_multiplier(const WeightSpec& w, int n, double theta) {
    double lam = w.lambda();
    JacobiParams jp(lam - 0.5, -0.5);
    double at1 = pochhammer(jp.alpha + 1.0, n) / pochhammer(1.0, n);  // P_n(1)
    return jacobi_eval(n, jp, std::cos(theta)) / at1;
}

SpectralCoeffs translate(const SpectralCoeffs& f, double theta) {
    return apply_multiplier(f,
                            [&](int n) { return translate_multiplier(f.weight, n, theta); });
}

SpectralCoeffs convolve(const SpectralCoeffs& f, const std::function<double(double)>& g,
                        int gauss_points) {
    double lam = f.weight.lambda();
    JacobiParams jp(lam - 0.5, -0.5);
    auto rule = gauss_jacobi(gauss_points, jp);
    // Lambda_n(g) = sum_i w_i g(x_i) R_n(x_i), R_n = P_n / P_n(1)
    std::vector<double> mult(f.N + 1, 0.0);
    std::vector<double> pv(f.N + 1);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        jacobi_eval_all(f.N, jp, rule.nodes[i], pv);
        double wg = rule.weights[i] * g(rule.nodes[i]);
        for (int n = 0; n <= f.N; ++n) mult[n] += wg * pv[n];
    }
    for (int n = 0; n <= f.N; ++n) {
        double at1 = pochhammer(jp.alpha + 1.0, n) / pochhammer(1.0, n);
        mult[n] /= at1;
    }
    return apply_multiplier(f, [&](int n) { return mult[n]; });
}

SpectralCoeffs frac_diff(const SpectralCoeffs& f, double r) {
    if (!f.weight.has_eigenstructure())
        throw std::invalid_argument("frac_diff: weight has no eigenstructure");
    return apply_multiplier(f, [&](int n) {
        return n == 0 ? 0.0 : std::pow(f.weight.eigenvalue(n), 0.5 * r);
    });
}

double norm_p(const SpectralCoeffs& f, double p) {
    if (p == 2.0) return f.norm2();
    if (!(p > 1e9)) throw std::invalid_argument("norm_p: only p = 2 and p = inf");
    // dense grid, 4x oversampled vs degree
    auto B = evaluator_for(f.weight, f.N);
    const int K = 4 * (f.N + 1);
    std::vector<double> vals(B->dim());
    double best = 0.0;
    auto consider = [&](const Point& q) {
        B->values(q, vals);
        double s = 0.0;
        for (std::size_t nu = 0; nu < f.c.size(); ++nu) s += f.c[nu] * vals[nu];
        best = std::max(best, std::abs(s));
    };
    for (int i = 0; i < K; ++i) {
        double phi = (i + 0.5) * kPi / K;
        double t = std::sin(0.5 * phi);
        t = t * t;
        if (f.weight.domain == Domain::Surface) {
            for (int k = 0; k < K; ++k) {
                double th = 2.0 * kPi * k / K;
                consider(Point{{t * std::cos(th), t * std::sin(th), 0.0}, t});
            }
        } else {
            for (int l = 0; l < 8; ++l) {
                double rho = std::sin((l + 0.5) * 0.5 * kPi / 8);
                for (int k = 0; k < K / 2; ++k) {
                    double th = 2.0 * kPi * k / (K / 2);
                    consider(Point{{t * rho * std::cos(th), t * rho * std::sin(th), 0.0}, t});
                }
            }
        }
    }
    return best;
}

double modulus(const SpectralCoeffs& f, double r, double t, double p) {
    if (t <= 0.0 || t >= kPi) throw std::invalid_argument("modulus: t in (0,pi)");
    double sup = 0.0;
    const int grid = 32;
    for (int i = 0; i < grid; ++i) {
        double theta = t * std::pow(100.0, -double(grid - 1 - i) / (grid - 1));
        auto diff = apply_multiplier(f, [&](int n) {
            double R = translate_multiplier(f.weight, n, theta);
            return std::pow(std::max(0.0, 1.0 - R), 0.5 * r);
        });
        sup = std::max(sup, norm_p(diff, p));
    }
    return sup;
}

double k_functional_upper(const SpectralCoeffs& f, double r, double t, double p) {
    CutoffSpec a;  // TypeA
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; (1 << k) <= std::max(2 * f.N, 2); ++k) {
        int band = 1 << k;
        auto g = near_best_spectral(f, band, a);
        SpectralCoeffs diff = f;
        for (std::size_t nu = 0; nu < diff.c.size(); ++nu) diff.c[nu] -= g.c[nu];
        double val = norm_p(diff, p) + std::pow(t, r) * norm_p(frac_diff(g, r), p);
        best = std::min(best, val);
    }
    return best;
}

double best_approx_error(const SpectralCoeffs& f, int n, double p) {
    auto B = evaluator_for(f.weight, f.N);
    if (p == 2.0) {
        double s = 0.0;
        for (int k = n + 1; k <= f.N; ++k)
            for (int nu = B->block_begin(k); nu < B->block_end(k); ++nu) s += f.c[nu] * f.c[nu];
        return std::sqrt(s);
    }
    if (!(p > 1e9)) throw std::invalid_argument("best_approx_error: only p = 2 and p = inf");
    CutoffSpec a;
    auto g = near_best_spectral(f, n, a);
    SpectralCoeffs diff = f;
    for (std::size_t nu = 0; nu < diff.c.size(); ++nu) diff.c[nu] -= g.c[nu];
    return norm_p(diff, p);  // near-best upper bound
}

}  // namespace conekit
