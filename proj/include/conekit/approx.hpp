// approx.hpp - spectral coefficients, projections, convolution/translation
// multipliers, Cesaro means, near-best operators, fractional derivatives,
// moduli of smoothness, K-functional surrogates and best-approximation errors.
#pragma once

#include <functional>
#include <memory>

#include "conekit/cubature.hpp"
#include "conekit/domain.hpp"
#include "conekit/kernels.hpp"

namespace conekit {

using PointFn = std::function<double(const Point&)>;

// Expansion coefficients in the orthonormal basis of Pi_N, flat layout
// aligned with BasisEvaluator(weight, N).
struct SpectralCoeffs {
    WeightSpec weight;
    int N = 0;
    std::vector<double> c;

    SpectralCoeffs(const WeightSpec& w, int maxdeg) : weight(w), N(maxdeg) {}

    double norm2() const {
        double s = 0.0;
        for (double v : c) s += v * v;
        return std::sqrt(s);
    }
};

// Shared evaluator cache (construction is cheap but frequent).
std::shared_ptr<const BasisEvaluator> evaluator_for(const WeightSpec& w, int N);

// Full expansion of f to degree N via a product quadrature of the given
// degree (default 2N+8; exact when f is a polynomial of degree <= quad-N).
SpectralCoeffs project_all(const WeightSpec& w, int N, const PointFn& f, int quad_degree = 0);

// The degree-n component proj_n(f) of a coefficient vector.
SpectralCoeffs proj_component(const SpectralCoeffs& f, int n);

double eval_spectral(const SpectralCoeffs& f, const Point& p);

// Multiply the degree-n coefficients by mult(n).
SpectralCoeffs apply_multiplier(const SpectralCoeffs& f, const std::function<double(int)>& mult);

// Discretized near-best operator: (L_n * f)(p) = sum_z lambda_z f(z) L_n(p, z)
// for a cubature rule of degree >= 3n; returns the degree-2n coefficients.
SpectralCoeffs near_best(const WeightSpec& w, int n, const CutoffSpec& cutoff, const PointFn& f,
                         const CubatureRule& rule);

// Same operator on band-limited input (exact coefficient filter).
SpectralCoeffs near_best_spectral(const SpectralCoeffs& f, int n, const CutoffSpec& cutoff);

// Cesaro (C, delta) mean of the partial sums up to degree n.
SpectralCoeffs cesaro_mean(const SpectralCoeffs& f, int n, double delta_order);

// Convolution with g on [-1,1]: coefficientwise multiplication by
// Lambda_n(g) = int g R_n^{(a,b)} w_{a,b} (normalized), (a,b) the Jacobi
// reduction of the weight.
SpectralCoeffs convolve(const SpectralCoeffs& f, const std::function<double(double)>& g,
                        int gauss_points = 64);

// Translation S_theta: multiplier R_n^{(a,b)}(cos theta).
SpectralCoeffs translate(const SpectralCoeffs& f, double theta);

// Jacobi-reduction multiplier R_n^{(a,b)}(cos theta) itself.
double translate_multiplier(const WeightSpec& w, int n, double theta);

// Fractional derivative (-D)^{r/2}: multiplier mu(n)^{r/2}, mu(0) term dropped.
SpectralCoeffs frac_diff(const SpectralCoeffs& f, double r);

// L^p norm: p = 2 exact via coefficients, p = inf on a dense oversampled grid.
double norm_p(const SpectralCoeffs& f, double p);

// r-th order modulus of smoothness at step t (sup over a geometric theta-grid).
double modulus(const SpectralCoeffs& f, double r, double t, double p);

// Upper bound of the K-functional via the candidate family {L_{2^k} * f}.
double k_functional_upper(const SpectralCoeffs& f, double r, double t, double p);

// Best approximation from Pi_n: exact tail norm for p = 2; near-best upper
// bound ||f - L_n*f||_inf for p = inf.
double best_approx_error(const SpectralCoeffs& f, int n, double p);

}  // namespace conekit
