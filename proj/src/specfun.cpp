#include "conekit/specfun.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace conekit {

double pochhammer(double a, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + k;
    return r;
}

double jacobi_c(double alpha, double beta) {
    return std::exp(std::lgamma(alpha + beta + 2.0) - std::lgamma(alpha + 1.0) -
                    std::lgamma(beta + 1.0));
}

void jacobi_eval_all(int nmax, const JacobiParams& p, double x, std::span<double> out) {
    const double a = p.alpha, b = p.beta;
    if (nmax < 0) return;
    out[0] = 1.0;
    if (nmax == 0) return;
    out[1] = 0.5 * (a - b + (a + b + 2.0) * x);
    for (int n = 2; n <= nmax; ++n) {
        // P_n from P_{n-1}, P_{n-2}; the leading factor is nonzero for n >= 2
        // whenever a, b > -1.
        double c1 = 2.0 * n * (n + a + b) * (2.0 * n + a + b - 2.0);
        double c2 = (2.0 * n + a + b - 1.0) *
                    ((2.0 * n + a + b) * (2.0 * n + a + b - 2.0) * x + a * a - b * b);
        double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + a + b);
        out[n] = (c2 * out[n - 1] - c3 * out[n - 2]) / c1;
    }
}

double jacobi_eval(int n, const JacobiParams& p, double x) {
    if (n < 0) throw std::invalid_argument("jacobi_eval: n < 0");
    std::vector<double> buf(n + 1);
    jacobi_eval_all(n, p, x, buf);
    return buf[n];
}

double jacobi_norm(int n, const JacobiParams& p) {
    if (n < 0) throw std::invalid_argument("jacobi_norm: n < 0");
    const double a = p.alpha, b = p.beta;
    // h_n = (a+1)_n (b+1)_n (a+b+n+1) / ( n! (a+b+2)_n (a+b+2n+1) )
    double num = pochhammer(a + 1.0, n) * pochhammer(b + 1.0, n) * (a + b + n + 1.0);
    double den = pochhammer(1.0, n) * pochhammer(a + b + 2.0, n) * (a + b + 2.0 * n + 1.0);
    return num / den;
}

double zonal_eval(int n, double lambda, double x) {
    if (lambda <= 0.0) throw std::invalid_argument("zonal_eval: lambda must be > 0");
    if (n < 0) throw std::invalid_argument("zonal_eval: n < 0");
    // Gegenbauer recurrence
    double cm2 = 1.0;
    if (n == 0) return 1.0;
    double cm1 = 2.0 * lambda * x;
    for (int k = 2; k <= n; ++k) {
        double ck = (2.0 * x * (k + lambda - 1.0) * cm1 - (k + 2.0 * lambda - 2.0) * cm2) / k;
        cm2 = cm1;
        cm1 = ck;
    }
    return (n + lambda) / lambda * cm1;
}

double zonal_even_sum(std::span<const double> coef, double lambda, double x) {
    if (lambda <= 0.0) throw std::invalid_argument("zonal_even_sum: lambda must be > 0");
    const int kmax = int(coef.size()) - 1;
    if (kmax < 0) return 0.0;
    double acc = coef[0];  // Z_0 = 1
    double cm2 = 1.0;      // C_0
    double cm1 = 2.0 * lambda * x;  // C_1
    for (int j = 2; j <= 2 * kmax; ++j) {
        double cj = (2.0 * x * (j + lambda - 1.0) * cm1 - (j + 2.0 * lambda - 2.0) * cm2) / j;
        cm2 = cm1;
        cm1 = cj;
        if (j % 2 == 0) {
            int k = j / 2;
            if (coef[k] != 0.0) acc += coef[k] * (j + lambda) / lambda * cj;
        }
    }
    return acc;
}

QuadratureRule1D gauss_jacobi(int m, const JacobiParams& p, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_jacobi: node count must be >= 1");
    const double al = p.alpha, be = p.beta;

    // Golub-Welsch on the symmetric tridiagonal recurrence matrix.
    Eigen::VectorXd diag(m), sub(std::max(m - 1, 1));
    for (int k = 0; k < m; ++k) {
        double s = 2.0 * k + al + be;
        if (k == 0)
            diag(0) = (be - al) / (al + be + 2.0);
        else
            diag(k) = (be * be - al * al) / (s * (s + 2.0));
    }
    for (int k = 1; k < m; ++k) {
        double s = 2.0 * k + al + be;
        double num, den;
        if (k == 1) {  // the generic formula is 0/0 at k=1 when al+be = -1
            num = 4.0 * (1.0 + al) * (1.0 + be);
            den = (al + be + 2.0) * (al + be + 2.0) * (al + be + 3.0);
        } else {
            num = 4.0 * k * (k + al) * (k + be) * (k + al + be);
            den = s * s * (s + 1.0) * (s - 1.0);
        }
        sub(k - 1) = std::sqrt(num / den);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(std::max(m - 1, 0)),
                              Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_jacobi: eigensolver failed for m=" + std::to_string(m) +
                                 " alpha=" + std::to_string(al) + " beta=" + std::to_string(be));

    QuadratureRule1D rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    rule.exact_degree = 2 * m - 1;
    double wsum = 0.0;
    for (int k = 0; k < m; ++k) {
        double xi = es.eigenvalues()(k);
        double w = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        rule.nodes[k] = 0.5 * (a + b) + 0.5 * (b - a) * xi;
        rule.weights[k] = w;
        wsum += w;
    }
    for (double& w : rule.weights) w /= wsum;  // unit mass
    return rule;
}

namespace {

double bump_h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// smoothstep: 0 for x<=0, 1 for x>=1, C^inf in between
double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double h1 = bump_h(x), h2 = bump_h(1.0 - x);
    return h1 / (h1 + h2);
}

}  // namespace

double cutoff_eval(const CutoffSpec& spec, double t) {
    switch (spec.kind) {
        case CutoffKind::TypeA:
            if (t <= 1.0) return 1.0;
            if (t >= 2.0) return 0.0;
            return smoothstep(2.0 - t);
        case CutoffKind::TypeBFrame: {
            if (t <= 0.5 || t >= 2.0) return 0.0;
            constexpr double half_pi = 1.5707963267948966;
            if (t <= 1.0) return std::sin(half_pi * smoothstep(std::log2(t) + 1.0));
            return std::cos(half_pi * smoothstep(std::log2(t)));
        }
        case CutoffKind::Indicator:
            return t <= 1.0 ? 1.0 : 0.0;
    }
    return 0.0;
}

double circle_harmonic(int m, Trig kind, double theta) {
    constexpr double sqrt2 = 1.4142135623730951;
    switch (kind) {
        case Trig::Const:
            return 1.0;
        case Trig::Cos:
            if (m < 1) throw std::invalid_argument("circle_harmonic: cos needs m >= 1");
            return sqrt2 * std::cos(m * theta);
        case Trig::Sin:
            if (m < 1) throw std::invalid_argument("circle_harmonic: sin needs m >= 1");
            return sqrt2 * std::sin(m * theta);
    }
    return 0.0;
}

}  // namespace conekit
