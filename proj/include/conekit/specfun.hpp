// specfun.hpp - one-dimensional building blocks: Jacobi and Gegenbauer
// polynomials, their norms, Gauss-Jacobi quadrature, admissible cut-off
// functions and circular harmonics.
#pragma once

#include <span>
#include <vector>

#include "conekit/domain.hpp"

namespace conekit {

// Exponents of the Jacobi weight (1-x)^alpha (1+x)^beta; both must be > -1.
struct JacobiParams {
    double alpha = 0.0;
    double beta = 0.0;
    JacobiParams() = default;
    JacobiParams(double a, double b) : alpha(a), beta(b) {
        if (a <= -1.0 || b <= -1.0)
            throw std::invalid_argument("JacobiParams: exponents must be > -1");
    }
};

struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;   // positive, sum to 1 (normalized weight mass)
    int exact_degree = 0;
};

enum class CutoffKind {
    TypeA,       // 1 on [0,1], smooth ramp to 0 on [1,2]
    TypeBFrame,  // supported on [1/2,2], a(t)^2 + a(2t)^2 = 1 on [1/2,1]
    Indicator    // sharp 1_{[0,1]}; not admissible, kept as a negative control
};

struct CutoffSpec {
    CutoffKind kind = CutoffKind::TypeA;
    int smooth_order = 8;  // derivatives guaranteed continuous (construction is C^inf)
};

// P_n^{(alpha,beta)}(x) by forward three-term recurrence.
double jacobi_eval(int n, const JacobiParams& p, double x);

// All values P_0..P_nmax at x, one recurrence pass.
void jacobi_eval_all(int nmax, const JacobiParams& p, double x, std::span<double> out);

// h_n^{(alpha,beta)}: squared L2 norm of P_n against the normalized weight
// c'_{alpha,beta} w_{alpha,beta}.
double jacobi_norm(int n, const JacobiParams& p);

// c_{alpha,beta} = Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1))   (eq. normalization ratio)
double jacobi_c(double alpha, double beta);

// Z_n^lambda(x) = (n+lambda)/lambda * C_n^lambda(x), lambda > 0.
double zonal_eval(int n, double lambda, double x);

// sum_k coef[k] * Z_{2k}^lambda(x) in one Gegenbauer recurrence pass.
double zonal_even_sum(std::span<const double> coef, double lambda, double x);

// Gauss-Jacobi rule with m nodes on [a,b] for the weight (b-x)^alpha (x-a)^beta,
// normalized to unit mass; exact on polynomials of degree <= 2m-1.
QuadratureRule1D gauss_jacobi(int m, const JacobiParams& p, double a = -1.0, double b = 1.0);

double cutoff_eval(const CutoffSpec& spec, double t);

enum class Trig { Const, Cos, Sin };

// Orthonormal circular harmonics w.r.t. dtheta/(2 pi):
//   Const -> 1, Cos -> sqrt(2) cos(m theta), Sin -> sqrt(2) sin(m theta).
double circle_harmonic(int m, Trig kind, double theta);

// Pochhammer symbol (a)_n as a product (n small, exact signs).
double pochhammer(double a, int n);

}  // namespace conekit
