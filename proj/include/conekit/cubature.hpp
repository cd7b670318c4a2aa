// cubature.hpp - constructive positive cubature on separated node sets,
// exactness certification, and Marcinkiewicz-Zygmund constant measurement.
#pragma once

#include <cstdint>
#include <utility>

#include "conekit/domain.hpp"
#include "conekit/kernels.hpp"

namespace conekit {

// Signals that the moment system could not be solved to tolerance; usually
// means delta = eps * n is too large for this weight.
class InfeasibleCubature : public std::runtime_error {
public:
    double residual;
    InfeasibleCubature(const std::string& what, double res)
        : std::runtime_error(what), residual(res) {}
};

struct CubatureOptions {
    double grad_tol = 1e-10;       // Lawson-Hanson gradient test
    double residual_tol = 1e-10;   // target max moment violation
    // Column count up to which the dense active-set path is used; larger
    // systems go through the symmetrized base-plus-correction solver.
    int dense_limit = 6000;
    bool keep_all_nodes = false;   // force the all-nodes-positive path
};

// Positive weights on (a subset of) S solving the degree-n moment system
//   sum_z lambda_z phi_k(z) = delta_{k,0}
// for the orthonormal basis of Pi_n. Nodes whose weight is zero in the
// active-set solution are pruned from the returned rule.
CubatureRule solve_positive_cubature(const SeparatedSet& S, int n, const WeightSpec& w,
                                     const CubatureOptions& opts = {});

// Max relative error of the rule over random polynomials of degree <= rule.degree.
double verify_exactness(const CubatureRule& rule, const WeightSpec& w, int trials,
                        std::uint64_t seed = 1);

// Empirical Marcinkiewicz-Zygmund constants for exponent p (1, 2 or inf):
// first = best constant C_l with ||f||^p <= C_l * sum_z min_cell |f|^p w(cell),
// second = best constant C_u with sum_z max_cell |f|^p w(cell) <= C_u ||f||^p.
std::pair<double, double> mz_constants(const SeparatedSet& S, int n, const WeightSpec& w,
                                       double p, int trials, std::uint64_t seed = 1);

// Largest delta in {1.0, 0.5, 0.25, ...} for which the degree-n solve succeeds
// with residual <= 1e-9 on a freshly built separated set.
double calibrate_delta(const WeightSpec& w, int n, std::uint64_t seed = 0);

}  // namespace conekit
