// kernels.hpp - orthogonal bases on conic domains, reproducing kernels by
// basis summation and by addition formula, localized kernels and their
// fractional variants, fast-decay bump polynomials, Christoffel functions,
// and kernel-decay reports.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "conekit/domain.hpp"
#include "conekit/geometry.hpp"
#include "conekit/specfun.hpp"

namespace conekit {

struct KernelConfig {
    WeightSpec weight;
    // Gauss nodes per axis for the addition-formula integrals; 0 = automatic
    // (polynomial degree of the integrand + 4, exact).
    int quad_order_per_axis = 0;

    explicit KernelConfig(const WeightSpec& w, int q = 0) : weight(w), quad_order_per_axis(q) {}
};

enum class KernelMethod { BasisSum, Addition };

// Orthonormal basis of Pi_N restricted to the domain (d = 2).
//
// Surface:  S^n_{m,l}(x,t) = P_{n-m}^{(2m+beta+d-1,gamma)}(1-2t) t^m Y_l^m(x/t)
// Cone:     J^n_{m,k}(x,t) = P_{n-m}^{(2a+2m,gamma)}(1-2t) t^m Pball_k^m(x/t)
//
// Elements are divided by the closed-form norms, so values() returns an
// orthonormal system for the normalized weight.
class BasisEvaluator {
public:
    BasisEvaluator(const WeightSpec& w, int max_degree);

    struct Element {
        int n;        // total degree
        int m;        // harmonic/ball-basis order
        int i;        // radial ball index (cone only, else 0)
        int h;        // trigonometric order (= m on the surface, m-2i on the cone)
        Trig trig;
        int fam;      // angle-free family index
    };

    int dim() const { return int(elements_.size()); }
    int max_degree() const { return N_; }
    int num_families() const { return int(fams_.size()); }
    const WeightSpec& weight() const { return w_; }
    const std::vector<Element>& elements() const { return elements_; }
    int degree_of(int nu) const { return elements_[nu].n; }
    // first flat index of the degree-n block (blocks are contiguous)
    int block_begin(int n) const { return block_begin_[n]; }
    int block_end(int n) const { return block_begin_[n + 1]; }

    // Angle-free family factors at (t, rho); rho = ||x||/t for the cone, ignored
    // on the surface. out must have size num_families().
    void family_values(double t, double rho, std::span<double> out) const;

    // All orthonormal basis values at a point. out must have size dim().
    void values(const Point& p, std::span<double> out) const;
    std::vector<double> values(const Point& p) const;

    // Squared norm H of the raw (un-normalized) basis element of indices (n, m[, i]).
    double norm_h(int n, int m, int i = 0) const;

private:
    WeightSpec w_;
    int N_;
    std::vector<Element> elements_;
    struct Fam {
        int n, m, i, h;
        double inv_norm;  // 1/sqrt(H) x sqrt(2)^{h>0} / ball-norm
    };
    std::vector<Fam> fams_;
    std::vector<int> block_begin_;
};

// Value of the orthogonal basis element (raw, not normalized): the companion
// basis_norm returns its squared norm.
double basis_eval(const WeightSpec& w, int n, int m, int index, const Point& p);
double basis_norm(const WeightSpec& w, int n, int m, int index = 0);

// Batch transforms between coefficient space and node space over a
// SeparatedSet, using the equispaced-circle structure: both directions cost
// O(#circles * dim + #nodes * degree) instead of #nodes * dim.
class BatchEvaluator {
public:
    BatchEvaluator(const SeparatedSet& S, const BasisEvaluator& B);

    int rows() const { return B_.dim(); }                 // moment dimension
    int cols() const { return int(S_.nodes.size()); }     // node count

    // out_nu = sum_z node_weights_z phi_nu(z)
    void moments(std::span<const double> node_weights, std::span<double> out) const;
    // out_z = sum_nu coeffs_nu phi_nu(z)
    void values(std::span<const double> coeffs, std::span<double> out) const;
    // basis values at one node
    void column(int node, std::span<double> out) const;

private:
    const SeparatedSet& S_;
    const BasisEvaluator& B_;
    std::vector<std::vector<double>> fam_vals_;
};

// sum_k coef[k] P_k(w; p, q) through the addition formula (exact tensor
// Gauss-Jacobi; requires w.has_addition_formula()).
double filtered_kernel_addition(const WeightSpec& w, std::span<const double> coef, const Point& p,
                                const Point& q, int quad_pts = 0);

// Reproducing kernel P_n(w; p, q) of the degree-n orthogonal space.
double reprod_kernel(const KernelConfig& cfg, int n, const Point& p, const Point& q,
                     KernelMethod method);

// L_n(w; p, q) = sum_k a(k/n) P_k(w; p, q), degree <= 2n.
double localized_kernel(const KernelConfig& cfg, int n, const CutoffSpec& cutoff, const Point& p,
                        const Point& q);

// L_n^{(r)}(w; p, q) = sum_k a(k/n) mu(k)^{r/2} P_k(w; p, q).
double localized_kernel_frac(const KernelConfig& cfg, int n, double r, const CutoffSpec& cutoff,
                             const Point& p, const Point& q);

// Nonnegative bump polynomial T_center of degree <= n with T(center) = 1 and
// fast decay in the intrinsic distance.
double fast_decay_poly(Domain dom, int d, const Point& center, int n, int r, const Point& p);
// Degree certificate after q-multiplication: n on the surface, 3n on the cone.
int fast_decay_poly_degree(Domain dom, int n);

// Christoffel function lambda_n(w; p) = 1 / sum_{k<=n} P_k(w; p, p).
double christoffel(const KernelConfig& cfg, int n, const Point& p);

// Normalized decay quantities of the localized kernel:
//   N1 = |L_n(p,q)| sqrt(cap(p,1/n)) sqrt(cap(q,1/n)) (1 + n d(p,q))^kappa
//   N2 = |L_n(p1,q)-L_n(p2,q)| sqrt(cap(p2,1/n)) sqrt(cap(q,1/n))
//            (1 + n d(p2,q))^kappa / (n d(p1,p2))
//   N3 = [int 1/(sqrt(cap(y,1/n)) (1+n d(x,y))^kappa) dw(y)] / sqrt(cap(x,1/n))
// with cap = cap_measure_formula. All three stay bounded across n for
// localizable weights and admissible cutoffs.
struct DecayRow {
    int n = 0;
    double kappa = 0.0;
    double sup_n1 = 0.0;
    double sup_n2 = 0.0;
    double sup_n3 = 0.0;
    int pairs = 0;
};

std::vector<DecayRow> decay_report(const KernelConfig& cfg, const CutoffSpec& cutoff,
                                   std::span<const int> ns, double kappa, int npairs,
                                   std::uint64_t seed);

// Deterministic quasi-random points of the domain (used by reports and tests).
std::vector<Point> sample_points(Domain dom, int d, int count, std::uint64_t seed);

}  // namespace conekit
