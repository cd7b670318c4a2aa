// geometry.hpp - intrinsic distances on conic domains, Jacobi cap measures
// (closed form and quadrature), maximal eps-separated sets with partition
// certificates, and exact product reference quadrature.
#pragma once

#include <cstdint>
#include <functional>

#include "conekit/domain.hpp"
#include "conekit/specfun.hpp"

namespace conekit {

// Intrinsic distance on [0,1]: arccos( sqrt(ts) + sqrt((1-t)(1-s)) ).
double dist_interval01(double t, double s);

// Geodesic distance on S^{d-1}.
double dist_sphere(const double* xi, const double* eta, int d);

// Distance on the unit ball B^d via the hemisphere lift.
double dist_ball(const double* x, const double* y, int d);

// Distance on the conic surface V0^{d+1}.
double dist_surface(const Point& p, const Point& q, int d);

// Distance on the solid cone V^{d+1} via the lift X = (x, sqrt(t^2-||x||^2)).
double dist_cone(const Point& p, const Point& q, int d);

double dist(Domain dom, const Point& p, const Point& q, int d);

// Two-sided-equivalent closed form of the cap measure w(c(center, r)),
// without an absolute constant:
//   surface: r^d (t+r^2)^{beta+d/2} (1-t+r^2)^{gamma+1/2}
//   cone:    r^{d+1} (t+r^2)^{(d-1)/2} (1-t+r^2)^{gamma+1/2} (t^2-||x||^2+r^2)^mu
double cap_measure_formula(const WeightSpec& w, const Point& center, double r);

// Normalized weight measure of the cap, by the reduction to an outer
// t-integral and an inner angular cap integral; relative accuracy ~1e-8.
// Throws on non-convergence with the achieved tolerance in the message.
double cap_measure_quad(const WeightSpec& w, const Point& center, double r);

// Normalization constant of the weight (so that the weight has unit mass):
// b_{beta,gamma} on the surface, b_{0,gamma,mu} on the cone.
double weight_normalization(const WeightSpec& w);

// Maximal eps-separated set with rings t_j = sin^2(theta_j/2) and per-ring
// sphere/ball point sets at separation eps_j = pi*eps/(2 sqrt(t_j)).
// The angular offsets are seeded deterministically.
SeparatedSet build_separated_set(Domain dom, int d, double eps, std::uint64_t seed = 0);

// Product rule exact on Pi_n of the domain, positive weights, unit mass.
// Surface d=2: Gauss-Jacobi in t x uniform angles. Surface d=3 adds a
// Gauss-Legendre x uniform sphere rule. Cone d=2: adds radial Gauss-Jacobi
// on the disk. Other combinations are unsupported.
CubatureRule reference_quadrature(const WeightSpec& w, int degree);

// The nodes of the exact degree-n product rule organized as a SeparatedSet
// (with circle structure, measured minimal separation and cell certificates);
// the positive rule weights are written to *weights when non-null.
SeparatedSet product_node_set(const WeightSpec& w, int degree, std::vector<double>* weights);

// Integrate an arbitrary function against the normalized weight with a
// product rule of the given degree (used as a generic integrator).
double integrate(const WeightSpec& w, int degree, const std::function<double(const Point&)>& f);

}  // namespace conekit
