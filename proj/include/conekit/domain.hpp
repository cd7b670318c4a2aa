// domain.hpp - value types shared across the library: points on the conic
// surface V0^{d+1} and the solid cone V^{d+1}, Jacobi weight descriptors,
// separated point sets and cubature rules.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace conekit {

enum class Domain { Surface, Cone };

// A point (x, t) in R^{d+1} with x in R^d (d <= 3) and t in [0, 1].
struct Point {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    double t = 0.0;
};

inline double norm_x(const Point& p, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += p.x[i] * p.x[i];
    return std::sqrt(s);
}

inline double dot_x(const Point& p, const Point& q, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += p.x[i] * q.x[i];
    return s;
}

// Point on the conic surface: ||x|| = t.
struct SurfacePoint : Point {
    SurfacePoint() = default;
    SurfacePoint(std::array<double, 3> xx, double tt) : Point{xx, tt} {}
};

// Point on the solid cone: ||x|| <= t.
struct ConePoint : Point {
    ConePoint() = default;
    ConePoint(std::array<double, 3> xx, double tt) : Point{xx, tt} {}
};

inline SurfacePoint make_surface_point(double t, double theta) {
    return SurfacePoint({t * std::cos(theta), t * std::sin(theta), 0.0}, t);
}

inline void validate_point(Domain dom, const Point& p, int d, double tol = 1e-12) {
    if (p.t < -tol || p.t > 1.0 + tol)
        throw std::invalid_argument("point: t outside [0,1]");
    double nx = norm_x(p, d);
    if (dom == Domain::Surface) {
        if (std::abs(nx - p.t) > tol * (1.0 + p.t))
            throw std::invalid_argument("surface point: ||x|| != t");
    } else {
        if (nx > p.t + tol)
            throw std::invalid_argument("cone point: ||x|| > t");
    }
}

// Jacobi-type weight on a conic domain.
//   Surface: w_{beta,gamma}(t) = t^beta (1-t)^gamma,   beta > -d, gamma > -1
//   Cone:    W_{gamma,mu}(x,t) = (t^2-||x||^2)^{mu-1/2} (1-t)^gamma  (beta = 0)
// Both are normalized to unit mass internally.
struct WeightSpec {
    Domain domain = Domain::Surface;
    int d = 2;
    double beta = -1.0;   // surface only (cone is pinned at beta = 0)
    double gamma = 0.0;
    double mu = 0.0;      // cone only

    static WeightSpec surface(int d, double beta, double gamma) {
        if (d < 2 || d > 3) throw std::invalid_argument("WeightSpec: d must be 2 or 3");
        if (beta <= -d) throw std::invalid_argument("WeightSpec: beta <= -d");
        if (gamma <= -1.0) throw std::invalid_argument("WeightSpec: gamma <= -1");
        WeightSpec w;
        w.domain = Domain::Surface;
        w.d = d;
        w.beta = beta;
        w.gamma = gamma;
        w.mu = 0.0;
        return w;
    }

    static WeightSpec cone(int d, double gamma, double mu) {
        if (d < 2 || d > 3) throw std::invalid_argument("WeightSpec: d must be 2 or 3");
        if (gamma <= -1.0) throw std::invalid_argument("WeightSpec: gamma <= -1");
        if (mu < 0.0) throw std::invalid_argument("WeightSpec: mu < 0");
        WeightSpec w;
        w.domain = Domain::Cone;
        w.d = d;
        w.beta = 0.0;
        w.gamma = gamma;
        w.mu = mu;
        return w;
    }

    // Dimension of the domain as a manifold: d for the surface, d+1 for the cone.
    int dim() const { return domain == Domain::Surface ? d : d + 1; }

    // Whether the weight admits highly localized kernels (Assertions 1 and 3).
    bool localizable() const {
        if (domain == Domain::Surface) return beta == -1.0 && gamma >= -0.5;
        return mu >= 0.0 && gamma >= -0.5;
    }

    // Whether the Lipschitz bound (Assertion 2) is established for this weight.
    bool assertion2() const {
        if (domain == Domain::Surface) return localizable();
        return localizable() && mu == 0.0;
    }

    // Whether the addition formula applies (surface beta=-1, cone beta=0).
    bool has_addition_formula() const {
        if (domain == Domain::Surface) return beta == -1.0 && gamma >= -0.5;
        return gamma >= -0.5 && mu >= 0.0;
    }

    bool has_eigenstructure() const {
        return domain == Domain::Surface ? beta == -1.0 : true;
    }

    // Gegenbauer index of the one-dimensional reduction: the kernel is an
    // average of Z_{2n}^{lambda} values.
    double lambda() const {
        return domain == Domain::Surface ? gamma + d - 1 : 2 * mu + gamma + d;
    }

    // Eigenvalue of -D applied to degree-n orthogonal polynomials.
    double eigenvalue(int n) const {
        if (!has_eigenstructure())
            throw std::invalid_argument("WeightSpec: no eigenstructure for this weight");
        return domain == Domain::Surface ? double(n) * (n + gamma + d - 1)
                                         : double(n) * (n + 2 * mu + gamma + d);
    }

    // Doubling index alpha(w) of the cap measures.
    double doubling_index() const {
        if (domain == Domain::Surface)
            return d + 2 * std::max(0.0, beta + 0.5 * d) + 2 * std::max(0.0, gamma + 0.5);
        return 2 * mu + d + 1 + 2 * std::max(0.0, 0.5 * (d - 1)) + 2 * std::max(0.0, gamma + 0.5);
    }

    std::string describe() const {
        if (domain == Domain::Surface)
            return "surface(d=" + std::to_string(d) + ",beta=" + std::to_string(beta) +
                   ",gamma=" + std::to_string(gamma) + ")";
        return "cone(d=" + std::to_string(d) + ",gamma=" + std::to_string(gamma) +
               ",mu=" + std::to_string(mu) + ")";
    }
};

// eps-separated node set with its partition certificates. Nodes are grouped
// into "circles" (fixed t, fixed radius, equispaced angles); the grouping is
// what makes moment-matrix assembly cheap.
struct SeparatedSet {
    Domain domain = Domain::Surface;
    int d = 2;
    double eps = 0.0;
    std::vector<Point> nodes;
    std::vector<int> ring_index;      // which t-ring the node came from
    std::vector<double> cell_r_lo;    // cap of this radius fits inside the cell
    std::vector<double> cell_r_hi;    // the cell fits inside a cap of this radius

    // circle structure (all nodes of a circle share t and ||x||, angles equispaced)
    struct Circle {
        double t = 0.0;
        double rho = 0.0;   // ||x||/t for cone circles, 1 for surface rings (0 if t=0)
        int count = 0;
        double offset = 0.0;
        int first = 0;      // first node index; nodes are contiguous per circle
        int ring = 0;
    };
    std::vector<Circle> circles;
    std::vector<int> circle_of;       // node -> circle

    std::size_t size() const { return nodes.size(); }
};

// Positive cubature rule: strictly positive weights, certified degree.
struct CubatureRule {
    Domain domain = Domain::Surface;
    int d = 2;
    std::vector<Point> nodes;
    std::vector<double> weights;
    std::vector<int> ring_index;
    int degree = 0;
    double residual = 0.0;

    std::size_t size() const { return nodes.size(); }
    double total_weight() const {
        double s = 0.0;
        for (double w : weights) s += w;
        return s;
    }
};

}  // namespace conekit
