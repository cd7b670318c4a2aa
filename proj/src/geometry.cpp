#include "conekit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace conekit {

namespace {

inline double clamp1(double v) { return std::max(-1.0, std::min(1.0, v)); }

constexpr double kPi = 3.14159265358979323846;

// surface area of S^{d-1}
double sphere_area(int d) {
    return 2.0 * std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d);
}

// tanh-sinh quadrature on [a,b]; handles integrable endpoint singularities.
// Returns the value; *achieved gets the last refinement delta (relative).
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double* achieved = nullptr) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double tmax = 3.8;  // tanh(pi/2 sinh 3.8) is 1 within double precision
    double h = 1.0;
    double sum = 0.0;
    {
        double w0 = 0.5 * kPi;  // cosh(0) * pi/2
        sum = w0 * f(mid);
        for (double t = h; t <= tmax; t += h) {
            double ch = std::cosh(t), sh = std::sinh(t);
            double u = std::tanh(0.5 * kPi * sh);
            double w = 0.5 * kPi * ch / std::pow(std::cosh(0.5 * kPi * sh), 2);
            double xp = mid + half * u, xm = mid - half * u;
            if (xp < b) sum += w * f(xp);
            if (xm > a) sum += w * f(xm);
        }
        sum *= h;
    }
    double prev = sum;
    double delta = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= tmax; t += 2.0 * h) {
            double ch = std::cosh(t), sh = std::sinh(t);
            double u = std::tanh(0.5 * kPi * sh);
            double w = 0.5 * kPi * ch / std::pow(std::cosh(0.5 * kPi * sh), 2);
            double xp = mid + half * u, xm = mid - half * u;
            if (xp < b) add += w * f(xp);
            if (xm > a) add += w * f(xm);
        }
        double cur = 0.5 * prev + h * add;
        delta = std::abs(cur - prev) / (std::abs(cur) + 1e-300);
        prev = cur;
        if (delta < rel_tol && level >= 4) break;
    }
    if (achieved) *achieved = delta;
    return prev * half;
}

// adaptive Simpson with absolute tolerance
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 40) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace

double dist_interval01(double t, double s) {
    double c = std::sqrt(std::max(0.0, t * s)) + std::sqrt(std::max(0.0, (1.0 - t) * (1.0 - s)));
    return std::acos(clamp1(c));
}

double dist_sphere(const double* xi, const double* eta, int d) {
    double dp = 0.0;
    for (int i = 0; i < d; ++i) dp += xi[i] * eta[i];
    return std::acos(clamp1(dp));
}

double dist_ball(const double* x, const double* y, int d) {
    double dp = 0.0, nx = 0.0, ny = 0.0;
    for (int i = 0; i < d; ++i) {
        dp += x[i] * y[i];
        nx += x[i] * x[i];
        ny += y[i] * y[i];
    }
    double c = dp + std::sqrt(std::max(0.0, 1.0 - nx)) * std::sqrt(std::max(0.0, 1.0 - ny));
    return std::acos(clamp1(c));
}

double dist_surface(const Point& p, const Point& q, int d) {
    double inner = dot_x(p, q, d) + p.t * q.t;
    double c = std::sqrt(std::max(0.0, 0.5 * inner)) +
               std::sqrt(std::max(0.0, (1.0 - p.t) * (1.0 - q.t)));
    return std::acos(clamp1(c));
}

double dist_cone(const Point& p, const Point& q, int d) {
    double zp = std::sqrt(std::max(0.0, p.t * p.t - dot_x(p, p, d)));
    double zq = std::sqrt(std::max(0.0, q.t * q.t - dot_x(q, q, d)));
    double inner = dot_x(p, q, d) + zp * zq + p.t * q.t;
    double c = std::sqrt(std::max(0.0, 0.5 * inner)) +
               std::sqrt(std::max(0.0, (1.0 - p.t) * (1.0 - q.t)));
    return std::acos(clamp1(c));
}

double dist(Domain dom, const Point& p, const Point& q, int d) {
    return dom == Domain::Surface ? dist_surface(p, q, d) : dist_cone(p, q, d);
}

double weight_normalization(const WeightSpec& w) {
    if (w.domain == Domain::Surface) {
        // 1/b = omega_d * Gamma(beta+d) Gamma(gamma+1) / Gamma(beta+gamma+d+1)
        double lg = std::lgamma(w.beta + w.gamma + w.d + 1.0) - std::lgamma(w.beta + w.d) -
                    std::lgamma(w.gamma + 1.0);
        return std::exp(lg) / sphere_area(w.d);
    }
    // cone, beta = 0: b = c_{2mu+d-1,gamma} * b_mu^B
    double c = jacobi_c(2.0 * w.mu + w.d - 1.0, w.gamma);
    double bB = std::exp(std::lgamma(w.mu + 0.5 * (w.d + 1.0)) - std::lgamma(w.mu + 0.5)) /
                std::pow(kPi, 0.5 * w.d);
    return c * bB;
}

double cap_measure_formula(const WeightSpec& w, const Point& center, double r) {
    if (r <= 0.0 || r > kPi) throw std::invalid_argument("cap_measure_formula: r in (0,pi]");
    double t = center.t;
    if (w.domain == Domain::Surface) {
        return std::pow(r, w.d) * std::pow(t + r * r, w.beta + 0.5 * w.d) *
               std::pow(1.0 - t + r * r, w.gamma + 0.5);
    }
    double h2 = std::max(0.0, t * t - dot_x(center, center, w.d));
    return std::pow(r, w.d + 1) * std::pow(t + r * r, 0.5 * (w.d - 1)) *
           std::pow(1.0 - t + r * r, w.gamma + 0.5) * std::pow(h2 + r * r, w.mu);
}

namespace {

// angular radius of the cap slice: d(center, (y,s)) <= r restricted to fixed s
// gives d_S (resp. d_B) <= psi_max(t, s).
double cap_slice_angle(double t, double s, double r) {
    double ts = std::sqrt(std::max(0.0, t * s));
    if (ts <= 0.0) return kPi;  // apex slices see all directions
    double tau = (std::cos(r) - std::sqrt(std::max(0.0, (1.0 - t) * (1.0 - s)))) / ts;
    if (tau <= 0.0) return kPi;
    if (tau >= 1.0) return 0.0;
    return 2.0 * std::acos(tau);
}

// integral over the ball cap {y in B^d : d_B(x', y) <= rho} of (1-||y||^2)^{mu-1/2} dy.
// Lifted to the upper hemisphere of S^d the integrand becomes Y_{d+1}^{2mu} on
// the part of the spherical cap with Y_{d+1} >= 0.
double ball_cap_integral(int d, double xnorm, double mu, double rho) {
    if (rho <= 0.0) return 0.0;
    rho = std::min(rho, kPi);
    double z = std::sqrt(std::max(0.0, 1.0 - xnorm * xnorm));
    if (d == 2) {
        // Y3 = z cos w + xnorm sin w cos psi along the cap; keep Y3 > 0 only
        auto inner = [&](double w) {
            double a = z * std::cos(w), b = xnorm * std::sin(w);
            if (mu == 0.0) {
                if (b <= 1e-15) return a > 0.0 ? 2.0 * kPi : 0.0;
                if (a >= b) return 2.0 * kPi;
                if (a <= -b) return 0.0;
                return 2.0 * std::acos(clamp1(-a / b));
            }
            auto g = [&](double psi) {
                double y3 = a + b * std::cos(psi);
                return y3 > 0.0 ? std::pow(y3, 2.0 * mu) : 0.0;
            };
            double hi = kPi;
            if (b > 1e-15 && std::abs(a) < b) hi = std::acos(clamp1(-a / b));
            else if (a <= -b) return 0.0;
            return 2.0 * adaptive_simpson(g, 0.0, hi, 1e-12);
        };
        auto outer = [&](double w) { return inner(w) * std::sin(w); };
        return adaptive_simpson(outer, 0.0, rho, 1e-12);
    }
    if (d == 3) {
        auto inner = [&](double w) {
            double a = z * std::cos(w), b = xnorm * std::sin(w);
            if (mu == 0.0) {
                if (b <= 1e-15) return a > 0.0 ? 2.0 : 0.0;
                if (a >= b) return 2.0;
                if (a <= -b) return 0.0;
                return 1.0 - (-a / b);  // int_0^{psi0} sin = 1 - cos(psi0)
            }
            auto g = [&](double psi) {
                double y4 = a + b * std::cos(psi);
                return y4 > 0.0 ? std::pow(y4, 2.0 * mu) * std::sin(psi) : 0.0;
            };
            double hi = kPi;
            if (b > 1e-15 && std::abs(a) < b) hi = std::acos(clamp1(-a / b));
            else if (a <= -b) return 0.0;
            return adaptive_simpson(g, 0.0, hi, 1e-12);
        };
        auto outer = [&](double w) {
            return 2.0 * kPi * inner(w) * std::sin(w) * std::sin(w);
        };
        return adaptive_simpson(outer, 0.0, rho, 1e-12);
    }
    throw std::invalid_argument("ball_cap_integral: unsupported d");
}

}  // namespace

double cap_measure_quad(const WeightSpec& w, const Point& center, double r) {
    if (r <= 0.0 || r > kPi) throw std::invalid_argument("cap_measure_quad: r in (0,pi]");
    const double t = center.t;
    const double b = weight_normalization(w);
    const double phi_t = 2.0 * std::asin(clamp1(std::sqrt(std::max(0.0, t))));
    const double lo = std::max(0.0, phi_t - 2.0 * r), hi = std::min(kPi, phi_t + 2.0 * r);

    double achieved = 0.0;
    double value = 0.0;
    if (w.domain == Domain::Surface) {
        // w(cap) = b * omega_{d-1} int s^{beta+d-1}(1-s)^gamma Psi_d(psi_max) ds
        double ring = sphere_area(w.d - 1);
        auto f = [&](double phi) {
            double sh = std::sin(0.5 * phi), ch = std::cos(0.5 * phi);
            double s = sh * sh;
            double psi = cap_slice_angle(t, s, r);
            if (psi <= 0.0) return 0.0;
            double ang = (w.d == 2) ? psi : (1.0 - std::cos(psi));  // Psi_d up to constants
            double dens = std::pow(s, w.beta + w.d - 1) * std::pow(1.0 - s, w.gamma);
            return dens * ang * sh * ch;  // ds = sin(phi/2)cos(phi/2) dphi
        };
        value = b * ring * tanh_sinh(f, lo, hi, 1e-11, &achieved);
    } else {
        if (w.d != 2 && w.d != 3)
            throw std::invalid_argument("cap_measure_quad: unsupported d for cone");
        double xn = norm_x(center, w.d);
        double xprime = t > 1e-14 ? std::min(1.0, xn / t) : 0.0;
        auto f = [&](double phi) {
            double sh = std::sin(0.5 * phi), ch = std::cos(0.5 * phi);
            double s = sh * sh;
            double psi = cap_slice_angle(t, s, r);
            if (psi <= 0.0) return 0.0;
            double rho = std::min(psi, kPi);
            double inner = ball_cap_integral(w.d, xprime, w.mu, rho);
            double dens = std::pow(s, w.d + 2.0 * w.mu - 1.0) * std::pow(1.0 - s, w.gamma);
            return dens * inner * sh * ch;
        };
        value = b * tanh_sinh(f, lo, hi, 1e-10, &achieved);
    }
    if (!(achieved < 1e-6))
        throw std::runtime_error("cap_measure_quad: quadrature did not converge, achieved rel " +
                                 std::to_string(achieved));
    return value;
}

namespace {

struct RingSpec {
    double t, tminus, tplus;
};

std::vector<RingSpec> make_rings(double eps, int* N_out) {
    int N = int(std::floor(0.5 * kPi / eps));
    if (N < 1) throw std::invalid_argument("build_separated_set: eps too large, no rings");
    *N_out = N;
    std::vector<RingSpec> rings(N);
    for (int j = 1; j <= N; ++j) {
        double th = (2.0 * j - 1.0) * kPi / (2.0 * N);
        double thm = th - kPi / (2.0 * N), thp = th + kPi / (2.0 * N);
        auto t_of = [](double a) {
            double s = std::sin(0.5 * a);
            return s * s;
        };
        rings[j - 1] = {t_of(th), t_of(thm), t_of(thp)};
    }
    return rings;
}

}  // namespace

namespace {

// Smallest sphere-level separation eps* such that lifting a ring at height t
// turns it into an eps-separated set on the cone:
//   d((t xi, t), (t eta, t)) = 2 arcsin( sqrt(t) sin(d_S(xi,eta)/4) ) >= eps
// holds iff d_S >= 4 arcsin( sin(eps/2)/sqrt(t) ).
double ring_separation(double eps, double t) {
    double s = std::sin(0.5 * eps) / std::sqrt(std::max(t, 1e-300));
    if (s >= 1.0) return 2.0 * kPi;  // ring admits a single node
    return 4.0 * std::asin(s);
}

// Azimuthal step on a latitude circle of radius sin(om) so that the geodesic
// distance 2 arcsin( sin(om) sin(step/2) ) stays >= eps.
double latitude_step(double eps, double som) {
    double s = std::sin(0.5 * eps) / std::max(som, 1e-300);
    if (s >= 1.0) return 2.0 * kPi;
    return 2.0 * std::asin(s);
}

}  // namespace

SeparatedSet build_separated_set(Domain dom, int d, double eps, std::uint64_t seed) {
    if (eps <= 0.0 || eps >= 1.0)
        throw std::invalid_argument("build_separated_set: eps must be in (0,1)");
    if (d != 2 && d != 3) throw std::invalid_argument("build_separated_set: d must be 2 or 3");
    if (dom == Domain::Cone && d != 2)
        throw std::invalid_argument("build_separated_set: cone supported for d=2 only");

    int N = 0;
    auto rings = make_rings(eps, &N);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    SeparatedSet S;
    S.domain = dom;
    S.d = d;
    S.eps = eps;

    struct CircleAux {
        double polar_half = 0.0;  // lifted distance of a half polar step (0 if none)
    };
    std::vector<CircleAux> aux;

    auto push_circle = [&](int ring, double t, double rho, int count, double offset,
                           double polar_half, bool sphere3, double cos_om) {
        SeparatedSet::Circle c;
        c.t = t;
        c.rho = rho;
        c.count = count;
        c.offset = offset;
        c.first = int(S.nodes.size());
        c.ring = ring;
        S.circles.push_back(c);
        aux.push_back({polar_half});
        for (int i = 0; i < count; ++i) {
            double th = offset + 2.0 * kPi * i / count;
            Point p;
            if (dom == Domain::Surface && d == 2) {
                p = Point{{t * std::cos(th), t * std::sin(th), 0.0}, t};
            } else if (sphere3) {
                p = Point{{t * rho * std::cos(th), t * rho * std::sin(th), t * cos_om}, t};
            } else {
                double rr = t * rho;  // cone d=2: x = t * rho * (cos,sin)
                p = Point{{rr * std::cos(th), rr * std::sin(th), 0.0}, t};
            }
            S.nodes.push_back(p);
            S.ring_index.push_back(ring);
            S.circle_of.push_back(int(S.circles.size()) - 1);
        }
    };

    for (int j = 0; j < N; ++j) {
        double t = rings[j].t;
        double eps_star = ring_separation(eps, t);
        if (dom == Domain::Surface && d == 2) {
            int K = std::max(1, int(std::floor(2.0 * kPi / eps_star)));
            double off = unif(rng) * 2.0 * kPi / K;
            push_circle(j, t, 1.0, K, off, 0.0, false, 0.0);
        } else if (dom == Domain::Surface && d == 3) {
            if (eps_star >= kPi) {  // ring admits one node: put it at the pole
                push_circle(j, t, 0.0, 1, 0.0, 0.0, true, 1.0);
                continue;
            }
            // latitude bands on S^2 at geodesic separation eps_star
            int L = std::max(1, int(std::floor(kPi / eps_star)));
            for (int l = 1; l <= L; ++l) {
                double om = (l - 0.5) * kPi / L;
                double step = latitude_step(eps_star, std::sin(om));
                int K = std::max(1, int(std::floor(2.0 * kPi / step)));
                double off = unif(rng) * 2.0 * kPi / K;
                double polar_half =
                    2.0 * std::asin(std::sqrt(t) * std::sin(0.125 * kPi / L));
                push_circle(j, t, std::sin(om), K, off, polar_half, true, std::cos(om));
            }
        } else {
            if (eps_star >= kPi) {  // ring admits one node: the disk center
                push_circle(j, t, 0.0, 1, 0.0, 0.0, false, 0.0);
                continue;
            }
            // cone d=2: latitude circles of the hemisphere lift of the disk
            int L = std::max(1, int(std::floor(0.5 * kPi / eps_star)));
            for (int l = 1; l <= L; ++l) {
                double om = (l - 0.5) * 0.5 * kPi / L;
                double step = latitude_step(eps_star, std::sin(om));
                int K = std::max(1, int(std::floor(2.0 * kPi / step)));
                double off = unif(rng) * 2.0 * kPi / K;
                double polar_half =
                    2.0 * std::asin(std::sqrt(t) * std::sin(0.0625 * kPi / L));
                push_circle(j, t, std::sin(om), K, off, polar_half, false, 0.0);
            }
        }
    }

    // cell certificates: Voronoi-style inner radius (half distance to the
    // nearest neighbor) and an outer radius from the grid half-steps
    S.cell_r_lo.resize(S.nodes.size());
    S.cell_r_hi.resize(S.nodes.size());
    const double ring_half = 0.25 * kPi / N;  // d01 half-width of a t-ring
    for (std::size_t i = 0; i < S.nodes.size(); ++i) {
        int ci = S.circle_of[i];
        const auto& c = S.circles[ci];
        const Point& z = S.nodes[i];
        double arc_half;
        if (c.count == 1) {
            // whole circle is one cell: half step is the farthest circle point
            arc_half =
                2.0 * std::asin(std::min(1.0, std::sqrt(z.t) * c.rho));
        } else {
            double th = std::atan2(z.x[1], z.x[0]);
            Point nb = z;
            double dd = kPi / c.count;
            if (dom == Domain::Surface && d == 2) {
                nb = Point{{z.t * std::cos(th + dd), z.t * std::sin(th + dd), 0.0}, z.t};
            } else {
                double rr = std::hypot(z.x[0], z.x[1]);
                nb = Point{{rr * std::cos(th + dd), rr * std::sin(th + dd), z.x[2]}, z.t};
            }
            arc_half = dist(dom, z, nb, d);
        }
        double hi = arc_half + ring_half + aux[ci].polar_half;
        double lo = ring_half;
        if (c.count > 1) lo = std::min(lo, arc_half);
        if (aux[ci].polar_half > 0.0) lo = std::min(lo, aux[ci].polar_half);
        S.cell_r_lo[i] = lo;
        S.cell_r_hi[i] = hi;
    }
    return S;
}

SeparatedSet product_node_set(const WeightSpec& w, int degree, std::vector<double>* weights) {
    if (degree < 0) throw std::invalid_argument("product_node_set: degree < 0");
    const int n = std::max(degree, 0);
    const int mt = (n + 1) / 2 + ((n + 1) % 2) + 1;  // ceil((n+1)/2) + 1
    const int K = n + 1;

    SeparatedSet S;
    S.domain = w.domain;
    S.d = w.d;
    if (weights) weights->clear();

    auto push_circle = [&](int ring, double t, double rho, int count, double node_w) {
        SeparatedSet::Circle c;
        c.t = t;
        c.rho = rho;
        c.count = count;
        c.offset = 0.0;
        c.first = int(S.nodes.size());
        c.ring = ring;
        S.circles.push_back(c);
        double rr = w.domain == Domain::Surface ? t : t * rho;
        for (int i = 0; i < count; ++i) {
            double th = 2.0 * kPi * i / count;
            S.nodes.push_back(Point{{rr * std::cos(th), rr * std::sin(th), 0.0}, t});
            S.ring_index.push_back(ring);
            S.circle_of.push_back(int(S.circles.size()) - 1);
            if (weights) weights->push_back(node_w);
        }
    };

    QuadratureRule1D tr;
    if (w.domain == Domain::Surface && w.d == 2) {
        tr = gauss_jacobi(mt, JacobiParams(w.gamma, w.beta + w.d - 1), 0.0, 1.0);
        for (std::size_t i = 0; i < tr.nodes.size(); ++i)
            push_circle(int(i), tr.nodes[i], 1.0, K, tr.weights[i] / K);
    } else if (w.domain == Domain::Surface && w.d == 3) {
        tr = gauss_jacobi(mt, JacobiParams(w.gamma, w.beta + w.d - 1), 0.0, 1.0);
        auto cr = gauss_jacobi(mt, JacobiParams(0.0, 0.0));
        for (std::size_t i = 0; i < tr.nodes.size(); ++i) {
            double t = tr.nodes[i];
            for (std::size_t l = 0; l < cr.nodes.size(); ++l) {
                double cw = cr.nodes[l], sw = std::sqrt(std::max(0.0, 1.0 - cw * cw));
                SeparatedSet::Circle c;
                c.t = t;
                c.rho = sw;
                c.count = K;
                c.offset = 0.0;
                c.first = int(S.nodes.size());
                c.ring = int(i);
                S.circles.push_back(c);
                for (int k = 0; k < K; ++k) {
                    double ph = 2.0 * kPi * k / K;
                    S.nodes.push_back(
                        Point{{t * sw * std::cos(ph), t * sw * std::sin(ph), t * cw}, t});
                    S.ring_index.push_back(int(i));
                    S.circle_of.push_back(int(S.circles.size()) - 1);
                    if (weights) weights->push_back(tr.weights[i] * cr.weights[l] / K);
                }
            }
        }
    } else if (w.domain == Domain::Cone && w.d == 2) {
        tr = gauss_jacobi(mt, JacobiParams(w.gamma, 2.0 * w.mu + w.d - 1), 0.0, 1.0);
        auto rr = gauss_jacobi(mt, JacobiParams(w.mu - 0.5, 0.0));
        for (std::size_t i = 0; i < tr.nodes.size(); ++i) {
            for (std::size_t l = 0; l < rr.nodes.size(); ++l) {
                double rho = std::sqrt(0.5 * (1.0 + rr.nodes[l]));
                push_circle(int(i), tr.nodes[i], rho, K, tr.weights[i] * rr.weights[l] / K);
            }
        }
    } else {
        throw std::invalid_argument("product_node_set: unsupported domain/d combination");
    }

    // measured minimal separation: adjacent angles within circles, and an
    // axial sample across neighboring circles
    double eps = kPi;
    for (std::size_t c = 0; c < S.circles.size(); ++c) {
        const auto& cir = S.circles[c];
        if (cir.count > 1)
            eps = std::min(eps, dist(S.domain, S.nodes[cir.first], S.nodes[cir.first + 1], S.d));
        if (c + 1 < S.circles.size()) {
            const auto& nxt = S.circles[c + 1];
            eps = std::min(eps, dist(S.domain, S.nodes[cir.first], S.nodes[nxt.first], S.d));
        }
    }
    S.eps = eps;
    // coarse cell certificates from the grid spacing
    S.cell_r_lo.assign(S.nodes.size(), 0.5 * eps);
    S.cell_r_hi.assign(S.nodes.size(), 4.0 * eps);
    return S;
}

CubatureRule reference_quadrature(const WeightSpec& w, int degree) {
    std::vector<double> weights;
    SeparatedSet S = product_node_set(w, degree, &weights);
    CubatureRule rule;
    rule.domain = w.domain;
    rule.d = w.d;
    rule.degree = std::max(degree, 0);
    rule.residual = 0.0;
    rule.nodes = std::move(S.nodes);
    rule.weights = std::move(weights);
    rule.ring_index = std::move(S.ring_index);
    return rule;
}

double integrate(const WeightSpec& w, int degree, const std::function<double(const Point&)>& f) {
    auto rule = reference_quadrature(w, degree);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

}  // namespace conekit
