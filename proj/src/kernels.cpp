#include "conekit/kernels.hpp"

#include <cmath>
#include <random>

namespace conekit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.4142135623730951;

// squared norm of the orthonormalized disk basis element (d=2):
// Pball(y) = P_i^{(mu-1/2, h)}(2||y||^2-1) ||y||^h Y(h psi)
double disk_norm_sq(double mu, int i, int h) {
    return (mu + 0.5) * jacobi_norm(i, JacobiParams(mu - 0.5, h)) / jacobi_c(mu - 0.5, double(h));
}

}  // namespace

BasisEvaluator::BasisEvaluator(const WeightSpec& w, int max_degree) : w_(w), N_(max_degree) {
    if (w.d != 2)
        throw std::invalid_argument("BasisEvaluator: only d=2 is supported");
    block_begin_.assign(N_ + 2, 0);

    if (w.domain == Domain::Surface) {
        // families (m, n): radial factor P_{n-m}^{(2m+beta+1,gamma)}(1-2t) t^m
        std::vector<std::vector<int>> fam_id(N_ + 1, std::vector<int>(N_ + 1, -1));
        for (int m = 0; m <= N_; ++m) {
            double a = 2.0 * m + w.beta + w.d - 1.0;
            for (int n = m; n <= N_; ++n) {
                double H = jacobi_c(w.beta + w.d - 1.0, w.gamma) / jacobi_c(a, w.gamma) *
                           jacobi_norm(n - m, JacobiParams(a, w.gamma));
                Fam f{n, m, 0, m, (m > 0 ? kSqrt2 : 1.0) / std::sqrt(H)};
                fam_id[m][n] = int(fams_.size());
                fams_.push_back(f);
            }
        }
        for (int n = 0; n <= N_; ++n) {
            block_begin_[n] = int(elements_.size());
            for (int m = 0; m <= n; ++m) {
                int f = fam_id[m][n];
                if (m == 0) {
                    elements_.push_back({n, m, 0, 0, Trig::Const, f});
                } else {
                    elements_.push_back({n, m, 0, m, Trig::Cos, f});
                    elements_.push_back({n, m, 0, m, Trig::Sin, f});
                }
            }
        }
        block_begin_[N_ + 1] = int(elements_.size());
        return;
    }

    // cone, beta = 0, alpha = mu + (d-1)/2
    double alpha = w.mu + 0.5 * (w.d - 1);
    // families (m, i, n)
    std::vector<int> fam_id;  // indexed later through a map of (m,i,n)
    auto key = [&](int m, int i, int n) { return (m * (N_ + 1) + i) * (N_ + 1) + n; };
    std::vector<int> fmap((N_ + 1) * (N_ + 1) * (N_ + 1), -1);
    for (int m = 0; m <= N_; ++m) {
        double a = 2.0 * alpha + 2.0 * m;
        for (int i = 0; 2 * i <= m; ++i) {
            int h = m - 2 * i;
            double bn = std::sqrt(disk_norm_sq(w.mu, i, h));
            for (int n = m; n <= N_; ++n) {
                double H = jacobi_c(2.0 * alpha, w.gamma) / jacobi_c(a, w.gamma) *
                           jacobi_norm(n - m, JacobiParams(a, w.gamma));
                Fam f{n, m, i, h, (h > 0 ? kSqrt2 : 1.0) / (std::sqrt(H) * bn)};
                fmap[key(m, i, n)] = int(fams_.size());
                fams_.push_back(f);
            }
        }
    }
    for (int n = 0; n <= N_; ++n) {
        block_begin_[n] = int(elements_.size());
        for (int m = 0; m <= n; ++m) {
            for (int i = 0; 2 * i <= m; ++i) {
                int h = m - 2 * i;
                int f = fmap[key(m, i, n)];
                if (h == 0) {
                    elements_.push_back({n, m, i, 0, Trig::Const, f});
                } else {
                    elements_.push_back({n, m, i, h, Trig::Cos, f});
                    elements_.push_back({n, m, i, h, Trig::Sin, f});
                }
            }
        }
    }
    block_begin_[N_ + 1] = int(elements_.size());
}

double BasisEvaluator::norm_h(int n, int m, int i) const {
    if (w_.domain == Domain::Surface) {
        double a = 2.0 * m + w_.beta + w_.d - 1.0;
        return jacobi_c(w_.beta + w_.d - 1.0, w_.gamma) / jacobi_c(a, w_.gamma) *
               jacobi_norm(n - m, JacobiParams(a, w_.gamma));
    }
    double alpha = w_.mu + 0.5 * (w_.d - 1);
    double a = 2.0 * alpha + 2.0 * m;
    (void)i;
    return jacobi_c(2.0 * alpha, w_.gamma) / jacobi_c(a, w_.gamma) *
           jacobi_norm(n - m, JacobiParams(a, w_.gamma));
}

void BasisEvaluator::family_values(double t, double rho, std::span<double> out) const {
    const double u = 1.0 - 2.0 * t;
    std::vector<double> row(N_ + 1);

    if (w_.domain == Domain::Surface) {
        int f = 0;
        double tm = 1.0;
        for (int m = 0; m <= N_; ++m) {
            double a = 2.0 * m + w_.beta + w_.d - 1.0;
            jacobi_eval_all(N_ - m, JacobiParams(a, w_.gamma), u, row);
            for (int n = m; n <= N_; ++n) {
                out[f] = row[n - m] * tm * fams_[f].inv_norm;
                ++f;
            }
            tm *= t;
        }
        return;
    }

    // cone: disk radial table D[h][i] = P_i^{(mu-1/2,h)}(2rho^2-1) rho^h
    const double ur = 2.0 * rho * rho - 1.0;
    std::vector<std::vector<double>> D(N_ + 1);
    {
        double rh = 1.0;
        for (int h = 0; h <= N_; ++h) {
            int imax = (N_ - h) / 2;
            D[h].resize(imax + 1);
            std::vector<double> tmp(imax + 1);
            jacobi_eval_all(imax, JacobiParams(w_.mu - 0.5, double(h)), ur, tmp);
            for (int i = 0; i <= imax; ++i) D[h][i] = tmp[i] * rh;
            rh *= rho;
        }
    }
    double alpha = w_.mu + 0.5 * (w_.d - 1);
    int f = 0;
    double tm = 1.0;
    for (int m = 0; m <= N_; ++m) {
        double a = 2.0 * alpha + 2.0 * m;
        jacobi_eval_all(N_ - m, JacobiParams(a, w_.gamma), u, row);
        for (int i = 0; 2 * i <= m; ++i) {
            int h = m - 2 * i;
            double dval = D[h][i];
            for (int n = m; n <= N_; ++n) {
                out[f] = row[n - m] * tm * dval * fams_[f].inv_norm;
                ++f;
            }
        }
        tm *= t;
    }
}

void BasisEvaluator::values(const Point& p, std::span<double> out) const {
    double t = p.t;
    double rho = 0.0, theta = 0.0;
    if (w_.domain == Domain::Surface) {
        theta = std::atan2(p.x[1], p.x[0]);
        rho = 1.0;
    } else {
        double nx = std::hypot(p.x[0], p.x[1]);
        rho = t > 1e-300 ? std::min(1.0, nx / t) : 0.0;
        theta = std::atan2(p.x[1], p.x[0]);
    }
    std::vector<double> fv(fams_.size());
    family_values(t, rho, fv);

    // trig values cos(h theta), sin(h theta) for h <= N
    std::vector<double> ch(N_ + 1), sh(N_ + 1);
    ch[0] = 1.0;
    sh[0] = 0.0;
    double c1 = std::cos(theta), s1 = std::sin(theta);
    for (int h = 1; h <= N_; ++h) {
        ch[h] = ch[h - 1] * c1 - sh[h - 1] * s1;
        sh[h] = sh[h - 1] * c1 + ch[h - 1] * s1;
    }
    for (std::size_t nu = 0; nu < elements_.size(); ++nu) {
        const auto& e = elements_[nu];
        double base = fv[e.fam];
        switch (e.trig) {
            case Trig::Const: out[nu] = base; break;
            case Trig::Cos: out[nu] = base * ch[e.h]; break;
            case Trig::Sin: out[nu] = base * sh[e.h]; break;
        }
    }
}

std::vector<double> BasisEvaluator::values(const Point& p) const {
    std::vector<double> v(dim());
    values(p, v);
    return v;
}

double basis_eval(const WeightSpec& w, int n, int m, int index, const Point& p) {
    if (m < 0 || m > n) throw std::invalid_argument("basis_eval: need 0 <= m <= n");
    BasisEvaluator B(w, n);
    // collect the raw elements of (n, m): index enumerates them
    std::vector<int> picks;
    for (int nu = B.block_begin(n); nu < B.block_end(n); ++nu)
        if (B.elements()[nu].m == m) picks.push_back(nu);
    if (index < 0 || index >= int(picks.size()))
        throw std::invalid_argument("basis_eval: index out of range");
    int nu = picks[index];
    std::vector<double> v(B.dim());
    B.values(p, v);
    // undo the orthonormalization: raw = normalized * sqrt(H) (keeping the
    // sqrt(2) harmonic normalization, which is part of the orthonormal Y)
    int i = B.elements()[nu].i;
    return v[nu] * std::sqrt(B.norm_h(n, m, i));
}

double basis_norm(const WeightSpec& w, int n, int m, int index) {
    (void)index;
    BasisEvaluator B(w, std::max(n, 0));
    return B.norm_h(n, m);
}

BatchEvaluator::BatchEvaluator(const SeparatedSet& S, const BasisEvaluator& B) : S_(S), B_(B) {
    const int F = B_.num_families();
    fam_vals_.resize(S_.circles.size());
    for (std::size_t c = 0; c < S_.circles.size(); ++c) {
        fam_vals_[c].resize(F);
        double rho = S_.domain == Domain::Cone ? S_.circles[c].rho : 1.0;
        B_.family_values(S_.circles[c].t, rho, fam_vals_[c]);
    }
}

void BatchEvaluator::moments(std::span<const double> node_weights, std::span<double> out) const {
    const int M = rows(), H = B_.max_degree();
    std::fill(out.begin(), out.end(), 0.0);
    std::vector<double> sc(H + 1), ss(H + 1);
    const auto& els = B_.elements();
    for (std::size_t c = 0; c < S_.circles.size(); ++c) {
        const auto& cir = S_.circles[c];
        std::fill(sc.begin(), sc.end(), 0.0);
        std::fill(ss.begin(), ss.end(), 0.0);
        for (int i = 0; i < cir.count; ++i) {
            double lam = node_weights[cir.first + i];
            if (lam == 0.0) continue;
            double th = cir.offset + 2.0 * kPi * i / cir.count;
            double c1 = std::cos(th), s1 = std::sin(th);
            double ch = 1.0, sh = 0.0;
            sc[0] += lam;
            for (int h = 1; h <= H; ++h) {
                double chn = ch * c1 - sh * s1;
                sh = sh * c1 + ch * s1;
                ch = chn;
                sc[h] += lam * ch;
                ss[h] += lam * sh;
            }
        }
        const auto& fv = fam_vals_[c];
        for (int nu = 0; nu < M; ++nu) {
            const auto& e = els[nu];
            double base = fv[e.fam];
            if (base == 0.0) continue;
            switch (e.trig) {
                case Trig::Const: out[nu] += base * sc[0]; break;
                case Trig::Cos: out[nu] += base * sc[e.h]; break;
                case Trig::Sin: out[nu] += base * ss[e.h]; break;
            }
        }
    }
}

void BatchEvaluator::values(std::span<const double> coeffs, std::span<double> out) const {
    const int M = rows(), H = B_.max_degree();
    const auto& els = B_.elements();
    std::vector<double> Ch(H + 1), Sh(H + 1);
    for (std::size_t c = 0; c < S_.circles.size(); ++c) {
        const auto& cir = S_.circles[c];
        std::fill(Ch.begin(), Ch.end(), 0.0);
        std::fill(Sh.begin(), Sh.end(), 0.0);
        const auto& fv = fam_vals_[c];
        for (int nu = 0; nu < M; ++nu) {
            double rv = coeffs[nu];
            if (rv == 0.0) continue;
            const auto& e = els[nu];
            double base = fv[e.fam];
            switch (e.trig) {
                case Trig::Const: Ch[0] += rv * base; break;
                case Trig::Cos: Ch[e.h] += rv * base; break;
                case Trig::Sin: Sh[e.h] += rv * base; break;
            }
        }
        for (int i = 0; i < cir.count; ++i) {
            double th = cir.offset + 2.0 * kPi * i / cir.count;
            double c1 = std::cos(th), s1 = std::sin(th);
            double ch = 1.0, sh = 0.0;
            double acc = Ch[0];
            for (int h = 1; h <= H; ++h) {
                double chn = ch * c1 - sh * s1;
                sh = sh * c1 + ch * s1;
                ch = chn;
                acc += Ch[h] * ch + Sh[h] * sh;
            }
            out[cir.first + i] = acc;
        }
    }
}

void BatchEvaluator::column(int node, std::span<double> out) const {
    int c = S_.circle_of[node];
    const auto& cir = S_.circles[c];
    int i = node - cir.first;
    double th = cir.offset + 2.0 * kPi * i / cir.count;
    const auto& fv = fam_vals_[c];
    const auto& els = B_.elements();
    const int H = B_.max_degree();
    std::vector<double> ch(H + 1), sh(H + 1);
    ch[0] = 1.0;
    sh[0] = 0.0;
    double c1 = std::cos(th), s1 = std::sin(th);
    for (int h = 1; h <= H; ++h) {
        ch[h] = ch[h - 1] * c1 - sh[h - 1] * s1;
        sh[h] = sh[h - 1] * c1 + ch[h - 1] * s1;
    }
    for (int nu = 0; nu < rows(); ++nu) {
        const auto& e = els[nu];
        double base = fv[e.fam];
        out[nu] = e.trig == Trig::Const ? base
                  : e.trig == Trig::Cos ? base * ch[e.h]
                                        : base * sh[e.h];
    }
}

namespace {

struct Rule1 {
    std::vector<double> x, w;
};

// normalized Gauss rule for (1-v^2)^{expo} on [-1,1]; expo = -1 means the
// two-point limit average (f(1)+f(-1))/2.
Rule1 sym_rule(double expo, int m) {
    Rule1 r;
    if (expo <= -1.0 + 1e-14) {
        r.x = {1.0, -1.0};
        r.w = {0.5, 0.5};
        return r;
    }
    auto gj = gauss_jacobi(m, JacobiParams(expo, expo));
    r.x = gj.nodes;
    r.w = gj.weights;
    return r;
}

}  // namespace

double filtered_kernel_addition(const WeightSpec& w, std::span<const double> coef, const Point& p,
                                const Point& q, int quad_pts) {
    if (!w.has_addition_formula())
        throw std::invalid_argument("filtered_kernel_addition: weight has no addition formula");
    const int kmax = int(coef.size()) - 1;
    if (kmax < 0) return 0.0;
    const int m = quad_pts > 0 ? quad_pts : kmax + 4;
    const double lam = w.lambda();
    const double t = p.t, s = q.t;
    const double b = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 - s)));

    Rule1 v2 = sym_rule(w.gamma - 0.5, m);

    if (w.domain == Domain::Surface) {
        double a = std::sqrt(std::max(0.0, 0.5 * (t * s + dot_x(p, q, w.d))));
        Rule1 v1 = sym_rule(0.5 * (w.d - 4.0), m);
        double acc = 0.0;
        for (std::size_t i = 0; i < v1.x.size(); ++i) {
            for (std::size_t j = 0; j < v2.x.size(); ++j) {
                double zeta = v1.x[i] * a + v2.x[j] * b;
                zeta = std::max(-1.0, std::min(1.0, zeta));
                acc += v1.w[i] * v2.w[j] * zonal_even_sum(coef, lam, zeta);
            }
        }
        return acc;
    }

    // cone
    double zp = std::sqrt(std::max(0.0, t * t - dot_x(p, p, w.d)));
    double zq = std::sqrt(std::max(0.0, s * s - dot_x(q, q, w.d)));
    double base = t * s + dot_x(p, q, w.d);
    Rule1 u = sym_rule(w.mu - 1.0, m);
    double alpha = w.mu + 0.5 * (w.d - 1);
    Rule1 v1 = sym_rule(alpha - 1.0, m);
    double acc = 0.0;
    for (std::size_t iu = 0; iu < u.x.size(); ++iu) {
        double a = std::sqrt(std::max(0.0, 0.5 * (base + zp * zq * u.x[iu])));
        for (std::size_t i = 0; i < v1.x.size(); ++i) {
            for (std::size_t j = 0; j < v2.x.size(); ++j) {
                double xi = v1.x[i] * a + v2.x[j] * b;
                xi = std::max(-1.0, std::min(1.0, xi));
                acc += u.w[iu] * v1.w[i] * v2.w[j] * zonal_even_sum(coef, lam, xi);
            }
        }
    }
    return acc;
}

double reprod_kernel(const KernelConfig& cfg, int n, const Point& p, const Point& q,
                     KernelMethod method) {
    if (n < 0) throw std::invalid_argument("reprod_kernel: n < 0");
    if (method == KernelMethod::Addition) {
        std::vector<double> coef(n + 1, 0.0);
        coef[n] = 1.0;
        return filtered_kernel_addition(cfg.weight, coef, p, q, cfg.quad_order_per_axis);
    }
    BasisEvaluator B(cfg.weight, n);
    std::vector<double> vp(B.dim()), vq(B.dim());
    B.values(p, vp);
    B.values(q, vq);
    double acc = 0.0;
    for (int nu = B.block_begin(n); nu < B.block_end(n); ++nu) acc += vp[nu] * vq[nu];
    return acc;
}

namespace {

std::vector<double> cutoff_coeffs(const CutoffSpec& cutoff, int n) {
    std::vector<double> coef(2 * n + 1, 0.0);
    for (int k = 0; k <= 2 * n; ++k) coef[k] = cutoff_eval(cutoff, double(k) / double(n));
    return coef;
}

double filtered_kernel(const KernelConfig& cfg, std::span<const double> coef, const Point& p,
                       const Point& q) {
    if (cfg.weight.has_addition_formula())
        return filtered_kernel_addition(cfg.weight, coef, p, q, cfg.quad_order_per_axis);
    int kmax = int(coef.size()) - 1;
    BasisEvaluator B(cfg.weight, kmax);
    std::vector<double> vp(B.dim()), vq(B.dim());
    B.values(p, vp);
    B.values(q, vq);
    double acc = 0.0;
    for (int nu = 0; nu < B.dim(); ++nu) {
        double c = coef[B.degree_of(nu)];
        if (c != 0.0) acc += c * vp[nu] * vq[nu];
    }
    return acc;
}

}  // namespace

double localized_kernel(const KernelConfig& cfg, int n, const CutoffSpec& cutoff, const Point& p,
                        const Point& q) {
    if (n < 1) throw std::invalid_argument("localized_kernel: n >= 1");
    return filtered_kernel(cfg, cutoff_coeffs(cutoff, n), p, q);
}

double localized_kernel_frac(const KernelConfig& cfg, int n, double r, const CutoffSpec& cutoff,
                             const Point& p, const Point& q) {
    if (n < 1) throw std::invalid_argument("localized_kernel_frac: n >= 1");
    if (!cfg.weight.has_eigenstructure())
        throw std::invalid_argument("localized_kernel_frac: weight has no eigenstructure");
    auto coef = cutoff_coeffs(cutoff, n);
    for (int k = 0; k < int(coef.size()); ++k)
        coef[k] *= std::pow(cfg.weight.eigenvalue(k), 0.5 * r);
    return filtered_kernel(cfg, coef, p, q);
}

namespace {

// S_n(cos theta) = ( sin((m+1/2)theta/2) / ((m+1/2) sin(theta/2)) )^{2r}
double fejer_bump(double z, int n, int r) {
    z = std::max(-1.0, std::min(1.0, z));
    double theta = std::acos(z);
    int m = n / r + 1;
    double a = m + 0.5;
    double den = std::sin(0.5 * theta);
    double ratio;
    if (std::abs(den) < 1e-9) {
        ratio = 1.0;
    } else {
        ratio = std::sin(a * 0.5 * theta) / (a * den);
    }
    return std::pow(ratio * ratio, r);
}

double surface_bump(const double* X, double t, const double* Y, double s, int dlift, int n, int r) {
    double inner = t * s;
    for (int i = 0; i < dlift; ++i) inner += X[i] * Y[i];
    double a = std::sqrt(std::max(0.0, 0.5 * inner));
    double b = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 - s)));
    double num = fejer_bump(a + b, n, r) + fejer_bump(a - b, n, r);
    double den = 1.0 + fejer_bump(2.0 * t - 1.0, n, r);
    return num / den;
}

}  // namespace

double fast_decay_poly(Domain dom, int d, const Point& center, int n, int r, const Point& p) {
    if (n < 1 || r < 1) throw std::invalid_argument("fast_decay_poly: n >= 1 and r >= 1");
    if (dom == Domain::Surface) {
        return surface_bump(center.x.data(), center.t, p.x.data(), p.t, d, n, r);
    }
    // lift to the surface of one higher dimension and average over the two sheets
    double zc = std::sqrt(std::max(0.0, center.t * center.t - dot_x(center, center, d)));
    double zy = std::sqrt(std::max(0.0, p.t * p.t - dot_x(p, p, d)));
    double X[4] = {center.x[0], center.x[1], center.x[2], 0.0};
    double Y[4] = {p.x[0], p.x[1], p.x[2], 0.0};
    X[d] = zc;
    Y[d] = zy;
    double v1 = surface_bump(X, center.t, Y, p.t, d + 1, n, r);
    Y[d] = -zy;
    double v2 = surface_bump(X, center.t, Y, p.t, d + 1, n, r);
    // denominator: T at the mirrored center X* = (x, -z)
    double Xm[4] = {center.x[0], center.x[1], center.x[2], 0.0};
    Xm[d] = -zc;
    double tden = surface_bump(X, center.t, Xm, center.t, d + 1, n, r);
    return (v1 + v2) / (1.0 + tden);
}

int fast_decay_poly_degree(Domain dom, int n) { return dom == Domain::Surface ? n : 3 * n; }

double christoffel(const KernelConfig& cfg, int n, const Point& p) {
    if (n < 0) throw std::invalid_argument("christoffel: n < 0");
    double K = 0.0;
    if (cfg.weight.has_addition_formula()) {
        std::vector<double> coef(n + 1, 1.0);
        K = filtered_kernel_addition(cfg.weight, coef, p, p, cfg.quad_order_per_axis);
    } else {
        BasisEvaluator B(cfg.weight, n);
        std::vector<double> v(B.dim());
        B.values(p, v);
        for (double x : v) K += x * x;
    }
    return 1.0 / K;
}

std::vector<Point> sample_points(Domain dom, int d, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6a09e667f3bcc908ULL);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        double phi = unif(rng) * kPi;
        double t = std::sin(0.5 * phi);
        t = t * t;
        double th = unif(rng) * 2.0 * kPi;
        if (dom == Domain::Surface) {
            if (d == 2) {
                pts.push_back(Point{{t * std::cos(th), t * std::sin(th), 0.0}, t});
            } else {
                double cw = 2.0 * unif(rng) - 1.0, sw = std::sqrt(1.0 - cw * cw);
                pts.push_back(
                    Point{{t * sw * std::cos(th), t * sw * std::sin(th), t * cw}, t});
            }
        } else {
            double om = unif(rng) * 0.5 * kPi;  // ball-metric uniform-ish radius
            double rho = std::sin(om);
            pts.push_back(Point{{t * rho * std::cos(th), t * rho * std::sin(th), 0.0}, t});
        }
    }
    return pts;
}

namespace {

// rotate a point around the axis by an angle that produces (approximately) the
// requested intrinsic distance; returns false near the apex / axis
bool ring_step_point(Domain dom, int d, const Point& p, double target, Point* out) {
    if (p.t < 1e-6) return false;
    double rr = std::hypot(p.x[0], p.x[1]);
    if (rr < 1e-12) return false;
    // distance to the angular partner d_B* on the sphere/ball level
    double s = std::sin(0.5 * target) / std::sqrt(p.t);
    if (s >= 1.0) return false;
    double db = 4.0 * std::asin(s);
    double dpsi;
    if (dom == Domain::Surface) {
        dpsi = db;  // circle metric is the arc length
        if (dpsi > kPi) return false;
    } else {
        double rho = std::min(1.0, rr / p.t);
        double s2 = std::sin(0.5 * db) / std::max(rho, 1e-12);
        if (s2 >= 1.0) return false;
        dpsi = 2.0 * std::asin(s2);
    }
    double th = std::atan2(p.x[1], p.x[0]) + dpsi;
    *out = p;
    out->x[0] = rr * std::cos(th);
    out->x[1] = rr * std::sin(th);
    if (d == 3) out->x[2] = p.x[2];
    return true;
}

// partner on the same ray at interval distance `target`
Point ray_step_point(const Point& p, double target) {
    double phi = 2.0 * std::asin(std::min(1.0, std::sqrt(std::max(0.0, p.t))));
    double phi2 = std::min(kPi, phi + 2.0 * target);
    double t2 = std::sin(0.5 * phi2);
    t2 = t2 * t2;
    Point q = p;
    double scale = p.t > 1e-14 ? t2 / p.t : 0.0;
    q.x[0] *= scale;
    q.x[1] *= scale;
    q.x[2] *= scale;
    q.t = t2;
    return q;
}

}  // namespace

std::vector<DecayRow> decay_report(const KernelConfig& cfg, const CutoffSpec& cutoff,
                                   std::span<const int> ns, double kappa, int npairs,
                                   std::uint64_t seed) {
    if (!cfg.weight.localizable())
        throw std::invalid_argument("decay_report: weight is not localizable");
    const Domain dom = cfg.weight.domain;
    const int d = cfg.weight.d;

    // Two pair families:
    //  (a) scale-matched anchors (apex layer t ~ 1/n^2, interior, boundary
    //      layer 1-t ~ 1/n^2) with partners at fixed reduced distances
    //      n*d(p,q) -- the normalized quantities converge per configuration;
    //  (b) a fixed n-independent random pair corpus, whose growing reduced
    //      distances expose a non-admissible cutoff.
    auto fixed_a = sample_points(dom, d, std::max(4, npairs / 4), seed);
    auto fixed_b = sample_points(dom, d, std::max(4, npairs / 4), seed + 1);
    auto probes = sample_points(dom, d, 8, seed + 2);
    const double reduced[] = {1.0, 2.0, 4.0, 8.0, 16.0};
    std::mt19937_64 arng(seed + 3);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> angles(6);
    for (auto& a : angles) a = unif(arng) * 2.0 * kPi;

    std::vector<DecayRow> rows;
    for (int n : ns) {
        DecayRow row;
        row.n = n;
        row.kappa = kappa;
        const double rn = 1.0 / n;

        auto account = [&](const Point& p, const Point& q) {
            ++row.pairs;
            double dd = dist(dom, p, q, d);
            double L = localized_kernel(cfg, n, cutoff, p, q);
            double capp = cap_measure_formula(cfg.weight, p, rn);
            double capq = cap_measure_formula(cfg.weight, q, rn);
            double n1 = std::abs(L) * std::sqrt(capp) * std::sqrt(capq) *
                        std::pow(1.0 + n * dd, kappa);
            row.sup_n1 = std::max(row.sup_n1, n1);

            // Lipschitz probe: p1 within 0.05/n of p
            Point p1;
            if (!ring_step_point(dom, d, p, 0.05 * rn, &p1)) return;
            double dpp = dist(dom, p, p1, d);
            if (dpp <= 0.0) return;
            double L1 = localized_kernel(cfg, n, cutoff, p1, q);
            double n2 = std::abs(L1 - L) * std::sqrt(capp) * std::sqrt(capq) *
                        std::pow(1.0 + n * dd, kappa) / (n * dpp);
            row.sup_n2 = std::max(row.sup_n2, n2);
        };

        std::vector<Point> anchors;
        for (double t : {4.0 * rn * rn, 0.2, 0.5, 0.8, 1.0 - 4.0 * rn * rn}) {
            t = std::min(0.999999, std::max(1e-9, t));
            for (std::size_t k = 0; k < angles.size() / 2; ++k) {
                if (dom == Domain::Surface) {
                    anchors.push_back(make_surface_point(t, angles[k]));
                } else {
                    for (double rho : {0.0, 0.4, 0.95})
                        anchors.push_back(Point{{t * rho * std::cos(angles[k]),
                                                 t * rho * std::sin(angles[k]), 0.0},
                                                t});
                }
            }
        }
        for (const Point& a : anchors) {
            account(a, a);
            for (double nd : reduced) {
                Point q;
                if (ring_step_point(dom, d, a, nd * rn, &q)) account(a, q);
                account(a, ray_step_point(a, nd * rn));
            }
        }
        for (std::size_t i = 0; i < fixed_a.size(); ++i) account(fixed_a[i], fixed_b[i]);

        // N3: integral against the normalized weight
        int qdeg = dom == Domain::Surface ? std::min(4 * n, 260) : std::min(2 * n + 8, 140);
        auto rule = reference_quadrature(cfg.weight, qdeg);
        for (const Point& x : probes) {
            double acc = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const Point& y = rule.nodes[k];
                double dd = dist(dom, x, y, d);
                acc += rule.weights[k] / (std::sqrt(cap_measure_formula(cfg.weight, y, rn)) *
                                          std::pow(1.0 + n * dd, kappa));
            }
            double n3 = acc / std::sqrt(cap_measure_formula(cfg.weight, x, rn));
            row.sup_n3 = std::max(row.sup_n3, n3);
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace conekit
