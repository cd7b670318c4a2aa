#include "conekit/cubature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace conekit {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPi = 3.14159265358979323846;

// Thin Eigen adapter over the circle-structured batch transforms.
class MomentOperator {
public:
    MomentOperator(const SeparatedSet& S, const BasisEvaluator& B) : be_(S, B) {}
    int rows() const { return be_.rows(); }
    int cols() const { return be_.cols(); }
    void apply(const VectorXd& lambda, VectorXd& out) const {
        out.resize(rows());
        be_.moments({lambda.data(), std::size_t(lambda.size())},
                    {out.data(), std::size_t(out.size())});
    }
    void applyT(const VectorXd& r, VectorXd& out) const {
        out.resize(cols());
        be_.values({r.data(), std::size_t(r.size())}, {out.data(), std::size_t(out.size())});
    }
    void column(int j, VectorXd& out) const {
        out.resize(rows());
        be_.column(j, {out.data(), std::size_t(out.size())});
    }

private:
    BatchEvaluator be_;
};

// Dense Lawson-Hanson with incremental Gram-Schmidt QR of the passive block.
// Columns are materialized on demand through the operator.
struct LhResult {
    std::vector<int> support;
    VectorXd weights;  // aligned with support
    double residual_inf = 0.0;
    bool converged = false;
};

LhResult lawson_hanson(const MomentOperator& op, const CubatureOptions& opts) {
    const int M = op.rows(), N = op.cols();
    const int cap = std::min(M, N);
    VectorXd b = VectorXd::Zero(M);
    b(0) = 1.0;

    MatrixXd Q(M, cap);
    MatrixXd R = MatrixXd::Zero(cap, cap);
    VectorXd y = VectorXd::Zero(cap);  // Q^T b
    std::vector<int> P;
    std::vector<char> state(N, 0);     // 0 active, 1 passive, 2 frozen (dependent)
    VectorXd u = VectorXd::Zero(M);    // projection of b onto span(A_P)
    VectorXd g(N), a(M), lam(0);

    auto append_column = [&](int j) -> bool {
        op.column(j, a);
        double anorm = a.norm();
        VectorXd q = a;
        int p = int(P.size());
        R.col(p).head(p).setZero();
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i < p; ++i) {
                double cij = Q.col(i).dot(q);
                R(i, p) += cij;
                q -= cij * Q.col(i);
            }
        double nq = q.norm();
        if (nq <= 1e-11 * std::max(anorm, 1.0)) {
            R.col(p).head(p + 1).setZero();
            return false;
        }
        R(p, p) = nq;
        Q.col(p) = q / nq;
        y(p) = Q.col(p).dot(b);
        u += Q.col(p) * y(p);
        state[j] = 1;
        P.push_back(j);
        return true;
    };

    auto solve_x = [&]() {
        return R.topLeftCorner(P.size(), P.size())
            .triangularView<Eigen::Upper>()
            .solve(y.head(P.size()))
            .eval();
    };

    const int max_iter = 3 * cap + 50;
    for (int iter = 0; iter < max_iter; ++iter) {
        VectorXd r = b - u;
        if (r.lpNorm<Eigen::Infinity>() <= opts.residual_tol) break;
        if (int(P.size()) >= cap) break;
        op.applyT(r, g);
        int jstar = -1;
        double gmax = opts.grad_tol;
        for (int j = 0; j < N; ++j)
            if (state[j] == 0 && g(j) > gmax) {
                gmax = g(j);
                jstar = j;
            }
        if (jstar < 0) break;  // gradient test: KKT point reached
        if (!append_column(jstar)) {
            state[jstar] = 2;
            continue;
        }
        VectorXd feas = VectorXd::Zero(P.size());
        feas.head(P.size() - 1) = lam;
        VectorXd x = solve_x();

        int guard = 0;
        while (x.size() > 0 && x.minCoeff() <= 0.0 && guard++ < 500) {
            double alpha = 1.0;
            for (int i = 0; i < int(P.size()); ++i)
                if (x(i) <= 0.0) {
                    double den = feas(i) - x(i);
                    if (den > 0.0) alpha = std::min(alpha, feas(i) / den);
                }
            feas += alpha * (x - feas);
            std::vector<int> keep;
            std::vector<double> keep_lam;
            for (int i = 0; i < int(P.size()); ++i) {
                if (feas(i) > 1e-14) {
                    keep.push_back(P[i]);
                    keep_lam.push_back(feas(i));
                } else {
                    state[P[i]] = 0;
                }
            }
            // rebuild the QR factorization on the kept columns
            for (int j : P) if (state[j] == 1) state[j] = 0;
            P.clear();
            u.setZero();
            feas.resize(keep.size());
            int kk = 0;
            for (std::size_t idx = 0; idx < keep.size(); ++idx) {
                if (append_column(keep[idx])) feas(kk++) = keep_lam[idx];
            }
            feas.conservativeResize(kk);
            if (P.empty()) break;
            x = solve_x();
        }
        if (P.empty()) {
            lam.resize(0);
            continue;
        }
        lam = x;
    }

    LhResult res;
    res.support = P;
    res.weights = lam;
    res.residual_inf = (b - u).lpNorm<Eigen::Infinity>();
    res.converged = res.residual_inf <= 1e-8 && lam.size() == long(P.size());
    return res;
}

// Symmetrized base-plus-correction solver for large systems: start from
// cap-proportional weights, then repeatedly remove the moment residual with a
// diagonally preconditioned CGLS step and clip to a strictly positive floor.
// This mirrors the existence proof (base weights + nonnegative correction).
VectorXd base_correction_solve(const MomentOperator& op, const SeparatedSet& S,
                               const WeightSpec& w, const CubatureOptions& opts,
                               double* residual_out) {
    const int M = op.rows(), N = op.cols();
    VectorXd b = VectorXd::Zero(M);
    b(0) = 1.0;

    // cap-proportional base, normalized to unit mass
    VectorXd base(N);
    for (int j = 0; j < N; ++j)
        base(j) = cap_measure_formula(w, S.nodes[j], S.eps);
    base /= base.sum();
    VectorXd dhalf = base.cwiseSqrt();  // right preconditioner

    VectorXd lam = base, r(M), tmpN(N), tmpM(M);
    auto residual = [&](const VectorXd& l) {
        op.apply(l, tmpM);
        r = b - tmpM;
        return r.lpNorm<Eigen::Infinity>();
    };

    double res = residual(lam);
    double floor_scale = 1e-3;
    for (int outer = 0; outer < 60; ++outer) {
        if (res <= opts.residual_tol) break;
        // CGLS on min || A D^{1/2} y - r ||, mu = D^{1/2} y
        VectorXd mu = VectorXd::Zero(N);
        {
            VectorXd s = r;  // residual of the LS system
            VectorXd p(N), q(M), gt(N);
            op.applyT(s, gt);
            p = dhalf.cwiseProduct(gt);
            VectorXd g = p;
            double gamma = g.squaredNorm();
            for (int it = 0; it < 300 && gamma > 1e-30; ++it) {
                op.apply(dhalf.cwiseProduct(p), q);
                double pq = q.squaredNorm();
                if (pq <= 0.0) break;
                double alpha = gamma / pq;
                mu += alpha * dhalf.cwiseProduct(p);
                s -= alpha * q;
                if (s.lpNorm<Eigen::Infinity>() < 0.2 * opts.residual_tol) break;
                op.applyT(s, gt);
                g = dhalf.cwiseProduct(gt);
                double gamma_new = g.squaredNorm();
                p = g + (gamma_new / gamma) * p;
                gamma = gamma_new;
            }
        }
        lam += mu;
        // clip to a strictly positive floor
        for (int j = 0; j < N; ++j) lam(j) = std::max(lam(j), floor_scale * base(j));
        double res_new = residual(lam);
        if (res_new > 0.9 * res && res_new > opts.residual_tol) {
            floor_scale *= 0.5;  // clipping dominates: relax the floor
            if (floor_scale < 1e-8) break;
        }
        res = res_new;
    }
    *residual_out = res;
    return lam;
}

}  // namespace

CubatureRule solve_positive_cubature(const SeparatedSet& S, int n, const WeightSpec& w,
                                     const CubatureOptions& opts) {
    if (n < 0) throw std::invalid_argument("solve_positive_cubature: n < 0");
    if (S.domain != w.domain || S.d != w.d)
        throw std::invalid_argument("solve_positive_cubature: node set and weight disagree");

    BasisEvaluator B(w, n);
    MomentOperator op(S, B);

    CubatureRule rule;
    rule.domain = S.domain;
    rule.d = S.d;
    rule.degree = n;

    if (n == 0) {
        // canonical degree-0 rule: cap-proportional weights
        double total = 0.0;
        std::vector<double> lam(S.size());
        for (std::size_t j = 0; j < S.size(); ++j) {
            lam[j] = cap_measure_formula(w, S.nodes[j], S.eps);
            total += lam[j];
        }
        for (std::size_t j = 0; j < S.size(); ++j) {
            rule.nodes.push_back(S.nodes[j]);
            rule.weights.push_back(lam[j] / total);
            rule.ring_index.push_back(S.ring_index[j]);
        }
        rule.residual = 0.0;
        return rule;
    }

    if (!opts.keep_all_nodes && int(S.size()) <= opts.dense_limit) {
        LhResult lh = lawson_hanson(op, opts);
        if (!lh.converged)
            throw InfeasibleCubature(
                "solve_positive_cubature: moment residual " + std::to_string(lh.residual_inf) +
                    " at degree " + std::to_string(n) + "; shrink eps",
                lh.residual_inf);
        for (std::size_t k = 0; k < lh.support.size(); ++k) {
            if (lh.weights(k) <= 0.0) continue;  // prune
            int j = lh.support[k];
            rule.nodes.push_back(S.nodes[j]);
            rule.weights.push_back(lh.weights(k));
            rule.ring_index.push_back(S.ring_index[j]);
        }
        rule.residual = lh.residual_inf;
        return rule;
    }

    double res = 0.0;
    VectorXd lam = base_correction_solve(op, S, w, opts, &res);
    if (res > 1e-8)
        throw InfeasibleCubature("solve_positive_cubature: moment residual " +
                                     std::to_string(res) + " at degree " + std::to_string(n) +
                                     "; shrink eps",
                                 res);
    for (std::size_t j = 0; j < S.size(); ++j) {
        rule.nodes.push_back(S.nodes[j]);
        rule.weights.push_back(lam(j));
        rule.ring_index.push_back(S.ring_index[j]);
    }
    rule.residual = res;
    return rule;
}

double verify_exactness(const CubatureRule& rule, const WeightSpec& w, int trials,
                        std::uint64_t seed) {
    BasisEvaluator B(w, rule.degree);
    const int M = B.dim();
    // moment vector of the rule
    VectorXd m = VectorXd::Zero(M);
    std::vector<double> vals(M);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        B.values(rule.nodes[j], vals);
        for (int nu = 0; nu < M; ++nu) m(nu) += rule.weights[j] * vals[nu];
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        VectorXd c(M);
        for (int nu = 0; nu < M; ++nu) c(nu) = gauss(rng);
        double node_sum = c.dot(m);
        double integral = c(0);  // orthonormal basis: only the constant survives
        worst = std::max(worst, std::abs(node_sum - integral) / (1.0 + std::abs(integral)));
    }
    return worst;
}

std::pair<double, double> mz_constants(const SeparatedSet& S, int n, const WeightSpec& w, double p,
                                       int trials, std::uint64_t seed) {
    BasisEvaluator B(w, n);
    const int M = B.dim();
    const bool inf_norm = !(p < 1e9);

    // sample points inside each cell: the node plus t- and angle-perturbations
    std::vector<Point> samples;
    std::vector<int> owner;
    for (std::size_t j = 0; j < S.size(); ++j) {
        const Point& z = S.nodes[j];
        double th = std::atan2(z.x[1], z.x[0]);
        double rr = std::hypot(z.x[0], z.x[1]);
        const auto& cir = S.circles[S.circle_of[j]];
        double dth = kPi / cir.count * 0.7;
        double tlo = std::max(0.0, z.t - 0.45 * (S.eps) * std::sqrt(z.t + S.eps * S.eps)),
               thi = std::min(1.0, z.t + 0.45 * (S.eps) * std::sqrt(z.t + S.eps * S.eps));
        auto add = [&](double t, double ang) {
            double scale = z.t > 1e-14 ? t / z.t : 0.0;
            samples.push_back(Point{{rr * scale * std::cos(ang), rr * scale * std::sin(ang), 0.0}, t});
            owner.push_back(int(j));
        };
        add(z.t, th);
        add(tlo, th);
        add(thi, th);
        add(z.t, th - dth);
        add(z.t, th + dth);
    }
    std::vector<std::vector<double>> sample_vals(samples.size());
    std::vector<double> buf(M);
    for (std::size_t s = 0; s < samples.size(); ++s) {
        B.values(samples[s], buf);
        sample_vals[s] = buf;
    }
    std::vector<double> cellw(S.size());
    for (std::size_t j = 0; j < S.size(); ++j)
        cellw[j] = cap_measure_formula(w, S.nodes[j], S.eps);

    // reference nodes for the continuous norm
    auto ref = reference_quadrature(w, 2 * n + 8);
    std::vector<std::vector<double>> ref_vals(ref.nodes.size());
    for (std::size_t k = 0; k < ref.nodes.size(); ++k) {
        B.values(ref.nodes[k], buf);
        ref_vals[k] = buf;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double lower = 0.0, upper = 0.0;
    for (int t = 0; t < trials; ++t) {
        std::vector<double> c(M);
        for (int nu = 0; nu < M; ++nu) c[nu] = gauss(rng);
        auto eval = [&](const std::vector<double>& v) {
            double a = 0.0;
            for (int nu = 0; nu < M; ++nu) a += c[nu] * v[nu];
            return a;
        };
        // cell extrema
        std::vector<double> cmin(S.size(), 1e300), cmax(S.size(), 0.0);
        for (std::size_t s = 0; s < samples.size(); ++s) {
            double v = std::abs(eval(sample_vals[s]));
            cmin[owner[s]] = std::min(cmin[owner[s]], v);
            cmax[owner[s]] = std::max(cmax[owner[s]], v);
        }
        if (inf_norm) {
            double fmax = 0.0;
            for (std::size_t k = 0; k < ref.nodes.size(); ++k)
                fmax = std::max(fmax, std::abs(eval(ref_vals[k])));
            double zmax = 0.0;  // max over node values (sample 0 of each cell)
            for (std::size_t j = 0; j < S.size(); ++j)
                zmax = std::max(zmax, std::abs(eval(sample_vals[5 * j])));
            lower = std::max(lower, fmax / std::max(zmax, 1e-300));
            upper = std::max(upper, zmax / std::max(fmax, 1e-300));
            continue;
        }
        double smin = 0.0, smax = 0.0;
        for (std::size_t j = 0; j < S.size(); ++j) {
            smin += std::pow(cmin[j], p) * cellw[j];
            smax += std::pow(cmax[j], p) * cellw[j];
        }
        double norm_p = 0.0;
        for (std::size_t k = 0; k < ref.nodes.size(); ++k)
            norm_p += ref.weights[k] * std::pow(std::abs(eval(ref_vals[k])), p);
        lower = std::max(lower, norm_p / std::max(smin, 1e-300));
        upper = std::max(upper, smax / std::max(norm_p, 1e-300));
    }
    return {lower, upper};
}

double calibrate_delta(const WeightSpec& w, int n, std::uint64_t seed) {
    double delta = 1.0;
    for (int k = 0; k < 4; ++k) {
        try {
            auto S = build_separated_set(w.domain, w.d, delta / n, seed);
            CubatureOptions opts;
            opts.residual_tol = 1e-9;
            auto rule = solve_positive_cubature(S, n, w, opts);
            if (rule.residual <= 1e-9) return delta;
        } catch (const InfeasibleCubature&) {
        }
        delta *= 0.5;
    }
    return delta;
}

}  // namespace conekit
