#include "conekit/frames.hpp"

#include <cmath>

namespace conekit {

namespace {

constexpr double kPi = 3.14159265358979323846;

SeparatedSet rule_as_node_set(const CubatureRule& rule, double eps) {
    // pruned rules lose the circle grouping; store nodes as singleton circles
    SeparatedSet S;
    S.domain = rule.domain;
    S.d = rule.d;
    S.eps = eps;
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const Point& z = rule.nodes[j];
        SeparatedSet::Circle c;
        c.t = z.t;
        double nx = std::hypot(z.x[0], z.x[1]);
        c.rho = (rule.domain == Domain::Cone && z.t > 1e-14) ? std::min(1.0, nx / z.t) : 1.0;
        c.count = 1;
        c.offset = std::atan2(z.x[1], z.x[0]);
        c.first = int(j);
        c.ring = rule.ring_index.empty() ? 0 : rule.ring_index[j];
        S.circles.push_back(c);
        S.nodes.push_back(z);
        S.ring_index.push_back(c.ring);
        S.circle_of.push_back(int(j));
        S.cell_r_lo.push_back(0.5 * eps);
        S.cell_r_hi.push_back(2.0 * eps);
    }
    return S;
}

}  // namespace

NeedletFrame build_frame(const WeightSpec& w, int J, double delta, FrameNodeSource source,
                         std::uint64_t seed) {
    if (J < 0) throw std::invalid_argument("build_frame: J < 0");
    if (delta <= 0.0 || delta >= 2.0) throw std::invalid_argument("build_frame: delta in (0,2)");
    NeedletFrame frame(w);
    frame.J = J;
    frame.delta = delta;
    frame.cutoff = CutoffSpec{CutoffKind::TypeBFrame, 8};
    frame.source = source;

    for (int j = 0; j <= J; ++j) {
        NeedletFrame::Level lvl;
        lvl.band = j == 0 ? 0 : (1 << (j - 1));
        lvl.rule_degree = std::max(2, 1 << (j + 1));

        if (source == FrameNodeSource::Product) {
            std::vector<double> weights;
            lvl.nodes = product_node_set(w, lvl.rule_degree, &weights);
            lvl.lambda = std::move(weights);
            lvl.rule_residual = 0.0;
        } else {
            double eps = delta / double(1 << j);
            SeparatedSet S = build_separated_set(w.domain, w.d, eps, seed + j);
            CubatureRule rule;
            try {
                rule = solve_positive_cubature(S, lvl.rule_degree, w);
            } catch (const InfeasibleCubature& e) {
                throw InfeasibleCubature("build_frame: level " + std::to_string(j) + ": " +
                                             e.what(),
                                         e.residual);
            }
            lvl.nodes = rule_as_node_set(rule, eps);
            lvl.lambda = rule.weights;
            lvl.rule_residual = rule.residual;
        }
        frame.levels.push_back(std::move(lvl));
    }
    return frame;
}

FrameCoefficients analyze(const NeedletFrame& frame, const SpectralCoeffs& f) {
    FrameCoefficients out;
    out.level.resize(frame.levels.size());
    for (std::size_t j = 0; j < frame.levels.size(); ++j) {
        const auto& lvl = frame.levels[j];
        const int nn = int(lvl.nodes.size());
        out.level[j].assign(nn, 0.0);
        if (lvl.band == 0) {
            // F_0 = 1: <f, psi_{z,0}> = sqrt(lambda_z) proj_0 f
            double c0 = f.c.empty() ? 0.0 : f.c[0];
            for (int z = 0; z < nn; ++z) out.level[j][z] = std::sqrt(lvl.lambda[z]) * c0;
            continue;
        }
        int deg = std::min(f.N, 2 * lvl.band);
        auto B = evaluator_for(frame.weight, deg);
        std::vector<double> rc(B->dim(), 0.0);
        bool any = false;
        for (int nu = 0; nu < B->dim(); ++nu) {
            int k = B->degree_of(nu);
            double a = cutoff_eval(frame.cutoff, double(k) / double(lvl.band));
            if (a != 0.0 && nu < int(f.c.size())) {
                rc[nu] = a * f.c[nu];
                any = any || rc[nu] != 0.0;
            }
        }
        if (!any) continue;
        BatchEvaluator BE(lvl.nodes, *B);
        std::vector<double> vals(nn);
        BE.values(rc, vals);
        for (int z = 0; z < nn; ++z) out.level[j][z] = std::sqrt(lvl.lambda[z]) * vals[z];
    }
    return out;
}

SpectralCoeffs synthesize(const NeedletFrame& frame, const FrameCoefficients& coef) {
    if (coef.level.size() != frame.levels.size())
        throw std::invalid_argument("synthesize: coefficient shape mismatch");
    int N = std::max(2, 1 << frame.J);
    auto Bout = evaluator_for(frame.weight, N);
    SpectralCoeffs out(frame.weight, N);
    out.c.assign(Bout->dim(), 0.0);

    for (std::size_t j = 0; j < frame.levels.size(); ++j) {
        const auto& lvl = frame.levels[j];
        const int nn = int(lvl.nodes.size());
        if (int(coef.level[j].size()) != nn)
            throw std::invalid_argument("synthesize: coefficient shape mismatch at level " +
                                        std::to_string(j));
        std::vector<double> wts(nn);
        for (int z = 0; z < nn; ++z) wts[z] = coef.level[j][z] * std::sqrt(lvl.lambda[z]);
        if (lvl.band == 0) {
            double s = 0.0;
            for (double v : wts) s += v;
            out.c[0] += s;
            continue;
        }
        int deg = std::min(N, 2 * lvl.band);
        auto B = evaluator_for(frame.weight, deg);
        BatchEvaluator BE(lvl.nodes, *B);
        std::vector<double> mom(B->dim());
        BE.moments(wts, mom);
        for (int nu = 0; nu < B->dim(); ++nu) {
            int k = B->degree_of(nu);
            double a = cutoff_eval(frame.cutoff, double(k) / double(lvl.band));
            if (a != 0.0) out.c[nu] += a * mom[nu];
        }
    }
    return out;
}

double parseval_defect(const NeedletFrame& frame, const SpectralCoeffs& f) {
    auto coef = analyze(frame, f);
    double n2 = f.norm2();
    return std::abs(coef.energy() - n2 * n2) / (n2 * n2);
}

double frame_element(const NeedletFrame& frame, int level, int node, const Point& p) {
    const auto& lvl = frame.levels.at(level);
    double sq = std::sqrt(lvl.lambda.at(node));
    if (lvl.band == 0) return sq;
    KernelConfig cfg(frame.weight);
    return sq * localized_kernel(cfg, lvl.band, frame.cutoff, p, lvl.nodes.nodes[node]);
}

std::vector<NeedletDecayRow> needlet_decay_check(const NeedletFrame& frame, double kappa,
                                                 int nprobes, std::uint64_t seed) {
    if (!frame.weight.localizable())
        throw std::invalid_argument("needlet_decay_check: weight is not localizable");
    (void)seed;
    std::vector<NeedletDecayRow> rows;
    for (std::size_t j = 1; j < frame.levels.size(); ++j) {
        const auto& lvl = frame.levels[j];
        double r = 1.0 / double(1 << j);
        NeedletDecayRow row;
        row.level = int(j);
        int stride = std::max<std::size_t>(1, int(lvl.nodes.size()) / std::max(nprobes, 8));
        for (std::size_t z = 0; z < lvl.nodes.size(); z += stride) {
            const Point& zp = lvl.nodes.nodes[z];
            double capz = cap_measure_formula(frame.weight, zp, r);
            // node-relative probes at the element's own scale; the normalized
            // quantity converges per configuration, so per-level suprema are
            // comparable
            std::vector<Point> probes;
            probes.push_back(zp);
            double th = std::atan2(zp.x[1], zp.x[0]);
            double rr = std::hypot(zp.x[0], zp.x[1]);
            for (double mult : {0.5, 1.0, 2.0, 4.0}) {
                if (zp.t < 1e-8 || rr < 1e-12) break;
                double s = std::sin(0.5 * mult * r) / std::sqrt(zp.t);
                if (s >= 1.0) break;
                double step = 4.0 * std::asin(s);
                Point q = zp;
                q.x[0] = rr * std::cos(th + step);
                q.x[1] = rr * std::sin(th + step);
                probes.push_back(q);
            }
            for (const Point& p : probes) {
                double psi = frame_element(frame, int(j), int(z), p);
                double dd = dist(frame.weight.domain, p, zp, frame.weight.d);
                double val = std::abs(psi) * std::sqrt(capz) *
                             std::pow(1.0 + dd / r, kappa);
                row.sup = std::max(row.sup, val);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace conekit
