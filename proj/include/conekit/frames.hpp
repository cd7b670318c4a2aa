// frames.hpp - needlet tight frames: construction, analysis/synthesis,
// Parseval verification and frame-element localization checks.
#pragma once

#include <cstdint>

#include "conekit/approx.hpp"
#include "conekit/cubature.hpp"
#include "conekit/domain.hpp"
#include "conekit/kernels.hpp"

namespace conekit {

// Where the per-level cubature comes from: exact positive product rules
// (fast, any level) or eps-separated sets with solved weights (desk scale).
enum class FrameNodeSource { Product, Separated };

struct NeedletFrame {
    WeightSpec weight;
    int J = 0;
    CutoffSpec cutoff;  // TypeB-frame
    double delta = 1.0;
    FrameNodeSource source = FrameNodeSource::Product;

    struct Level {
        SeparatedSet nodes;
        std::vector<double> lambda;  // positive cubature weights
        int band = 0;                // F_j = L_band, band = 2^{j-1} (0 at level 0)
        int rule_degree = 0;
        double rule_residual = 0.0;
    };
    std::vector<Level> levels;  // 0..J

    NeedletFrame(const WeightSpec& w) : weight(w) {}
    int total_elements() const {
        int n = 0;
        for (const auto& l : levels) n += int(l.nodes.size());
        return n;
    }
};

NeedletFrame build_frame(const WeightSpec& w, int J, double delta,
                         FrameNodeSource source = FrameNodeSource::Product,
                         std::uint64_t seed = 0);

struct FrameCoefficients {
    std::vector<std::vector<double>> level;  // per level, per node
    int count() const {
        int n = 0;
        for (const auto& l : level) n += int(l.size());
        return n;
    }
    double energy() const {
        double s = 0.0;
        for (const auto& l : level)
            for (double v : l) s += v * v;
        return s;
    }
};

// <f, psi_{z,j}> for band-limited f given by coefficients (exact when
// deg f <= 2^J; general f should be projected first).
FrameCoefficients analyze(const NeedletFrame& frame, const SpectralCoeffs& f);

// sum_{z,j} c_{z,j} psi_{z,j} as a polynomial of degree <= 2^J.
SpectralCoeffs synthesize(const NeedletFrame& frame, const FrameCoefficients& coef);

// | sum |<f,psi>|^2 - ||f||^2 | / ||f||^2
double parseval_defect(const NeedletFrame& frame, const SpectralCoeffs& f);

// psi_{z,j}(p) = sqrt(lambda_{z,j}) L_{2^{j-1}}(p, z)
double frame_element(const NeedletFrame& frame, int level, int node, const Point& p);

// sup over sampled elements and probes of
//   |psi_{z,j}(p)| sqrt(cap(z, 2^{-j})) (1 + 2^j d(p,z))^kappa,
// per level; bounded across levels for localizable weights.
struct NeedletDecayRow {
    int level = 0;
    double sup = 0.0;
};
std::vector<NeedletDecayRow> needlet_decay_check(const NeedletFrame& frame, double kappa,
                                                 int nprobes, std::uint64_t seed = 0);

}  // namespace conekit
