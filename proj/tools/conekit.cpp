// conekit - command line driver for point generation, cubature solving,
// kernel decay studies, frame building, approximation experiments and the
// invariant check suites.
#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>

#include "conekit/approx.hpp"
#include "conekit/checks.hpp"
#include "conekit/cubature.hpp"
#include "conekit/frames.hpp"
#include "conekit/geometry.hpp"
#include "conekit/kernels.hpp"

using json = nlohmann::json;
using namespace conekit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInvariant = 4;

// shortest round-trip decimal
std::string fmt(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Config {
    std::string domain = "surface";
    int d = 2;
    double beta = -1.0;
    double gamma = 0.0;
    double mu = 0.0;
    std::uint64_t seed = 1;
    std::string out = "conekit_out";

    Domain dom() const { return domain == "cone" ? Domain::Cone : Domain::Surface; }
    WeightSpec weight() const {
        return dom() == Domain::Surface ? WeightSpec::surface(d, beta, gamma)
                                        : WeightSpec::cone(d, gamma, mu);
    }
    json meta() const {
        json j;
        j["domain"] = domain;
        j["d"] = d;
        j["beta"] = beta;
        j["gamma"] = gamma;
        j["mu"] = mu;
        j["seed"] = seed;
        return j;
    }
};

void add_common(CLI::App* app, Config& cfg) {
    app->add_option("--domain", cfg.domain, "surface|cone")
        ->check(CLI::IsMember({"surface", "cone"}));
    app->add_option("--d", cfg.d, "ambient sphere/ball dimension (2 or 3)");
    app->add_option("--beta", cfg.beta, "surface Jacobi exponent beta");
    app->add_option("--gamma", cfg.gamma, "Jacobi exponent gamma");
    app->add_option("--mu", cfg.mu, "cone Jacobi exponent mu");
    app->add_option("--seed", cfg.seed, "seed for any randomized corpus");
    app->add_option("--out", cfg.out, "output path prefix");
}

void write_points_csv(const std::string& path, const SeparatedSet& S) {
    std::ofstream f(path);
    f << "j,t";
    for (int i = 1; i <= S.d; ++i) f << ",x" << i;
    f << ",cell_r_lo,cell_r_hi\n";
    for (std::size_t i = 0; i < S.size(); ++i) {
        f << S.ring_index[i] << "," << fmt(S.nodes[i].t);
        for (int k = 0; k < S.d; ++k) f << "," << fmt(S.nodes[i].x[k]);
        f << "," << fmt(S.cell_r_lo[i]) << "," << fmt(S.cell_r_hi[i]) << "\n";
    }
}

void write_rule_csv(const std::string& path, const CubatureRule& rule) {
    std::ofstream f(path);
    f << "j,t";
    for (int i = 1; i <= rule.d; ++i) f << ",x" << i;
    f << ",weight\n";
    for (std::size_t i = 0; i < rule.size(); ++i) {
        f << rule.ring_index[i] << "," << fmt(rule.nodes[i].t);
        for (int k = 0; k < rule.d; ++k) f << "," << fmt(rule.nodes[i].x[k]);
        f << "," << fmt(rule.weights[i]) << "\n";
    }
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(std::stoi(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conekit: orthogonal-polynomial analysis on conic domains"};
    app.require_subcommand(1);
    Config cfg;

    // points
    double eps = 0.1;
    auto* points = app.add_subcommand("points", "build a maximal eps-separated set");
    add_common(points, cfg);
    points->add_option("--eps", eps, "separation");

    // cubature
    int cub_n = 8;
    double cub_delta = 0.8;
    auto* cub = app.add_subcommand("cubature", "solve a positive cubature rule");
    add_common(cub, cfg);
    cub->add_option("--n", cub_n, "exactness degree");
    cub->add_option("--delta", cub_delta, "mesh ratio: eps = delta/n");

    // kernel
    std::string kernel_op = "decay";
    std::string kernel_ns = "16,32";
    double kappa = 8.0;
    int kernel_pairs = 60;
    std::string kernel_cutoff = "a";
    auto* ker = app.add_subcommand("kernel", "kernel and decay studies");
    add_common(ker, cfg);
    ker->add_option("--op", kernel_op, "decay|christoffel");
    ker->add_option("--n", kernel_ns, "comma-separated degrees");
    ker->add_option("--kappa", kappa, "decay exponent");
    ker->add_option("--pairs", kernel_pairs, "sample pairs");
    ker->add_option("--cutoff", kernel_cutoff, "a|b|indicator");

    // frame
    int frame_J = 4;
    double frame_delta = 1.0;
    std::string frame_nodes = "product";
    auto* fr = app.add_subcommand("frame", "build a needlet frame and report");
    add_common(fr, cfg);
    fr->add_option("--J", frame_J, "max level");
    fr->add_option("--delta", frame_delta, "level-0 mesh");
    fr->add_option("--nodes", frame_nodes, "product|separated");

    // approx
    std::string approx_op = "parseval";
    int approx_n = 8;
    auto* ap = app.add_subcommand("approx", "approximation experiments");
    add_common(ap, cfg);
    ap->add_option("--op", approx_op, "parseval|sandwich");
    ap->add_option("--n", approx_n, "degree / band");

    // check
    std::string suite = "all";
    auto* ck = app.add_subcommand("check", "run module invariant suites");
    add_common(ck, cfg);
    ck->add_option("--suite", suite, "specfun|geometry|kernels|cubature|frames|approx|all");

    CLI11_PARSE(app, argc, argv);

    try {
        if (points->parsed()) {
            SeparatedSet S;
            try {
                S = build_separated_set(cfg.dom(), cfg.d, eps, cfg.seed);
            } catch (const std::invalid_argument& e) {
                std::cerr << "error: no rings (" << e.what() << ")\n";
                return kExitConfig;
            }
            write_points_csv(cfg.out + ".csv", S);
            int rings = 0;
            for (int r : S.ring_index) rings = std::max(rings, r + 1);
            double minsep = 1e300;
            for (std::size_t i = 0; i < std::min<std::size_t>(S.size(), 500); ++i)
                for (std::size_t j = i + 1; j < std::min(S.size(), i + 200); ++j)
                    minsep = std::min(minsep, dist(cfg.dom(), S.nodes[i], S.nodes[j], cfg.d));
            json j = cfg.meta();
            j["eps"] = eps;
            j["rings"] = rings;
            j["count"] = S.size();
            j["min_separation_sampled"] = minsep;
            std::ofstream(cfg.out + ".json") << j.dump(2) << "\n";
            std::cout << "points: " << S.size() << " nodes in " << rings << " rings -> "
                      << cfg.out << ".csv\n";
            return kExitOk;
        }

        if (cub->parsed()) {
            auto w = cfg.weight();
            auto S = build_separated_set(cfg.dom(), cfg.d, cub_delta / cub_n, cfg.seed);
            CubatureRule rule;
            try {
                rule = solve_positive_cubature(S, cub_n, w);
            } catch (const InfeasibleCubature& e) {
                std::cerr << "error: " << e.what() << " (try --delta " << 0.5 * cub_delta
                          << ")\n";
                return kExitInfeasible;
            }
            write_rule_csv(cfg.out + ".csv", rule);
            json j = cfg.meta();
            j["degree"] = rule.degree;
            j["residual"] = rule.residual;
            j["delta"] = cub_delta;
            j["nodes"] = rule.size();
            j["exactness_check"] = verify_exactness(rule, w, 50, cfg.seed);
            std::ofstream(cfg.out + ".json") << j.dump(2) << "\n";
            std::cout << "cubature: degree " << rule.degree << ", " << rule.size()
                      << " nodes, residual " << fmt(rule.residual) << "\n";
            return kExitOk;
        }

        if (ker->parsed()) {
            auto w = cfg.weight();
            KernelConfig kc(w);
            if (kernel_op == "decay") {
                CutoffSpec cut;
                cut.kind = kernel_cutoff == "b"           ? CutoffKind::TypeBFrame
                           : kernel_cutoff == "indicator" ? CutoffKind::Indicator
                                                          : CutoffKind::TypeA;
                auto ns = parse_int_list(kernel_ns);
                auto rows = decay_report(kc, cut, ns, kappa, kernel_pairs, cfg.seed);
                std::ofstream f(cfg.out + ".csv");
                f << "n,kappa,sup_N1,sup_N2,sup_N3,pairs\n";
                for (const auto& r : rows)
                    f << r.n << "," << fmt(r.kappa) << "," << fmt(r.sup_n1) << ","
                      << fmt(r.sup_n2) << "," << fmt(r.sup_n3) << "," << r.pairs << "\n";
                json j = cfg.meta();
                j["ns"] = ns;
                j["kappa"] = kappa;
                std::ofstream(cfg.out + ".json") << j.dump(2) << "\n";
                for (const auto& r : rows)
                    std::cout << "n=" << r.n << " sup_N1=" << fmt(r.sup_n1)
                              << " sup_N2=" << fmt(r.sup_n2) << " sup_N3=" << fmt(r.sup_n3)
                              << "\n";
                return kExitOk;
            }
            if (kernel_op == "christoffel") {
                auto ns = parse_int_list(kernel_ns);
                auto pts = sample_points(cfg.dom(), cfg.d, 20, cfg.seed);
                std::ofstream f(cfg.out + ".csv");
                f << "n,t,lambda_n,cap,ratio\n";
                for (int n : ns)
                    for (const Point& p : pts) {
                        double lam = christoffel(kc, n, p);
                        double cap = cap_measure_formula(w, p, 1.0 / n);
                        f << n << "," << fmt(p.t) << "," << fmt(lam) << "," << fmt(cap) << ","
                          << fmt(lam / cap) << "\n";
                    }
                std::cout << "christoffel report -> " << cfg.out << ".csv\n";
                return kExitOk;
            }
            std::cerr << "error: unknown kernel op " << kernel_op << "\n";
            return kExitConfig;
        }

        if (fr->parsed()) {
            auto w = cfg.weight();
            FrameNodeSource src = frame_nodes == "separated" ? FrameNodeSource::Separated
                                                             : FrameNodeSource::Product;
            NeedletFrame frame = build_frame(w, frame_J, frame_delta, src, cfg.seed);
            json j = cfg.meta();
            j["J"] = frame_J;
            j["delta"] = frame_delta;
            j["nodes"] = frame_nodes;
            json lv = json::array();
            for (std::size_t l = 0; l < frame.levels.size(); ++l) {
                json e;
                e["level"] = l;
                e["band"] = frame.levels[l].band;
                e["rule_degree"] = frame.levels[l].rule_degree;
                e["count"] = frame.levels[l].nodes.size();
                e["residual"] = frame.levels[l].rule_residual;
                lv.push_back(e);
            }
            j["levels"] = lv;
            j["total_elements"] = frame.total_elements();
            std::ofstream(cfg.out + ".json") << j.dump(2) << "\n";
            std::cout << "frame: J=" << frame_J << ", " << frame.total_elements()
                      << " elements -> " << cfg.out << ".json\n";
            return kExitOk;
        }

        if (ap->parsed()) {
            auto w = cfg.weight();
            if (approx_op == "parseval") {
                NeedletFrame frame = build_frame(w, 5, 1.0);
                std::mt19937_64 rng(cfg.seed);
                std::normal_distribution<double> gauss(0.0, 1.0);
                auto B = evaluator_for(w, approx_n);
                double worst = 0.0;
                std::ofstream f(cfg.out + ".csv");
                f << "trial,defect\n";
                for (int trial = 0; trial < 20; ++trial) {
                    SpectralCoeffs fc(w, approx_n);
                    fc.c.resize(B->dim());
                    for (auto& c : fc.c) c = gauss(rng);
                    double defect = parseval_defect(frame, fc);
                    worst = std::max(worst, defect);
                    f << trial << "," << fmt(defect) << "\n";
                }
                std::cout << "parseval: max defect " << fmt(worst) << "\n";
                return worst <= 1e-6 ? kExitOk : kExitInvariant;
            }
            std::cerr << "error: unknown approx op " << approx_op << "\n";
            return kExitConfig;
        }

        if (ck->parsed()) {
            auto results = run_checks(suite, cfg.d, cfg.gamma, cfg.mu, cfg.seed);
            std::ofstream f(cfg.out + ".csv");
            f << "id,passed,measured,bound\n";
            bool all = true;
            for (const auto& r : results) {
                f << r.id << "," << (r.passed ? 1 : 0) << "," << fmt(r.measured) << ","
                  << fmt(r.bound) << "\n";
                std::cout << (r.passed ? "pass  " : "FAIL  ") << r.id
                          << "  measured=" << fmt(r.measured) << " bound=" << fmt(r.bound)
                          << "\n";
                if (!r.passed) all = false;
            }
            if (!all) {
                std::cerr << "check: failures listed above\n";
                return kExitInvariant;
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleCubature& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitOk;
}
