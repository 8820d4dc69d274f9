// Command-line front door: ingest a discrete distribution from CSV, evaluate
// the level-alpha risk measures and curves, and emit machine-readable reports.
// All mathematics lives in the library; this file is argument plumbing and
// formatting.

#include "evar/distortion.hpp"
#include "evar/io.hpp"
#include "evar/kusuoka.hpp"
#include "evar/lambda_curve.hpp"
#include "evar/primal.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInconsistent = 2;

constexpr double kPrimalDualTol = 1e-6;
constexpr double kMixtureTol = 1e-5;

struct CommonOptions {
    double alpha = 0.5;
    std::string input;
    bool weighted = false;
    double tol_entropy = 1e-12;
    double tol_root = 1e-12;
};

struct EvalReport {
    evar::DiscreteDistribution dist;
    evar::DualSolution dual;
    evar::PrimalSolution primal;
    double cvar_value;
    double ulambda_value;
};

EvalReport evaluate(const CommonOptions& opt) {
    evar::RiskLevel level(opt.alpha);
    auto dist = evar::read_distribution_file(
        opt.input, opt.weighted ? evar::InputFormat::weighted : evar::InputFormat::samples);
    evar::LambdaCurve curve(level, opt.tol_root);
    return EvalReport{
        dist,
        evar::evar_dual(dist, level, evar::DualOptions{opt.tol_entropy, 200}),
        evar::evar_primal(dist, level),
        evar::cvar(dist, opt.alpha),
        evar::lambda_utility(dist, curve),
    };
}

bool use_color() { return isatty(STDOUT_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr; }

std::string verdict(bool pass) {
    if (!use_color()) return pass ? "PASS" : "FAIL";
    return pass ? "\x1b[32mPASS\x1b[0m" : "\x1b[31mFAIL\x1b[0m";
}

int run_eval(const CommonOptions& opt, bool as_json, bool as_csv) {
    const EvalReport r = evaluate(opt);
    const double pd_gap = r.primal.value - r.dual.value;

    std::vector<std::pair<std::string, std::string>> rows = {
        {"alpha", evar::format_double(opt.alpha)},
        {"n_atoms", std::to_string(r.dist.size())},
        {"mean", evar::format_double(r.dist.mean())},
        {"ess_inf", evar::format_double(r.dist.ess_inf())},
        {"evar_primal", evar::format_double(r.primal.value)},
        {"evar_dual", evar::format_double(r.dual.value)},
        {"primal_dual_gap", evar::format_double(pd_gap)},
        {"cvar", evar::format_double(r.cvar_value)},
        {"u_lambda", evar::format_double(r.ulambda_value)},
        {"gap_cvar_evar", evar::format_double(r.cvar_value - r.dual.value)},
        {"gap_evar_ulambda", evar::format_double(r.dual.value - r.ulambda_value)},
        {"degenerate", r.dual.degenerate ? "true" : "false"},
        {"z_star", evar::format_double(r.dual.z_star)},
        {"entropy", evar::format_double(r.dual.entropy)},
        {"iterations", std::to_string(r.dual.iterations)},
    };

    if (as_json) {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "eval";
        j["alpha"] = opt.alpha;
        j["n_atoms"] = r.dist.size();
        j["mean"] = r.dist.mean();
        j["ess_inf"] = r.dist.ess_inf();
        j["evar_primal"] = r.primal.value;
        j["evar_dual"] = r.dual.value;
        j["primal_dual_gap"] = pd_gap;
        j["cvar"] = r.cvar_value;
        j["u_lambda"] = r.ulambda_value;
        j["gap_cvar_evar"] = r.cvar_value - r.dual.value;
        j["gap_evar_ulambda"] = r.dual.value - r.ulambda_value;
        j["degenerate"] = r.dual.degenerate;
        j["z_star"] = r.dual.z_star;
        j["entropy"] = r.dual.entropy;
        j["iterations"] = r.dual.iterations;
        std::cout << j.dump(2) << "\n";
    } else if (as_csv) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << rows[i].first << (i + 1 < rows.size() ? "," : "\n");
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::cout << rows[i].second << (i + 1 < rows.size() ? "," : "\n");
        }
    } else {
        for (const auto& [key, val] : rows) {
            std::cout << key;
            for (std::size_t pad = key.size(); pad < 18; ++pad) std::cout << ' ';
            std::cout << val << "\n";
        }
    }

    if (std::abs(pd_gap) > kPrimalDualTol) {
        std::cerr << "internal inconsistency: primal and dual solvers disagree by "
                  << evar::format_double(pd_gap) << "\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

int run_lambda_curve(double alpha, std::size_t points, double tol_root) {
    evar::RiskLevel level(alpha);
    evar::LambdaCurve curve(level, tol_root);
    std::cout << "a,lambda,dlambda_da\n";
    for (std::size_t i = 0; i < points; ++i) {
        const double a = i + 1 == points
                             ? 1.0
                             : static_cast<double>(i) / static_cast<double>(points - 1);
        std::cout << evar::format_double(a) << "," << evar::format_double(curve.value(a)) << ",";
        if (a > 1.0 - alpha && a < 1.0) {
            std::cout << evar::format_double(curve.derivative(a));
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int run_kusuoka(const CommonOptions& opt) {
    evar::RiskLevel level(opt.alpha);
    auto dist = evar::read_distribution_file(
        opt.input, opt.weighted ? evar::InputFormat::weighted : evar::InputFormat::samples);
    auto dual = evar::evar_dual(dist, level, evar::DualOptions{opt.tol_entropy, 200});

    auto eta = evar::decreasing_rearrangement(dual.scenario, dist);
    auto nu = evar::density_to_measure(eta);
    const double mixture = evar::cvar_mixture(dist, nu);
    const double residual = std::abs(mixture - dual.value);

    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "kusuoka";
    j["alpha"] = opt.alpha;
    j["degenerate"] = dual.degenerate;
    j["evar"] = dual.value;
    j["mixture"] = mixture;
    j["residual"] = residual;
    j["n_nu_atoms"] = nu.atoms().size();
    auto xs = nlohmann::ordered_json::array();
    auto masses = nlohmann::ordered_json::array();
    for (const auto& a : nu.atoms()) {
        xs.push_back(a.x);
        masses.push_back(a.mass);
    }
    j["nu_x"] = xs;
    j["nu_mass"] = masses;
    std::cout << j.dump(2) << "\n";

    if (residual > kMixtureTol) {
        std::cerr << "internal inconsistency: mixture residual "
                  << evar::format_double(residual) << "\n";
        return kExitInconsistent;
    }
    return kExitOk;
}

struct CheckLine {
    std::string name;
    bool pass;
    std::string detail;
};

int run_verify(const CommonOptions& opt, const std::optional<std::pair<double, double>>& witness) {
    evar::RiskLevel level(opt.alpha);
    auto dist = evar::read_distribution_file(
        opt.input, opt.weighted ? evar::InputFormat::weighted : evar::InputFormat::samples);
    std::vector<CheckLine> checks;

    // ordering of the comonotone envelope
    try {
        auto s = evar::sandwich(dist, level);
        const double margin = std::min(s.gap_cvar_evar, s.gap_evar_ulambda);
        checks.push_back({"sandwich_order", margin >= -1e-9,
                          "min_gap=" + evar::format_double(margin)});
    } catch (const std::logic_error& e) {
        checks.push_back({"sandwich_order", false, e.what()});
    }

    // supremum and entropy-ball routes must meet
    const double dual = evar::evar_dual(dist, level, evar::DualOptions{opt.tol_entropy, 200}).value;
    const double primal = evar::evar_primal(dist, level).value;
    checks.push_back({"primal_dual_agreement", std::abs(primal - dual) <= kPrimalDualTol,
                      "|gap|=" + evar::format_double(std::abs(primal - dual))});

    // mixture representation built from the dual optimizer
    {
        auto sol = evar::evar_dual(dist, level, evar::DualOptions{opt.tol_entropy, 200});
        auto nu = evar::density_to_measure(evar::decreasing_rearrangement(sol.scenario, dist));
        const double residual = std::abs(evar::cvar_mixture(dist, nu) - sol.value);
        checks.push_back({"mixture_identity", residual <= kMixtureTol,
                          "residual=" + evar::format_double(residual)});
    }

    // coherence spot checks on deterministic transforms of the input
    {
        const double c = 1.25;
        std::vector<std::pair<double, double>> shifted, scaled, raised;
        for (const auto& a : dist.atoms()) {
            shifted.emplace_back(a.value + c, a.prob);
            scaled.emplace_back(2.5 * a.value, a.prob);
            raised.emplace_back(a.value, a.prob);
        }
        raised.back().first += 1.0;

        const double translated =
            evar::evar_primal(evar::DiscreteDistribution::from_weighted(shifted), level).value;
        checks.push_back({"translation_equivariance", std::abs(translated - (primal + c)) <= 1e-9,
                          "|gap|=" + evar::format_double(std::abs(translated - (primal + c)))});

        const double homogeneous =
            evar::evar_primal(evar::DiscreteDistribution::from_weighted(scaled), level).value;
        checks.push_back({"positive_homogeneity",
                          std::abs(homogeneous - 2.5 * primal) <= 1e-9,
                          "|gap|=" + evar::format_double(std::abs(homogeneous - 2.5 * primal))});

        const double dominated =
            evar::evar_primal(evar::DiscreteDistribution::from_weighted(raised), level).value;
        checks.push_back({"monotonicity", dominated >= primal - 1e-9,
                          "lift=" + evar::format_double(dominated - primal)});

        std::vector<std::pair<double, double>> product;
        for (const auto& a : dist.atoms()) {
            for (const auto& b : dist.atoms()) {
                product.emplace_back(a.value + b.value, a.prob * b.prob);
            }
        }
        const double joint =
            evar::evar_primal(evar::DiscreteDistribution::from_weighted(product), level).value;
        checks.push_back({"superadditivity", joint >= 2.0 * primal - 1e-9,
                          "surplus=" + evar::format_double(joint - 2.0 * primal)});
    }

    // strict failure of comonotone additivity on the nested indicator pair
    std::optional<std::pair<double, double>> pair = witness;
    if (!pair && 1.0 - opt.alpha < 0.6) pair = std::make_pair(0.6, 0.8);
    if (pair) {
        auto w = evar::noncomonotone_witness(level, pair->first, pair->second);
        const bool ok = w.gap > 1e-9 && w.ratio_split > 1e-9 && w.complement_split > 1e-9 &&
                        w.dominance_margin > 1e-9;
        checks.push_back({"witness_gap", ok, "gap=" + evar::format_double(w.gap)});
    }

    bool all = true;
    for (const auto& c : checks) {
        std::cout << c.name;
        for (std::size_t pad = c.name.size(); pad < 26; ++pad) std::cout << ' ';
        std::cout << verdict(c.pass) << "  " << c.detail << "\n";
        all = all && c.pass;
    }
    std::cout << "overall: " << verdict(all) << "\n";
    return all ? kExitOk : kExitInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropic value-at-risk of discrete distributions"};
    app.require_subcommand(1);

    CommonOptions opt;
    bool as_json = false;
    bool as_csv = false;
    std::size_t points = 129;
    std::vector<double> witness_ab;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        cmd->add_option("--alpha", opt.alpha, "confidence level in (0,1)")->required();
        if (needs_input) {
            cmd->add_option("--input", opt.input, "CSV input path")->required();
            cmd->add_flag("--weighted", opt.weighted, "rows are value,weight instead of samples");
        }
        cmd->add_option("--tol-entropy", opt.tol_entropy, "entropy matching tolerance");
        cmd->add_option("--tol-root", opt.tol_root, "curve root tolerance");
    };

    auto* eval_cmd = app.add_subcommand("eval", "evaluate all measures at one level");
    add_common(eval_cmd, true);
    eval_cmd->add_flag("--json", as_json, "emit a JSON report");
    eval_cmd->add_flag("--csv", as_csv, "emit a one-row CSV report");

    auto* curve_cmd = app.add_subcommand("lambda-curve", "export the distortion curve as CSV");
    add_common(curve_cmd, false);
    curve_cmd->add_option("--points", points, "grid size over [0,1]")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));

    auto* kusuoka_cmd =
        app.add_subcommand("kusuoka", "mixture representation built from the dual optimizer");
    add_common(kusuoka_cmd, true);

    auto* verify_cmd = app.add_subcommand("verify", "run the consistency checks on an input");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--witness", witness_ab, "event masses a,b for the witness law")
        ->delimiter(',')
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(opt, as_json, as_csv);
        if (curve_cmd->parsed()) return run_lambda_curve(opt.alpha, points, opt.tol_root);
        if (kusuoka_cmd->parsed()) return run_kusuoka(opt);
        if (verify_cmd->parsed()) {
            std::optional<std::pair<double, double>> w;
            if (!witness_ab.empty()) w = std::make_pair(witness_ab[0], witness_ab[1]);
            return run_verify(opt, w);
        }
    } catch (const std::logic_error& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return kExitInconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
