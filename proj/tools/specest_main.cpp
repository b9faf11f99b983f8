// specest — population covariance spectrum estimation from sample eigenvalues.
//
// Subcommands:
//   estimate  invert the spectrum of one dataset or eigenvalue list
//   simulate  Monte-Carlo study on a synthetic covariance model
//   mp-law    tabulate the Marchenko-Pastur density
//
// Exit codes: 0 success, 1 usage or I/O failure, 2 computation failure.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "specest/errors.hpp"
#include "specest/estimator.hpp"
#include "specest/io_util.hpp"
#include "specest/linalg.hpp"
#include "specest/simulation.hpp"
#include "specest/transforms.hpp"

namespace fs = std::filesystem;
using namespace specest;

namespace {

struct EstimateArgs {
    std::string eigenvalues_path;
    std::string data_path;
    int n = 0;
    bool center = false;
    std::string grid_mode = "vfirst";
    std::string dict = "points";
    bool moment_constraint = false;
    std::string out_dir = ".";
    std::string dump_grid_path;
};

struct SimulateArgs {
    std::string case_name;
    int p = 100;
    int n = 500;
    int reps = 50;
    std::uint64_t seed = 0;
    double rho = 0.3;
    std::string dict = "points";
    bool moment_constraint = false;
    int threads = 0;
    std::string out_dir = ".";
};

struct MpLawArgs {
    double gamma = 0.5;
    int points = 1000;
    std::string out_path = "mp_law.csv";
};

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    return out;
}

GridConfig make_grid_config(const std::string& mode) {
    GridConfig cfg;
    cfg.mode = mode == "zfirst" ? GridMode::ZFirst : GridMode::VFirst;
    return cfg;
}

DictionarySpec make_dict_spec(const std::string& dict) {
    return dict == "full" ? DictionarySpec::full() : DictionarySpec::points_only();
}

int run_estimate(const EstimateArgs& args) {
    EmpiricalSpectrum spec({1.0}, 1);
    try {
        if (!args.eigenvalues_path.empty()) {
            std::ifstream in(args.eigenvalues_path);
            if (!in) {
                std::cerr << "error: cannot open eigenvalue file: " << args.eigenvalues_path
                          << "\n";
                return 1;
            }
            auto values = read_value_column(in);
            if (values.empty()) {
                std::cerr << "error: no eigenvalues in " << args.eigenvalues_path << "\n";
                return 1;
            }
            if (args.n < 1) {
                std::cerr << "error: --eigenvalues requires --n >= 1\n";
                return 1;
            }
            spec = EmpiricalSpectrum(std::move(values), args.n);
        } else {
            std::ifstream in(args.data_path);
            if (!in) {
                std::cerr << "error: cannot open data file: " << args.data_path << "\n";
                return 1;
            }
            DataMatrix x = read_data_csv(in);
            if (x.rows < 2) {
                std::cerr << "error: n must be at least 2 (got " << x.rows
                          << " data rows)\n";
                return 1;
            }
            spec = scm_eigenvalues(x, args.center);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        GridConfig grid = make_grid_config(args.grid_mode);
        DictionarySpec dict = make_dict_spec(args.dict);
        EstimateResult result = estimate(spec, grid, dict, args.moment_constraint);

        fs::path dir(args.out_dir);
        fs::create_directories(dir);

        {
            auto out = open_output(dir / "estimate.json");
            out << estimate_result_to_json(result).dump(2) << "\n";
        }
        {
            auto out = open_output(dir / "lambda_hat.csv");
            out << "lambda_hat\n";
            for (double l : population_eigenvalues(result.distribution, spec.p()))
                out << fmt_double(l) << "\n";
        }
        {
            auto out = open_output(dir / "cdf.csv");
            auto grid_pts = default_cdf_grid(result.distribution);
            write_cdf_csv(out, result.distribution, grid_pts);
        }
        if (!args.dump_grid_path.empty()) {
            auto pairs = build_grid(spec.scaled(1.0 / spec.largest()), grid);
            auto out = open_output(args.dump_grid_path);
            write_grid_csv(out, pairs);
        }

        std::cout << "objective=" << fmt_double(result.objective) << "\n";
        for (const auto& w : result.diagnostics.warnings)
            std::cout << "warning: " << w.message() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_simulate(const SimulateArgs& args) {
    CovarianceModel model;
    try {
        if (args.case_name == "identity")
            model = CovarianceModel::identity(args.p);
        else if (args.case_name == "two-point")
            model = CovarianceModel::two_point(args.p);
        else if (args.case_name == "toeplitz")
            model = CovarianceModel::toeplitz(args.p, args.rho);
        else {
            std::cerr << "error: unknown case '" << args.case_name << "'\n";
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        EstimatorConfig config;
        config.dict = make_dict_spec(args.dict);
        config.moment_constraint = args.moment_constraint;
        McReport report =
            monte_carlo(model, args.n, args.reps, args.seed, config, args.threads);

        fs::path dir(args.out_dir);
        fs::create_directories(dir);
        {
            auto out = open_output(dir / "report.csv");
            write_report_csv(out, report);
        }
        {
            auto out = open_output(dir / "summary.json");
            out << summary_to_json(report).dump(2) << "\n";
        }
        {
            auto out = open_output(dir / "ratios.csv");
            write_ratio_csv(out, report);
        }
        if (report.overlay) {
            auto out = open_output(dir / "cdf_overlay.csv");
            write_cdf_overlay_csv(out, report);
        }

        std::cout << "ok_fraction=" << fmt_double(report.summary.ok_fraction)
                  << " median_levy_est=" << fmt_double(report.summary.median_levy_est)
                  << " median_levy_raw=" << fmt_double(report.summary.median_levy_raw)
                  << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

int run_mp_law(const MpLawArgs& args) {
    if (!(args.gamma > 0.0 && args.gamma <= 1.0)) {
        std::cerr << "error: --gamma must lie in (0,1]\n";
        return 1;
    }
    if (args.points < 2) {
        std::cerr << "error: --points must be >= 2\n";
        return 1;
    }
    try {
        auto [a, b] = mp_support(args.gamma);
        auto out = open_output(args.out_path);
        out << "x,density\n";
        // Edge-clustered grid (quartic sine spacing): resolves the
        // inverse-square-root edge at gamma = 1, where the density blows up
        // at a = 0, while keeping b as the exact last point. The left edge
        // itself is excluded (density 0 or undefined there).
        const int n_pts = args.points;
        for (int i = 1; i <= n_pts; ++i) {
            double s = std::sin(0.5 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n_pts));
            double x = (i == n_pts) ? b : a + (b - a) * s * s * s * s;
            out << fmt_double(x) << "," << fmt_double(mp_law_density(args.gamma, x)) << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Population covariance spectrum estimation via Marchenko-Pastur inversion"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* cmd_est = app.add_subcommand("estimate", "Estimate a population spectral distribution");
    auto* opt_eigs = cmd_est->add_option("--eigenvalues", est.eigenvalues_path,
                                         "CSV of sample eigenvalues, one per line");
    auto* opt_data =
        cmd_est->add_option("--data", est.data_path, "CSV data matrix, one observation per row");
    cmd_est->add_option("--n", est.n, "Sample size (required with --eigenvalues)");
    cmd_est->add_flag("--center", est.center, "Center columns and divide by n-1");
    cmd_est->add_option("--grid-mode", est.grid_mode, "vfirst|zfirst")
        ->check(CLI::IsMember({"vfirst", "zfirst"}));
    cmd_est->add_option("--dict", est.dict, "points|full")
        ->check(CLI::IsMember({"points", "full"}));
    cmd_est->add_flag("--moment-constraint", est.moment_constraint,
                      "Match the first moment to tr(S)/p");
    cmd_est->add_option("--out", est.out_dir, "Output directory");
    cmd_est->add_option("--dump-grid", est.dump_grid_path, "Write the (z,v) grid CSV here");
    opt_eigs->excludes(opt_data);

    SimulateArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte-Carlo study on a synthetic model");
    cmd_sim->add_option("--case", sim.case_name, "identity|two-point|toeplitz")
        ->required()
        ->check(CLI::IsMember({"identity", "two-point", "toeplitz"}));
    cmd_sim->add_option("--p", sim.p, "Dimension")->required();
    cmd_sim->add_option("--n", sim.n, "Sample size")->required();
    cmd_sim->add_option("--reps", sim.reps, "Repetitions")->required();
    cmd_sim->add_option("--seed", sim.seed, "Master seed")->required();
    cmd_sim->add_option("--rho", sim.rho, "Toeplitz decay (default 0.3)");
    cmd_sim->add_option("--dict", sim.dict, "points|full")
        ->check(CLI::IsMember({"points", "full"}));
    cmd_sim->add_flag("--moment-constraint", sim.moment_constraint,
                      "Match the first moment to tr(S)/p");
    cmd_sim->add_option("--threads", sim.threads, "Worker cap (0 = hardware)");
    cmd_sim->add_option("--out", sim.out_dir, "Output directory");

    MpLawArgs mp;
    auto* cmd_mp = app.add_subcommand("mp-law", "Tabulate the Marchenko-Pastur density");
    cmd_mp->add_option("--gamma", mp.gamma, "Aspect ratio in (0,1]")->required();
    cmd_mp->add_option("--points", mp.points, "Grid size (default 1000)");
    cmd_mp->add_option("--out", mp.out_path, "Output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (cmd_est->parsed()) {
        if (est.eigenvalues_path.empty() == est.data_path.empty()) {
            std::cerr << "error: provide exactly one of --eigenvalues or --data\n";
            return 1;
        }
        return run_estimate(est);
    }
    if (cmd_sim->parsed()) return run_simulate(sim);
    if (cmd_mp->parsed()) return run_mp_law(mp);
    return 1;
}
