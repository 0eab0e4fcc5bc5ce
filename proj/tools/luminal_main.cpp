#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "luminal/clock.hpp"
#include "luminal/errors.hpp"
#include "luminal/flux.hpp"
#include "luminal/format.hpp"
#include "luminal/io.hpp"
#include "luminal/kinematics.hpp"
#include "luminal/mbr.hpp"
#include "luminal/random.hpp"
#include "luminal/selfcheck.hpp"
#include "luminal/superposition.hpp"
#include "luminal/version.hpp"

namespace {

using namespace luminal;

constexpr double kPi = std::numbers::pi;

Vec3 to_vec3(const std::vector<double>& v, const char* flag) {
    if (v.size() != 3) {
        throw std::invalid_argument(std::string(flag) + " needs exactly 3 values");
    }
    return Vec3{v[0], v[1], v[2]};
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open for writing: " + path);
    }
    return out;
}

std::vector<std::string> provenance(const std::string& command_line) {
    return {"command: " + command_line, "version: " + std::string(kVersion)};
}

std::vector<std::string> provenance(const std::string& command_line,
                                    std::uint64_t seed) {
    auto lines = provenance(command_line);
    lines.push_back("seed: " + std::to_string(seed));
    return lines;
}

struct BoostArgs {
    std::string input;
    double v = 0.0;
    std::vector<double> dir{1.0, 0.0, 0.0};
    double tol = 1e-9;
    std::string output = "boosted.txt";
};

int run_boost(const BoostArgs& args, const std::string& command_line) {
    const Superposition s = read_superposition_file(args.input);
    const Vec3 direction = to_vec3(args.dir, "--dir");
    if (!(direction.norm() > 0.0)) {
        throw std::invalid_argument("--dir must be a nonzero vector");
    }
    const Vec3 target = direction.normalized() * args.v;
    const BoostResult result = boost(s, target, args.tol);

    auto comments = provenance(command_line);
    comments.push_back("steps: " + std::to_string(result.steps_taken));
    comments.push_back("rest_mass_initial: " + format_double(result.rest_mass_initial));
    comments.push_back("rest_mass_final: " + format_double(result.rest_mass_final));
    comments.push_back("max_momentum_residual: " +
                       format_double(result.max_momentum_residual));
    std::ofstream out = open_output(args.output);
    write_superposition(out, result.final, comments);

    const double drift =
        std::abs(result.rest_mass_final - result.rest_mass_initial) /
        result.rest_mass_initial;
    std::cout << "boost: " << s.size() << " components to speed "
              << format_double(target.norm()) << " in " << result.steps_taken
              << " steps, rest mass drift " << format_double(drift) << ", wrote "
              << args.output << "\n";
    return 0;
}

struct EllipsoidArgs {
    std::vector<double> v{0.0, 0.3, 0.6, 0.9};
    std::int64_t pairs = 10'000;
    int bins = 32;
    double magnitude = 1.0;
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::string output = "ellipsoid.csv";
};

int run_ellipsoid(const EllipsoidArgs& args, const std::string& command_line) {
    const Superposition rest = make_isotropic_rest(args.pairs, args.magnitude, args.seed);
    std::vector<FluxProfile> profiles;
    profiles.reserve(args.v.size());
    double worst = 0.0;
    for (double v : args.v) {
        profiles.push_back(ellipsoid_profile(rest, v, args.bins, args.tol));
        worst = std::max(worst, profiles.back().max_relative_error);
    }
    std::ofstream out = open_output(args.output);
    write_ellipsoid_csv(out, profiles, provenance(command_line, args.seed));
    std::cout << "ellipsoid: " << args.pairs << " pairs over " << args.v.size()
              << " speeds, max bin error vs closed form " << format_double(worst)
              << ", wrote " << args.output << "\n";
    return 0;
}

struct ClockArgs {
    std::vector<double> speeds;
    std::string input;
    double tol = 1e-9;
    std::string output = "clock.csv";
};

int run_clock(const ClockArgs& args, const std::string& command_line) {
    const Superposition s =
        args.input.empty()
            ? Superposition::from_momenta({Vec3{1.0, 0.0, 0.0}, Vec3{-1.0, 0.0, 0.0}})
            : read_superposition_file(args.input);
    const std::vector<ClockReport> reports = dilation_sweep(s, args.speeds, args.tol);
    std::ofstream out = open_output(args.output);
    write_clock_csv(out, reports, provenance(command_line));
    double worst = 0.0;
    for (const ClockReport& r : reports) {
        worst = std::max(worst, r.residual);
    }
    std::cout << "clock: " << reports.size() << " speeds, max dilation residual "
              << format_double(worst) << ", wrote " << args.output << "\n";
    return 0;
}

struct PairArgs {
    std::vector<double> v{0.3, 0.6, 0.9};
    std::vector<double> theta{0.0, kPi / 6.0, kPi / 4.0, kPi / 3.0, kPi / 2.0};
    double magnitude = 1.0;
    std::string output = "pair.csv";
};

int run_pair(const PairArgs& args, const std::string& command_line) {
    std::vector<PairRow> rows;
    rows.reserve(args.v.size() * args.theta.size());
    for (double v : args.v) {
        for (double theta : args.theta) {
            const BalancedPair pair{Vec3{std::cos(theta), std::sin(theta), 0.0},
                                    args.magnitude};
            rows.push_back(PairRow{v, theta, pair_boost_closed_form(pair, v)});
        }
    }
    std::ofstream out = open_output(args.output);
    write_pair_csv(out, rows, provenance(command_line));
    std::cout << "pair: " << rows.size() << " (v, theta) rows, wrote " << args.output
              << "\n";
    return 0;
}

struct MbrArgs {
    double speed_kms = 350.0;
    std::vector<double> dir{1.0, 0.0, 0.0};
    std::int64_t samples = 10'000;
    double noise = 0.0;
    double t_rest = 2.725;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::string output = "frame_report.txt";
    std::string sky_output;
};

int run_mbr_find(const MbrArgs& args, const std::string& command_line) {
    const Vec3 direction = to_vec3(args.dir, "--dir");
    if (!(direction.norm() > 0.0)) {
        throw std::invalid_argument("--dir must be a nonzero vector");
    }
    const Vec3 beta = direction.normalized() * (args.speed_kms / kSpeedOfLightKms);

    if (!args.sky_output.empty()) {
        const auto sky =
            synthesize_sky(beta, args.t_rest, args.samples, args.noise, args.seed);
        std::ofstream sky_out = open_output(args.sky_output);
        write_sky_csv(sky_out, sky, provenance(command_line, args.seed));
    }

    FrameSearchOptions options;
    options.n_samples = args.samples;
    options.noise_sigma = args.noise;
    options.tol = args.tol;
    options.seed = args.seed;
    const FrameEstimate estimate = find_null_frame(beta, args.t_rest, options);

    std::ofstream out = open_output(args.output);
    write_frame_report(out, estimate, provenance(command_line, args.seed));
    std::cout << "mbr-find: recovered speed "
              << format_double((-estimate.beta).norm() * kSpeedOfLightKms) << " km/s in "
              << estimate.iterations << " iterations, dipole ratio "
              << format_double(estimate.final_dipole_ratio) << ", wrote " << args.output
              << "\n";
    return 0;
}

int run_check(std::uint64_t seed) {
    const std::vector<CheckResult> results = run_selfchecks(seed);
    int failures = 0;
    for (const CheckResult& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << " " << r.name << " (" << r.detail
                  << ")\n";
        if (!r.passed) {
            ++failures;
        }
    }
    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " check(s) failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::string command_line;
    for (int i = 0; i < argc; ++i) {
        if (i > 0) {
            command_line += ' ';
        }
        command_line += argv[i];
    }

    CLI::App app{"Superposition-of-light-waves particle simulator"};
    app.set_version_flag("--version", luminal::kVersion);
    app.set_config("--config", "", "Read defaults from a key=value file; flags override");
    app.require_subcommand(1);

    BoostArgs boost_args;
    auto* boost_cmd =
        app.add_subcommand("boost", "Accelerate a superposition file to a target velocity");
    boost_cmd->add_option("--input", boost_args.input, "superposition file (px py pz lines)")
        ->required();
    boost_cmd->add_option("--v", boost_args.v, "target speed in [0, 1 - 1e-9)")->required();
    boost_cmd->add_option("--dir", boost_args.dir, "boost direction")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    boost_cmd->add_option("--tol", boost_args.tol, "velocity convergence tolerance")
        ->capture_default_str();
    boost_cmd->add_option("--output,-o", boost_args.output, "boosted superposition file")
        ->capture_default_str();

    EllipsoidArgs ellipsoid_args;
    auto* ellipsoid_cmd = app.add_subcommand(
        "ellipsoid", "Measure the momentum-flux profile of a boosted isotropic particle");
    ellipsoid_cmd->add_option("--v", ellipsoid_args.v, "group speeds to profile")
        ->delimiter(',')
        ->capture_default_str();
    ellipsoid_cmd->add_option("--pairs", ellipsoid_args.pairs, "antipodal pair count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ellipsoid_cmd->add_option("--bins", ellipsoid_args.bins, "equal-cos angle bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ellipsoid_cmd
        ->add_option("--magnitude", ellipsoid_args.magnitude, "per-component rest momentum")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    ellipsoid_cmd->add_option("--seed", ellipsoid_args.seed, "ensemble seed")
        ->capture_default_str();
    ellipsoid_cmd->add_option("--tol", ellipsoid_args.tol, "boost tolerance")
        ->capture_default_str();
    ellipsoid_cmd->add_option("--output,-o", ellipsoid_args.output, "CSV path")
        ->capture_default_str();

    ClockArgs clock_args;
    auto* clock_cmd =
        app.add_subcommand("clock", "Sweep group speeds and report internal clock rates");
    clock_cmd->add_option("--speeds", clock_args.speeds, "group speeds in [0, 1 - 1e-9)")
        ->delimiter(',')
        ->required();
    clock_cmd->add_option("--input", clock_args.input,
                          "superposition file (default: unit antipodal pair)");
    clock_cmd->add_option("--tol", clock_args.tol, "boost tolerance")->capture_default_str();
    clock_cmd->add_option("--output,-o", clock_args.output, "CSV path")
        ->capture_default_str();

    PairArgs pair_args;
    auto* pair_cmd = app.add_subcommand(
        "pair", "Tabulate the closed-form balanced-pair transform over (v, theta)");
    pair_cmd->add_option("--v", pair_args.v, "group speeds")
        ->delimiter(',')
        ->capture_default_str();
    pair_cmd->add_option("--theta", pair_args.theta, "rest orientation angles (radians)")
        ->delimiter(',')
        ->capture_default_str();
    pair_cmd->add_option("--magnitude", pair_args.magnitude, "rest magnitude")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    pair_cmd->add_option("--output,-o", pair_args.output, "CSV path")->capture_default_str();

    MbrArgs mbr_args;
    auto* mbr_cmd = app.add_subcommand(
        "mbr-find", "Recover the background-radiation rest frame from a synthetic sky");
    mbr_cmd->add_option("--speed-kms", mbr_args.speed_kms, "true observer speed in km/s")
        ->capture_default_str();
    mbr_cmd->add_option("--dir", mbr_args.dir, "true observer direction")
        ->delimiter(',')
        ->expected(3)
        ->capture_default_str();
    mbr_cmd->add_option("--samples", mbr_args.samples, "sky directions per iteration")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mbr_cmd->add_option("--noise", mbr_args.noise, "temperature noise sigma (kelvin)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    mbr_cmd->add_option("--t-rest", mbr_args.t_rest, "bath rest temperature (kelvin)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mbr_cmd->add_option("--tol", mbr_args.tol, "dipole ratio convergence gate")
        ->capture_default_str();
    mbr_cmd->add_option("--seed", mbr_args.seed, "sky seed")->capture_default_str();
    mbr_cmd->add_option("--output,-o", mbr_args.output, "frame report path")
        ->capture_default_str();
    mbr_cmd->add_option("--sky-output", mbr_args.sky_output,
                        "also write the initial synthetic sky CSV here");

    std::uint64_t check_seed = 1;
    auto* check_cmd =
        app.add_subcommand("check", "Run the built-in invariant suite at desk scale");
    check_cmd->add_option("--seed", check_seed, "suite seed")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(boost_cmd)) {
            return run_boost(boost_args, command_line);
        }
        if (app.got_subcommand(ellipsoid_cmd)) {
            return run_ellipsoid(ellipsoid_args, command_line);
        }
        if (app.got_subcommand(clock_cmd)) {
            return run_clock(clock_args, command_line);
        }
        if (app.got_subcommand(pair_cmd)) {
            return run_pair(pair_args, command_line);
        }
        if (app.got_subcommand(mbr_cmd)) {
            return run_mbr_find(mbr_args, command_line);
        }
        if (app.got_subcommand(check_cmd)) {
            return run_check(check_seed);
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const luminal::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const luminal::ParseError& e) {
        std::cerr << "error: line " << e.line << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
