// dtqw — command-line front end: single walks, variance/fisher sweeps,
// spherical delta-variance scans, rmse conversion, and the fold-check
// diagnostic. Emits CSV or JSON tables ready for plotting.

#include <complex>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "dtqw/estimation.hpp"
#include "dtqw/oracle.hpp"
#include "dtqw/statistics.hpp"
#include "dtqw/sweep.hpp"

namespace {

using namespace dtqw;

std::array<double, 3> parse_direction(const std::string& text) {
    if (text == "x") return {1.0, 0.0, 0.0};
    if (text == "y") return {0.0, 1.0, 0.0};
    if (text == "z") return {0.0, 0.0, 1.0};
    std::array<double, 3> n{};
    std::stringstream ss(text);
    std::string cell;
    int i = 0;
    while (std::getline(ss, cell, ',')) {
        if (i >= 3) throw CLI::ValidationError("--direction", "expected x|y|z or nx,ny,nz");
        n[static_cast<size_t>(i++)] = std::stod(cell);
    }
    if (i != 3) throw CLI::ValidationError("--direction", "expected x|y|z or nx,ny,nz");
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    if (len < 1e-12) throw CLI::ValidationError("--direction", "zero vector");
    for (double& c : n) c /= len;
    return n;
}

std::complex<double> parse_complex(std::string text) {
    std::erase(text, ' ');
    if (text.empty()) throw CLI::ValidationError("--spin", "empty component");

    const bool has_i = text.back() == 'i' || text.back() == 'I';
    const auto to_double = [](const std::string& body) {
        if (body.empty() || body == "+") return 1.0;
        if (body == "-") return -1.0;
        size_t used = 0;
        const double v = std::stod(body, &used);
        if (used != body.size()) throw CLI::ValidationError("--spin", "bad number: " + body);
        return v;
    };

    if (!has_i) return {to_double(text), 0.0};

    const std::string body = text.substr(0, text.size() - 1);
    // split a+bi / a-bi on the last sign that is not part of an exponent
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            const double re = to_double(body.substr(0, k));
            const double im = to_double(body.substr(k));
            return {re, im};
        }
    }
    return {0.0, to_double(body)};
}

SpinVector parse_spin(const std::string& text) {
    if (text == "plus") return SpinVector::plus();
    if (text == "zero") return SpinVector::zero();
    if (text == "one") return SpinVector::one();
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw CLI::ValidationError("--spin", "expected plus|zero|one or a,b");
    }
    SpinVector spin{parse_complex(text.substr(0, comma)), parse_complex(text.substr(comma + 1))};
    const double len = spin.norm();
    if (len < 1e-12) throw CLI::ValidationError("--spin", "zero spin vector");
    spin.amp0 /= len;
    spin.amp1 /= len;
    return spin;
}

ScalarGrid parse_grid(const std::string& text) {
    ScalarGrid grid;
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos) {
        throw CLI::ValidationError("--grid", "expected start:stop:count");
    }
    grid.start = parse_angle(text.substr(0, first));
    grid.stop = parse_angle(text.substr(first + 1, second - first - 1));
    grid.count = std::stoi(text.substr(second + 1));
    grid.validate();
    return grid;
}

// flag bundle shared by the walk-driving subcommands
struct WalkOptions {
    std::string theta = "3pi/8";
    std::string omega = "0";
    std::string direction = "x";
    std::string spin = "plus";
    int steps = 50;
    int half_width = -1;  // defaults to steps when unset
    bool unbounded = false;
    std::string out;
    std::string format = "csv";
    int workers = 1;
};

void add_walk_options(CLI::App* cmd, WalkOptions& o) {
    cmd->fallthrough();
    cmd->add_option("--theta", o.theta, "coin parameter (radians or pi fractions, e.g. 3pi/8)");
    cmd->add_option("--omega", o.omega, "field strength omega = gamma*B0/2");
    cmd->add_option("--direction", o.direction, "field direction: x|y|z or nx,ny,nz");
    cmd->add_option("--spin", o.spin, "initial spin: plus|zero|one or a,b (normalized)");
    cmd->add_option("--steps", o.steps, "number of walk steps")->check(CLI::NonNegativeNumber);
    cmd->add_option("--half-width", o.half_width, "lattice half width a (default: steps)");
    cmd->add_flag("--unbounded,!--bounded", o.unbounded,
                  "open lattice instead of reflecting edges");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--workers", o.workers, "parallel workers for sweeps")
        ->check(CLI::PositiveNumber);
}

WalkConfig to_config(const WalkOptions& o) {
    WalkConfig cfg;
    cfg.theta = parse_angle(o.theta);
    cfg.field = {parse_angle(o.omega), parse_direction(o.direction)};
    cfg.initial_spin = parse_spin(o.spin);
    cfg.steps = o.steps;
    cfg.lattice = {o.half_width < 0 ? o.steps : o.half_width,
                   o.unbounded ? BoundaryMode::Unbounded : BoundaryMode::Bounded};
    cfg.validate();
    return cfg;
}

void emit(const std::vector<SweepRecord>& records, const WalkOptions& o) {
    const std::string body = o.format == "json" ? to_json(records) : to_csv(records);
    if (o.out.empty()) {
        std::cout << body;
    } else if (o.format == "json") {
        export_json(records, o.out);
    } else {
        export_csv(records, o.out);
    }
}

void emit_text(const std::string& body, const std::string& out) {
    if (out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + out);
        f << body;
    }
}

int run_walk(const WalkOptions& o) {
    const WalkConfig cfg = to_config(o);
    const ProbabilityVector pd = position_marginal(evolve(cfg));
    std::vector<SweepRecord> records;
    for (size_t i = 0; i < pd.probs.size(); ++i) {
        records.push_back({{"position", static_cast<double>(pd.site_at(i))},
                           {"probability", pd.probs[i]}});
    }
    emit(records, o);
    return 0;
}

int run_variance_sweep(const WalkOptions& o, const std::string& axis,
                       const std::string& grid_text) {
    SweepSpec spec;
    spec.base = to_config(o);
    spec.axis = axis == "theta" ? SweepAxis::Theta : SweepAxis::Omega;
    spec.grid = parse_grid(grid_text);
    spec.observables = kMoments | kDeltaVariance;
    spec.workers = o.workers;
    emit(run_sweep(spec), o);
    return 0;
}

int run_sphere_scan(const WalkOptions& o, int polar, int azimuth, double azimuth_offset) {
    SweepSpec spec;
    spec.base = to_config(o);
    spec.axis = SweepAxis::Sphere;
    spec.sphere = {polar, azimuth, azimuth_offset};
    spec.observables = kDeltaVariance;
    spec.workers = o.workers;
    emit(run_sweep(spec), o);
    return 0;
}

int run_fisher_sweep(const WalkOptions& o, const std::string& grid_text, bool with_rmse,
                     int measurements) {
    SweepSpec spec;
    spec.base = to_config(o);
    spec.axis = SweepAxis::Omega;
    spec.grid = parse_grid(grid_text);
    spec.observables = kQfi | kPositionFI | kSpinFI | kRatios;
    if (with_rmse) spec.observables |= kRmse;
    spec.measurements = measurements;
    spec.workers = o.workers;
    emit(run_sweep(spec), o);
    return 0;
}

int run_rmse(double fi_max, int steps, int measurements, const PhysicalConstants& constants,
             const WalkOptions& o) {
    if (fi_max <= 0.0) {
        fi_max = static_cast<double>(steps) * steps;  // peak position information
    }
    const double delta_omega = crb_rmse_omega(fi_max, measurements);
    std::vector<SweepRecord> records{{{"fi_max", fi_max},
                                      {"measurements", static_cast<double>(measurements)},
                                      {"rmse_omega", delta_omega},
                                      {"rmse_tesla", omega_to_tesla(delta_omega, constants)}}};
    emit(records, o);
    return 0;
}

int run_fold_check(const WalkOptions& o) {
    WalkOptions opts = o;
    if (opts.half_width < 0) opts.half_width = 25;
    const FoldReport report = fold_check(to_config(opts));

    nlohmann::ordered_json doc;
    doc["max_abs_error"] = report.max_abs_error;
    doc["site_pairs"] = nlohmann::ordered_json::array();
    for (const FoldPair& p : report.site_pairs) {
        doc["site_pairs"].push_back({{"unbounded_site", p.unbounded_site},
                                     {"bounded_site", p.bounded_site},
                                     {"p_unbounded", p.p_unbounded},
                                     {"p_bounded", p.p_bounded}});
    }
    emit_text(doc.dump(2) + "\n", o.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"discrete-time quantum walk magnetometer simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI/TOML file with a [subcommand] section per subcommand; flags win");

    WalkOptions walk_opts;
    auto* walk = app.add_subcommand("walk", "run one walk and print the position distribution");
    add_walk_options(walk, walk_opts);

    WalkOptions var_opts;
    var_opts.steps = 50;
    std::string var_axis = "omega";
    std::string var_grid = "0:pi:101";
    auto* variance = app.add_subcommand(
        "variance-sweep", "position variance and field-induced change over a parameter grid");
    add_walk_options(variance, var_opts);
    variance->add_option("--axis", var_axis, "swept parameter")
        ->check(CLI::IsMember({"omega", "theta"}));
    variance->add_option("--grid", var_grid, "sweep grid start:stop:count");

    WalkOptions sphere_opts;
    sphere_opts.theta = "pi/4";
    sphere_opts.omega = "pi/4";
    int polar_count = 64;
    int azimuth_count = 128;
    std::string azimuth_offset = "0";
    auto* sphere = app.add_subcommand(
        "sphere-scan", "delta variance for the field omega*n over a sphere of directions");
    add_walk_options(sphere, sphere_opts);
    sphere->add_option("--polar-count", polar_count, "polar grid points")
        ->check(CLI::Range(2, 4096));
    sphere->add_option("--azimuth-count", azimuth_count, "azimuth grid points")
        ->check(CLI::Range(2, 8192));
    sphere->add_option("--azimuth-offset", azimuth_offset, "azimuth origin (angle)");

    WalkOptions fisher_opts;
    fisher_opts.spin = "one";
    fisher_opts.half_width = 25;
    std::string fisher_grid = "0:pi:629";
    bool fisher_rmse = false;
    int fisher_measurements = 1;
    auto* fisher = app.add_subcommand(
        "fisher-sweep", "QFI, position/spin Fisher information and ratios versus omega");
    add_walk_options(fisher, fisher_opts);
    fisher->add_option("--grid", fisher_grid, "omega grid start:stop:count");
    fisher->add_flag("--rmse", fisher_rmse, "add rmse_omega/rmse_tesla columns");
    fisher->add_option("--measurements", fisher_measurements, "measurement count M")
        ->check(CLI::PositiveNumber);

    WalkOptions rmse_opts;
    double rmse_fi_max = 0.0;
    int rmse_measurements = 1;
    PhysicalConstants constants;
    auto* rmse = app.add_subcommand(
        "rmse", "Cramér–Rao RMSE for omega and its magnetic-field equivalent");
    rmse->fallthrough();
    rmse->add_option("--fi-max", rmse_fi_max, "peak Fisher information (default: steps^2)");
    rmse->add_option("--steps", rmse_opts.steps, "walk steps T")->check(CLI::PositiveNumber);
    rmse->add_option("--measurements", rmse_measurements, "measurement count M")
        ->check(CLI::PositiveNumber);
    rmse->add_option("--g-s", constants.g_s, "gyromagnetic g-factor");
    rmse->add_option("--mu-bohr", constants.mu_bohr, "Bohr magneton (J/T)");
    rmse->add_option("--hbar", constants.hbar, "reduced Planck constant (J s)");
    rmse->add_option("--out", rmse_opts.out, "output file (default: stdout)");
    rmse->add_option("--format", rmse_opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    WalkOptions fold_opts;
    fold_opts.half_width = 25;
    auto* fold = app.add_subcommand(
        "fold-check", "compare the bounded walk with the folded unbounded distribution");
    add_walk_options(fold, fold_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (walk->parsed()) return run_walk(walk_opts);
        if (variance->parsed()) return run_variance_sweep(var_opts, var_axis, var_grid);
        if (sphere->parsed()) {
            return run_sphere_scan(sphere_opts, polar_count, azimuth_count,
                                   parse_angle(azimuth_offset));
        }
        if (fisher->parsed()) {
            return run_fisher_sweep(fisher_opts, fisher_grid, fisher_rmse, fisher_measurements);
        }
        if (rmse->parsed()) {
            return run_rmse(rmse_fi_max, rmse_opts.steps, rmse_measurements, constants,
                            rmse_opts);
        }
        if (fold->parsed()) return run_fold_check(fold_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
