#include "wavelab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include <fmt/core.h>

#include "wavelab/ch_solver.hpp"
#include "wavelab/errors.hpp"
#include "wavelab/field_io.hpp"
#include "wavelab/grid_field.hpp"
#include "wavelab/linear_sw.hpp"
#include "wavelab/peakon.hpp"
#include "wavelab/scaling.hpp"
#include "wavelab/variational.hpp"

namespace wavelab::scenario {

using nlohmann::json;

namespace {

const std::map<std::string, std::string> module_versions = {
    {"grid_field", "1.0.0"}, {"scaling", "1.0.0"}, {"linear_sw", "1.0.0"}, {"ch_solver", "1.0.0"},
    {"peakon", "1.0.0"},     {"variational", "1.0.0"}, {"scenario_cli", "1.0.0"},
};

// Typed access to a JSON object with key-path diagnostics.
class Params {
public:
    Params(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw ConfigError(fmt::format("'{}' must be an object", path_));
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    double number(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) throw ConfigError(fmt::format("'{}' must be a number", name(key)));
        const double d = v.get<double>();
        if (!std::isfinite(d)) throw ConfigError(fmt::format("'{}' must be finite", name(key)));
        return d;
    }
    double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

    double positive(const std::string& key) const {
        const double d = number(key);
        if (!(d > 0.0)) throw ConfigError(fmt::format("'{}' must be positive", name(key)));
        return d;
    }
    double positive(const std::string& key, double fallback) const { return has(key) ? positive(key) : fallback; }

    long integer(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number_integer()) throw ConfigError(fmt::format("'{}' must be an integer", name(key)));
        return v.get<long>();
    }
    long integer(const std::string& key, long fallback) const { return has(key) ? integer(key) : fallback; }

    bool boolean(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_boolean()) throw ConfigError(fmt::format("'{}' must be true or false", name(key)));
        return v.get<bool>();
    }

    std::string text(const std::string& key, const std::string& fallback,
                     std::initializer_list<const char*> allowed) const {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string()) throw ConfigError(fmt::format("'{}' must be a string", name(key)));
        const auto s = v.get<std::string>();
        for (const char* a : allowed) {
            if (s == a) return s;
        }
        throw ConfigError(fmt::format("'{}' has unsupported value '{}'", name(key), s));
    }

    std::vector<double> numbers(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_array() || v.empty()) throw ConfigError(fmt::format("'{}' must be a non-empty array", name(key)));
        std::vector<double> out;
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError(fmt::format("'{}' must contain only numbers", name(key)));
            out.push_back(e.get<double>());
        }
        return out;
    }

    Params child(const std::string& key) const { return Params(at(key), name(key)); }

private:
    const json& at(const std::string& key) const {
        if (!obj_.contains(key)) throw ConfigError(fmt::format("missing required key '{}'", name(key)));
        return obj_.at(key);
    }
    std::string name(const std::string& key) const { return path_ + "." + key; }

    const json& obj_;
    std::string path_;
};

// ---------------------------------------------------------------- profiles

struct ProfileSpec {
    std::string type;
    double amplitude = 1.0;
    double width = 1.0;
    double center = 0.0;
    long mode = 1;
    long max_mode = 8;
    std::vector<double> q, p;
};

ProfileSpec parse_profile(const Params& pr) {
    ProfileSpec s;
    s.type = pr.text("type", "", {"sech2", "gaussian", "sine", "peakons", "random"});
    if (s.type.empty()) throw ConfigError("profile requires a 'type'");
    if (s.type == "peakons") {
        s.q = pr.numbers("q");
        s.p = pr.numbers("p");
        if (s.q.size() != s.p.size()) throw ConfigError("profile 'q' and 'p' must have equal length");
        return s;
    }
    s.amplitude = pr.number("amplitude");
    if (s.type == "sine") {
        s.mode = pr.integer("mode", 1);
        if (s.mode < 1) throw ConfigError("profile 'mode' must be >= 1");
    } else if (s.type == "random") {
        s.max_mode = pr.integer("max_mode", 8);
        if (s.max_mode < 1) throw ConfigError("profile 'max_mode' must be >= 1");
    } else {
        s.width = pr.positive("width");
        s.center = pr.number("center", 0.0);
    }
    return s;
}

Field build_profile(const ProfileSpec& s, const Grid1D& grid, std::uint64_t seed) {
    if (s.type == "sech2") {
        return Field::sample(grid, [&](double x) {
            const double c = 1.0 / std::cosh((x - s.center) / s.width);
            return s.amplitude * c * c;
        });
    }
    if (s.type == "gaussian") {
        return Field::sample(grid, [&](double x) {
            const double y = (x - s.center) / s.width;
            return s.amplitude * std::exp(-y * y);
        });
    }
    if (s.type == "sine") {
        const double k = grid.wavenumber(static_cast<int>(s.mode));
        return Field::sample(grid, [&](double x) { return s.amplitude * std::sin(k * x); });
    }
    if (s.type == "peakons") return peakon::sample_field_mollified({s.q, s.p, 0.0}, grid);
    // random: seeded band-limited trigonometric polynomial
    std::mt19937_64 rng(seed);
    auto unit = [&] { return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0; };
    std::vector<double> a, b;
    for (long m = 1; m <= s.max_mode; ++m) {
        a.push_back(unit());
        b.push_back(unit());
    }
    const double norm = s.amplitude / static_cast<double>(s.max_mode);
    return Field::sample(grid, [&](double x) {
        double v = 0.0;
        for (long m = 1; m <= s.max_mode; ++m) {
            const double k = grid.wavenumber(static_cast<int>(m));
            v += a[m - 1] * std::cos(k * x) + b[m - 1] * std::sin(k * x);
        }
        return norm * v;
    });
}

// ---------------------------------------------------------------- kind specs

struct CHSpec {
    ch::CHParams params;
    ch::RhsForm form = ch::RhsForm::nonlocal;
    ProfileSpec initial;
    double snapshot_interval = 0.0;
    long log_every = 1;
};

CHSpec parse_ch(const Params& p) {
    CHSpec s;
    s.params.kappa = p.number("kappa", 0.0);
    if (s.params.kappa < 0.0) throw ConfigError("'params.kappa' must be >= 0");
    s.params.dt = p.positive("dt");
    s.params.t_end = p.number("t_end");
    if (s.params.t_end < 0.0) throw ConfigError("'params.t_end' must be >= 0");
    s.params.dealias = p.boolean("dealias", true);
    s.params.slope_ceiling = p.positive("slope_ceiling", 1e3);
    s.params.spectral_filter = p.boolean("spectral_filter", false);
    s.form = p.text("form", "nonlocal", {"local", "nonlocal"}) == "local" ? ch::RhsForm::local : ch::RhsForm::nonlocal;
    s.initial = parse_profile(p.child("initial"));
    s.snapshot_interval = p.positive("snapshot_interval", std::max(s.params.t_end, s.params.dt));
    s.log_every = p.integer("log_every", 10);
    if (s.log_every < 1) throw ConfigError("'params.log_every' must be >= 1");
    return s;
}

struct PeakonSpec {
    peakon::PeakonEnsemble ensemble;
    double dt = 1e-3;
    double t_end = 0.0;
    double log_interval = 0.0;
};

PeakonSpec parse_peakon(const Params& p) {
    PeakonSpec s;
    s.ensemble.q = p.numbers("q");
    s.ensemble.p = p.numbers("p");
    if (s.ensemble.q.size() != s.ensemble.p.size()) throw ConfigError("'params.q' and 'params.p' must have equal length");
    s.dt = p.positive("dt");
    s.t_end = p.number("t_end");
    if (s.t_end < 0.0) throw ConfigError("'params.t_end' must be >= 0");
    s.log_interval = p.positive("log_interval", std::max(s.dt, s.t_end / 100.0));
    return s;
}

struct LinearSpec {
    ProfileSpec right;
    std::optional<ProfileSpec> left;
    double c0 = 0.0;
    std::vector<double> times;
    std::vector<double> z_levels{0.0, 0.25, 0.5, 0.75, 1.0};
    double audit_dt = 1e-4;
    double eps = 0.1;
};

LinearSpec parse_linear(const Params& p) {
    LinearSpec s;
    s.right = parse_profile(p.child("profile"));
    if (p.has("left_profile")) s.left = parse_profile(p.child("left_profile"));
    s.c0 = p.number("c0", 0.0);
    s.times = p.numbers("times");
    if (p.has("z_levels")) s.z_levels = p.numbers("z_levels");
    s.audit_dt = p.positive("audit_dt", 1e-4);
    s.eps = p.positive("eps", 0.1);
    return s;
}

struct VariationalSpec {
    int steps = 64;
    double horizon = 1.0;
    double alpha = 0.05;
    double eps = 1e-3;
    variational::Lagrangian which = variational::Lagrangian::u;
    double c0 = 0.0;
    bool refinement = false;
    int perturbation_modes = 4;
    variational::InverseMethod method = variational::InverseMethod::spectral;
};

VariationalSpec parse_variational(const Params& p) {
    VariationalSpec s;
    s.steps = static_cast<int>(p.integer("K"));
    if (s.steps < 2) throw ConfigError("'params.K' must be >= 2");
    s.horizon = p.positive("T");
    s.alpha = p.number("alpha");
    s.eps = p.positive("eps");
    s.which = p.text("which", "u", {"u", "eta"}) == "eta" ? variational::Lagrangian::eta : variational::Lagrangian::u;
    s.c0 = p.number("c0", 0.0);
    s.refinement = p.boolean("refinement", false);
    s.perturbation_modes = static_cast<int>(p.integer("perturbation_modes", 4));
    if (s.perturbation_modes < 1) throw ConfigError("'params.perturbation_modes' must be >= 1");
    s.method = p.text("method", "spectral", {"spectral", "monotone_cubic"}) == "monotone_cubic"
                   ? variational::InverseMethod::monotone_cubic
                   : variational::InverseMethod::spectral;
    return s;
}

scaling::ScalingParams parse_scaling(const Params& p) {
    scaling::ScalingParams s;
    s.h0 = p.positive("h0");
    s.lambda = p.positive("lambda");
    s.a = p.positive("a");
    s.g = p.positive("g", s.g);
    s.rho = p.positive("rho", s.rho);
    s.p0 = p.positive("p0", s.p0);
    return s;
}

struct CrossSpec {
    peakon::PeakonEnsemble ensemble;
    double dt = 1e-3;
    double t_end = 5.0;
    double compare_interval = 1.0;
};

CrossSpec parse_cross(const Params& p) {
    CrossSpec s;
    s.ensemble.q = p.numbers("q");
    s.ensemble.p = p.numbers("p");
    if (s.ensemble.q.size() != s.ensemble.p.size()) throw ConfigError("'params.q' and 'params.p' must have equal length");
    s.dt = p.positive("dt");
    s.t_end = p.positive("t_end");
    s.compare_interval = p.positive("compare_interval", s.t_end / 5.0);
    return s;
}

// ---------------------------------------------------------------- helpers

void write_json(const json& j, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot open {} for writing", path.string()));
    out << j.dump(2) << '\n';
}

double relative_drift(double initial, double current) {
    const double scale = std::abs(initial);
    return scale > 0.0 ? std::abs(current - initial) / scale : std::abs(current - initial);
}

std::string snapshot_name(const std::string& stem, int index) { return fmt::format("{}_{:04d}.csv", stem, index); }

// ---------------------------------------------------------------- runners

SummaryReport run_ch(const ScenarioConfig& cfg, const Grid1D& grid) {
    const CHSpec spec = parse_ch(Params(cfg.params, "params"));
    const Field u0 = build_profile(spec.initial, grid, cfg.seed);
    const double kappa = spec.params.kappa;
    const ch::Invariants inv0 = ch::invariants(u0, kappa);

    io::CsvTable log({"t", "H0", "H1", "H2"});
    json snapshots = json::array();
    int snapshot_index = 0;
    double next_snapshot = 0.0;
    const double tol = 1e-9 * spec.params.dt;
    ch::Invariants last = inv0;
    const long total_steps = static_cast<long>(std::ceil(spec.params.t_end / spec.params.dt - 1e-9));

    auto observer = [&](const ch::CHState& s, long step) {
        const bool final_step = step == total_steps;
        if (step % spec.log_every == 0 || final_step) {
            last = ch::invariants(s.u, kappa);
            const double row[] = {s.t, last.h0, last.h1, last.h2};
            log.add_row(row);
        }
        if (s.t + tol >= next_snapshot || final_step) {
            const auto name = snapshot_name("u", snapshot_index++);
            io::write_field_csv(s.u, cfg.output_dir / name);
            snapshots.push_back({{"t", s.t}, {"file", name}});
            next_snapshot += spec.snapshot_interval;
        }
    };
    const ch::RunResult result = ch::run({u0, 0.0}, spec.params, spec.form, observer);
    log.write(cfg.output_dir / "invariants.csv");
    write_json(snapshots, cfg.output_dir / "snapshots.json");

    const ch::Invariants fin = ch::invariants(result.final_state.u, kappa);
    SummaryReport rep;
    rep.metrics = {
        {"final_time", result.final_state.t},
        {"steps", result.steps},
        {"drift_H0", relative_drift(inv0.h0, fin.h0)},
        {"drift_H1", relative_drift(inv0.h1, fin.h1)},
        {"drift_H2", relative_drift(inv0.h2, fin.h2)},
        {"max_slope", result.max_slope},
        {"run_status", ch::to_string(result.status)},
    };
    if (result.status != ch::RunStatus::completed) {
        rep.exit_code = exit_numerical_halt;
        rep.status = ch::to_string(result.status);
        rep.diagnostic = result.diagnostic;
        rep.metrics["halt_time"] = result.halt_time;
    }
    return rep;
}

SummaryReport run_peakon(const ScenarioConfig& cfg) {
    PeakonSpec spec = parse_peakon(Params(cfg.params, "params"));
    const std::size_t n = spec.ensemble.size();
    std::vector<std::string> header{"t"};
    for (std::size_t i = 1; i <= n; ++i) header.push_back(fmt::format("q{}", i));
    for (std::size_t i = 1; i <= n; ++i) header.push_back(fmt::format("p{}", i));
    header.push_back("H");
    header.push_back("P");
    io::CsvTable log(header);

    const double h0 = peakon::hamiltonian(spec.ensemble);
    const double p0 = peakon::total_momentum(spec.ensemble);
    double next_log = 0.0;
    auto record = [&](const peakon::PeakonEnsemble& e) {
        std::vector<double> row{e.t};
        row.insert(row.end(), e.q.begin(), e.q.end());
        row.insert(row.end(), e.p.begin(), e.p.end());
        row.push_back(peakon::hamiltonian(e));
        row.push_back(peakon::total_momentum(e));
        log.add_row(row);
    };
    auto observer = [&](const peakon::PeakonEnsemble& e) {
        if (e.t + 1e-9 * spec.dt >= next_log || e.t == spec.t_end) {
            record(e);
            next_log += spec.log_interval;
        }
    };

    SummaryReport rep;
    try {
        const auto fin = peakon::evolve(spec.ensemble, spec.dt, spec.t_end, observer);
        rep.metrics = {{"final_time", fin.t},
                       {"q", fin.q},
                       {"p", fin.p},
                       {"drift_H", relative_drift(h0, peakon::hamiltonian(fin))},
                       {"drift_P", relative_drift(p0, peakon::total_momentum(fin))}};
    } catch (const PeakonCollisionError& e) {
        rep.exit_code = exit_numerical_halt;
        rep.status = "peakon_collision";
        rep.diagnostic = e.what();
        rep.metrics = {{"halt_time", e.time()},
                       {"estimated_collision_time", e.estimated_collision_time()},
                       {"pair", {e.first(), e.second()}}};
    }
    log.write(cfg.output_dir / "trajectory.csv");
    return rep;
}

SummaryReport run_linear(const ScenarioConfig& cfg, const Grid1D& grid) {
    const LinearSpec spec = parse_linear(Params(cfg.params, "params"));
    linear_sw::SurfaceProfile prof{build_profile(spec.right, grid, cfg.seed), std::nullopt, spec.c0};
    if (spec.left) prof.g_left = build_profile(*spec.left, grid, cfg.seed + 1);

    json snapshots = json::array();
    json audits = json::array();
    double worst_limit = 0.0;
    double worst_wave = 0.0;
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        const double t = spec.times[i];
        const Field eta = linear_sw::evolve_dalembert(prof, t);
        const auto name = snapshot_name("eta", static_cast<int>(i));
        io::write_field_csv(eta, cfg.output_dir / name);
        snapshots.push_back({{"t", t}, {"file", name}});

        const auto report = scaling::audit_limit_system(
            linear_sw::limit_snapshots(prof, spec.z_levels, t, spec.audit_dt), spec.eps);
        audits.push_back({{"t", t}, {"residuals", report.to_json()}});
        worst_limit = std::max(worst_limit, report.limit_max());
        worst_wave = std::max(worst_wave, linear_sw::wave_equation_residual(prof, t, 1e-3));
    }
    write_json(snapshots, cfg.output_dir / "snapshots.json");
    write_json(audits, cfg.output_dir / "audit.json");

    // Semigroup check on the right-mover over the last requested time.
    const double t_last = spec.times.back();
    linear_sw::SurfaceProfile right_only{prof.f, std::nullopt, prof.c0};
    const Field direct = linear_sw::evolve_dalembert(right_only, t_last);
    const Field twice = linear_sw::evolve_dalembert(
        {linear_sw::evolve_dalembert(right_only, 0.5 * t_last), std::nullopt, prof.c0}, 0.5 * t_last);

    SummaryReport rep;
    rep.metrics = {{"max_limit_residual", worst_limit},
                   {"max_wave_equation_residual", worst_wave},
                   {"semigroup_error", (direct - twice).max_abs()}};
    return rep;
}

SummaryReport run_variational(const ScenarioConfig& cfg, const Grid1D& grid) {
    const VariationalSpec spec = parse_variational(Params(cfg.params, "params"));
    variational::PathProblem problem;
    problem.length = grid.length();
    problem.horizon = spec.horizon;
    problem.displacement = variational::SinusoidalDisplacement{spec.alpha, grid.length()};
    problem.perturbation =
        variational::BandLimitedPerturbation(grid.length(), spec.horizon, cfg.seed, spec.perturbation_modes);
    problem.which = spec.which;
    problem.c0 = spec.c0;

    const variational::Resolution base{grid.n(), spec.steps, spec.eps};
    const auto rows = variational::refinement_study(problem, std::span(&base, 1), spec.method);
    const auto& report = rows.front().report;

    json out = report.to_json();
    json table = json::array();
    if (spec.refinement) {
        std::vector<variational::Resolution> levels;
        for (int r = 0; r < 3; ++r) levels.push_back({grid.n(), spec.steps << r, spec.eps});
        for (int r = 1; r < 3; ++r) levels.push_back({grid.n(), spec.steps, spec.eps / (1 << r)});
        table = variational::to_json(variational::refinement_study(problem, levels, spec.method));
    }
    out["refinement_table"] = table;
    write_json(out, cfg.output_dir / "verification.json");

    SummaryReport rep;
    rep.metrics = {{"D_fd", report.d_fd},       {"D_el", report.d_el},       {"D_mid", report.d_mid},
                   {"rel_gap", report.rel_gap}, {"mid_rel_gap", report.mid_rel_gap}, {"eps_used", report.eps_used}};
    return rep;
}

SummaryReport run_scaling(const ScenarioConfig& cfg, const Grid1D& grid) {
    const scaling::ScalingParams params = parse_scaling(Params(cfg.params, "params"));
    const double eps = params.eps();
    const double delta = params.delta();

    // Physical samples obtained by mapping an irrotational limit solution back
    // through the inverse pipeline.
    const Field f = Field::sample(grid, [](double x) { return std::exp(-x * x); });
    const auto snaps = linear_sw::limit_snapshots({f, std::nullopt, 0.1}, {0.0, 0.5, 1.0}, 0.0, 1e-3);
    const scaling::VariableBundle physical = scaling::from_nondim(
        scaling::unscale_small_amplitude(scaling::restore_delta(snaps.frames[1], eps, delta), eps), params);

    const auto forward =
        scaling::remove_delta(scaling::scale_small_amplitude(scaling::to_nondim(physical, params), eps), eps, delta);
    const auto back = scaling::from_nondim(
        scaling::unscale_small_amplitude(scaling::restore_delta(forward, eps, delta), eps), params);
    const double round_trip = scaling::max_relative_difference(physical, back);

    // Still water at every sample height: nondimensional pressure must vanish.
    scaling::VariableBundle still = physical;
    for (std::size_t i = 0; i < still.size(); ++i) {
        still.u[i] = still.v[i] = still.eta[i] = 0.0;
        still.p[i] = params.p0 + params.rho * params.g * (params.h0 - still.z[i]);
    }
    const auto still_nd = scaling::to_nondim(still, params);
    double hydrostatic = 0.0;
    for (double p : still_nd.p) hydrostatic = std::max(hydrostatic, std::abs(p));

    const json out = {{"eps", eps},
                      {"delta", delta},
                      {"round_trip_residual", round_trip},
                      {"hydrostatic_residual", hydrostatic},
                      {"samples", physical.size()}};
    write_json(out, cfg.output_dir / "scaling.json");

    SummaryReport rep;
    rep.metrics = out;
    return rep;
}

SummaryReport run_cross(const ScenarioConfig& cfg, const Grid1D& grid) {
    const CrossSpec spec = parse_cross(Params(cfg.params, "params"));
    const ch::CHParams params{0.0, spec.dt, spec.t_end, true, 1e3, false};

    io::CsvTable gaps({"t", "linf_gap"});
    double worst = 0.0;
    double next_compare = 0.0;
    int index = 0;
    peakon::PeakonEnsemble ode = spec.ensemble;
    const long total_steps = static_cast<long>(std::ceil(spec.t_end / spec.dt - 1e-9));

    auto observer = [&](const ch::CHState& s, long step) {
        if (s.t + 1e-9 * spec.dt < next_compare && step != total_steps) return;
        ode = peakon::evolve(ode, spec.dt, s.t);
        const Field reference = peakon::sample_field(ode, grid);
        const double gap = (s.u - reference).max_abs();
        worst = std::max(worst, gap);
        const double row[] = {s.t, gap};
        gaps.add_row(row);
        io::write_field_csv(s.u, cfg.output_dir / snapshot_name("pde", index));
        io::write_field_csv(reference, cfg.output_dir / snapshot_name("ode", index));
        ++index;
        next_compare += spec.compare_interval;
    };

    SummaryReport rep;
    std::optional<ch::RunResult> result;
    try {
        result = ch::run({peakon::sample_field_mollified(spec.ensemble, grid), 0.0}, params, ch::RhsForm::nonlocal,
                         observer);
    } catch (const PeakonCollisionError& e) {
        gaps.write(cfg.output_dir / "gap.csv");
        rep.exit_code = exit_numerical_halt;
        rep.status = "peakon_collision";
        rep.diagnostic = e.what();
        rep.metrics = {{"halt_time", e.time()}, {"estimated_collision_time", e.estimated_collision_time()}};
        return rep;
    }
    gaps.write(cfg.output_dir / "gap.csv");
    rep.metrics = {{"linf_gap", worst}, {"final_time", result->final_state.t}, {"steps", result->steps}};
    if (result->status != ch::RunStatus::completed) {
        rep.exit_code = exit_numerical_halt;
        rep.status = ch::to_string(result->status);
        rep.diagnostic = result->diagnostic;
    }
    return rep;
}

Kind parse_kind(const json& v) {
    static const std::map<std::string, Kind> kinds = {
        {"ch_evolution", Kind::ch_evolution},           {"peakon", Kind::peakon},
        {"linear_sw", Kind::linear_sw},                 {"variational_check", Kind::variational_check},
        {"scaling_demo", Kind::scaling_demo},           {"cross_validation", Kind::cross_validation},
    };
    if (!v.is_string()) throw ConfigError("'kind' must be a string");
    const auto it = kinds.find(v.get<std::string>());
    if (it == kinds.end()) throw ConfigError(fmt::format("unknown kind '{}'", v.get<std::string>()));
    return it->second;
}

}  // namespace

const char* to_string(Kind kind) {
    switch (kind) {
        case Kind::ch_evolution: return "ch_evolution";
        case Kind::peakon: return "peakon";
        case Kind::linear_sw: return "linear_sw";
        case Kind::variational_check: return "variational_check";
        case Kind::scaling_demo: return "scaling_demo";
        case Kind::cross_validation: return "cross_validation";
    }
    return "unknown";
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    const Params top(doc, "config");
    ScenarioConfig cfg;
    cfg.source = doc;
    if (!doc.contains("kind")) throw ConfigError("missing required key 'kind'");
    cfg.kind = parse_kind(doc.at("kind"));

    const Params grid = top.child("grid");
    const long n = grid.integer("n");
    if (n < 16 || n % 2 != 0) throw ConfigError("'grid.n' must be even and >= 16");
    cfg.n = static_cast<int>(n);
    cfg.length = grid.positive("L");

    if (doc.contains("params")) {
        cfg.params = doc.at("params");
        if (!cfg.params.is_object()) throw ConfigError("'params' must be an object");
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) throw ConfigError("'output_dir' must be a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }
    if (doc.contains("seed")) {
        const json& s = doc.at("seed");
        if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
            throw ConfigError("'seed' must be a non-negative integer");
        }
        cfg.seed = s.get<std::uint64_t>();
    }

    const Params p(cfg.params, "params");
    switch (cfg.kind) {
        case Kind::ch_evolution: parse_ch(p); break;
        case Kind::peakon: parse_peakon(p); break;
        case Kind::linear_sw: parse_linear(p); break;
        case Kind::variational_check: parse_variational(p); break;
        case Kind::scaling_demo: parse_scaling(p); break;
        case Kind::cross_validation: parse_cross(p); break;
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
    }
    return parse_config(doc);
}

std::string config_hash(const json& doc) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : doc.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return fmt::format("{:016x}", h);
}

json SummaryReport::to_json() const {
    json j = {{"kind", scenario::to_string(kind)}, {"status", status}, {"exit_code", exit_code}, {"metrics", metrics}};
    if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
    return j;
}

SummaryReport run(const ScenarioConfig& config) {
    std::filesystem::create_directories(config.output_dir);
    const Grid1D grid(config.n, config.length);

    SummaryReport rep;
    switch (config.kind) {
        case Kind::ch_evolution: rep = run_ch(config, grid); break;
        case Kind::peakon: rep = run_peakon(config); break;
        case Kind::linear_sw: rep = run_linear(config, grid); break;
        case Kind::variational_check: rep = run_variational(config, grid); break;
        case Kind::scaling_demo: rep = run_scaling(config, grid); break;
        case Kind::cross_validation: rep = run_cross(config, grid); break;
    }
    rep.kind = config.kind;

    json manifest = rep.to_json();
    manifest["config_hash"] = config_hash(config.source);
    manifest["seed"] = config.seed;
    manifest["module_versions"] = module_versions;
    manifest["config"] = config.source;
    write_json(manifest, config.output_dir / "manifest.json");
    return rep;
}

}  // namespace wavelab::scenario
