#include "wavelab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace wavelab::scaling {
namespace {

void require_frame(const VariableBundle& b, Frame expected, const char* op) {
    b.validate();
    if (b.frame != expected) {
        throw std::invalid_argument(fmt::format("{}: bundle is in frame '{}', expected '{}'", op,
                                                to_string(b.frame), to_string(expected)));
    }
}

void require_positive(double value, const char* name, const char* op) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument(fmt::format("{}: {} must be positive (got {})", op, name, value));
    }
}

template <class F>
void map_inplace(std::vector<double>& v, F&& f) {
    for (double& e : v) e = f(e);
}

// Derivative along a column of (possibly non-uniform) levels; exact for quadratics.
std::vector<double> column_derivative(const std::vector<double>& z, const std::vector<double>& f) {
    const std::size_t m = z.size();
    std::vector<double> d(m);
    if (m == 2) {
        d[0] = d[1] = (f[1] - f[0]) / (z[1] - z[0]);
        return d;
    }
    auto three_point = [&](std::size_t i0, std::size_t at) {
        const double x0 = z[i0], x1 = z[i0 + 1], x2 = z[i0 + 2], x = z[at];
        const double w0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
        const double w1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
        const double w2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
        return w0 * f[i0] + w1 * f[i0 + 1] + w2 * f[i0 + 2];
    };
    d[0] = three_point(0, 0);
    for (std::size_t i = 1; i + 1 < m; ++i) d[i] = three_point(i - 1, i);
    d[m - 1] = three_point(m - 3, m - 1);
    return d;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

}  // namespace

void ScalingParams::validate() const {
    const char* op = "ScalingParams";
    require_positive(h0, "h0", op);
    require_positive(lambda, "lambda", op);
    require_positive(a, "a", op);
    require_positive(g, "g", op);
    require_positive(rho, "rho", op);
    require_positive(p0, "p0", op);
}

double ScalingParams::eps() const {
    validate();
    return a / h0;
}

double ScalingParams::delta() const {
    validate();
    return h0 / lambda;
}

const char* to_string(Frame f) {
    switch (f) {
        case Frame::physical: return "physical";
        case Frame::nondim: return "nondim";
        case Frame::scaled: return "scaled";
        case Frame::delta_removed: return "delta-removed";
    }
    return "unknown";
}

void VariableBundle::validate() const {
    const std::size_t n = x.size();
    if (z.size() != n || t.size() != n || u.size() != n || v.size() != n || p.size() != n || eta.size() != n) {
        throw std::invalid_argument("VariableBundle: members have different lengths");
    }
}

VariableBundle to_nondim(const VariableBundle& b, const ScalingParams& params) {
    require_frame(b, Frame::physical, "to_nondim");
    params.validate();
    const double c = std::sqrt(params.g * params.h0);
    const double pscale = params.rho * params.g * params.h0;
    VariableBundle out = b;
    out.frame = Frame::nondim;
    map_inplace(out.x, [&](double x) { return x / params.lambda; });
    map_inplace(out.z, [&](double z) { return z / params.h0; });
    map_inplace(out.eta, [&](double e) { return e / params.a; });
    map_inplace(out.t, [&](double t) { return t * c / params.lambda; });
    map_inplace(out.u, [&](double u) { return u / c; });
    map_inplace(out.v, [&](double v) { return v * params.lambda / (params.h0 * c); });
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.p[i] = (b.p[i] - params.p0 - pscale * (1.0 - out.z[i])) / pscale;
    }
    return out;
}

VariableBundle from_nondim(const VariableBundle& b, const ScalingParams& params) {
    require_frame(b, Frame::nondim, "from_nondim");
    params.validate();
    const double c = std::sqrt(params.g * params.h0);
    const double pscale = params.rho * params.g * params.h0;
    VariableBundle out = b;
    out.frame = Frame::physical;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.p[i] = params.p0 + pscale * (1.0 - b.z[i]) + pscale * b.p[i];
    }
    map_inplace(out.x, [&](double x) { return x * params.lambda; });
    map_inplace(out.z, [&](double z) { return z * params.h0; });
    map_inplace(out.eta, [&](double e) { return e * params.a; });
    map_inplace(out.t, [&](double t) { return t * params.lambda / c; });
    map_inplace(out.u, [&](double u) { return u * c; });
    map_inplace(out.v, [&](double v) { return v * params.h0 * c / params.lambda; });
    return out;
}

VariableBundle scale_small_amplitude(const VariableBundle& b, double eps) {
    require_frame(b, Frame::nondim, "scale_small_amplitude");
    require_positive(eps, "eps", "scale_small_amplitude");
    VariableBundle out = b;
    out.frame = Frame::scaled;
    for (auto* v : {&out.u, &out.v, &out.p}) map_inplace(*v, [&](double e) { return e / eps; });
    return out;
}

VariableBundle unscale_small_amplitude(const VariableBundle& b, double eps) {
    require_frame(b, Frame::scaled, "unscale_small_amplitude");
    require_positive(eps, "eps", "unscale_small_amplitude");
    VariableBundle out = b;
    out.frame = Frame::nondim;
    for (auto* v : {&out.u, &out.v, &out.p}) map_inplace(*v, [&](double e) { return e * eps; });
    return out;
}

VariableBundle remove_delta(const VariableBundle& b, double eps, double delta) {
    require_frame(b, Frame::scaled, "remove_delta");
    require_positive(eps, "eps", "remove_delta");
    require_positive(delta, "delta", "remove_delta");
    // ratio == 1 exactly when eps == delta^2, making the map the identity.
    const double ratio = delta / std::sqrt(eps);
    VariableBundle out = b;
    out.frame = Frame::delta_removed;
    map_inplace(out.x, [&](double x) { return x * ratio; });
    map_inplace(out.t, [&](double t) { return t * ratio; });
    map_inplace(out.v, [&](double v) { return v / ratio; });
    return out;
}

VariableBundle restore_delta(const VariableBundle& b, double eps, double delta) {
    require_frame(b, Frame::delta_removed, "restore_delta");
    require_positive(eps, "eps", "restore_delta");
    require_positive(delta, "delta", "restore_delta");
    const double ratio = delta / std::sqrt(eps);
    VariableBundle out = b;
    out.frame = Frame::scaled;
    map_inplace(out.x, [&](double x) { return x / ratio; });
    map_inplace(out.t, [&](double t) { return t / ratio; });
    map_inplace(out.v, [&](double v) { return v * ratio; });
    return out;
}

double max_relative_difference(const VariableBundle& reference, const VariableBundle& other) {
    reference.validate();
    other.validate();
    if (reference.size() != other.size()) {
        throw std::invalid_argument("max_relative_difference: bundles differ in length");
    }
    double worst = 0.0;
    auto compare = [&](const std::vector<double>& a, const std::vector<double>& b) {
        const double scale = std::max(1.0, max_abs(a));
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    };
    compare(reference.x, other.x);
    compare(reference.z, other.z);
    compare(reference.t, other.t);
    compare(reference.u, other.u);
    compare(reference.v, other.v);
    compare(reference.p, other.p);
    compare(reference.eta, other.eta);
    return worst;
}

double ResidualReport::limit_max() const {
    double m = 0.0;
    for (const auto& [name, value] : residuals) {
        if (!name.starts_with("full_")) m = std::max(m, value);
    }
    return m;
}

nlohmann::json ResidualReport::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : residuals) j[name] = value;
    return j;
}

ResidualReport audit_limit_system(const LimitSnapshots& snaps, double eps) {
    require_positive(eps, "eps", "audit_limit_system");
    require_positive(snaps.dt, "dt", "audit_limit_system");
    const Grid1D& grid = snaps.grid;
    const int n = grid.n();
    const auto& zl = snaps.z_levels;
    const std::size_t levels = zl.size();
    if (levels < 2 || !std::is_sorted(zl.begin(), zl.end()) ||
        std::adjacent_find(zl.begin(), zl.end()) != zl.end()) {
        throw std::invalid_argument("audit_limit_system: need at least two strictly ascending z levels");
    }
    if (zl.front() != 0.0 || zl.back() != 1.0) {
        throw std::invalid_argument("audit_limit_system: z levels must start at 0 and end at 1");
    }
    for (const auto& frame : snaps.frames) {
        require_frame(frame, Frame::delta_removed, "audit_limit_system");
        if (frame.size() != levels * static_cast<std::size_t>(n)) {
            throw std::invalid_argument(fmt::format(
                "audit_limit_system: snapshot has {} samples, expected {} levels x {} points", frame.size(),
                levels, n));
        }
    }

    const auto& prev = snaps.frames[0];
    const auto& cur = snaps.frames[1];
    const auto& next = snaps.frames[2];
    const double inv2dt = 0.5 / snaps.dt;

    auto row = [&](const std::vector<double>& v, std::size_t l) {
        return std::vector<double>(v.begin() + static_cast<long>(l * n), v.begin() + static_cast<long>((l + 1) * n));
    };
    auto dx = [&](const std::vector<double>& v, std::size_t l) { return deriv(Field(grid, row(v, l)), 1); };
    auto dz = [&](const std::vector<double>& v) {
        std::vector<double> out(v.size());
        std::vector<double> col(levels);
        for (int j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < levels; ++l) col[l] = v[l * n + j];
            const auto d = column_derivative(zl, col);
            for (std::size_t l = 0; l < levels; ++l) out[l * n + j] = d[l];
        }
        return out;
    };

    const auto uz = dz(cur.u);
    const auto vz = dz(cur.v);
    const auto pz = dz(cur.p);

    double mom_x = 0.0, mom_z = 0.0, mass = 0.0, full_x = 0.0, full_z = 0.0;
    for (std::size_t l = 0; l < levels; ++l) {
        const Field ux = dx(cur.u, l);
        const Field vx = dx(cur.v, l);
        const Field px = dx(cur.p, l);
        for (int j = 0; j < n; ++j) {
            const std::size_t i = l * n + j;
            const double ut = (next.u[i] - prev.u[i]) * inv2dt;
            const double vt = (next.v[i] - prev.v[i]) * inv2dt;
            mom_x = std::max(mom_x, std::abs(ut + px[j]));
            mom_z = std::max(mom_z, std::abs(pz[i]));
            mass = std::max(mass, std::abs(ux[j] + vz[i]));
            full_x = std::max(full_x, std::abs(ut + eps * (cur.u[i] * ux[j] + cur.v[i] * uz[i]) + px[j]));
            full_z = std::max(full_z, std::abs(eps * (vt + eps * (cur.u[i] * vx[j] + cur.v[i] * vz[i])) + pz[i]));
        }
    }

    double kin_top = 0.0, dyn_top = 0.0, kin_bottom = 0.0;
    const std::size_t top = levels - 1;
    for (int j = 0; j < n; ++j) {
        const std::size_t i = top * n + j;
        const double eta_t = (next.eta[i] - prev.eta[i]) * inv2dt;
        kin_top = std::max(kin_top, std::abs(cur.v[i] - eta_t));
        dyn_top = std::max(dyn_top, std::abs(cur.p[i] - cur.eta[i]));
        kin_bottom = std::max(kin_bottom, std::abs(cur.v[j]));
    }

    ResidualReport report;
    report.residuals = {
        {"momentum_x", mom_x},
        {"momentum_z", mom_z},
        {"mass", mass},
        {"kinematic_surface", kin_top},
        {"dynamic_surface", dyn_top},
        {"kinematic_bottom", kin_bottom},
        {"full_momentum_x", full_x},
        {"full_momentum_z", full_z},
    };
    return report;
}

}  // namespace wavelab::scaling
