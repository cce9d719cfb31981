#include "curvnb/scenario.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "curvnb/equilibria.hpp"

namespace curvnb {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

Vec3 vec_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        throw ScenarioError(std::string(what) + " must be an array of three reals");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

IsoscelesCase isosceles_case_from_string(const std::string& s) {
    if (s == "M8m") return IsoscelesCase::collision_M8m;
    if (s == "M2m") return IsoscelesCase::repulsion_M2m;
    if (s == "M4m") return IsoscelesCase::analytic_M4m;
    if (s == "custom") return IsoscelesCase::custom;
    throw ScenarioError("unknown isosceles case: " + s);
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario JSON parse error: ") + e.what());
    }
    Scenario sc;
    try {
        sc.name = j.value("name", sc.name);
        if (!j.contains("kappa")) throw ScenarioError("scenario requires kappa");
        sc.kappa = j.at("kappa").get<double>();
        if (j.contains("bodies") && j.contains("family"))
            throw ScenarioError("scenario must give either bodies or family, not both");
        if (j.contains("bodies")) {
            for (const json& b : j.at("bodies")) {
                RawBody rb;
                rb.mass = b.at("mass").get<double>();
                rb.position = vec_from_json(b.at("position"), "position");
                rb.velocity = vec_from_json(b.at("velocity"), "velocity");
                sc.bodies.push_back(rb);
            }
        } else if (j.contains("family")) {
            const json& f = j.at("family");
            sc.family = f.at("type").get<std::string>();
            sc.n = f.value("n", sc.n);
            sc.mass = f.value("mass", sc.mass);
            sc.mass_M = f.value("mass_M", sc.mass_M);
            sc.z = f.value("z", sc.z);
            sc.x = f.value("x", sc.x);
            sc.x0 = f.value("x0", sc.x0);
            sc.isosceles_case = f.value("case", sc.isosceles_case);
            sc.omega_sign = f.value("omega_sign", sc.omega_sign);
        } else {
            throw ScenarioError("scenario requires bodies or family");
        }
        sc.t_end = j.value("t_end", sc.t_end);
        if (j.contains("integrator")) {
            const json& g = j.at("integrator");
            sc.integrator.rel_tol = g.value("rel_tol", sc.integrator.rel_tol);
            sc.integrator.abs_tol = g.value("abs_tol", sc.integrator.abs_tol);
            sc.integrator.initial_dt = g.value("initial_dt", sc.integrator.initial_dt);
            sc.integrator.max_dt = g.value("max_dt", sc.integrator.max_dt);
            sc.integrator.singularity_event_threshold =
                g.value("event_threshold", sc.integrator.singularity_event_threshold);
            sc.integrator.max_steps = g.value("max_steps", sc.integrator.max_steps);
        }
        sc.output_samples = j.value("samples", sc.output_samples);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario field error: ") + e.what());
    }
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string Scenario::to_json_text() const {
    json j;
    j["name"] = name;
    j["kappa"] = kappa;
    if (!family.empty()) {
        json f;
        f["type"] = family;
        if (family == "ngon_fixed") {
            f["n"] = n;
            f["mass"] = mass;
        } else if (family == "tetrahedron") {
            f["mass"] = mass;
        } else if (family == "lagrangian") {
            f["z"] = z;
            f["mass"] = mass;
            f["omega_sign"] = omega_sign;
        } else if (family == "eulerian") {
            f["z"] = z;
            f["mass"] = mass;
            f["mass_M"] = mass_M;
            f["omega_sign"] = omega_sign;
        } else if (family == "hyperbolic_re") {
            f["x"] = x;
            f["mass"] = mass;
            f["mass_M"] = mass_M;
            f["omega_sign"] = omega_sign;
        } else if (family == "isosceles_singularity") {
            f["case"] = isosceles_case;
            f["x0"] = x0;
            f["mass"] = mass;
            if (isosceles_case == "custom") f["mass_M"] = mass_M;
        }
        j["family"] = f;
    } else {
        json arr = json::array();
        for (const RawBody& b : bodies) {
            json jb;
            jb["mass"] = b.mass;
            jb["position"] = vec_to_json(b.position);
            jb["velocity"] = vec_to_json(b.velocity);
            arr.push_back(jb);
        }
        j["bodies"] = arr;
    }
    j["t_end"] = t_end;
    j["integrator"] = {{"rel_tol", integrator.rel_tol},
                       {"abs_tol", integrator.abs_tol},
                       {"initial_dt", integrator.initial_dt},
                       {"max_dt", integrator.max_dt},
                       {"event_threshold", integrator.singularity_event_threshold},
                       {"max_steps", integrator.max_steps}};
    j["samples"] = output_samples;
    return j.dump(2);
}

SystemState Scenario::build_state() const {
    const Curvature c(kappa);
    if (!family.empty()) {
        if (family == "ngon_fixed") return fixed_point_ngon(n, mass);
        if (family == "tetrahedron") return fixed_point_tetrahedron(mass);
        if (family == "lagrangian") return make_lagrangian(c, z, mass, omega_sign);
        if (family == "eulerian") return make_eulerian(c, z, mass, mass_M, omega_sign);
        if (family == "hyperbolic_re") return make_hyperbolic_re(x, mass, mass_M, omega_sign);
        if (family == "isosceles_singularity") {
            const IsoscelesCase kind = isosceles_case_from_string(isosceles_case);
            return make_isosceles(kind, x0, mass, mass_M).initial_state();
        }
        throw ScenarioError("unknown family: " + family);
    }
    if (bodies.empty()) throw ScenarioError("scenario has no bodies");
    std::vector<Body> bs;
    for (std::size_t i = 0; i < bodies.size(); ++i) {
        const RawBody& rb = bodies[i];
        if (!(rb.mass > 0.0))
            throw ScenarioError("body " + std::to_string(i) + ": mass must be positive");
        if (constraint_residual(c, rb.position) > 1e-9)
            throw ScenarioError("body " + std::to_string(i) +
                                ": position violates the surface constraint beyond 1e-9 "
                                "(|kappa*inner(q,q) - 1| = " +
                                format_double(constraint_residual(c, rb.position)) + ")");
        if (c.hyperbolic() && rb.position.z <= 0.0)
            throw ScenarioError("body " + std::to_string(i) + ": hyperboloid sheet requires z > 0");
        SurfacePoint q = project_point(c, rb.position);
        const double tangency = std::abs(c.kappa() * inner(c, q.v(), rb.velocity));
        if (tangency > 1e-9)
            throw ScenarioError("body " + std::to_string(i) +
                                ": velocity violates tangency beyond 1e-9 (|kappa*inner(q,v)| = " +
                                format_double(tangency) + ")");
        const Vec3 v = project_velocity(c, q, rb.velocity).v();
        bs.emplace_back(rb.mass, q, rb.mass * v);
    }
    return SystemState(c, std::move(bs));
}

Scenario scenario_from_state(const std::string& name, const SystemState& state, double t_end) {
    Scenario sc;
    sc.name = name;
    sc.kappa = state.curvature().kappa();
    sc.t_end = t_end;
    for (const Body& b : state.bodies()) {
        Scenario::RawBody rb;
        rb.mass = b.mass;
        rb.position = b.q.v();
        rb.velocity = b.velocity();
        sc.bodies.push_back(rb);
    }
    return sc;
}

namespace {

// Selects at most `stride_to` evenly spaced samples (always keeping first
// and last); 0 keeps everything.
std::vector<std::size_t> sample_indices(std::size_t n, int stride_to) {
    std::vector<std::size_t> idx;
    if (stride_to <= 0 || static_cast<std::size_t>(stride_to) >= n) {
        for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
        return idx;
    }
    const std::size_t m = static_cast<std::size_t>(stride_to);
    for (std::size_t k = 0; k < m; ++k) idx.push_back(k * (n - 1) / (m - 1));
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

}  // namespace

std::string trajectory_csv(std::span<const TrajectorySample> samples, int stride_to) {
    std::string out = "t";
    const std::size_t n = samples.empty() ? 0 : samples.front().state.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::string b = std::to_string(i);
        for (const char* col : {"x", "y", "z", "vx", "vy", "vz"})
            out += ",", out += col, out += b;
    }
    out += "\n";
    for (std::size_t k : sample_indices(samples.size(), stride_to)) {
        const TrajectorySample& s = samples[k];
        out += format_double(s.time);
        for (const Body& b : s.state.bodies()) {
            const Vec3 v = b.velocity();
            for (double val : {b.q.v().x, b.q.v().y, b.q.v().z, v.x, v.y, v.z})
                out += "," + format_double(val);
        }
        out += "\n";
    }
    return out;
}

std::string diagnostics_csv(std::span<const TrajectorySample> samples, int stride_to) {
    std::string out = "t,energy,cx,cy,cz,I,J,min_pair_gap,constraint_residual\n";
    for (std::size_t k : sample_indices(samples.size(), stride_to)) {
        const TrajectorySample& s = samples[k];
        const DiagnosticsRecord& d = s.diagnostics;
        out += format_double(s.time);
        for (double val : {d.energy, d.angular_momentum.x, d.angular_momentum.y,
                           d.angular_momentum.z, d.moment_I, d.moment_J, d.min_pair_gap,
                           d.constraint_residual})
            out += "," + format_double(val);
        out += "\n";
    }
    return out;
}

std::string summary_json(const Scenario& sc, const Trajectory& traj) {
    json j;
    j["name"] = sc.name;
    j["kappa"] = sc.kappa;
    j["samples"] = traj.samples.size();
    j["t_final"] = traj.samples.empty() ? 0.0 : traj.samples.back().time;
    j["stop"] = to_string(traj.stop.kind);
    if (traj.stop.kind == StopReason::Kind::singularity_event) {
        j["event_time"] = traj.stop.event_time;
        json cls = json::array();
        std::string primary = "singular";
        bool have_ca = false;
        for (const SingularityClassification& e : traj.stop.classifications) {
            cls.push_back({{"i", e.i}, {"j", e.j}, {"kind", to_string(e.kind)},
                           {"proximity", e.proximity}});
            if (e.kind == SingularityKind::collision_antipodal) have_ca = true;
        }
        if (!traj.stop.classifications.empty())
            primary = have_ca ? "collision_antipodal"
                              : to_string(traj.stop.classifications.front().kind);
        j["event_classification"] = primary;
        j["event_pairs"] = cls;
    }
    if (!traj.samples.empty()) {
        const DriftReport drift = invariant_drift(traj.samples);
        j["energy_drift"] = drift.energy;
        j["angular_momentum_drift"] = drift.angular_momentum;
        j["constraint_residual"] = drift.constraint;
        double vmax = 0.0;
        for (const Body& b : traj.samples.back().state.bodies())
            vmax = std::max(vmax, norm_e(b.velocity()));
        j["final_max_speed"] = vmax;
    }
    return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace curvnb
