#ifndef CURVNB_SCENARIO_HPP
#define CURVNB_SCENARIO_HPP

#include <optional>
#include <string>

#include "curvnb/integrate.hpp"

// Scenario files: JSON with an explicit curvature and either raw bodies
// (mass, position, velocity) or a named canonical family.  Raw inputs must
// satisfy the constraints to 1e-9 before projection; families construct
// exact states.  All numeric output is written with round-trip precision and
// a locale-independent decimal point.

namespace curvnb {

struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

struct Scenario {
    std::string name = "scenario";
    double kappa = 1.0;

    struct RawBody {
        double mass;
        Vec3 position;
        Vec3 velocity;
    };
    std::vector<RawBody> bodies;  // used when family.empty()

    // One of: ngon_fixed, tetrahedron, lagrangian, eulerian, hyperbolic_re,
    // isosceles_singularity.
    std::string family;
    int n = 3;                 // ngon_fixed
    double mass = 1.0;         // family mass (m)
    double mass_M = 1.0;       // eulerian / hyperbolic_re / isosceles custom
    double z = 0.0;            // lagrangian / eulerian height
    double x = 1.0;            // hyperbolic_re offset
    double x0 = 0.1;           // isosceles initial position
    std::string isosceles_case = "M8m";  // M8m | M2m | M4m | custom
    int omega_sign = +1;

    double t_end = 1.0;
    IntegratorConfig integrator;
    int output_samples = 0;  // 0 = every accepted step

    static Scenario from_json_text(const std::string& text);
    static Scenario from_file(const std::string& path);
    std::string to_json_text() const;

    // Constructs the initial state; raw bodies are validated against the
    // constraints (tolerance 1e-9) and then projected exactly.
    SystemState build_state() const;
};

// Re-expresses a state as a raw-bodies scenario (for round-tripping).
Scenario scenario_from_state(const std::string& name, const SystemState& state, double t_end);

// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

// simulate outputs
std::string trajectory_csv(std::span<const TrajectorySample> samples, int stride_to = 0);
std::string diagnostics_csv(std::span<const TrajectorySample> samples, int stride_to = 0);
std::string summary_json(const Scenario& sc, const Trajectory& traj);

// Writes via a temporary file and rename, so concurrent writers never expose
// partial files.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace curvnb

#endif
