#pragma once

#include "pdp/verification.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace pdp {

/// A fully specified experiment: ambient cylinder and grid, analytic field
/// and weight, exponents and regime, h-sequence and tolerances. Loaded
/// from JSON (schema documented in the README) or taken from the built-in
/// library; every invariant is checked eagerly by validate().
struct Scenario {
    std::string name;

    std::string field_kind = "constant";
    nlohmann::json field_params = nlohmann::json::object();
    std::string weight_kind = "constant";
    nlohmann::json weight_params = nlohmann::json::object();

    ExponentSet exps;
    Regime regime = Regime::General;

    Cylinder qtilde{{0.0, 0.0}, 1.0, 0.0, 1.0};
    std::optional<Cylinder> q_override;

    int nx = 0;
    int nt = 0;

    double h0 = 0.0;
    int h_count = 0;
    double h_ratio = 2.0;
    int m_start = 0;

    double tol_rel = 1e-3;

    std::vector<double> h_values() const;
    double h_max() const;
    Cylinder q() const;
    double dx() const { return 2.0 * qtilde.radius() / (nx - 1); }
    double dt() const { return qtilde.time_length() / (nt - 1); }

    GridField make_field() const;
    Weight make_weight() const;

    void validate() const;

    static Scenario from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

/// Parse + validate a scenario file. Errors carry the offending field.
Scenario load_scenario(const std::string& path);

/// The built-in matrix: 3 regimes x {interior, boundary} x {smooth, rough}.
std::vector<Scenario> builtin_suite();

/// All built-in scenarios (matrix plus the blow-up and condition-violated
/// studies); throws listing the known names if `name` is unknown.
Scenario builtin_scenario(const std::string& name);
std::vector<std::string> builtin_names();

/// Assemble the input and run the verification pipeline on one scenario.
ConvergenceReport run_scenario(const Scenario& sc);

/// Grid-aligned doubling shifts dt, 2 dt, 4 dt, ... up to the time margin
/// that Q leaves inside the ambient cylinder.
std::vector<double> default_modulus_deltas(const Scenario& sc);

/// Exit-code contract: 0 all PASS, 1 numerical FAIL, 2 gap condition not
/// satisfied without numerical FAIL.
int exit_code_for(const ConvergenceReport& rep);

} // namespace pdp
