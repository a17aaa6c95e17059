#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "gatecap/complex_matrix.hpp"
#include "gatecap/entcap.hpp"
#include "gatecap/states.hpp"

namespace gatecap::cli {

// A gate given exactly one way: by name, by 4x4 matrix, or by canonical
// interaction coefficients.
struct GateSpec {
    std::optional<std::string> name;
    std::optional<ComplexMatrix> matrix;
    std::optional<std::array<double, 3>> canonical_alphas;

    ComplexMatrix to_matrix() const;
    nlohmann::json echo() const;
};

GateSpec parse_gate(const nlohmann::json& j);

// Accepts a file path, inline JSON, or a bare gate name.
GateSpec parse_gate_argument(const std::string& arg);

struct PipelineConfig {
    entcap::OptimizerConfig optimizer;
    int twirl_samples = 100;
    bool run_canonical = true;
    bool run_capability = true;
    bool run_gains = true;
    bool run_twirl = true;
    bool run_audits = true;
    std::optional<std::string> protocol_path;  // extra audit, any gate
    std::optional<PureState> user_psi;         // override ensemble seed state
};

struct AnalysisOutcome {
    nlohmann::json report;
    bool all_checks_passed = false;
};

AnalysisOutcome analyze(const GateSpec& spec, const PipelineConfig& config);

// Canonical serialization: sorted keys, two-space indent, trailing
// newline; all floats were already rendered as 12-significant-digit
// strings, so output is byte-stable for a fixed seed and version.
std::string emit(const nlohmann::json& report);

// 12-significant-digit decimal string, the one float format in reports.
std::string format_double(double v);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace gatecap::cli
