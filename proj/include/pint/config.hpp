#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "pint/integrators.hpp"

namespace pint {

enum class Study { Run, Bounds, DefectOrder, IntegratorOrder, Conditions, Phi1, All };

const char* to_string(Study s);
Study study_from_string(const std::string& s);

const char* to_string(CoarseKind k);
CoarseKind coarse_from_string(const std::string& s);

/// Resolved experiment configuration. Defaults: problem=linear-scalar, N=10,
/// m=4, K=5, coarse=forward-euler, workers=1, study=run, seed=42. The default
/// output directory comes from $PINT_OUTPUT_DIR when set, else "pint-out";
/// an empty output_dir suppresses file output.
struct ExperimentConfig {
    std::string problem = "linear-scalar";
    int N = 10;
    int m = 4;
    int K = 5;
    CoarseKind coarse = CoarseKind::ForwardEuler;
    int workers = 1;
    Study study = Study::Run;
    std::uint64_t seed = 42;
    std::string output_dir;

    nlohmann::json to_json() const;
};

/// Merges (defaults <- config file <- flag overrides), validating keys,
/// types, and the K <= N constraint. Either json may be empty. Unknown keys
/// are structured errors naming the key.
ExperimentConfig parse_config(const nlohmann::json& file_json,
                              const nlohmann::json& flag_overrides);

}  // namespace pint
