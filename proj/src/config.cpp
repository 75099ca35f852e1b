#include "pint/config.hpp"

#include <cstdlib>

#include "pint/errors.hpp"
#include "pint/problem.hpp"

namespace pint {

const char* to_string(Study s) {
    switch (s) {
        case Study::Run: return "run";
        case Study::Bounds: return "bounds";
        case Study::DefectOrder: return "defect-order";
        case Study::IntegratorOrder: return "integrator-order";
        case Study::Conditions: return "conditions";
        case Study::Phi1: return "phi1";
        case Study::All: return "all";
    }
    return "?";
}

Study study_from_string(const std::string& s) {
    if (s == "run") return Study::Run;
    if (s == "bounds") return Study::Bounds;
    if (s == "defect-order") return Study::DefectOrder;
    if (s == "integrator-order") return Study::IntegratorOrder;
    if (s == "conditions") return Study::Conditions;
    if (s == "phi1") return Study::Phi1;
    if (s == "all") return Study::All;
    throw SolverError("invalid value for key 'study': " + s +
                      " (expected run|bounds|defect-order|integrator-order|conditions|phi1|all)");
}

const char* to_string(CoarseKind k) {
    return k == CoarseKind::ForwardEuler ? "forward-euler" : "backward-euler";
}

CoarseKind coarse_from_string(const std::string& s) {
    if (s == "forward-euler") return CoarseKind::ForwardEuler;
    if (s == "backward-euler") return CoarseKind::BackwardEuler;
    throw SolverError("invalid value for key 'coarse': " + s +
                      " (expected forward-euler|backward-euler)");
}

nlohmann::json ExperimentConfig::to_json() const {
    return nlohmann::json{
        {"problem", problem}, {"N", N},           {"m", m},
        {"K", K},             {"coarse", to_string(coarse)},
        {"workers", workers}, {"study", to_string(study)},
        {"seed", seed},       {"output_dir", output_dir}};
}

namespace {

template <typename T>
T typed(const nlohmann::json& j, const std::string& key) {
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SolverError("invalid value for key '" + key + "'");
    }
}

void apply(ExperimentConfig& cfg, const nlohmann::json& j, bool* saw_output_dir) {
    if (j.is_null() || (j.is_object() && j.empty())) return;
    if (!j.is_object()) throw SolverError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "problem") cfg.problem = typed<std::string>(value, key);
        else if (key == "N") cfg.N = typed<int>(value, key);
        else if (key == "m") cfg.m = typed<int>(value, key);
        else if (key == "K") cfg.K = typed<int>(value, key);
        else if (key == "coarse") cfg.coarse = coarse_from_string(typed<std::string>(value, key));
        else if (key == "workers") cfg.workers = typed<int>(value, key);
        else if (key == "study") cfg.study = study_from_string(typed<std::string>(value, key));
        else if (key == "seed") cfg.seed = typed<std::uint64_t>(value, key);
        else if (key == "output_dir") {
            cfg.output_dir = typed<std::string>(value, key);
            *saw_output_dir = true;
        } else {
            throw SolverError("unknown config key '" + key + "'");
        }
    }
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& file_json,
                              const nlohmann::json& flag_overrides) {
    ExperimentConfig cfg;
    bool saw_output_dir = false;
    apply(cfg, file_json, &saw_output_dir);
    apply(cfg, flag_overrides, &saw_output_dir);  // flags win

    if (!saw_output_dir) {
        const char* env = std::getenv("PINT_OUTPUT_DIR");
        cfg.output_dir = env ? env : "pint-out";
    }

    if (cfg.N < 1) throw SolverError("N must be >= 1");
    if (cfg.m < 1) throw SolverError("m must be >= 1");
    if (cfg.K < 0) throw SolverError("K must be >= 0");
    if (cfg.K > cfg.N) throw SolverError("K exceeds N");
    if (cfg.workers < 1) throw SolverError("workers must be >= 1");

    bool known = false;
    for (const auto& n : builtin_problem_names()) known = known || n == cfg.problem;
    if (!known) builtin_problem(cfg.problem);  // throws with the catalog listing

    return cfg;
}

}  // namespace pint
