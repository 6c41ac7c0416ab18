#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bpgeo/bodies.hpp"

namespace bpgeo {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// the degree-`degree` invariant harmonic component of the block power sum
// sum_j u_j^{degree/2}, sup-normalized on a deterministic grid
HarmonicSum block_moment_harmonic(const BlockStructure& bs, int degree);

// body schema: kind + parameters (+ optional symmetry tag, perturbation list)
StarBody body_from_json(const nlohmann::json& j);

struct ExperimentConfig {
    std::string command;
    int d = 1;
    int n = 2;
    bool has_seed = false;
    uint64_t seed = 0;
    int grid_points = 4096;
    uint64_t volume_samples = 1000000;
    int jobs = 0;
    std::string out_dir = ".";
    nlohmann::json raw;
};

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace bpgeo
