//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/app/config.hpp
//! \brief Experiment configuration: JSON parsing, validation and hashing.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "../analysis.hpp"
#include "../checkpoint.hpp"
#include "../convex_gauge.hpp"
#include "../integrand.hpp"

namespace gaugeflow::app
{
//---------------------------------------------------------------------------//
struct BodyConfig
{
    std::string kind{"euclidean_ball"};  //!< euclidean_ball|ellipsoid|polytope
    double radius{1};
    SymMat2 form{SymMat2::identity()};
    std::vector<Vec2> vertices;

    //! Throws ConfigError("body", ...) for an invalid body
    ConvexBody build() const;

    friend bool operator==(BodyConfig const&, BodyConfig const&) = default;
};

struct AnalysisPlan
{
    //! Explicit cylinders; when empty, \c auto_cylinders are drawn from the seed
    std::vector<Cylinder> cylinders;
    int auto_cylinders{6};
    int excess_levels{4};  //!< radii ρ θ^m, m < excess_levels
    double excess_theta{0.5};
    double lag_min{0};  //!< 0 selects the larger grid spacing
    double lag_decades{1};
    int dual_samples{64};
    double mu{0.2};
    double nu{0.25};
    std::optional<Region> region;  //!< modulus region; default centered box

    friend bool operator==(AnalysisPlan const&, AnalysisPlan const&) = default;
};

struct ExperimentConfig
{
    BodyConfig body;
    double p{2};
    std::string coefficient{"1"};
    double C1{1};
    double C2{1};
    double lipschitz{0};

    int nx{33};
    int ny{33};
    double xmin{0};
    double xmax{3.141592653589793};
    double ymin{0};
    double ymax{3.141592653589793};

    double t0{0};
    double dt{0.01};
    double horizon{0.25};

    std::vector<double> epsilons{1, 0.3, 0.1, 0.03, 0.01};
    std::vector<double> deltas{0.25};
    std::string source{"0"};
    std::string data{"2*sin(x)*sin(y)"};
    std::optional<double> K;  //!< bootstrapped when absent

    double newton_tol{1e-10};
    int max_newton{100};

    AnalysisPlan analysis;
    CheckpointFormat checkpoint{CheckpointFormat::csv};
    std::uint64_t seed{42};
    std::string output{"out"};

    friend bool
    operator==(ExperimentConfig const&, ExperimentConfig const&) = default;
};

//---------------------------------------------------------------------------//
//! Parse JSON text; ConfigError carries the field path or line:column
ExperimentConfig parse_config(std::string const& text);
ExperimentConfig load_config(std::filesystem::path const& path);

nlohmann::json to_json(ExperimentConfig const& config);
//! Pretty-printed JSON with sorted keys
std::string serialize(ExperimentConfig const& config);

//! Range checks; throws ConfigError naming the offending field
void validate(ExperimentConfig const& config);

//! FNV-1a 64 of the compact canonical JSON without the output location
std::uint64_t config_hash(ExperimentConfig const& config);
std::string config_hash_hex(ExperimentConfig const& config);

//! Built integrand parameters
IntegrandSpec integrand_spec(ExperimentConfig const& config);
Grid config_grid(ExperimentConfig const& config);

}  // namespace gaugeflow::app
