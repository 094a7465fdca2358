//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/analysis.hpp
//! \brief Diagnostics measured on solved fields.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "convex_gauge.hpp"
#include "gmaps.hpp"
#include "grid_field.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
/*!
 * Backward parabolic cylinder Q_ρ = B_ρ(x0) × (t0 - ρ², t0].
 *
 * A cell (i, j) at stored level k is a member when its center lies in the
 * ball and t_k lies in the time interval.
 */
struct Cylinder
{
    Vec2 center{};
    double t0{0};
    double radius{1};

    friend bool operator==(Cylinder const&, Cylinder const&) = default;
};

//! Space-time sample point of a cylinder: level and lower-left cell index.
struct CellSample
{
    int level;
    int i;
    int j;
};

//! Member cells; ParameterError if the cylinder leaves the solved domain
std::vector<CellSample> cylinder_cells(GridField const& field,
                                       Cylinder const& cyl);

//---------------------------------------------------------------------------//
//! Cylinder average of |D_h u - (D_h u)_cyl|²; ParameterError if empty.
double excess(GridField const& field, Cylinder const& cyl);

//! Fraction of member cells with <D_h u, e*> - (1+δ) > threshold.
double superlevel_measure(GridField const& field,
                          Cylinder const& cyl,
                          Vec2 e_star,
                          double delta,
                          double threshold);

//---------------------------------------------------------------------------//
enum class Regime
{
    non_degenerate,
    degenerate
};

char const* to_string(Regime regime);

struct RegimeResult
{
    Regime label{Regime::degenerate};
    //! Index into the dual sample of the witness (non-degenerate only)
    std::optional<std::size_t> witness;
    Vec2 witness_point{};
    double witness_angle{0};
    //! |Q ∖ E^ν_{e*}| / |Q| for every sampled e*
    std::vector<double> complement_fractions;
};

/*!
 * Non-degenerate when some sampled e* has |Q ∖ E^ν| < ν|Q|, where
 * E^ν = {<D_h u, e*> - (1+δ) > (1-ν)μ}. The witness is the e* with the
 * smallest complement fraction (first one on ties).
 */
RegimeResult classify_regime(GridField const& field,
                             Cylinder const& cyl,
                             double delta,
                             double mu,
                             double nu,
                             DualSample const& dual_samples);

//---------------------------------------------------------------------------//
//! Space-time box of nodes used for oscillation measurements.
struct Region
{
    double xmin;
    double xmax;
    double ymin;
    double ymax;
    double tmin;
    double tmax;

    friend bool operator==(Region const&, Region const&) = default;
};

struct ModulusFit
{
    std::vector<double> lags;
    std::vector<double> osc;  //!< cumulative: max over pairs with d_p ≤ lag
    double exponent{0};  //!< slope of log osc against log lag
    double constant{0};  //!< exp(intercept)
    double r2{0};
    bool exact{false};  //!< osc vanishes at every lag
};

//! Lags r_min·(√2)^k, ending with the first one ≥ r_max
std::vector<double> geometric_lags(double r_min, double r_max);

/*!
 * Oscillation of G_δ(nodal D_h u) against parabolic distance
 * |x1 - x2| + √|t1 - t2|, followed by a log-log least-squares fit over lags
 * with positive oscillation.
 */
ModulusFit continuity_modulus(GridField const& field,
                              GDeltaMap const& map,
                              Region const& region,
                              std::span<double const> lags);

//---------------------------------------------------------------------------//
struct EpsConvergenceRow
{
    double epsilon;
    double distance;
};

struct EpsConvergenceTable
{
    double reference_epsilon{0};
    //! Non-reference levels, largest ε first
    std::vector<EpsConvergenceRow> rows;
    bool monotone{true};
    //! Consecutive row indices where the distance grew beyond the tolerance
    std::optional<std::pair<std::size_t, std::size_t>> offending;
};

/*!
 * Space-time L²_h distances of G_δ(D_h u_ε) to the smallest-ε solution.
 * Monotone when d_{i+1} ≤ (1 + noise) d_i as ε decreases.
 */
EpsConvergenceTable eps_convergence_table(std::span<double const> epsilons,
                                          std::span<GridField const> fields,
                                          GDeltaMap const& map,
                                          double noise = 0.05);

//! Verdict over a precomputed table (rows ordered by decreasing ε).
void assess_monotone(EpsConvergenceTable& table, double noise);

}  // namespace gaugeflow
