//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/iteration_lemmas.hpp
//! \brief Numeric forms of the geometric-convergence and absorption lemmas.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gaugeflow
{
//---------------------------------------------------------------------------//
enum class ConvergenceStatus
{
    converged,
    threshold_violated,
    not_converged  //!< threshold met but decay stalled within the budget
};

char const* to_string(ConvergenceStatus status);

struct GeometricConvergence
{
    ConvergenceStatus status{ConvergenceStatus::threshold_violated};
    double threshold{0};  //!< C^{-1/κ} b^{-1/κ²}
    std::vector<double> iterates;  //!< Y_0, Y_1, ... (empty if violated)
    bool monotone{false};
    bool reached_floor{false};  //!< some Y_i < floor
};

/*!
 * Iterate Y_{i+1} = C b^i Y_i^{1+κ} from Y_0 when Y_0 ≤ C^{-1/κ} b^{-1/κ²}.
 *
 * Iteration stops once Y_i drops below \c floor or after \c steps updates.
 * Converged means monotone nonincreasing and below the floor.
 */
GeometricConvergence geometric_convergence(double C,
                                           double b,
                                           double kappa,
                                           double Y0,
                                           int steps = 128,
                                           double floor = 1e-12);

//---------------------------------------------------------------------------//
struct AbsorptionTerms
{
    double eta;
    double A;
    double B;
    double C;
    double alpha;
    double beta;

    //! A/d^α + B/d^β + C
    double rhs(double d) const;
};

struct AbsorptionCertificate
{
    bool hypothesis_holds{false};
    //! First (ρ, r) grid pair violating the hypothesis
    std::optional<std::pair<double, double>> failing_pair;
    double constant{0};  //!< C̃
    double lambda{0};  //!< interpolation ratio realizing C̃
    bool dominates{false};  //!< conclusion bound ≥ φ(ρ0) on every grid pair
    //! Largest φ(ρ0) / bound(ρ0, r0) seen on the grid
    double worst_ratio{0};
};

/*!
 * Check φ(ρ) ≤ η φ(r) + A/(r-ρ)^α + B/(r-ρ)^β + C on every grid pair
 * ρ < r and certify φ(ρ0) ≤ C̃ (A/(r0-ρ0)^α + B/(r0-ρ0)^β + C).
 *
 * C̃ = min over λ ∈ (η^{1/α}, 1) of (1-λ)^{-α} / (1 - η λ^{-α}), from the
 * radii ρ_{i+1} = ρ_i + (1-λ)λ^i (r0-ρ0); for α = 0 it is 1/(1-η).
 */
AbsorptionCertificate absorption_iteration(std::span<double const> radii,
                                           std::span<double const> phi,
                                           AbsorptionTerms const& terms);

}  // namespace gaugeflow
