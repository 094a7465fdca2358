//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/properties.hpp
//! \brief Randomized invariant suites shared by verify, tests and acceptance.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "convex_gauge.hpp"
#include "integrand.hpp"
#include "pde_solver.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
/*!
 * One sampled inequality: \c worst is the largest observed violation
 * (lhs - rhs), so the check passes when worst ≤ tolerance.
 */
struct CheckResult
{
    std::string name;
    double worst{-1e300};
    double tolerance{0};
    long samples{0};
    std::string detail;
    bool forced_failure{false};

    bool passed() const { return !forced_failure && worst <= tolerance; }
    void observe(double violation)
    {
        ++samples;
        if (!(violation <= worst))
        {
            worst = violation;  // NaN propagates as a failure
        }
    }
};

struct SuiteResult
{
    std::string name;
    std::vector<CheckResult> checks;
    double seconds{0};

    bool passed() const;
    CheckResult const* find(std::string const& check) const;
};

//! Log-uniform radius in [rmin, rmax] times a uniform direction.
Vec2 random_vector(std::mt19937_64& rng, double rmin, double rmax);

//! Ball, ellipsoid, square and an irregular pentagon.
std::vector<ConvexBody> reference_bodies();

//---------------------------------------------------------------------------//
// GEOMETRY
//---------------------------------------------------------------------------//

//! Homogeneity, triangle, reverse triangle, Lipschitz, sandwich, algebraic
//! inequality, duality consistency and radii membership.
SuiteResult gauge_axiom_suite(ConvexBody const& body,
                              std::uint64_t seed,
                              int samples = 10000,
                              double tolerance = 1e-9);

//! Forward/inverse Lipschitz bounds, monotone family and δ-collapse.
SuiteResult gdelta_suite(ConvexBody const& body,
                         std::span<double const> deltas,
                         std::uint64_t seed,
                         int samples = 10000,
                         double tolerance = 1e-9);

//---------------------------------------------------------------------------//
// INTEGRANDS
//---------------------------------------------------------------------------//

/*!
 * Euclidean-ball prototype: Rayleigh quotients of the analytic Hessian
 * between C1 (|ξ|-1)^{p-1}/|ξ| and C2 (p-1)(|ξ|-1)^{p-2} for |ξ| ∈ (1, 10),
 * finite-difference Hessian agreement, plus vanishing on E, midpoint
 * convexity and gradient consistency.
 */
SuiteResult prototype_hessian_suite(std::span<double const> exponents,
                                    double C1,
                                    double C2,
                                    std::uint64_t seed,
                                    int samples = 10000);

struct RegularizationSuiteOptions
{
    double delta{0.5};  //!< ellipticity annulus 1+δ ≤ gauge ≤ 1/δ
    int samples{10000};
    //! Assert λ_emp ≥ C1 δ^p (prototype with p ≥ 2 on a Euclidean ball)
    bool check_prototype_lambda{true};
};

/*!
 * Certificate for the regularized chain: the four convexifier bounds,
 * Ĥ_ε monotonicity, B̂_ε Rayleigh range on the annulus, gradient
 * consistency, quadratic growth, chain agreement and the ε-lift.
 */
SuiteResult regularization_suite(RegularizedIntegrand const& reg,
                                 std::uint64_t seed,
                                 RegularizationSuiteOptions const& options = {});

//---------------------------------------------------------------------------//
// SOLVER
//---------------------------------------------------------------------------//

//! E^{k+1} + ‖u^{k+1}-u^k‖²_{L²_h}/dt ≤ E^k + tol at every step
CheckResult energy_dissipation_check(SolveResult const& run, double tol = 1e-9);

//! ‖u^k‖_∞ ≤ ‖data‖_∞ + tol at every level
CheckResult max_principle_check(SolveResult const& run, double tol = 1e-8);

struct UniformEnergyBound
{
    std::vector<double> epsilons;  //!< sweep order as given
    std::vector<double> ratios;  //!< ∬|D_h u_ε|² / ∬(1 + |D_h u|²)
    double constant{0};  //!< max ratio
    //! Growth per unit log(1/ε) does not slow down over the last two
    //! intervals of the decreasing-ε sweep (at least logarithmic divergence)
    bool blow_up{false};
};

UniformEnergyBound uniform_energy_bound(std::span<double const> epsilons,
                                        std::span<GridField const> fields,
                                        GridField const& datum);

//! Forward Steklov average on constant and linear-in-time series.
SuiteResult steklov_suite(Grid const& grid, double dt, int steps, double h);

//---------------------------------------------------------------------------//
// ANALYSIS
//---------------------------------------------------------------------------//

/*!
 * Excess invariance under affine shifts, nested-cylinder contraction,
 * superlevel monotonicity, regime exclusivity and modulus monotonicity on a
 * solved field.
 */
SuiteResult analysis_suite(GridField const& field,
                           ConvexBody const& body,
                           double delta,
                           std::uint64_t seed);

}  // namespace gaugeflow
