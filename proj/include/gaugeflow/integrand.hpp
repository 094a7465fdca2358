//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/integrand.hpp
//! \brief Degenerate prototype integrands and their regularization chain.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <vector>

#include "convex_gauge.hpp"
#include "expression.hpp"
#include "linalg.hpp"

namespace gaugeflow
{
//! Distance from ∂E (in gauge units) inside which Hessians are refused.
inline constexpr double boundary_tolerance = 1e-9;

//---------------------------------------------------------------------------//
/*!
 * Coefficient field a(x, t) with declared bounds C1 ≤ a ≤ C2 and a
 * Lipschitz-in-x constant A.
 */
struct Coefficient
{
    Expression expr{Expression::constant(1.0)};
    double lower{1};  //!< C1
    double upper{1};  //!< C2
    double lipschitz{0};  //!< A

    double operator()(Vec2 x, double t) const { return expr(x.x, x.y, t); }
};

//---------------------------------------------------------------------------//
/*!
 * Parameters of the prototype integrand a(x,t)/p · (gauge(ξ) - 1)_+^p.
 */
struct IntegrandSpec
{
    ConvexBody body;
    double p{2};
    Coefficient coeff;

    //! Throws ParameterError unless p > 1 and 0 < C1 ≤ C2.
    void validate() const;
};

//! Value, gradient and (optional) Hessian in the gradient variable.
struct Jet
{
    double value{0};
    Vec2 gradient{};
    SymMat2 hessian{};
    bool hessian_valid{true};
};

//---------------------------------------------------------------------------//
/*!
 * Degenerate integrand F(x,t,ξ) that vanishes on the body E.
 *
 * For the Euclidean unit ball this is a/p (|ξ|-1)_+^p; other bodies use the
 * gauge in place of the Euclidean norm.
 */
class PrototypeIntegrand
{
  public:
    explicit PrototypeIntegrand(IntegrandSpec spec);

    IntegrandSpec const& spec() const { return spec_; }
    ConvexBody const& body() const { return spec_.body; }

    double value(Vec2 x, double t, Vec2 xi) const;
    Vec2 gradient(Vec2 x, double t, Vec2 xi) const;
    //! Throws BoundarySingularityError within boundary_tolerance of ∂E
    SymMat2 hessian(Vec2 x, double t, Vec2 xi) const;

    //! All derivatives at a given coefficient value a
    Jet jet_at(double a, Vec2 xi) const;

  private:
    IntegrandSpec spec_;
};

double prototype_value(IntegrandSpec const& spec, Vec2 x, double t, Vec2 xi);

//---------------------------------------------------------------------------//
/*!
 * C² cutoff Ψ: identity on [0, K̃], constant L on [L, ∞), joined by the
 * quintic q(τ) = τ + 4τ³ - 7τ⁴ + 3τ⁵ which matches value, slope and
 * curvature at both ends. Ψ is nondecreasing since
 * q'(τ) = (1-τ)²(15τ² + 2τ + 1).
 */
class SmoothCutoff
{
  public:
    SmoothCutoff() = default;
    SmoothCutoff(double identity_end, double plateau);

    double identity_end() const { return start_; }
    double plateau() const { return end_; }

    double value(double s) const;
    double d1(double s) const;
    double d2(double s) const;

    //! sup_s |Ψ'(s)| + |Ψ''(s)|
    double derivative_bound() const { return bound_; }

  private:
    double start_{0};
    double end_{1};
    double bound_{1};
};

//---------------------------------------------------------------------------//
/*!
 * Radial convex function Φ(ξ) = h(|ξ|).
 *
 * h vanishes on [0, r0]; h'' is piecewise linear through
 * (r0, 0), (r0 + w, P), (r1 - w, P), (r1, c) and equals c beyond r1, with P
 * chosen so that h'(r1) = c·r1. Hence on r ≥ r1 both Hessian eigenvalues
 * h'' and h'/r equal c exactly.
 */
class RadialConvexifier
{
  public:
    RadialConvexifier() = default;
    RadialConvexifier(double r0, double r1, double curvature);

    double flat_radius() const { return r0_; }
    double elliptic_radius() const { return r1_; }
    double curvature() const { return c_; }
    //! Largest Hessian eigenvalue, attained on the plateau
    double hessian_cap() const { return std::max(peak_, c_); }

    double h(double r) const;
    double dh(double r) const;
    double d2h(double r) const;

    double value(Vec2 xi) const { return this->h(norm(xi)); }
    Vec2 gradient(Vec2 xi) const;
    SymMat2 hessian(Vec2 xi) const;

  private:
    double r0_{0};
    double r1_{1};
    double c_{0};
    double peak_{0};
    // Knots of h'' and the integrated values of h, h' at each knot
    std::vector<double> knot_r_;
    std::vector<double> knot_d2_;
    std::vector<double> knot_d1_;
    std::vector<double> knot_d0_;
};

//---------------------------------------------------------------------------//
//! Constants produced while building the regularized chain.
struct ChainConstants
{
    double K{0};  //!< gradient bound of the reference solution
    double K_tilde{0};  //!< sup of F on B_{K+2R_E}
    double L{0};  //!< K̃ + 1
    double C_Psi{0};  //!< sup |Ψ'| + |Ψ''|
    double C_F{0};  //!< Hessian bound of F̃ on the annulus (inflated)
    double C_F_sampled{0};  //!< chain-rule bound from sampled F derivatives
    double N{0};  //!< radius beyond which F̃ is constant
    double truncated_gradient_bound{0};  //!< sup |∇F̃|
    double growth{0};  //!< C in |Ĥ_ε(ξ)| ≤ C (1 + |ξ|)
    double phi_hessian_cap{0};  //!< sup |∇²Φ| of the built convexifier
};

//---------------------------------------------------------------------------//
/*!
 * The chain F̃ = Ψ∘F, F̂ = F̃ + Φ, F̂_ε = F̂ + ε|ξ|²/2.
 */
class RegularizedIntegrand
{
  public:
    RegularizedIntegrand(PrototypeIntegrand base,
                         ChainConstants constants,
                         SmoothCutoff cutoff,
                         RadialConvexifier convexifier,
                         double epsilon);

    PrototypeIntegrand const& base() const { return base_; }
    ConvexBody const& body() const { return base_.body(); }
    ChainConstants const& constants() const { return constants_; }
    SmoothCutoff const& cutoff() const { return cutoff_; }
    RadialConvexifier const& convexifier() const { return convexifier_; }
    double epsilon() const { return epsilon_; }

    //! Copy with a different lift parameter; ε = 0 yields F̂ itself
    RegularizedIntegrand with_epsilon(double epsilon) const;

    //!@{
    //! Truncated integrand F̃ = Ψ∘F
    double truncated_value(Vec2 x, double t, Vec2 xi) const;
    Vec2 truncated_gradient(Vec2 x, double t, Vec2 xi) const;
    SymMat2 truncated_hessian(Vec2 x, double t, Vec2 xi) const;
    //!@}

    //! F̂_ε
    double value(Vec2 x, double t, Vec2 xi) const;
    //! Ĥ_ε = ∇F̂ + εξ
    Vec2 gradient(Vec2 x, double t, Vec2 xi) const;
    //! ∇²F̂ + εI; throws BoundarySingularityError on ∂E
    SymMat2 hessian(Vec2 x, double t, Vec2 xi) const;

    bool hessian_available(Vec2 xi) const;

    //!@{
    //! Evaluation at a precomputed coefficient value a = a(x, t)
    double value_at(double a, Vec2 xi) const;
    Jet jet_at(double a, Vec2 xi) const;
    //!@}

    //! Value, gradient and Hessian in one pass. On ∂E the Hessian omits the
    //! F̃ part and hessian_valid is false.
    Jet jet(Vec2 x, double t, Vec2 xi) const;

  private:
    PrototypeIntegrand base_;
    ChainConstants constants_;
    SmoothCutoff cutoff_;
    RadialConvexifier convexifier_;
    double epsilon_;
};

//---------------------------------------------------------------------------//
// FREE FUNCTIONS
//---------------------------------------------------------------------------//

/*!
 * Assemble the regularized chain for a reference gradient bound K and lift
 * ε ∈ (0, 1].
 */
RegularizedIntegrand
build_regularized(IntegrandSpec const& spec, double K, double epsilon);

//! Ĥ_ε(x,t,ξ)
inline Vec2
h_epsilon(RegularizedIntegrand const& reg, Vec2 x, double t, Vec2 xi)
{
    return reg.gradient(x, t, xi);
}

//! B̂_ε(x,t,ξ)(η,ζ) = <∇²F̂ η, ζ> + ε<η,ζ>
double bilinear_form(RegularizedIntegrand const& reg,
                     Vec2 x,
                     double t,
                     Vec2 xi,
                     Vec2 eta,
                     Vec2 zeta);

}  // namespace gaugeflow
