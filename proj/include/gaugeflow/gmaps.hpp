//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/gmaps.hpp
//! \brief Gradient truncation maps G_δ.
//---------------------------------------------------------------------------//
#pragma once

#include "convex_gauge.hpp"
#include "linalg.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
/*!
 * G_δ(ξ) = (gauge(ξ) - (1+δ))_+ / gauge(ξ) · ξ, with G_δ(0) = 0.
 *
 * δ = 0 gives the map G. The map is Lipschitz with constant 3(R_E/r_E)² and,
 * on {gauge ≥ 1+δ}, invertible against G with constant 3(R_E/r_E)²(1+1/δ).
 */
class GDeltaMap
{
  public:
    GDeltaMap(ConvexBody body, double delta);

    ConvexBody const& body() const { return body_; }
    double delta() const { return delta_; }

    Vec2 operator()(Vec2 xi) const;

    //! 3 (R_E / r_E)²
    double lipschitz_forward_bound() const;
    //! 3 (R_E / r_E)² (1 + 1/δ); ParameterError for δ = 0
    double lipschitz_inverse_bound() const;
    //! Stated uniform bound δ / r_E on |G_δ(ξ) - G(ξ)|
    double collapse_bound() const { return delta_ / body_.inner_radius(); }
    //! Attained supremum δ R_E of |G_δ(ξ) - G(ξ)| (|ξ| ≤ R_E gauge(ξ))
    double sharp_collapse_bound() const
    {
        return delta_ * body_.outer_radius();
    }

  private:
    ConvexBody body_;
    double delta_;
};

inline Vec2 apply(GDeltaMap const& map, Vec2 xi) { return map(xi); }

}  // namespace gaugeflow
