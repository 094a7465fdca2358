//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/gmaps.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/gmaps.hpp"

#include <cmath>
#include <utility>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
GDeltaMap::GDeltaMap(ConvexBody body, double delta)
    : body_(std::move(body)), delta_(delta)
{
    if (!(delta >= 0) || !std::isfinite(delta))
    {
        throw ParameterError("delta must be finite and nonnegative");
    }
}

Vec2 GDeltaMap::operator()(Vec2 xi) const
{
    double const g = body_.gauge(xi);
    double const excess = g - (1 + delta_);
    if (excess <= 0)
    {
        return {};
    }
    return (excess / g) * xi;
}

double GDeltaMap::lipschitz_forward_bound() const
{
    double const ratio = body_.outer_radius() / body_.inner_radius();
    return 3 * ratio * ratio;
}

double GDeltaMap::lipschitz_inverse_bound() const
{
    if (!(delta_ > 0))
    {
        throw ParameterError("inverse Lipschitz bound requires delta > 0");
    }
    return this->lipschitz_forward_bound() * (1 + 1 / delta_);
}

}  // namespace gaugeflow
