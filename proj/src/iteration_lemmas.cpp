//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/iteration_lemmas.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/iteration_lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
char const* to_string(ConvergenceStatus status)
{
    switch (status)
    {
        case ConvergenceStatus::converged:
            return "converged";
        case ConvergenceStatus::threshold_violated:
            return "threshold_violated";
        case ConvergenceStatus::not_converged:
            return "not_converged";
    }
    return "unknown";
}

GeometricConvergence geometric_convergence(
    double C, double b, double kappa, double Y0, int steps, double floor)
{
    if (!(C >= 0) || !(b > 1) || !(kappa > 0) || !(Y0 >= 0))
    {
        throw ParameterError("need C >= 0, b > 1, kappa > 0 and Y0 >= 0");
    }
    GeometricConvergence result;
    result.threshold = std::pow(C, -1 / kappa) * std::pow(b, -1 / (kappa * kappa));
    if (Y0 > result.threshold)
    {
        return result;
    }
    result.iterates.push_back(Y0);
    result.monotone = true;
    double y = Y0;
    double bi = 1;
    for (int i = 0; i < steps && !(y < floor); ++i)
    {
        double const next = C * bi * std::pow(y, 1 + kappa);
        result.monotone = result.monotone && next <= y;
        result.iterates.push_back(next);
        y = next;
        bi *= b;
    }
    result.reached_floor = y < floor;
    result.status = result.monotone && result.reached_floor
                        ? ConvergenceStatus::converged
                        : ConvergenceStatus::not_converged;
    return result;
}

//---------------------------------------------------------------------------//
double AbsorptionTerms::rhs(double d) const
{
    double value = C;
    if (A != 0)
        value += A / std::pow(d, alpha);
    if (B != 0)
        value += B / std::pow(d, beta);
    return value;
}

AbsorptionCertificate absorption_iteration(std::span<double const> radii,
                                           std::span<double const> phi,
                                           AbsorptionTerms const& t)
{
    if (!(t.eta > 0 && t.eta < 1))
    {
        throw ParameterError("eta must lie in (0, 1)");
    }
    if (!(t.alpha >= t.beta && t.beta >= 0))
    {
        throw ParameterError("need alpha >= beta >= 0");
    }
    if (!(t.A >= 0 && t.B >= 0 && t.C >= 0))
    {
        throw ParameterError("A, B and C must be nonnegative");
    }
    if (radii.size() != phi.size() || radii.size() < 2
        || !std::is_sorted(radii.begin(), radii.end()))
    {
        throw ParameterError("need at least two sorted radii with one sample "
                             "each");
    }
    for (double v : phi)
    {
        if (!(v >= 0) || !std::isfinite(v))
        {
            throw ParameterError("phi samples must be finite and nonnegative");
        }
    }

    AbsorptionCertificate cert;
    cert.hypothesis_holds = true;
    std::size_t const n = radii.size();
    for (std::size_t a = 0; a < n && cert.hypothesis_holds; ++a)
    {
        for (std::size_t b = a + 1; b < n; ++b)
        {
            double const d = radii[b] - radii[a];
            if (!(d > 0))
                continue;
            double const bound = t.eta * phi[b] + t.rhs(d);
            if (phi[a] > bound * (1 + 1e-12))
            {
                cert.hypothesis_holds = false;
                cert.failing_pair = std::make_pair(radii[a], radii[b]);
                break;
            }
        }
    }
    if (!cert.hypothesis_holds)
    {
        return cert;
    }

    if (t.alpha == 0)
    {
        cert.constant = 1 / (1 - t.eta);
        cert.lambda = 0;
    }
    else
    {
        double const lo = std::pow(t.eta, 1 / t.alpha);
        cert.constant = std::numeric_limits<double>::infinity();
        constexpr int samples = 20000;
        for (int s = 1; s < samples; ++s)
        {
            double const lambda = lo + (1 - lo) * s / samples;
            double const c = std::pow(1 - lambda, -t.alpha)
                             / (1 - t.eta * std::pow(lambda, -t.alpha));
            if (c > 0 && c < cert.constant)
            {
                cert.constant = c;
                cert.lambda = lambda;
            }
        }
    }

    cert.dominates = true;
    for (std::size_t a = 0; a < n; ++a)
    {
        for (std::size_t b = a + 1; b < n; ++b)
        {
            double const d = radii[b] - radii[a];
            if (!(d > 0))
                continue;
            double const bound = cert.constant * t.rhs(d);
            double const ratio = bound > 0 ? phi[a] / bound
                                 : phi[a] > 0
                                     ? std::numeric_limits<double>::infinity()
                                     : 0.0;
            cert.worst_ratio = std::max(cert.worst_ratio, ratio);
            if (phi[a] > bound * (1 + 1e-12))
            {
                cert.dominates = false;
            }
        }
    }
    return cert;
}

}  // namespace gaugeflow
