//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/integrand.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
//---------------------------------------------------------------------------//
void IntegrandSpec::validate() const
{
    if (!(p > 1) || !std::isfinite(p))
    {
        throw ParameterError("growth exponent p must exceed 1");
    }
    if (!(coeff.lower > 0) || !(coeff.lower <= coeff.upper)
        || !std::isfinite(coeff.upper))
    {
        throw ParameterError("coefficient bounds must satisfy 0 < C1 <= C2");
    }
    if (!(coeff.lipschitz >= 0))
    {
        throw ParameterError("coefficient Lipschitz constant must be >= 0");
    }
}

//---------------------------------------------------------------------------//
PrototypeIntegrand::PrototypeIntegrand(IntegrandSpec spec)
    : spec_(std::move(spec))
{
    spec_.validate();
}

Jet PrototypeIntegrand::jet_at(double a, Vec2 xi) const
{
    Jet result;
    double const g = spec_.body.gauge(xi);
    double const s = g - 1;
    if (std::abs(s) <= boundary_tolerance)
    {
        result.hessian_valid = false;
    }
    if (s <= 0)
    {
        return result;
    }
    double const p = spec_.p;
    double const sp1 = std::pow(s, p - 1);
    Vec2 const dg = spec_.body.gauge_gradient(xi);

    result.value = a / p * sp1 * s;
    result.gradient = (a * sp1) * dg;
    if (result.hessian_valid)
    {
        double const sp2 = std::pow(s, p - 2);
        result.hessian = (a * (p - 1) * sp2) * SymMat2::outer(dg)
                         + (a * sp1) * spec_.body.gauge_hessian(xi);
    }
    return result;
}

double PrototypeIntegrand::value(Vec2 x, double t, Vec2 xi) const
{
    double const s = spec_.body.gauge(xi) - 1;
    if (s <= 0)
    {
        return 0;
    }
    return spec_.coeff(x, t) / spec_.p * std::pow(s, spec_.p);
}

Vec2 PrototypeIntegrand::gradient(Vec2 x, double t, Vec2 xi) const
{
    return this->jet_at(spec_.coeff(x, t), xi).gradient;
}

SymMat2 PrototypeIntegrand::hessian(Vec2 x, double t, Vec2 xi) const
{
    Jet const j = this->jet_at(spec_.coeff(x, t), xi);
    if (!j.hessian_valid)
    {
        throw BoundarySingularityError(
            "integrand Hessian requested on the boundary of E");
    }
    return j.hessian;
}

double prototype_value(IntegrandSpec const& spec, Vec2 x, double t, Vec2 xi)
{
    return PrototypeIntegrand(spec).value(x, t, xi);
}

//---------------------------------------------------------------------------//
// SMOOTH CUTOFF
//---------------------------------------------------------------------------//
namespace
{
double q0(double u)
{
    return u * (1 + u * u * (4 + u * (-7 + 3 * u)));
}
double q1(double u)
{
    return (1 - u) * (1 - u) * (15 * u * u + 2 * u + 1);
}
double q2(double u)
{
    return u * (24 + u * (-84 + 60 * u));
}
}  // namespace

SmoothCutoff::SmoothCutoff(double identity_end, double plateau)
    : start_(identity_end), end_(plateau)
{
    if (!(identity_end >= 0) || !(plateau > identity_end))
    {
        throw ParameterError("cutoff requires 0 <= K~ < L");
    }
    // Locate the maximum of q' + |q''| / width on a fine grid, then refine.
    double const width = end_ - start_;
    auto f = [width](double u) { return q1(u) + std::abs(q2(u)) / width; };
    int const n = 20000;
    double best = 1;
    double best_u = 0;
    for (int i = 0; i <= n; ++i)
    {
        double const u = double(i) / n;
        if (f(u) > best)
        {
            best = f(u);
            best_u = u;
        }
    }
    for (int i = -200; i <= 200; ++i)
    {
        double const u = std::clamp(best_u + i * 1e-7, 0.0, 1.0);
        best = std::max(best, f(u));
    }
    bound_ = best * (1 + 1e-9);
}

double SmoothCutoff::value(double s) const
{
    if (s <= start_)
    {
        return s;
    }
    if (s >= end_)
    {
        return end_;
    }
    double const w = end_ - start_;
    return start_ + w * q0((s - start_) / w);
}

double SmoothCutoff::d1(double s) const
{
    if (s <= start_)
    {
        return 1;
    }
    if (s >= end_)
    {
        return 0;
    }
    double const w = end_ - start_;
    return q1((s - start_) / w);
}

double SmoothCutoff::d2(double s) const
{
    if (s <= start_ || s >= end_)
    {
        return 0;
    }
    double const w = end_ - start_;
    return q2((s - start_) / w) / w;
}

//---------------------------------------------------------------------------//
// RADIAL CONVEXIFIER
//---------------------------------------------------------------------------//
RadialConvexifier::RadialConvexifier(double r0, double r1, double curvature)
    : r0_(r0), r1_(r1), c_(curvature)
{
    if (!(r0 > 0) || !(r1 > r0) || !(curvature > 0))
    {
        throw ParameterError("convexifier requires 0 < r0 < r1, c > 0");
    }
    double const gap = r1 - r0;
    double const w = gap / 8;
    peak_ = c_ * (r1 - 0.5 * w) / (gap - w);

    knot_r_ = {r0, r0 + w, r1 - w, r1};
    knot_d2_ = {0, peak_, peak_, c_};
    knot_d1_ = {0};
    knot_d0_ = {0};
    for (std::size_t i = 0; i + 1 < knot_r_.size(); ++i)
    {
        double const s = knot_r_[i + 1] - knot_r_[i];
        double const ya = knot_d2_[i];
        double const m = (knot_d2_[i + 1] - ya) / s;
        knot_d1_.push_back(knot_d1_[i] + ya * s + m * s * s / 2);
        knot_d0_.push_back(knot_d0_[i] + knot_d1_[i] * s + ya * s * s / 2
                           + m * s * s * s / 6);
    }
    // Pin h'(r1) = c r1 against rounding in the segment sums
    knot_d1_.back() = c_ * r1;
}

double RadialConvexifier::h(double r) const
{
    if (r <= r0_)
    {
        return 0;
    }
    std::size_t i = knot_r_.size() - 1;
    while (i > 0 && r < knot_r_[i])
    {
        --i;
    }
    double const s = r - knot_r_[i];
    double const ya = knot_d2_[i];
    double const m = i + 1 < knot_r_.size()
                         ? (knot_d2_[i + 1] - ya) / (knot_r_[i + 1] - knot_r_[i])
                         : 0.0;
    return knot_d0_[i] + knot_d1_[i] * s + ya * s * s / 2 + m * s * s * s / 6;
}

double RadialConvexifier::dh(double r) const
{
    if (r <= r0_)
    {
        return 0;
    }
    if (r >= r1_)
    {
        return c_ * r;
    }
    std::size_t i = knot_r_.size() - 1;
    while (i > 0 && r < knot_r_[i])
    {
        --i;
    }
    double const s = r - knot_r_[i];
    double const ya = knot_d2_[i];
    double const m = (knot_d2_[i + 1] - ya) / (knot_r_[i + 1] - knot_r_[i]);
    return knot_d1_[i] + ya * s + m * s * s / 2;
}

double RadialConvexifier::d2h(double r) const
{
    if (r <= r0_)
    {
        return 0;
    }
    if (r >= r1_)
    {
        return c_;
    }
    std::size_t i = knot_r_.size() - 1;
    while (i > 0 && r < knot_r_[i])
    {
        --i;
    }
    double const s = r - knot_r_[i];
    double const m = (knot_d2_[i + 1] - knot_d2_[i])
                     / (knot_r_[i + 1] - knot_r_[i]);
    return knot_d2_[i] + m * s;
}

Vec2 RadialConvexifier::gradient(Vec2 xi) const
{
    double const r = norm(xi);
    if (r <= r0_)
    {
        return {};
    }
    return (this->dh(r) / r) * xi;
}

SymMat2 RadialConvexifier::hessian(Vec2 xi) const
{
    double const r = norm(xi);
    if (r <= r0_)
    {
        return {};
    }
    double const radial = this->d2h(r);
    double const tangential = r >= r1_ ? c_ : this->dh(r) / r;
    SymMat2 const uu = SymMat2::outer(xi / r);
    return tangential * SymMat2::identity() + (radial - tangential) * uu;
}

//---------------------------------------------------------------------------//
// REGULARIZED INTEGRAND
//---------------------------------------------------------------------------//
RegularizedIntegrand::RegularizedIntegrand(PrototypeIntegrand base,
                                           ChainConstants constants,
                                           SmoothCutoff cutoff,
                                           RadialConvexifier convexifier,
                                           double epsilon)
    : base_(std::move(base))
    , constants_(constants)
    , cutoff_(cutoff)
    , convexifier_(std::move(convexifier))
    , epsilon_(epsilon)
{
}

RegularizedIntegrand RegularizedIntegrand::with_epsilon(double epsilon) const
{
    if (!(epsilon >= 0 && epsilon <= 1))
    {
        throw ParameterError("lift parameter must lie in [0, 1]");
    }
    RegularizedIntegrand result = *this;
    result.constants_.growth
        = std::max(constants_.truncated_gradient_bound,
                   2 * constants_.C_F + 1 + epsilon);
    result.epsilon_ = epsilon;
    return result;
}

namespace
{
Jet truncate(Jet const& f, SmoothCutoff const& psi)
{
    Jet result;
    double const d1 = psi.d1(f.value);
    result.value = psi.value(f.value);
    result.gradient = d1 * f.gradient;
    result.hessian_valid = f.hessian_valid;
    if (f.hessian_valid)
    {
        result.hessian = psi.d2(f.value) * SymMat2::outer(f.gradient)
                         + d1 * f.hessian;
    }
    return result;
}
}  // namespace

double RegularizedIntegrand::truncated_value(Vec2 x, double t, Vec2 xi) const
{
    return cutoff_.value(base_.value(x, t, xi));
}

Vec2 RegularizedIntegrand::truncated_gradient(Vec2 x, double t, Vec2 xi) const
{
    return truncate(base_.jet_at(base_.spec().coeff(x, t), xi), cutoff_)
        .gradient;
}

SymMat2
RegularizedIntegrand::truncated_hessian(Vec2 x, double t, Vec2 xi) const
{
    Jet const j
        = truncate(base_.jet_at(base_.spec().coeff(x, t), xi), cutoff_);
    if (!j.hessian_valid)
    {
        throw BoundarySingularityError(
            "truncated Hessian requested on the boundary of E");
    }
    return j.hessian;
}

Jet RegularizedIntegrand::jet(Vec2 x, double t, Vec2 xi) const
{
    return this->jet_at(base_.spec().coeff(x, t), xi);
}

double RegularizedIntegrand::value_at(double a, Vec2 xi) const
{
    double f = 0;
    double const s = this->body().gauge(xi) - 1;
    if (s > 0)
    {
        f = a / base_.spec().p * std::pow(s, base_.spec().p);
    }
    return cutoff_.value(f) + convexifier_.value(xi)
           + 0.5 * epsilon_ * norm_sq(xi);
}

Jet RegularizedIntegrand::jet_at(double a, Vec2 xi) const
{
    Jet result = truncate(base_.jet_at(a, xi), cutoff_);
    result.value += convexifier_.value(xi) + 0.5 * epsilon_ * norm_sq(xi);
    result.gradient += convexifier_.gradient(xi) + epsilon_ * xi;
    if (!result.hessian_valid)
    {
        result.hessian = {};
    }
    result.hessian += convexifier_.hessian(xi)
                      + SymMat2::identity(epsilon_);
    return result;
}

double RegularizedIntegrand::value(Vec2 x, double t, Vec2 xi) const
{
    return this->truncated_value(x, t, xi) + convexifier_.value(xi)
           + 0.5 * epsilon_ * norm_sq(xi);
}

Vec2 RegularizedIntegrand::gradient(Vec2 x, double t, Vec2 xi) const
{
    return this->jet(x, t, xi).gradient;
}

SymMat2 RegularizedIntegrand::hessian(Vec2 x, double t, Vec2 xi) const
{
    Jet const j = this->jet(x, t, xi);
    if (!j.hessian_valid)
    {
        throw BoundarySingularityError(
            "regularized Hessian requested on the boundary of E");
    }
    return j.hessian;
}

bool RegularizedIntegrand::hessian_available(Vec2 xi) const
{
    return std::abs(this->body().gauge(xi) - 1) > boundary_tolerance;
}

double bilinear_form(RegularizedIntegrand const& reg,
                     Vec2 x,
                     double t,
                     Vec2 xi,
                     Vec2 eta,
                     Vec2 zeta)
{
    return reg.hessian(x, t, xi).quad(eta, zeta);
}

//---------------------------------------------------------------------------//
// CONSTRUCTION
//---------------------------------------------------------------------------//
namespace
{
struct DerivativeSups
{
    double gradient{0};
    double hessian{0};
};

//! Sampled sup of |∇F| and |∇²F| over r_lo ≤ |ξ| ≤ r_hi and the
//! coefficient range; F is smooth there, unlike Ψ∘F.
DerivativeSups sample_derivatives(PrototypeIntegrand const& base,
                                  double r_lo,
                                  double r_hi)
{
    constexpr int n_radii = 200;
    constexpr int n_angles = 180;
    constexpr int n_coeff = 5;
    auto const& c = base.spec().coeff;
    DerivativeSups result;
    for (int ia = 0; ia < n_coeff; ++ia)
    {
        double const a = c.lower + (c.upper - c.lower) * ia / (n_coeff - 1);
        for (int ir = 0; ir < n_radii; ++ir)
        {
            double const r = r_lo + (r_hi - r_lo) * ir / (n_radii - 1);
            for (int it = 0; it < n_angles; ++it)
            {
                Vec2 const xi
                    = r * unit_vector(2 * std::numbers::pi * it / n_angles);
                Jet const j = base.jet_at(a, xi);
                result.gradient = std::max(result.gradient, norm(j.gradient));
                if (j.hessian_valid)
                {
                    result.hessian = std::max(result.hessian, j.hessian.op_norm());
                }
            }
        }
    }
    return result;
}

//! sup |Ψ'| and sup |Ψ''| on the transition interval
std::pair<double, double> cutoff_sups(SmoothCutoff const& psi)
{
    constexpr int n = 4096;
    double d1 = 1;
    double d2 = 0;
    double const a = psi.identity_end();
    double const b = psi.plateau();
    for (int i = 0; i <= n; ++i)
    {
        double const s = a + (b - a) * i / n;
        d1 = std::max(d1, std::abs(psi.d1(s)));
        d2 = std::max(d2, std::abs(psi.d2(s)));
    }
    return {d1, d2};
}
}  // namespace

RegularizedIntegrand
build_regularized(IntegrandSpec const& spec, double K, double epsilon)
{
    if (!(epsilon > 0 && epsilon <= 1))
    {
        throw ParameterError("lift parameter epsilon must lie in (0, 1]");
    }
    if (!(K >= 0) || !std::isfinite(K))
    {
        throw ParameterError("gradient bound K must be finite and >= 0");
    }
    PrototypeIntegrand base(spec);
    ConvexBody const& body = spec.body;
    double const r_in = body.inner_radius();
    double const r_out = body.outer_radius();
    double const p = spec.p;
    auto const& coeff = spec.coeff;

    ChainConstants k;
    k.K = K;
    // The largest gauge on B_ρ is ρ / r_E
    double const work_radius = K + 2 * r_out;
    k.K_tilde = coeff.upper / p
                * std::pow(std::max(0.0, work_radius / r_in - 1), p);
    k.L = k.K_tilde + 1;

    SmoothCutoff psi(k.K_tilde, k.L);
    k.C_Psi = psi.derivative_bound();

    // gauge ≥ |ξ|/R_E, so F ≥ L once |ξ| ≥ R_E (1 + (pL/C1)^{1/p})
    k.N = std::max(r_out * (1 + std::pow(p * k.L / coeff.lower, 1 / p)),
                   work_radius);

    // ∇²F̃ = Ψ'(F)∇²F + Ψ''(F)∇F⊗∇F
    auto const sups = sample_derivatives(base, K + r_out, k.N);
    auto const [psi1, psi2] = cutoff_sups(psi);
    k.C_F_sampled = psi1 * sups.hessian + psi2 * sups.gradient * sups.gradient;
    k.C_F = std::max(1.5 * k.C_F_sampled, 1.0);

    RadialConvexifier phi(K + r_out, work_radius, k.C_F + 1);
    k.phi_hessian_cap = phi.hessian_cap();

    // |∇F̃| ≤ sup_{B_N}|∇F| ≤ C2 (N/r_E - 1)^{p-1} / r_E and
    // |∇Φ(ξ)| ≤ (2 C_F + 1)|ξ|
    k.truncated_gradient_bound
        = coeff.upper * std::pow(std::max(0.0, k.N / r_in - 1), p - 1) / r_in;
    k.growth = std::max(k.truncated_gradient_bound, 2 * k.C_F + 1 + epsilon);

    return RegularizedIntegrand(
        std::move(base), k, psi, std::move(phi), epsilon);
}

}  // namespace gaugeflow
