//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/errors.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace gaugeflow
{
//! Invalid argument or precondition violation on a public operation.
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Second derivatives requested on the boundary of the degeneracy set.
class BoundarySingularityError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! NaN or infinity produced during evaluation.
class NumericalError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Newton iteration did not reach the gradient tolerance.
class SolverError : public std::runtime_error
{
  public:
    SolverError(std::string const& what, double last_gradient_norm)
        : std::runtime_error(what), last_gradient_norm_(last_gradient_norm)
    {
    }

    double last_gradient_norm() const noexcept { return last_gradient_norm_; }

  private:
    double last_gradient_norm_;
};

//! Experiment configuration could not be parsed or failed validation.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string field, std::string const& what)
        : std::runtime_error(field.empty() ? what : field + ": " + what)
        , field_(std::move(field))
    {
    }

    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

}  // namespace gaugeflow
