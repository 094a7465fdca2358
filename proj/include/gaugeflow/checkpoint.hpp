//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file gaugeflow/checkpoint.hpp
//! \brief Per-level field checkpoints in CSV or flat binary form.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "grid_field.hpp"

namespace gaugeflow
{
enum class CheckpointFormat
{
    csv,
    binary
};

char const* to_string(CheckpointFormat format);
CheckpointFormat checkpoint_format_from_string(std::string const& name);

//! One stored time level.
struct Checkpoint
{
    Grid grid;
    double t{0};
    std::vector<double> values;
};

/*!
 * Write one level.
 *
 * CSV: a header row "nx,ny,hx,hy,x0,y0,t", its values, then ny rows of nx
 * values (row-major). Binary: the 8-byte magic "GFCKPT01", int32 nx, ny,
 * float64 hx, hy, x0, y0, t and the values, all little-endian.
 */
void write_checkpoint(std::filesystem::path const& path,
                      Grid const& grid,
                      double t,
                      std::span<double const> values,
                      CheckpointFormat format);

//! Format detected from the magic bytes
Checkpoint read_checkpoint(std::filesystem::path const& path);

//! File name of level k: "u_00042.csv" / "u_00042.bin"
std::string checkpoint_name(int k, CheckpointFormat format);

//! Write every level of a field into \c dir.
void write_series(std::filesystem::path const& dir,
                  GridField const& field,
                  CheckpointFormat format);

//! Reassemble a field from consecutive checkpoints u_00000, u_00001, ...
GridField read_series(std::filesystem::path const& dir);

}  // namespace gaugeflow
