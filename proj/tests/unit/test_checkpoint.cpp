//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_checkpoint.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "gaugeflow/checkpoint.hpp"
#include "gaugeflow/errors.hpp"
#include "gaugeflow/pde_solver.hpp"

namespace gaugeflow
{
namespace
{
namespace fs = std::filesystem;

class CheckpointTest : public ::testing::TestWithParam<CheckpointFormat>
{
};

TEST_P(CheckpointTest, series_round_trip_is_bitwise)
{
    auto grid = Grid::rectangle(17, 19, -1, 2, 0.5, 3);
    auto field = sample_field(grid, 0.25, 0.1, 3, [](double x, double y, double t) {
        return std::sin(7 * x) * std::exp(y) / 3 + t;
    });
    auto dir = fs::temp_directory_path()
               / (std::string("gaugeflow_ckpt_") + to_string(GetParam()));
    fs::remove_all(dir);
    write_series(dir, field, GetParam());
    EXPECT_TRUE(fs::exists(dir / checkpoint_name(3, GetParam())));
    auto back = read_series(dir);
    EXPECT_EQ(back.grid, field.grid);
    EXPECT_EQ(back.num_levels(), field.num_levels());
    EXPECT_DOUBLE_EQ(back.t0, field.t0);
    EXPECT_NEAR(back.dt, field.dt, 1e-15);
    for (int k = 0; k < field.num_levels(); ++k)
        EXPECT_EQ(back.levels[k], field.levels[k]);
    fs::remove_all(dir);
}

INSTANTIATE_TEST_SUITE_P(Formats,
                         CheckpointTest,
                         ::testing::Values(CheckpointFormat::csv,
                                           CheckpointFormat::binary));

TEST(Checkpoint, names_and_formats)
{
    EXPECT_EQ(checkpoint_name(42, CheckpointFormat::csv), "u_00042.csv");
    EXPECT_EQ(checkpoint_name(7, CheckpointFormat::binary), "u_00007.bin");
    EXPECT_EQ(checkpoint_format_from_string("binary"), CheckpointFormat::binary);
    EXPECT_THROW(checkpoint_format_from_string("hdf5"), ParameterError);
}

TEST(Checkpoint, truncated_binary_rejected)
{
    auto path = fs::temp_directory_path() / "gaugeflow_truncated.bin";
    {
        std::ofstream os(path, std::ios::binary);
        os << "GFCKPT01";
    }
    EXPECT_ANY_THROW(read_checkpoint(path));
    fs::remove(path);
}

}  // namespace
}  // namespace gaugeflow
