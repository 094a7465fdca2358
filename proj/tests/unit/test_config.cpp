//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/test_config.cpp
//---------------------------------------------------------------------------//
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "gaugeflow/app/config.hpp"
#include "gaugeflow/app/runner.hpp"
#include "gaugeflow/errors.hpp"

namespace gaugeflow::app
{
namespace
{
namespace fs = std::filesystem;

std::string default_text()
{
    std::ifstream is(GAUGEFLOW_SOURCE_DIR "/configs/default.json");
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string read_file(fs::path const& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

TEST(Config, default_file_matches_struct_defaults)
{
    auto c = parse_config(default_text());
    EXPECT_EQ(c, ExperimentConfig{});
    EXPECT_NO_THROW(validate(c));
}

TEST(Config, round_trip_is_identity)
{
    auto c = parse_config(default_text());
    c.body.kind = "polytope";
    c.body.vertices = {{1.2, 0.1}, {0.3, 1.0}, {-0.9, 0.6}, {-0.7, -0.8}};
    c.K = 3.5;
    c.analysis.cylinders = {{{1, 1}, 0.2, 0.3}};
    c.analysis.region = Region{0.5, 2.5, 0.5, 2.5, 0, 0.2};
    c.checkpoint = CheckpointFormat::binary;
    auto again = parse_config(serialize(c));
    EXPECT_EQ(again, c);
    EXPECT_EQ(serialize(again), serialize(c));
}

TEST(Config, epsilon_out_of_range_rejected)
{
    auto c = parse_config(default_text());
    c.epsilons = {1.5};
    try
    {
        validate(c);
        FAIL();
    }
    catch (ConfigError const& e)
    {
        EXPECT_EQ(e.field(), "epsilons[0]");
    }
}

TEST(Config, two_vertex_polytope_rejected)
{
    auto c = parse_config(default_text());
    c.body.kind = "polytope";
    c.body.vertices = {{1, 0}, {-1, 0}};
    try
    {
        validate(c);
        FAIL();
    }
    catch (ConfigError const& e)
    {
        EXPECT_EQ(e.field(), "body");
    }
}

TEST(Config, diagnostics_name_location)
{
    try
    {
        parse_config("{\n  \"seed\": 4,\n  \"grid\": {\"nx\": }\n}");
        FAIL();
    }
    catch (ConfigError const& e)
    {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
            << e.what();
    }
    try
    {
        parse_config(R"({"integrand": {"p": 2, "colour": 1}})");
        FAIL();
    }
    catch (ConfigError const& e)
    {
        EXPECT_EQ(e.field(), "integrand.colour");
    }
    EXPECT_THROW(parse_config(R"({"data": "sin(x"})"), ConfigError);
    EXPECT_THROW(parse_config(R"({"grid": {"nx": 2.5}})"), ConfigError);
}

TEST(Config, small_grid_rejected)
{
    auto c = parse_config(default_text());
    c.nx = 8;
    EXPECT_THROW(validate(c), ConfigError);
}

TEST(Config, hash_ignores_output_location)
{
    auto a = parse_config(default_text());
    auto b = a;
    b.output = "elsewhere";
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.seed = 43;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash_hex(a).size(), 16u);
}

//---------------------------------------------------------------------------//
ExperimentConfig small_config()
{
    auto c = parse_config(default_text());
    c.nx = c.ny = 17;
    c.horizon = 0.1;
    c.epsilons = {1, 0.1, 0.01};
    c.K = 4;
    return c;
}

TEST(Runner, solve_is_deterministic)
{
    auto c = small_config();
    auto base = fs::temp_directory_path() / "gaugeflow_unit_det";
    fs::remove_all(base);
    std::ostringstream log;
    ASSERT_EQ(run_solve(c, {base / "a", 1}, log), 0) << log.str();
    ASSERT_EQ(run_solve(c, {base / "b", 1}, log), 0) << log.str();
    int compared = 0;
    for (auto const& entry : fs::recursive_directory_iterator(base / "a"))
    {
        if (!entry.is_regular_file())
            continue;
        auto rel = fs::relative(entry.path(), base / "a");
        auto ext = rel.extension();
        if (ext != ".csv" && rel.filename() != "config.json")
            continue;
        EXPECT_EQ(read_file(entry.path()), read_file(base / "b" / rel)) << rel;
        ++compared;
    }
    EXPECT_GT(compared, 10);
    fs::remove_all(base);
}

TEST(Runner, zero_data_gives_zero_diagnostics)
{
    auto c = small_config();
    c.data = "0";
    c.source = "0";
    auto base = fs::temp_directory_path() / "gaugeflow_unit_zero";
    fs::remove_all(base);
    std::ostringstream log;
    ASSERT_EQ(run_solve(c, {base, 1}, log), 0) << log.str();
    auto report = nlohmann::json::parse(read_file(base / "report.json"));
    for (auto const& run : report["runs"])
        EXPECT_EQ(run["max_sup_norm"].get<double>(), 0) << run.dump();
    auto epsconv = read_file(base / "epsconv.csv");
    std::istringstream rows(epsconv);
    std::string line;
    std::getline(rows, line);
    while (std::getline(rows, line))
    {
        auto first = line.find(',');
        auto second = line.find(',', first + 1);
        EXPECT_EQ(std::stod(line.substr(first + 1, second - first - 1)), 0) << line;
    }
    fs::remove_all(base);
}

}  // namespace
}  // namespace gaugeflow::app
