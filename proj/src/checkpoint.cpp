//---------------------------------------------------------------------------//
// Copyright gaugeflow contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/checkpoint.cpp
//---------------------------------------------------------------------------//
#include "gaugeflow/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "gaugeflow/errors.hpp"

namespace gaugeflow
{
namespace
{
constexpr char magic[8] = {'G', 'F', 'C', 'K', 'P', 'T', '0', '1'};

template<class T>
void put(std::ostream& os, T value)
{
    os.write(reinterpret_cast<char const*>(&value), sizeof(T));
}

template<class T>
T get(std::istream& is)
{
    T value;
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!is)
    {
        throw ParameterError("truncated binary checkpoint");
    }
    return value;
}

std::vector<double> parse_row(std::string const& line)
{
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
    {
        row.push_back(std::stod(cell));
    }
    return row;
}
}  // namespace

char const* to_string(CheckpointFormat format)
{
    return format == CheckpointFormat::csv ? "csv" : "binary";
}

CheckpointFormat checkpoint_format_from_string(std::string const& name)
{
    if (name == "csv")
        return CheckpointFormat::csv;
    if (name == "binary")
        return CheckpointFormat::binary;
    throw ParameterError("unknown checkpoint format '" + name + "'");
}

std::string checkpoint_name(int k, CheckpointFormat format)
{
    return fmt::format(
        "u_{:05d}.{}", k, format == CheckpointFormat::csv ? "csv" : "bin");
}

//---------------------------------------------------------------------------//
void write_checkpoint(std::filesystem::path const& path,
                      Grid const& grid,
                      double t,
                      std::span<double const> values,
                      CheckpointFormat format)
{
    if (values.size() != static_cast<std::size_t>(grid.num_nodes()))
    {
        throw ParameterError("checkpoint values do not match the grid");
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
    {
        throw ParameterError("cannot open checkpoint '" + path.string() + "'");
    }
    if (format == CheckpointFormat::binary)
    {
        os.write(magic, sizeof(magic));
        put<std::int32_t>(os, grid.nx);
        put<std::int32_t>(os, grid.ny);
        for (double v : {grid.hx, grid.hy, grid.x0, grid.y0, t})
        {
            put(os, v);
        }
        os.write(reinterpret_cast<char const*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(double)));
        return;
    }
    os << "nx,ny,hx,hy,x0,y0,t\n"
       << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                      grid.nx,
                      grid.ny,
                      grid.hx,
                      grid.hy,
                      grid.x0,
                      grid.y0,
                      t);
    std::string line;
    for (int j = 0; j < grid.ny; ++j)
    {
        line.clear();
        for (int i = 0; i < grid.nx; ++i)
        {
            if (i)
                line += ',';
            line += fmt::format("{:.17g}", values[grid.index(i, j)]);
        }
        os << line << '\n';
    }
}

Checkpoint read_checkpoint(std::filesystem::path const& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
    {
        throw ParameterError("cannot open checkpoint '" + path.string() + "'");
    }
    Checkpoint cp;
    char head[sizeof(magic)] = {};
    is.read(head, sizeof(head));
    if (is && std::memcmp(head, magic, sizeof(magic)) == 0)
    {
        cp.grid.nx = get<std::int32_t>(is);
        cp.grid.ny = get<std::int32_t>(is);
        cp.grid.hx = get<double>(is);
        cp.grid.hy = get<double>(is);
        cp.grid.x0 = get<double>(is);
        cp.grid.y0 = get<double>(is);
        cp.t = get<double>(is);
        cp.values.resize(cp.grid.num_nodes());
        is.read(reinterpret_cast<char*>(cp.values.data()),
                static_cast<std::streamsize>(cp.values.size() * sizeof(double)));
        if (!is)
        {
            throw ParameterError("truncated binary checkpoint");
        }
        return cp;
    }

    is.clear();
    is.seekg(0);
    std::string line;
    std::getline(is, line);  // column names
    std::getline(is, line);
    auto const header = parse_row(line);
    if (header.size() != 7)
    {
        throw ParameterError("malformed checkpoint header in '" + path.string() + "'");
    }
    cp.grid.nx = static_cast<int>(header[0]);
    cp.grid.ny = static_cast<int>(header[1]);
    cp.grid.hx = header[2];
    cp.grid.hy = header[3];
    cp.grid.x0 = header[4];
    cp.grid.y0 = header[5];
    cp.t = header[6];
    cp.values.reserve(cp.grid.num_nodes());
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        auto const row = parse_row(line);
        cp.values.insert(cp.values.end(), row.begin(), row.end());
    }
    if (cp.values.size() != static_cast<std::size_t>(cp.grid.num_nodes()))
    {
        throw ParameterError("checkpoint '" + path.string()
                             + "' has the wrong number of values");
    }
    return cp;
}

//---------------------------------------------------------------------------//
void write_series(std::filesystem::path const& dir,
                  GridField const& field,
                  CheckpointFormat format)
{
    std::filesystem::create_directories(dir);
    for (int k = 0; k < field.num_levels(); ++k)
    {
        write_checkpoint(
            dir / checkpoint_name(k, format), field.grid, field.time(k), field.levels[k], format);
    }
}

GridField read_series(std::filesystem::path const& dir)
{
    GridField field;
    for (int k = 0;; ++k)
    {
        std::filesystem::path path;
        for (auto format : {CheckpointFormat::csv, CheckpointFormat::binary})
        {
            auto candidate = dir / checkpoint_name(k, format);
            if (std::filesystem::exists(candidate))
            {
                path = candidate;
                break;
            }
        }
        if (path.empty())
            break;
        Checkpoint cp = read_checkpoint(path);
        if (k == 0)
        {
            field.grid = cp.grid;
            field.t0 = cp.t;
        }
        else if (!(cp.grid == field.grid))
        {
            throw ParameterError("checkpoint grids differ within a series");
        }
        if (k == 1)
        {
            field.dt = cp.t - field.t0;
        }
        field.levels.push_back(std::move(cp.values));
    }
    if (field.levels.size() < 2)
    {
        throw ParameterError("no checkpoint series in '" + dir.string() + "'");
    }
    return field;
}

}  // namespace gaugeflow
