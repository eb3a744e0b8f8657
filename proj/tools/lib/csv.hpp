#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bcdual/rsvd.hpp"
#include "bcdual/sutherland.hpp"

namespace bcdual::cli {

/// A parsed trajectory table: header names plus numeric rows.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// printf-style %.{precision}g; 17 digits round-trips every double.
std::string format_number(double x, int precision);

Table to_table(const sutherland::TrajectoryS& traj);
Table to_table(const rsvd::TrajectoryR& traj);

void write_csv(std::ostream& out, const Table& table, int precision);
void write_csv(const std::filesystem::path& path, const Table& table, int precision);

/// Throws std::runtime_error on ragged rows or non-numeric cells.
Table parse_csv(std::istream& in);
Table parse_csv(const std::filesystem::path& path);

}  // namespace bcdual::cli
