#include "csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bcdual::cli {

namespace {

template <typename Point>
Table table_of(const Trajectory<Point>& traj, const char* pos, const char* mom) {
  Table table;
  const int n = traj.states.empty() ? 0 : traj.states.front().n();
  table.header.push_back("t");
  for (int c = 1; c <= n; ++c) table.header.push_back(std::string(pos) + "_" + std::to_string(c));
  for (int c = 1; c <= n; ++c) table.header.push_back(std::string(mom) + "_" + std::to_string(c));
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const Point& s = traj.states[k];
    std::vector<double> row{traj.times[k]};
    if constexpr (std::is_same_v<Point, PhasePointS>) {
      row.insert(row.end(), s.q.data(), s.q.data() + n);
      row.insert(row.end(), s.p.data(), s.p.data() + n);
    } else {
      row.insert(row.end(), s.lambda.data(), s.lambda.data() + n);
      row.insert(row.end(), s.theta.data(), s.theta.data() + n);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

std::string format_number(double x, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

Table to_table(const sutherland::TrajectoryS& traj) { return table_of(traj, "q", "p"); }
Table to_table(const rsvd::TrajectoryR& traj) { return table_of(traj, "lambda", "theta"); }

void write_csv(std::ostream& out, const Table& table, int precision) {
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i], precision);
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const Table& table, int precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(out, table, precision);
  if (!out) throw std::runtime_error("write to " + path.string() + " failed");
}

Table parse_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                               std::to_string(table.header.size()) + " cells");
    }
    std::vector<double> row;
    for (const auto& cell : cells) {
      char* end = nullptr;
      errno = 0;
      const double x = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0' || (errno == ERANGE && std::isinf(x))) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      row.push_back(x);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_csv(in);
}

}  // namespace bcdual::cli
