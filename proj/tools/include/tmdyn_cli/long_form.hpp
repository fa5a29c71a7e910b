#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmdyn::cli {

/// A CSV held as raw text cells, so reshaping never reformats a number.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(std::istream& in);
void write_table(std::ostream& out, const Table& t);

/// Number of leading key columns: 1 for trajectories (t), 2 for phase
/// diagrams (axis1, axis2), else 1.
std::size_t key_columns(const Table& wide);

/// Wide -> long: one row per (key..., series, value).
Table to_long_form(const Table& wide);
/// Long -> wide, restoring the original column order and row order.
Table from_long_form(const Table& tidy);

}  // namespace tmdyn::cli
