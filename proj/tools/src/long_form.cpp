#include "tmdyn_cli/long_form.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tmdyn/error.hpp"

namespace tmdyn::cli {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << row[i];
  }
  out << '\n';
}

}  // namespace

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kConfigError, "csv", "empty CSV input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_line(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split_line(line);
    if (row.size() != t.header.size()) {
      throw Error(ErrorCode::kConfigError, "csv",
                  "row " + std::to_string(t.rows.size() + 1) + " has the wrong column count");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_table(std::ostream& out, const Table& t) {
  write_row(out, t.header);
  for (const auto& r : t.rows) write_row(out, r);
}

std::size_t key_columns(const Table& wide) {
  if (wide.header.size() >= 2 && wide.header[0] == "axis1" && wide.header[1] == "axis2") return 2;
  return 1;
}

Table to_long_form(const Table& wide) {
  const std::size_t nk = key_columns(wide);
  if (wide.header.size() <= nk) throw Error(ErrorCode::kConfigError, "csv", "no value columns");
  Table tidy;
  tidy.header.assign(wide.header.begin(), wide.header.begin() + static_cast<long>(nk));
  tidy.header.push_back("row");
  tidy.header.push_back("series");
  tidy.header.push_back("value");
  for (std::size_t r = 0; r < wide.rows.size(); ++r) {
    const auto& row = wide.rows[r];
    for (std::size_t c = nk; c < row.size(); ++c) {
      std::vector<std::string> out(row.begin(), row.begin() + static_cast<long>(nk));
      out.push_back(std::to_string(r));
      out.push_back(wide.header[c]);
      out.push_back(row[c]);
      tidy.rows.push_back(std::move(out));
    }
  }
  return tidy;
}

Table from_long_form(const Table& tidy) {
  const std::size_t n = tidy.header.size();
  if (n < 4 || tidy.header[n - 3] != "row" || tidy.header[n - 2] != "series" ||
      tidy.header[n - 1] != "value") {
    throw Error(ErrorCode::kConfigError, "csv", "not a long-form table");
  }
  const std::size_t nk = n - 3;
  Table wide;
  wide.header.assign(tidy.header.begin(), tidy.header.begin() + static_cast<long>(nk));
  std::map<std::string, std::size_t> column;
  std::map<std::size_t, std::size_t> row_of;
  for (const auto& r : tidy.rows) {
    const auto [it, fresh] = column.emplace(r[nk + 1], wide.header.size());
    if (fresh) wide.header.push_back(r[nk + 1]);
  }
  for (const auto& r : tidy.rows) {
    const std::size_t id = std::stoul(r[nk]);
    auto found = row_of.find(id);
    if (found == row_of.end()) {
      found = row_of.emplace(id, wide.rows.size()).first;
      std::vector<std::string> fresh(wide.header.size());
      for (std::size_t k = 0; k < nk; ++k) fresh[k] = r[k];
      wide.rows.push_back(std::move(fresh));
    }
    wide.rows[found->second][column.at(r[nk + 1])] = r[nk + 2];
  }
  return wide;
}

}  // namespace tmdyn::cli
