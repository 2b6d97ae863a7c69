#include "bhs/csv_io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace bhs {

namespace {

std::vector<double> split_numbers(const std::string& line, const std::string& path,
                                  std::size_t line_no, std::size_t expected) {
  std::vector<double> out;
  out.reserve(expected);
  const char* cursor = line.c_str();
  for (std::size_t col = 0; col < expected; ++col) {
    char* end = nullptr;
    const double v = std::strtod(cursor, &end);
    const char sep = col + 1 < expected ? ',' : '\0';
    if (end == cursor || *end != sep) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed row");
    }
    out.push_back(v);
    cursor = end + 1;
  }
  return out;
}

std::ifstream open_with_header(const std::string& path, const char* header) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error(path + ":1: expected header '" + std::string(header) + "'");
  }
  return in;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snap_t%.6f.csv", t);
  return buf;
}

void write_table(std::FILE* out, const SnapshotTable& table) {
  std::fprintf(out, "%s\n", kSnapshotHeader);
  for (std::size_t i = 0; i < table.x.size(); ++i) {
    std::fprintf(out, "%s,%s,%s,%s\n", format_double(table.x[i]).c_str(),
                 format_double(table.n[i]).c_str(), format_double(table.p[i]).c_str(),
                 format_double(table.w[i]).c_str());
  }
}

void write_snapshot(const std::string& path, const SimState& state, const Grid1D& grid) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot write " + path);
  SnapshotTable table{grid.centers(), state.n.values, state.p.values, state.w.values};
  write_table(f, table);
  const bool bad = std::ferror(f) != 0;
  if (std::fclose(f) != 0 || bad) throw std::runtime_error("write failed for " + path);
}

SnapshotTable read_snapshot(const std::string& path) {
  std::ifstream in = open_with_header(path, kSnapshotHeader);
  SnapshotTable table;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto row = split_numbers(line, path, line_no, 4);
    table.x.push_back(row[0]);
    table.n.push_back(row[1]);
    table.p.push_back(row[2]);
    table.w.push_back(row[3]);
  }
  return table;
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path)
    : path_(path), file_(std::fopen(path.c_str(), "w")) {
  if (!file_) throw std::runtime_error("cannot write " + path);
  std::fprintf(file_.get(), "%s\n", kDiagnosticsHeader);
}

void DiagnosticsWriter::append(const DiagnosticsRecord& r) {
  const double cols[] = {r.t,       r.mass,    r.max_p,    r.comp_residual,
                         r.front_pos, r.osc_mid, r.osc_over, r.jump_est};
  std::string row;
  for (std::size_t i = 0; i < std::size(cols); ++i) {
    if (i) row += ',';
    row += format_double(cols[i]);
  }
  row += '\n';
  if (std::fputs(row.c_str(), file_.get()) < 0) {
    throw std::runtime_error("write failed for " + path_);
  }
}

void DiagnosticsWriter::flush() {
  if (std::fflush(file_.get()) != 0) throw std::runtime_error("write failed for " + path_);
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path) {
  std::ifstream in = open_with_header(path, kDiagnosticsHeader);
  std::vector<DiagnosticsRecord> out;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto v = split_numbers(line, path, line_no, 8);
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
  }
  return out;
}

}  // namespace bhs
