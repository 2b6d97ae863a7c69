#pragma once

// CSV layouts shared with the plotting scripts.
//
//   snap_t<seconds, 6 decimals>.csv   x,n,p,W        one row per cell center
//   diagnostics.csv                   t,mass,max_p,comp_residual,front_pos,
//                                     osc_mid,osc_over,jump_est
//
// Values are written with 17 significant digits so that reading a file back
// reproduces every double exactly.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "bhs/diagnostics.hpp"
#include "bhs/grid.hpp"
#include "bhs/transport.hpp"

namespace bhs {

inline constexpr const char* kSnapshotHeader = "x,n,p,W";
inline constexpr const char* kDiagnosticsHeader =
    "t,mass,max_p,comp_residual,front_pos,osc_mid,osc_over,jump_est";

/// Round-trip-safe rendering: "%.17g", or "nan".
std::string format_double(double v);

/// "snap_t12.500000.csv"
std::string snapshot_filename(double t);

struct SnapshotTable {
  std::vector<double> x;
  std::vector<double> n;
  std::vector<double> p;
  std::vector<double> w;
};

/// Throws std::runtime_error when the file cannot be written.
void write_snapshot(const std::string& path, const SimState& state, const Grid1D& grid);

/// Writes rows x,n,p,W from explicit columns (used for analytic wave tables).
void write_table(std::FILE* out, const SnapshotTable& table);

/// Throws std::runtime_error naming file and line on malformed input.
SnapshotTable read_snapshot(const std::string& path);

class DiagnosticsWriter {
 public:
  explicit DiagnosticsWriter(const std::string& path);
  void append(const DiagnosticsRecord& rec);
  void flush();

 private:
  struct Closer {
    void operator()(std::FILE* f) const { std::fclose(f); }
  };
  std::string path_;
  std::unique_ptr<std::FILE, Closer> file_;
};

std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path);

}  // namespace bhs
