#pragma once

// Persistence: ODDF field snapshots, CSV time series and run manifests.
//
// ODDF layout (all integers u32 little-endian, data f64 little-endian):
//   "ODDF" | version | nx | ny | nfields | nfields x 16-byte space-padded names | fields, row-major

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "oddflow/diagnostics.hpp"

namespace oddflow {

inline constexpr std::uint32_t kSnapshotVersion = 1;

struct Snapshot {
  std::uint32_t version = kSnapshotVersion;
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  std::vector<std::string> names;
  /// One array of nx * ny values per name, index ix + nx * iy.
  std::vector<std::vector<double>> fields;
};

class SnapshotError : public std::runtime_error {
 public:
  SnapshotError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// rho, u1, u2, w1, w2, omega, zeta_eff
Snapshot snapshot_of(const State& s);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
void write_snapshot(std::ostream& out, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);
Snapshot read_snapshot(std::istream& in);

/// %.17g, with nan/inf spelled that way.
std::string format_number(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);

 private:
  std::filesystem::path path_;
  std::size_t columns_;
};

std::string diagnostics_header();

struct RunManifest {
  std::string config_hash;
  std::string version;
  std::string command;
  std::string started;
  std::string finished;
  std::string outcome = "running";
  std::string message;
  std::vector<std::string> outputs;
  std::string config_text;
};

/// Writes atomically (temporary file, then rename).
void write_manifest(const std::filesystem::path& path, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);

/// UTC, ISO 8601.
std::string utc_now();
std::string library_version();

}  // namespace oddflow
