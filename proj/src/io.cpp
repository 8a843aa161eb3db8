#include "oddflow/io.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "oddflow/spectral.hpp"

#ifndef ODDFLOW_VERSION
#define ODDFLOW_VERSION "dev"
#endif

namespace oddflow {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  }
  return v;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), 4);
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) throw SnapshotError(std::string("truncated ") + what, offset_);
    offset_ += n;
  }

  std::uint32_t u32(const char* what) {
    std::uint32_t v = 0;
    bytes(reinterpret_cast<char*>(&v), 4, what);
    return to_little(v);
  }

  std::size_t offset() const { return offset_; }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

constexpr std::size_t kNameWidth = 16;
constexpr std::uint32_t kMaxDim = 1u << 15;

}  // namespace

Snapshot snapshot_of(const State& s) {
  const Grid& g = s.rho.grid();
  Snapshot snap;
  snap.nx = snap.ny = static_cast<std::uint32_t>(g.n());
  auto add = [&](const char* name, const ScalarField& f) {
    snap.names.emplace_back(name);
    snap.fields.emplace_back(f.values().begin(), f.values().end());
  };
  add("rho", s.rho);
  add("u1", s.u.x);
  add("u2", s.u.y);
  add("w1", s.w_eff.x);
  add("w2", s.w_eff.y);
  add("omega", curl2d(s.u));
  add("zeta_eff", curl2d(s.w_eff));
  return snap;
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  if (snap.names.size() != snap.fields.size()) throw std::invalid_argument("snapshot: names/fields mismatch");
  const std::size_t count = static_cast<std::size_t>(snap.nx) * snap.ny;
  out.write("ODDF", 4);
  put_u32(out, snap.version);
  put_u32(out, snap.nx);
  put_u32(out, snap.ny);
  put_u32(out, static_cast<std::uint32_t>(snap.names.size()));
  for (const auto& name : snap.names) {
    if (name.size() > kNameWidth) throw std::invalid_argument("snapshot field name longer than 16 bytes: " + name);
    std::string padded = name;
    padded.resize(kNameWidth, ' ');
    out.write(padded.data(), kNameWidth);
  }
  for (const auto& f : snap.fields) {
    if (f.size() != count) throw std::invalid_argument("snapshot: field size does not match nx * ny");
    for (double v : f) {
      const double le = to_little(v);
      out.write(reinterpret_cast<const char*>(&le), 8);
    }
  }
  if (!out) throw std::runtime_error("snapshot: write failed");
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_snapshot(out, snap);
}

Snapshot read_snapshot(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, 4, "magic");
  if (std::memcmp(magic, "ODDF", 4) != 0) throw SnapshotError("bad magic", 0);
  Snapshot snap;
  snap.version = r.u32("version");
  if (snap.version != kSnapshotVersion) throw SnapshotError("unsupported version " + std::to_string(snap.version), 4);
  snap.nx = r.u32("nx");
  snap.ny = r.u32("ny");
  if (snap.nx == 0 || snap.ny == 0 || snap.nx > kMaxDim || snap.ny > kMaxDim) {
    throw SnapshotError("implausible dimensions", 8);
  }
  const std::uint32_t nfields = r.u32("nfields");
  if (nfields > 1024) throw SnapshotError("implausible field count", 16);
  for (std::uint32_t k = 0; k < nfields; ++k) {
    char name[kNameWidth];
    r.bytes(name, kNameWidth, "field name");
    std::string s(name, kNameWidth);
    s.erase(s.find_last_not_of(' ') + 1);
    snap.names.push_back(s);
  }
  const std::size_t count = static_cast<std::size_t>(snap.nx) * snap.ny;
  for (std::uint32_t k = 0; k < nfields; ++k) {
    std::vector<double> f(count);
    r.bytes(reinterpret_cast<char*>(f.data()), 8 * count, "field data");
    for (double& v : f) v = to_little(v);
    snap.fields.push_back(std::move(f));
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_snapshot(in);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path_.string() + " for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw std::invalid_argument("csv row has the wrong number of columns");
  // Append and close per row so an interrupted run leaves a complete prefix.
  std::ofstream out(path_, std::ios::app);
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
  if (!out) throw std::runtime_error("csv write failed: " + path_.string());
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

std::string diagnostics_header() {
  std::string out;
  for (const auto& c : diagnostics_columns()) out += (out.empty() ? "" : ",") + c;
  return out;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
  nlohmann::json j;
  j["config_hash"] = m.config_hash;
  j["version"] = m.version;
  j["command"] = m.command;
  j["started"] = m.started;
  j["finished"] = m.finished.empty() ? nlohmann::json(nullptr) : nlohmann::json(m.finished);
  j["outcome"] = m.outcome;
  j["message"] = m.message;
  j["outputs"] = m.outputs;
  j["config"] = m.config_text;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write manifest " + tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

RunManifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  RunManifest m;
  m.config_hash = j.at("config_hash").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.command = j.value("command", "");
  m.started = j.at("started").get<std::string>();
  m.finished = j.at("finished").is_null() ? "" : j.at("finished").get<std::string>();
  m.outcome = j.at("outcome").get<std::string>();
  m.message = j.value("message", "");
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  m.config_text = j.value("config", "");
  return m;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string library_version() { return ODDFLOW_VERSION; }

}  // namespace oddflow
