#pragma once

#include <bit>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "cosserat/solver/diagnostics.hpp"

namespace cosserat::io {

inline constexpr const char* kDiagnosticsSchema = "# cosserat diagnostics v1";
inline constexpr const char* kDiagnosticsColumns =
    "t,step,total_mass,rotor_energy,casimir,rho_min,rho_max,div_max,cfl,first_law_residual,mode_gap";
inline constexpr const char* kSnapshotSchema = "# cosserat snapshot v1";
inline constexpr const char* kSnapshotColumns = "ix,iy,x1,x2,x3,y1,y2,y3,X1,X2,X3,Y1,Y2,Y3,rho,thermal";

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class DiagnosticsWriter {
 public:
  explicit DiagnosticsWriter(const std::filesystem::path& path) : out_(path) {
    if (!out_) throw Error("cannot write " + path.string());
    out_ << kDiagnosticsSchema << "\n" << kDiagnosticsColumns << "\n";
  }

  void write(const solver::DiagnosticRecord& r) {
    out_ << fmt(r.t) << ',' << r.step << ',' << fmt(r.total_mass) << ',' << fmt(r.rotor_energy) << ','
         << fmt(r.casimir) << ',' << fmt(r.rho_min) << ',' << fmt(r.rho_max) << ',' << fmt(r.div_max) << ','
         << fmt(r.cfl) << ',' << fmt(r.first_law_residual) << ',' << fmt(r.mode_gap) << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
};

inline nlohmann::ordered_json to_json(const solver::DiagnosticRecord& r) {
  nlohmann::ordered_json j;
  j["t"] = r.t;
  j["step"] = r.step;
  j["total_mass"] = r.total_mass;
  j["rotor_energy"] = r.rotor_energy;
  j["casimir"] = r.casimir;
  j["rho_min"] = r.rho_min;
  j["rho_max"] = r.rho_max;
  j["div_max"] = r.div_max;
  j["cfl"] = r.cfl;
  j["first_law_residual"] = r.first_law_residual;
  j["mode_gap"] = r.mode_gap;
  return j;
}

inline std::string snapshot_stem(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06ld", step);
  return buf;
}

/// One row per bundle node; X is repeated along the fiber.
inline void write_snapshot_csv(const std::filesystem::path& path, const solver::BundleGrid& g,
                               const solver::SimState& s, long step) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << kSnapshotSchema << "\n# t=" << fmt(s.t) << " step=" << step << "\n" << kSnapshotColumns << "\n";
  const std::size_t ny = g.y_count();
  for (std::size_t n = 0; n < g.size(); ++n) {
    const std::size_t ix = n / ny, iy = n % ny;
    const auto x = g.x(ix);
    const auto y = g.y(iy);
    out << ix << ',' << iy << ',' << fmt(x[0]) << ',' << fmt(x[1]) << ',' << fmt(x[2]) << ',' << fmt(y[0]) << ','
        << fmt(y[1]) << ',' << fmt(y[2]);
    for (int i = 0; i < 3; ++i) out << ',' << fmt(s.X[i][ix]);
    for (int i = 0; i < 3; ++i) out << ',' << fmt(s.Y[i][n]);
    out << ',' << fmt(s.rho[n]) << ',' << fmt(s.thermal[n]) << '\n';
  }
}

/// Raw little-endian float64 arrays (X1..X3 on the x-grid, then Y1..Y3, rho, thermal on the
/// bundle grid) with a JSON sidecar describing the layout.
inline void write_snapshot_raw(const std::filesystem::path& stem, const solver::BundleGrid& g,
                               const solver::SimState& s, long step) {
  const auto bin = std::filesystem::path(stem.string() + ".bin");
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw Error("cannot write " + bin.string());
  nlohmann::ordered_json fields = nlohmann::ordered_json::array();
  std::size_t offset = 0;
  auto put = [&](const solver::Field& f, const std::string& name, const char* grid) {
    for (double v : f) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
    fields.push_back({{"name", name}, {"grid", grid}, {"offset_bytes", offset}, {"count", f.size()}});
    offset += f.size() * sizeof(double);
  };
  for (int i = 0; i < 3; ++i) put(s.X[i], "X" + std::to_string(i + 1), "x");
  for (int i = 0; i < 3; ++i) put(s.Y[i], "Y" + std::to_string(i + 1), "bundle");
  put(s.rho, "rho", "bundle");
  put(s.thermal, "thermal", "bundle");

  nlohmann::ordered_json side;
  side["schema"] = "cosserat snapshot raw v1";
  side["t"] = s.t;
  side["step"] = step;
  side["dtype"] = "float64";
  side["endianness"] = "little";
  side["file"] = bin.filename().string();
  side["layout"] = "bundle index = x_index * y_count + y_index; x_index = i1 + n1 (i2 + n2 i3)";
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (int a = 0; a < 3; ++a)
    axes.push_back({{"n", g.nx(a)}, {"extent", g.spec().x[a].extent}, {"periodic", g.periodic(a)}});
  side["x_axes"] = axes;
  side["y_counts"] = {g.ny(0), g.ny(1), g.ny(2)};
  side["chart_radius"] = g.spec().chart_radius;
  side["fields"] = fields;
  std::ofstream js(stem.string() + ".json");
  js << side.dump(2) << "\n";
}

}  // namespace cosserat::io
