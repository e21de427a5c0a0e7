#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqpw/errors.hpp"
#include "fqpw/units.hpp"

namespace fqpw {

using IntVec3 = std::array<int, 3>;
using Vec3 = Eigen::Vector3d;

inline IntVec3 operator+(const IntVec3& a, const IntVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline IntVec3 operator-(const IntVec3& a, const IntVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline IntVec3 operator-(const IntVec3& a) { return {-a[0], -a[1], -a[2]}; }
inline bool is_zero(const IntVec3& a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
inline long norm2(const IntVec3& a) {
  return long(a[0]) * a[0] + long(a[1]) * a[1] + long(a[2]) * a[2];
}

/** @brief Orthorhombic simulation cell, lengths in bohr. */
class UnitCell {
 public:
  UnitCell() = default;

  static UnitCell from_bohr(double a1, double a2, double a3) {
    if (!(a1 > 0) || !(a2 > 0) || !(a3 > 0) || !std::isfinite(a1 * a2 * a3))
      throw ValidationError("cell lengths must be positive and finite");
    UnitCell c;
    c.a_ = {a1, a2, a3};
    c.omega_ = a1 * a2 * a3;
    double amax = std::max({a1, a2, a3}), amin = std::min({a1, a2, a3});
    c.cubic_ = (amax - amin) <= 1e-12 * amax;
    return c;
  }

  double a(int i) const { return a_[i]; }
  const std::array<double, 3>& lengths() const { return a_; }
  double omega() const { return omega_; }
  bool is_cubic() const { return cubic_; }

  Vec3 direct_vector(int i) const {
    Vec3 v = Vec3::Zero();
    v[i] = a_[i];
    return v;
  }
  Vec3 reciprocal_primitive(int i) const {
    Vec3 v = Vec3::Zero();
    v[i] = 2.0 * units::kPi / a_[i];
    return v;
  }
  /// 2 pi (v1/a1, v2/a2, v3/a3) for any integer triple
  Vec3 wavevector(const IntVec3& v) const {
    return {2.0 * units::kPi * v[0] / a_[0], 2.0 * units::kPi * v[1] / a_[1],
            2.0 * units::kPi * v[2] / a_[2]};
  }

  bool operator==(const UnitCell&) const = default;

 private:
  std::array<double, 3> a_{1.0, 1.0, 1.0};
  double omega_ = 1.0;
  bool cubic_ = true;
};

inline UnitCell unit_cell_from_angstrom(double a1, double a2, double a3) {
  if (!(a1 > 0) || !(a2 > 0) || !(a3 > 0))
    throw ValidationError("cell lengths must be positive");
  return UnitCell::from_bohr(a1 * units::kAngstromToBohr, a2 * units::kAngstromToBohr,
                             a3 * units::kAngstromToBohr);
}

/** @brief Signed n_p-bit momentum grid; N = (2^{n_p} - 1)^3. */
class PlaneWaveGrid {
 public:
  explicit PlaneWaveGrid(int n_p) : n_p_(n_p) {
    if (n_p < 1 || n_p > 20) throw ValidationError("n_p must lie in [1, 20]");
    side_ = (std::int64_t(1) << n_p) - 1;
  }

  int n_p() const { return n_p_; }
  int max_component() const { return int((std::int64_t(1) << (n_p_ - 1)) - 1); }
  std::int64_t side() const { return side_; }
  std::int64_t N() const { return side_ * side_ * side_; }

  bool contains(const IntVec3& p) const {
    int m = max_component();
    for (int c : p)
      if (c < -m || c > m) return false;
    return true;
  }

  /// lexicographic index of p in (p1, p2, p3)
  std::int64_t index_of(const IntVec3& p) const {
    if (!contains(p)) throw OutOfGridError("grid point outside G");
    int m = max_component();
    return ((std::int64_t(p[0]) + m) * side_ + (p[1] + m)) * side_ + (p[2] + m);
  }
  IntVec3 point_at(std::int64_t idx) const {
    int m = max_component();
    IntVec3 p;
    p[2] = int(idx % side_) - m;
    idx /= side_;
    p[1] = int(idx % side_) - m;
    p[0] = int(idx / side_) - m;
    return p;
  }

  std::vector<IntVec3> points() const {
    std::vector<IntVec3> out;
    out.reserve(std::size_t(N()));
    for (std::int64_t i = 0; i < N(); ++i) out.push_back(point_at(i));
    return out;
  }
  /// G_0: the grid without the origin, same order
  std::vector<IntVec3> nonzero_points() const {
    std::vector<IntVec3> out;
    for (std::int64_t i = 0; i < N(); ++i) {
      IntVec3 p = point_at(i);
      if (!is_zero(p)) out.push_back(p);
    }
    return out;
  }

 private:
  int n_p_;
  std::int64_t side_;
};

inline Vec3 reciprocal_vector(const UnitCell& cell, const PlaneWaveGrid& grid, const IntVec3& p) {
  if (!grid.contains(p)) throw OutOfGridError("reciprocal_vector: p outside G");
  return cell.wavevector(p);
}

inline double grid_spacing(const UnitCell& cell, const PlaneWaveGrid& grid) {
  return std::cbrt(cell.omega() / double(grid.N()));
}

struct Atom {
  std::string symbol;
  int Z = 1;
  Vec3 R = Vec3::Zero();  // bohr, Cartesian, inside the cell box
  bool operator==(const Atom&) const = default;
};

struct Material {
  std::string name;
  UnitCell cell;
  std::vector<Atom> atoms;
  int eta = 0;
  int lambda_Z = 0;

  int L() const { return int(atoms.size()); }
};

namespace detail {
inline double wrap_fraction(double f, double tol, const std::string& path) {
  if (!std::isfinite(f) || f < -tol || f > 1.0 + tol)
    throw SchemaError(path, "atom lies outside the cell");
  double w = f - std::floor(f);
  if (w >= 1.0) w = 0.0;
  return w;
}
}  // namespace detail

/** @brief Validate atoms and fill eta / lambda_Z. Positions are wrapped into the box. */
inline Material make_material(std::string name, const UnitCell& cell, std::vector<Atom> atoms,
                              std::optional<int> eta = std::nullopt) {
  Material m;
  m.name = std::move(name);
  m.cell = cell;
  long zsum = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string path = "atoms[" + std::to_string(i) + "]";
    if (atoms[i].Z < 1) throw SchemaError(path + ".Z", "must be a positive integer");
    for (int k = 0; k < 3; ++k)
      atoms[i].R[k] = cell.a(k) * detail::wrap_fraction(atoms[i].R[k] / cell.a(k), 1e-6,
                                                          path + ".position");
    zsum += atoms[i].Z;
  }
  m.atoms = std::move(atoms);
  m.lambda_Z = int(zsum);
  m.eta = eta.value_or(int(zsum));
  if (m.eta < 1) throw SchemaError("eta", "must be a positive integer");
  return m;
}

namespace detail {
inline double json_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  return j.get<double>();
}
inline long json_integer(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_number_float()) {
    double v = j.get<double>();
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 1e9) return long(v);
  }
  throw SchemaError(path, "expected an integer");
}
inline const nlohmann::json& json_field(const nlohmann::json& j, const char* key,
                                        const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path + "." + key, "missing field");
  return j.at(key);
}
}  // namespace detail

inline Material material_from_json(const nlohmann::json& doc) {
  using detail::json_field;
  if (!doc.is_object()) throw SchemaError("$", "document must be an object");
  std::string name = doc.value("name", std::string("unnamed"));

  const auto& jc = json_field(doc, "cell", "$");
  std::string unit = jc.value("unit", std::string("bohr"));
  double scale;
  if (unit == "angstrom")
    scale = units::kAngstromToBohr;
  else if (unit == "bohr")
    scale = 1.0;
  else
    throw SchemaError("$.cell.unit", "unknown unit tag '" + unit + "'");
  if (jc.contains("angles")) {
    const auto& ang = jc.at("angles");
    if (!ang.is_array() || ang.size() != 3) throw SchemaError("$.cell.angles", "expected 3 angles");
    for (std::size_t k = 0; k < 3; ++k)
      if (std::fabs(detail::json_number(ang[k], "$.cell.angles") - 90.0) > 1e-9)
        throw UnsupportedGeometryError("only orthogonal cells are supported");
  }
  double a[3];
  const char* keys[3] = {"a1", "a2", "a3"};
  for (int k = 0; k < 3; ++k) {
    a[k] = detail::json_number(json_field(jc, keys[k], "$.cell"), std::string("$.cell.") + keys[k]);
    if (!(a[k] > 0)) throw SchemaError(std::string("$.cell.") + keys[k], "must be positive");
  }
  UnitCell cell = UnitCell::from_bohr(a[0] * scale, a[1] * scale, a[2] * scale);

  const auto& ja = json_field(doc, "atoms", "$");
  if (!ja.is_array()) throw SchemaError("$.atoms", "expected an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string path = "$.atoms[" + std::to_string(i) + "]";
    const auto& e = ja[i];
    Atom at;
    at.symbol = e.value("symbol", std::string("X"));
    long z = detail::json_integer(json_field(e, "Z", path), path + ".Z");
    if (z < 1) throw SchemaError(path + ".Z", "must be a positive integer");
    at.Z = int(z);
    const auto& pos = json_field(e, "position", path);
    if (!pos.is_array() || pos.size() != 3) throw SchemaError(path + ".position", "expected [x,y,z]");
    std::string frame = e.value("frame", std::string("cartesian"));
    for (int k = 0; k < 3; ++k) {
      double x = detail::json_number(pos[std::size_t(k)], path + ".position");
      if (frame == "fractional")
        at.R[k] = x * cell.a(k);
      else if (frame == "cartesian")
        at.R[k] = x * scale;
      else
        throw SchemaError(path + ".frame", "unknown frame '" + frame + "'");
    }
    for (int k = 0; k < 3; ++k)
      at.R[k] = cell.a(k) * detail::wrap_fraction(at.R[k] / cell.a(k), 1e-6, path + ".position");
    atoms.push_back(at);
  }
  std::optional<int> eta;
  if (doc.contains("eta")) {
    long e = detail::json_integer(doc.at("eta"), "$.eta");
    if (e < 1) throw SchemaError("$.eta", "must be a positive integer");
    eta = int(e);
  }
  return make_material(name, cell, atoms, eta);
}

inline Material parse_material(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return material_from_json(doc);
}

inline Material load_material(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open material file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_material(ss.str());
}

/// Normalized form: bohr, Cartesian.
inline nlohmann::json material_to_json(const Material& m) {
  nlohmann::json j;
  j["name"] = m.name;
  j["cell"] = {{"a1", m.cell.a(0)}, {"a2", m.cell.a(1)}, {"a3", m.cell.a(2)}, {"unit", "bohr"}};
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : m.atoms)
    j["atoms"].push_back({{"symbol", a.symbol},
                          {"Z", a.Z},
                          {"position", {a.R[0], a.R[1], a.R[2]}},
                          {"frame", "cartesian"}});
  j["eta"] = m.eta;
  return j;
}

}  // namespace fqpw
