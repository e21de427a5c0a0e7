#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqpw/statesim/antisym.hpp"
#include "fqpw/statesim/exponential.hpp"
#include "fqpw/statesim/momentum.hpp"
#include "fqpw/statesim/qpe.hpp"
#include "fqpw/statesim/qubitization.hpp"
#include "fqpw/statesim/slater.hpp"

namespace fqpw {

struct VerifyOptions {
  int max_eta = 2;
  int n_p = 2;
  double lambda_scale = 1.0;  // fault injection: compare against H / (lambda * scale)
  std::uint64_t seed = 20240917;
  int slater_trials = 20;
};

struct CheckRecord {
  std::string name;
  nlohmann::json instance;
  double deviation = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<CheckRecord> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  nlohmann::json to_json() const {
    nlohmann::json j;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks)
      j["checks"].push_back({{"name", c.name},
                             {"instance", c.instance},
                             {"deviation", c.deviation},
                             {"threshold", c.threshold},
                             {"pass", c.pass}});
    j["passed"] = passed();
    return j;
  }
};

/// Largest system the verification suite will build densely.
inline constexpr std::int64_t kVerifySystemCap = 4096;

inline void validate_verify_options(const VerifyOptions& o) {
  if (o.max_eta < 1 || o.n_p < 2) throw ValidationError("verify needs max_eta >= 1 and n_p >= 2");
  if (o.n_p > 3) throw CapExceededError("verify n_p exceeds the simulator limit of 3");
  std::int64_t dim = 1;
  const std::int64_t N = PlaneWaveGrid(o.n_p).N();
  for (int i = 0; i < o.max_eta; ++i) dim *= N;
  if (o.max_eta > 3 || dim > kVerifySystemCap)
    throw CapExceededError("verify caps exceed the simulator limit (N^eta <= 4096)");
  if (o.slater_trials < 1 || o.slater_trials > 1000) throw CapExceededError("slater trials must lie in [1, 1000]");
  if (!(o.lambda_scale > 0.0)) throw ValidationError("lambda scale must be positive");
}

struct VerifyInstance {
  std::string label;
  Material material;
};

inline std::vector<VerifyInstance> verify_instances(int max_eta) {
  std::vector<VerifyInstance> out;
  auto atom = [](int Z, double x, double y, double z) {
    Atom a;
    a.symbol = Z == 1 ? "H" : Z == 2 ? "He" : "X";
    a.Z = Z;
    a.R = Vec3(x, y, z);
    return a;
  };
  const UnitCell cubic = UnitCell::from_bohr(2.0, 2.0, 2.0);
  const UnitCell ortho = UnitCell::from_bohr(2.0, 2.4, 2.9);
  for (int eta = 1; eta <= max_eta; ++eta) {
    const std::string e = "eta" + std::to_string(eta);
    out.push_back({"cubic_" + e + "_nucleus", make_material("cubic", cubic, {atom(1, 0.6, 1.0, 1.4)}, eta)});
    out.push_back({"cubic_" + e + "_no_nuclei", make_material("cubic", cubic, {}, eta)});
    out.push_back({"ortho_" + e + "_two_nuclei",
                   make_material("ortho", ortho, {atom(1, 0.3, 0.9, 2.1), atom(2, 1.5, 0.1, 0.7)}, eta)});
  }
  return out;
}

inline Eigen::VectorXd dense_spectrum(const Qubitization& q) {
  auto H = build_dense_hamiltonian(q.material(), q.grid(), q.eta(), q.system_dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline void verify_qubitization(const VerifyOptions& o, VerifyReport& rep) {
  for (const auto& inst : verify_instances(o.max_eta)) {
    Qubitization q(inst.material, PlaneWaveGrid(o.n_p));
    const auto& n = q.norms();
    nlohmann::json info = {{"label", inst.label},      {"eta", q.eta()},
                           {"n_p", o.n_p},             {"L", inst.material.L()},
                           {"aa_rounds", n.aa_rounds}, {"lambda", n.lambda_total},
                           {"lambda_scale", o.lambda_scale}};
    auto add = [&](const std::string& name, double dev, double thr) {
      rep.checks.push_back({name, info, dev, thr, dev < thr});
    };
    add("prep_normalization", std::abs(q.target_state().amplitudes.squaredNorm() - 1.0), 1e-12);
    const auto sel = q.check_select();
    add("select_involution", double(sel.involution_failures) + sel.max_phase_deviation, 1e-12);
    const auto B = q.block_encoding();
    add("block_encoding", (B - q.expected_block(o.lambda_scale)).cwiseAbs().maxCoeff(), 1e-10);
    const auto w = walk_operator(B, n.lambda_total * o.lambda_scale, n.identity_shift);
    const auto wc = check_walk(w, dense_spectrum(q));
    add("walk_spectrum", wc.max_eigen_deviation, 1e-8);
    add("walk_unitarity", wc.unitarity_deviation, 1e-10);
    add("walk_reflection", std::max(wc.reflection_deviation_1, wc.reflection_deviation_2), 1e-10);
  }
}

inline void verify_state_preparation(const VerifyOptions& o, VerifyReport& rep) {
  {
    const int np = 3;
    const std::uint64_t M = 64;
    const auto ms = momentum_state(np, M);
    const double p = momentum_success_probability(np, M, kCubicWeights);
    rep.checks.push_back({"momentum_success_mass", {{"n_p", np}, {"M", M}}, std::abs(ms.p_nu - p), 1e-12,
                          std::abs(ms.p_nu - p) < 1e-12});
  }
  {
    const auto ex = exponential_state(4);
    double dev = 0.0;
    const double nrm = std::ldexp(1.0, 3) - 1.0;
    for (int r = 0; r < 3; ++r)
      dev = std::max(dev, std::abs(std::norm(ex.amplitudes[r]) / ex.success_probability - std::ldexp(1.0, r) / nrm));
    rep.checks.push_back({"exponential_state", {{"n_p", 4}}, dev, 1e-12, dev < 1e-12});
  }
  for (int eta : {2, 3}) {
    const int bits = eta == 2 ? 2 : 4;
    const PlaneWaveGrid g(o.n_p);
    std::vector<IntVec3> in;
    for (int i = 0; i < eta; ++i) in.push_back(g.point_at(3 * i + 2));
    const auto r = simulate_sorting_antisymmetrization(eta, o.n_p, bits, in);
    const double def = 1.0 - fidelity(r.state.amplitudes, antisymmetrize(in, o.n_p).amplitudes);
    nlohmann::json info = {{"eta", eta}, {"n_p", o.n_p}, {"seed_bits", bits}};
    rep.checks.push_back({"sorting_antisymmetrization", info, std::abs(def), 1e-10, std::abs(def) < 1e-10});
    rep.checks.push_back({"sorting_success_margin", info, 0.5 - r.success_probability, 0.0,
                          r.success_probability > 0.5 && r.record_cleared});
  }
  double worst = 0.0, rot_excess = -1e9;
  for (int t = 0; t < o.slater_trials; ++t) {
    const int eta = 1 + t % 3;
    const int n = std::min(6, eta + 1 + (t / 3) % (7 - eta));
    const auto u = random_unitary(n, o.seed + std::uint64_t(t));
    const auto sp = prepare_slater(u, eta);
    const auto ref = slater_reference(u, eta);
    worst = std::max(worst, std::abs(1.0 - fidelity(sp.state.amplitudes, ref.amplitudes)));
    rot_excess = std::max(rot_excess, double(sp.rotation_count - eta * (n - eta)));
  }
  rep.checks.push_back({"slater_determinant", {{"trials", o.slater_trials}, {"seed", o.seed}}, worst, 1e-10,
                        worst < 1e-10});
  rep.checks.push_back({"slater_rotation_count", {{"trials", o.slater_trials}}, rot_excess, 0.5, rot_excess <= 0.0});
}

inline void verify_qpe(VerifyReport& rep) {
  OperatorMatrix U;
  U.layout = RegisterLayout({{"s", 2}});
  U.matrix = Eigen::MatrixXcd::Zero(2, 2);
  U.matrix(0, 0) = std::polar(1.0, 2 * units::kPi * 0.25);
  U.matrix(1, 1) = std::polar(1.0, 2 * units::kPi * 0.625);
  StateVector psi;
  psi.layout = U.layout;
  psi.amplitudes = Eigen::VectorXcd(2);
  psi.amplitudes << std::sqrt(0.3), std::sqrt(0.7);
  const auto r = qpe_simulate(U, psi, 3);
  double tot = 0.0;
  for (double p : r.probabilities) tot += p;
  const double dev = std::max({std::abs(tot - 1.0), std::abs(r.probability("010") - 0.3),
                               std::abs(r.probability("101") - 0.7)});
  rep.checks.push_back({"qpe_point_masses", {{"t", 3}}, dev, 1e-10, dev < 1e-10});
}

inline VerifyReport run_verification(const VerifyOptions& o = {}) {
  validate_verify_options(o);
  VerifyReport rep;
  verify_qubitization(o, rep);
  verify_state_preparation(o, rep);
  verify_qpe(rep);
  return rep;
}

}  // namespace fqpw
