#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fqpw/crystal.hpp"
#include "fqpw/errors.hpp"
#include "fqpw/hamiltonian.hpp"
#include "fqpw/units.hpp"

namespace fqpw {

using BigInt = boost::multiprecision::cpp_int;

inline int ceil_log2(double x) {
  if (!(x > 0.0)) throw ValidationError("ceil_log2 needs a positive argument");
  return int(std::ceil(std::log2(x) - 1e-12));
}

inline int ceil_log2(const BigInt& x) {
  if (x < 1) throw ValidationError("ceil_log2 needs a positive argument");
  if (x == 1) return 0;
  BigInt y = x - 1;
  return int(boost::multiprecision::msb(y)) + 1;
}

/// min over m of 2^m + ceil(x / 2^m), smallest m on ties
inline long er(long x) {
  if (x < 1) throw ValidationError("er: x must be >= 1");
  const int top = ceil_log2(double(x)) + 1;
  long best = -1;
  for (int m = 0; m <= top; ++m) {
    const long p = 1L << m;
    const long v = p + (x + p - 1) / p;
    if (best < 0 || v < best) best = v;
  }
  return best;
}

inline BigInt calls_count(double lambda_total, double eps_qpe) {
  if (!(lambda_total > 0.0) || !(eps_qpe > 0.0)) throw ValidationError("calls_count: arguments must be positive");
  const double c = std::ceil(units::kPi * lambda_total / (2.0 * eps_qpe) - 1e-9);
  return BigInt(std::max(c, 1.0));
}

struct BitWidths {
  int n_M = 0, n_R = 0, n_T = 33, b_r = 8;
  double eps_qpe = 0.0, eps_M = 0.0, eps_R = 0.0;
};

struct WidthPolicy {
  double qpe_fraction = 0.5;
  double m_fraction = 0.25;
  double r_fraction = 0.25;
  double c_M = 12.0;  // momentum-amplitude rounding constant
  int n_T = 33;
  int b_r = 8;
  int min_width = 20;
  int max_width = 60;
};

/**
 * n_M: smallest width with (lambda_U + lambda_V) c_M 2^{-n_M} <= eps_M.
 * n_R: smallest width with 6 pi (2^{n_p-1}-1) lambda_U 2^{-n_R} <= eps_R, the phase error of
 * G.R over three coordinates each with 2^{n_p-1}-1 magnitude.
 */
inline BitWidths select_bit_widths(double eps_total, const LcuNorms& norms, int n_p,
                                   const WidthPolicy& pol = {}) {
  if (!(eps_total > 0.0)) throw ValidationError("eps_total must be positive");
  BitWidths w;
  w.eps_qpe = eps_total * pol.qpe_fraction;
  w.eps_M = eps_total * pol.m_fraction;
  w.eps_R = eps_total * pol.r_fraction;
  const double uv = norms.lambda_U + norms.lambda_V;
  auto width = [&](double num, double eps) {
    const int raw = num > 0.0 ? ceil_log2(num / eps) : 0;
    if (raw > pol.max_width) throw ValidationError("error budget unachievable within the width clamp");
    return std::clamp(raw, pol.min_width, pol.max_width);
  };
  w.n_M = width(pol.c_M * uv, w.eps_M);
  w.n_R = width(6.0 * units::kPi * (std::ldexp(1.0, n_p - 1) - 1.0) * norms.lambda_U, w.eps_R);
  w.n_T = pol.n_T;
  w.b_r = pol.b_r;
  return w;
}

struct CostParams {
  int eta = 0, lambda_Z = 0, L = 0;
  double omega = 0.0;
  int n_p = 0;
  double eps_qpe = 0.0, eps_M = 0.0, eps_R = 0.0;
  int n_M = 0, n_R = 0, n_T = 33, b_r = 8;
  int a = 1;
  int n_eta = 0, n_etaZ = 0;
  double lambda_total = 0.0;
  double c_rot = 1.0;
};

inline CostParams make_cost_params(const Material& mat, int n_p, const LcuNorms& norms, const BitWidths& w) {
  CostParams p;
  p.eta = norms.eta;
  p.lambda_Z = mat.lambda_Z;
  p.L = mat.L();
  p.omega = mat.cell.omega();
  p.n_p = n_p;
  p.eps_qpe = w.eps_qpe;
  p.eps_M = w.eps_M;
  p.eps_R = w.eps_R;
  p.n_M = w.n_M;
  p.n_R = w.n_R;
  p.n_T = w.n_T;
  p.b_r = w.b_r;
  p.a = norms.aa_rounds ? 3 : 1;
  p.n_eta = p.eta > 1 ? ceil_log2(double(p.eta)) : 0;
  p.n_etaZ = ceil_log2(double(p.eta + 2 * p.lambda_Z));
  p.lambda_total = norms.lambda_total;
  return p;
}

struct CostReport {
  BigInt calls;
  BigInt toffoli_per_call;
  BigInt toffoli_total;
  std::vector<std::pair<std::string, BigInt>> itemized;  // in equation order
  long qubits = 0;
  double runtime_seconds = 0.0;
  std::string lambda_model;

  BigInt item(const std::string& label) const {
    for (const auto& [k, v] : itemized)
      if (k == label) return v;
    throw ValidationError("no cost item " + label);
  }
};

inline long rotation_cost(const CostParams& p, const BigInt& calls) {
  // c_rot ceil(log2(1/eps_rot)) with eps_rot = eps_qpe / calls
  const double calls_d = calls.convert_to<double>();
  return long(std::ceil(p.c_rot * double(ceil_log2(calls_d / p.eps_qpe))));
}

inline std::vector<std::pair<std::string, BigInt>> cost_items(const CostParams& p, const BigInt& calls) {
  const long np = p.n_p, eta = p.eta, br = p.b_r;
  std::vector<std::pair<std::string, BigInt>> it;
  it.emplace_back("preparation qubit T/(U+V)", 2 * (p.n_T + 4 * p.n_etaZ + 2 * br - 12));
  it.emplace_back("uniform i&j", 14 * p.n_eta + 8 * br - 36);
  it.emplace_back("1/|nu| amplitudes", long(p.a) * (3 * np * np + 15 * np - 7 + 4L * p.n_M * (np + 1)));
  it.emplace_back("QROM", long(p.lambda_Z) + er(std::max(1, p.lambda_Z)));
  it.emplace_back("w,r,s preparation", 2 * (2 * np + 2 * br - 7));
  it.emplace_back("swap p&q", 12 * eta * np);
  it.emplace_back("SEL_T", 5 * (np - 1) + 2);
  it.emplace_back("|p+-nu>", 24 * np);
  it.emplace_back("e^{iG.R}", 6 * np * p.n_R);
  it.emplace_back("T/U/V selection", 18);
  it.emplace_back("reflection", long(p.n_etaZ) + 2L * p.n_eta + 6 * np + p.n_M + 16);
  it.emplace_back("rotations", rotation_cost(p, calls));
  return it;
}

inline void check_a_flag(const CostParams& p, const LcuNorms& norms) {
  if (p.a != 1 && p.a != 3) throw ValidationError("a flag must be 1 or 3");
  if (p.a != (norms.aa_rounds ? 3 : 1)) throw ValidationError("a flag inconsistent with the amplification choice");
}

inline long qubit_cost(const CostParams& p, const BigInt& calls) {
  const long np = p.n_p;
  return 3L * p.eta * np + 4L * p.n_M * np + 12 * np + 2L * ceil_log2(calls) +
         2L * (p.eta > 1 ? ceil_log2(double(p.eta)) : 0) + 5L * p.n_M + 3 * np * np +
         ceil_log2(double(p.eta + 2 * p.lambda_Z)) + std::max(5 * np + 1, 5L * p.n_R - 4) +
         std::max<long>(p.n_T, p.n_R + 1) + 33;
}

inline long qubit_cost(const CostParams& p) { return qubit_cost(p, calls_count(p.lambda_total, p.eps_qpe)); }

inline double runtime_estimate(const BigInt& toffoli_total, double d, double clock_hz, int n_p) {
  if (!(clock_hz > 0.0) || n_p < 1) throw ValidationError("runtime: clock and n_p must be positive");
  return toffoli_total.convert_to<double>() * d / (clock_hz * n_p);
}

struct RuntimeModel {
  double code_distance = 32.0;
  double clock_hz = 1e8;
};

inline CostReport toffoli_cost_full(const CostParams& p, const LcuNorms& norms, const RuntimeModel& rt = {}) {
  check_a_flag(p, norms);
  if (p.n_M <= 0 || p.n_R <= 0 || p.n_T <= 0 || p.b_r <= 0) throw ValidationError("widths must be positive");
  CostReport r;
  r.calls = calls_count(norms.lambda_total, p.eps_qpe);
  r.itemized = cost_items(p, r.calls);
  r.toffoli_per_call = 0;
  for (const auto& [k, v] : r.itemized) r.toffoli_per_call += v;
  r.toffoli_total = r.calls * r.toffoli_per_call;
  r.qubits = qubit_cost(p, r.calls);
  r.runtime_seconds = runtime_estimate(r.toffoli_total, rt.code_distance, rt.clock_hz, p.n_p);
  r.lambda_model = norms.model;
  return r;
}

enum class LeadingMode { with_bundle, without_bundle };

/// calls * (12 eta n_p + [bundle] + lambda_Z + Er(lambda_Z)); the bundle is every other item
inline BigInt toffoli_cost_leading(const CostParams& p, const LcuNorms& norms,
                                   LeadingMode mode = LeadingMode::without_bundle) {
  check_a_flag(p, norms);
  const BigInt calls = calls_count(norms.lambda_total, p.eps_qpe);
  BigInt inner = BigInt(12L * p.eta * p.n_p) + p.lambda_Z + er(std::max(1, p.lambda_Z));
  if (mode == LeadingMode::with_bundle)
    for (const auto& [k, v] : cost_items(p, calls))
      if (k != "swap p&q" && k != "QROM") inner += v;
  return calls * inner;
}

/// Non-Clifford count of the Givens-rotation Slater preparation
inline BigInt givens_state_prep_t_count(long eta, long n_orbitals, double eps_rot) {
  if (eta < 1 || n_orbitals < eta || !(eps_rot > 0.0) || eps_rot >= 1.0)
    throw ValidationError("givens_state_prep_t_count: bad arguments");
  return BigInt(eta) * BigInt(n_orbitals - eta) * ceil_log2(1.0 / eps_rot);
}

struct EstimateOptions {
  double eps_total = 0.043 / units::kHartreeEv;  // hartree
  WidthPolicy policy;
  RuntimeModel runtime;
  AmplificationMode aa = AmplificationMode::automatic;
  LambdaNuConvention convention = LambdaNuConvention::generalized;
};

struct Estimate {
  int n_p = 0;
  std::int64_t N = 0;
  LcuNorms norms;
  BitWidths widths;
  CostParams params;
  CostReport report;
};

inline Estimate estimate(const Material& mat, int n_p, const EstimateOptions& opt = {}) {
  PlaneWaveGrid grid(n_p);
  LcuOptions lo;
  lo.aa = opt.aa;
  lo.convention = opt.convention;
  Estimate e;
  e.n_p = n_p;
  e.N = grid.N();
  LcuNorms first = lcu_norms(mat, grid, lo);
  e.widths = select_bit_widths(opt.eps_total, first, n_p, opt.policy);
  lo.momentum_bits = std::min(e.widths.n_M, 40);
  e.norms = lcu_norms(mat, grid, lo);
  e.params = make_cost_params(mat, n_p, e.norms, e.widths);
  e.report = toffoli_cost_full(e.params, e.norms, opt.runtime);
  return e;
}

}  // namespace fqpw
