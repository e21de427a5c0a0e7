#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "fqpw/costing.hpp"

namespace fqpw {

inline constexpr const char* kEstimateCsvHeader =
    "n_p,N,lambda_T,lambda_U,lambda_V,lambda_nu,lambda_total,calls,toffoli_per_call,toffoli_total,qubits,runtime_s";

inline std::string fmt_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string estimate_csv_row(const Estimate& e) {
  const auto& n = e.norms;
  const auto& r = e.report;
  std::string s = std::to_string(e.n_p) + "," + std::to_string(e.N);
  for (double v : {n.lambda_T, n.lambda_U, n.lambda_V, n.lambda_nu, n.lambda_total}) s += "," + fmt_real(v);
  s += "," + r.calls.str() + "," + r.toffoli_per_call.str() + "," + r.toffoli_total.str();
  s += "," + std::to_string(r.qubits) + "," + fmt_real(r.runtime_seconds);
  return s;
}

inline nlohmann::json norms_to_json(const LcuNorms& n) {
  return {{"lambda_T", n.lambda_T},         {"lambda_U", n.lambda_U},
          {"lambda_V", n.lambda_V},         {"lambda_nu", n.lambda_nu},
          {"lambda_total", n.lambda_total}, {"aa_rounds", n.aa_rounds},
          {"p_nu", n.p_nu},                 {"p_amp", n.p_amp},
          {"identity_shift", n.identity_shift}, {"eta", n.eta},
          {"lambda_model", n.model}};
}

/// Integers that may exceed 64 bits are written as decimal strings.
inline nlohmann::json estimate_to_json(const Estimate& e, double eps_ev, double d, double clock) {
  nlohmann::json items = nlohmann::json::object();
  for (const auto& [k, v] : e.report.itemized) items[k] = v.str();
  return {{"n_p", e.n_p},
          {"N", e.N},
          {"eps_total_ev", eps_ev},
          {"code_distance", d},
          {"clock_hz", clock},
          {"norms", norms_to_json(e.norms)},
          {"widths", {{"n_M", e.widths.n_M}, {"n_R", e.widths.n_R}, {"n_T", e.widths.n_T}, {"b_r", e.widths.b_r},
                      {"eps_qpe", e.widths.eps_qpe}, {"eps_M", e.widths.eps_M}, {"eps_R", e.widths.eps_R}}},
          {"a", e.params.a},
          {"calls", e.report.calls.str()},
          {"toffoli_per_call", e.report.toffoli_per_call.str()},
          {"toffoli_total", e.report.toffoli_total.str()},
          {"itemized", items},
          {"qubits", e.report.qubits},
          {"runtime_s", e.report.runtime_seconds}};
}

}  // namespace fqpw
