#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "fqpw/costing.hpp"
#include "fqpw/properties.hpp"
#include "fqpw/report.hpp"
#include "fqpw/verify.hpp"

using namespace fqpw;

namespace {

constexpr int kExitOk = 0, kExitVerify = 1, kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AmplificationMode parse_aa(const std::string& s) {
  if (s == "auto") return AmplificationMode::automatic;
  if (s == "on") return AmplificationMode::on;
  if (s == "off") return AmplificationMode::off;
  throw UsageError("--aa must be auto, on or off");
}

LambdaNuConvention parse_convention(const std::string& s) {
  if (s == "generalized") return LambdaNuConvention::generalized;
  if (s == "cubic") return LambdaNuConvention::cubic;
  throw UsageError("--lambda-nu-convention must be generalized or cubic");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

struct ModelFlags {
  std::string material;
  std::string aa = "auto";
  std::string convention = "generalized";
};

void add_model_flags(CLI::App* c, ModelFlags& m) {
  c->add_option("--material", m.material, "material JSON file")->required();
  c->add_option("--aa", m.aa, "amplitude amplification: auto, on, off");
  c->add_option("--lambda-nu-convention", m.convention, "generalized or cubic");
}

void check_np(int n_p) {
  if (n_p < 2 || n_p > 12) throw UsageError("n_p must lie in [2, 12]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First-quantized plane-wave resource estimator"};
  app.require_subcommand(1);

  // estimate
  ModelFlags em;
  int np_min = 3, np_max = 9;
  std::vector<double> eps_list{0.043}, d_list{32.0}, clock_list{1e8};
  std::string csv_out, json_out;
  auto* est = app.add_subcommand("estimate", "Toffoli / qubit / runtime sweep");
  add_model_flags(est, em);
  est->add_option("--np-min", np_min, "smallest n_p");
  est->add_option("--np-max", np_max, "largest n_p");
  est->add_option("--eps", eps_list, "total error budgets in eV");
  est->add_option("--d", d_list, "code distances");
  est->add_option("--clock", clock_list, "clock rates in Hz");
  est->add_option("--csv", csv_out, "CSV output path (default stdout)");
  est->add_option("--json", json_out, "JSON report path");

  // verify
  VerifyOptions vo;
  std::string verify_json;
  auto* ver = app.add_subcommand("verify", "run the small-instance verification suite");
  ver->add_option("--max-eta", vo.max_eta, "largest particle count");
  ver->add_option("--n-p", vo.n_p, "grid bits per dimension");
  ver->add_option("--inject-lambda-scale", vo.lambda_scale, "compare against H/(lambda*scale)");
  ver->add_option("--seed", vo.seed, "seed for random unitaries");
  ver->add_option("--slater-trials", vo.slater_trials, "random Slater unitaries");
  ver->add_option("--json", verify_json, "report path (default stdout)");

  // props
  auto* props = app.add_subcommand("props", "battery property formulas");
  props->require_subcommand(1);
  std::optional<double> v_lith, v_delith, v_li;
  int v_n = 1;
  std::string v_file;
  auto* volt = props->add_subcommand("voltage", "equilibrium voltage from energies in hartree");
  volt->add_option("--lithiated", v_lith);
  volt->add_option("--delithiated", v_delith);
  volt->add_option("--lithium", v_li, "per-atom lithium reference");
  volt->add_option("--n", v_n, "transferred Li per formula unit");
  volt->add_option("--energies", v_file, "JSON energy file");
  DiffusionInputs di;
  auto* diff = props->add_subcommand("diffusivity", "Arrhenius diffusivity in m^2/s");
  diff->add_option("--hop-distance", di.hop_distance, "m")->required();
  diff->add_option("--attempt-frequency", di.attempt_frequency, "Hz")->required();
  diff->add_option("--e-t", di.E_T, "transition-state energy, eV")->required();
  diff->add_option("--e-i", di.E_I, "initial energy, eV")->required();
  diff->add_option("--temperature", di.temperature, "K")->required();
  StabilityInputs si;
  std::optional<double> s_molar;
  auto* stab = props->add_subcommand("stability", "oxygen-release temperature in K");
  stab->add_option("--e-rich", si.E_rich, "hartree")->required();
  stab->add_option("--e-poor", si.E_poor, "hartree")->required();
  stab->add_option("--e-o2", si.E_O2, "hartree")->required();
  stab->add_option("--z-prime", si.z_prime)->required();
  stab->add_option("--s-o2", si.S_O2, "eV/K per molecule");
  stab->add_option("--s-o2-molar", s_molar, "J/(mol K)");

  // lambda
  ModelFlags lm;
  int lambda_np = 4;
  auto* lam = app.add_subcommand("lambda", "LCU one-norms");
  add_model_flags(lam, lm);
  lam->add_option("--n-p", lambda_np)->required();

  // qubits
  ModelFlags qm;
  int qubits_np = 4;
  double qubits_eps = 0.043;
  auto* qub = app.add_subcommand("qubits", "logical qubit count");
  add_model_flags(qub, qm);
  qub->add_option("--n-p", qubits_np)->required();
  qub->add_option("--eps", qubits_eps, "total error budget in eV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    auto estimate_options = [](const ModelFlags& m, double eps_ev) {
      EstimateOptions o;
      o.aa = parse_aa(m.aa);
      o.convention = parse_convention(m.convention);
      if (!(eps_ev > 0.0)) throw UsageError("--eps must be positive");
      o.eps_total = units::ev_to_hartree(eps_ev);
      return o;
    };

    if (*est) {
      if (np_min > np_max) throw UsageError("empty n_p range");
      check_np(np_min);
      check_np(np_max);
      if (eps_list.empty() || d_list.empty() || clock_list.empty()) throw UsageError("empty sweep list");
      const Material mat = load_material(em.material);
      std::ostringstream csv;
      csv << kEstimateCsvHeader << "\n";
      nlohmann::json rows = nlohmann::json::array();
      for (int np = np_min; np <= np_max; ++np)
        for (double eps : eps_list) {
          EstimateOptions o = estimate_options(em, eps);
          Estimate base = estimate(mat, np, o);
          for (double d : d_list)
            for (double f : clock_list) {
              if (!(d > 0.0) || !(f > 0.0)) throw UsageError("--d and --clock must be positive");
              Estimate e = base;
              e.report.runtime_seconds = runtime_estimate(e.report.toffoli_total, d, f, np);
              csv << estimate_csv_row(e) << "\n";
              rows.push_back(estimate_to_json(e, eps, d, f));
            }
        }
      write_output(csv_out, csv.str());
      if (!json_out.empty())
        write_output(json_out, nlohmann::json{{"material", mat.name}, {"rows", rows}}.dump(2) + "\n");
      return kExitOk;
    }

    if (*ver) {
      const VerifyReport rep = run_verification(vo);
      nlohmann::json j = rep.to_json();
      j["options"] = {{"max_eta", vo.max_eta}, {"n_p", vo.n_p}, {"lambda_scale", vo.lambda_scale},
                      {"seed", vo.seed}, {"slater_trials", vo.slater_trials}};
      write_output(verify_json, j.dump(2) + "\n");
      for (const auto& c : rep.checks)
        if (!c.pass)
          std::cerr << "FAIL " << c.name << " " << c.instance.dump() << " deviation=" << c.deviation
                    << " threshold=" << c.threshold << "\n";
      return rep.passed() ? kExitOk : kExitVerify;
    }

    if (*props) {
      nlohmann::json rec;
      if (*volt) {
        EnergySet e;
        if (!v_file.empty()) {
          std::ifstream f(v_file);
          if (!f) throw UsageError("cannot open " + v_file);
          nlohmann::json j;
          try {
            f >> j;
          } catch (const nlohmann::json::parse_error& ex) {
            throw SchemaError("$", ex.what());
          }
          e = energy_set_from_json(j);
        }
        if (v_lith) e.lithiated = v_lith;
        if (v_delith) e.delithiated = v_delith;
        if (v_li) e.lithium = v_li;
        if (volt->count("--n")) e.n = v_n;
        rec = {{"property", "voltage"}, {"inputs", energy_set_to_json(e)}, {"value", cell_voltage(e)}, {"unit", "V"}};
      } else if (*diff) {
        rec = {{"property", "diffusivity"},
               {"inputs", {{"hop_distance", di.hop_distance}, {"attempt_frequency", di.attempt_frequency},
                           {"E_T", di.E_T}, {"E_I", di.E_I}, {"temperature", di.temperature}}},
               {"value", diffusivity(di)},
               {"unit", "m^2/s"}};
      } else if (*stab) {
        if (s_molar) si.S_O2 = units::molar_entropy_to_ev(*s_molar);
        rec = {{"property", "stability_temperature"},
               {"inputs", {{"E_rich", si.E_rich}, {"E_poor", si.E_poor}, {"E_O2", si.E_O2},
                           {"z_prime", si.z_prime}, {"S_O2", si.S_O2}}},
               {"value", stability_temperature(si)},
               {"unit", "K"}};
      }
      std::cout << rec.dump() << "\n";
      return kExitOk;
    }

    if (*lam) {
      check_np(lambda_np);
      const Material mat = load_material(lm.material);
      LcuOptions o;
      o.aa = parse_aa(lm.aa);
      o.convention = parse_convention(lm.convention);
      auto j = norms_to_json(lcu_norms(mat, PlaneWaveGrid(lambda_np), o));
      j["n_p"] = lambda_np;
      j["material"] = mat.name;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*qub) {
      check_np(qubits_np);
      const Material mat = load_material(qm.material);
      const Estimate e = estimate(mat, qubits_np, estimate_options(qm, qubits_eps));
      nlohmann::json j = {{"material", mat.name},
                          {"n_p", qubits_np},
                          {"eps_total_ev", qubits_eps},
                          {"qubits", e.report.qubits},
                          {"leading_term", 3L * e.params.eta * qubits_np},
                          {"widths", {{"n_M", e.widths.n_M}, {"n_R", e.widths.n_R}, {"n_T", e.widths.n_T}}}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapExceededError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
