#include "kgdelta/app/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kgdelta/app/scan.hpp"
#include "kgdelta/app/validate.hpp"
#include "kgdelta/classify.hpp"
#include "kgdelta/experiment.hpp"
#include "kgdelta/report_json.hpp"

namespace kgdelta::app {

namespace {

using complex = std::complex<double>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string fmt_bound(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return fmt(v);
}

std::string fmt_complex(complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  if (z.real() == 0.0) return fmt(z.imag()) + "i";
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

void print_text(const SpectrumReport& r, std::ostream& out) {
  const auto& p = r.params;
  out << "parameters: m=" << fmt(p.m()) << " omega=" << fmt(p.omega()) << " kappa=" << fmt(p.kappa())
      << " (decay " << fmt(p.decay()) << ", coupling " << fmt(p.coupling()) << ")\n";
  out << "verdict: " << to_string(r.verdict);
  if (r.verdict == Verdict::Critical) out << " (unstable)";
  out << '\n';
  out << "essential spectrum of A: ";
  const auto& ivs = r.essential.imag_parts.intervals();
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (i) out << " U ";
    out << "i[" << fmt_bound(ivs[i].lo) << ", " << fmt_bound(ivs[i].hi) << "]";
  }
  out << '\n' << "point spectrum of A:\n";
  for (const auto& e : r.point) {
    out << "  " << fmt_complex(e.value) << "  (geometric " << e.geometric_mult << ", algebraic "
        << e.algebraic_mult << ")";
    if (e.embedded) out << " embedded";
    out << '\n';
  }
  out << "virtual levels:";
  if (r.virtual_levels.empty()) out << " none";
  for (const auto& z : r.virtual_levels) out << ' ' << fmt_complex(z);
  out << '\n' << "flags:";
  if (r.flags.empty()) out << " none";
  for (const auto& f : r.flags) out << ' ' << f;
  out << '\n';
}

int cmd_spectrum(double m, double w, double k, const std::string& format, bool verbose,
                 const Tolerances& tol, std::ostream& out) {
  const ModelParams p(m, w, k);
  PipelineOptions opts;
  opts.tol = tol;
  const auto report = classify_point_spectrum(p, opts);
  if (format == "json") {
    auto j = to_json(report, verbose);
    j["config"] = {{"command", "spectrum"}, {"m", m}, {"omega", w}, {"kappa", k}, {"verbose", verbose}};
    out << j.dump(2) << '\n';
  } else {
    print_text(report, out);
    if (verbose) {
      out << "candidates:\n";
      for (const auto& c : report.candidates) {
        out << "  " << fmt_complex(c.lambda) << "  " << to_string(c.status) << " sheet "
            << (c.sheet ? to_string(*c.sheet) : std::string("off-all-sheets")) << " residual "
            << fmt(c.residual) << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_scan(const ScanConfig& cfg, const std::string& output, std::ostream& out) {
  const auto cells = scan_cells(cfg);
  if (output == "-") {
    write_scan_csv(cells, out);
    return kExitOk;
  }
  write_scan_file(cells, output);
  std::map<std::string, std::size_t> counts;
  for (const auto& c : cells) ++counts[std::string(to_string(c.code))];
  out << "wrote " << cells.size() << " cells (" << cfg.omega.n << " x " << cfg.kappa.n << ") to "
      << output << " using " << effective_threads(cfg.threads) << " threads\n";
  for (const auto& [code, n] : counts) out << "  " << code << ": " << n << '\n';
  return kExitOk;
}

struct SimulateArgs {
  double m = 1.0;
  double omega = 0.0;
  std::optional<double> kappa;
  double g = 1.0;
  std::string nonlinearity_file;
  ExperimentConfig cfg;
  std::string output = "kgdelta_run";
};

int cmd_simulate(SimulateArgs a, std::ostream& out) {
  Nonlinearity nl = [&] {
    if (!a.nonlinearity_file.empty()) {
      std::ifstream f(a.nonlinearity_file);
      if (!f) throw std::invalid_argument("cannot read " + a.nonlinearity_file);
      return Nonlinearity::from_json(nlohmann::json::parse(f));
    }
    if (!a.kappa) throw std::invalid_argument("simulate needs --kappa or --nonlinearity");
    return Nonlinearity(PowerLaw{a.g, *a.kappa});
  }();
  a.cfg.m = a.m;
  a.cfg.omega = a.omega;
  const auto report = run_experiment(nl, a.cfg);

  const std::string csv_path = a.output + ".csv";
  const std::string json_path = a.output + ".json";
  {
    std::ofstream f(csv_path, std::ios::binary | std::ios::trunc);
    write_csv(report, f);
  }
  {
    auto j = summary_json(report, nl);
    std::ofstream f(json_path, std::ios::binary | std::ios::trunc);
    f << j.dump(2) << '\n';
  }

  out << "wave: C=" << fmt(report.amplitude) << " kappa=" << fmt(report.kappa) << " (lattice phi(0)="
      << fmt(report.discrete_amplitude) << ")\n";
  out << "grid: L=" << fmt(report.grid.half_length()) << " N=" << report.grid.size()
      << " h=" << fmt(report.grid.spacing()) << " dt=" << fmt(report.dt) << '\n';
  out << "predicted: " << to_string(report.predicted);
  if (report.predicted_rate) out << ", growth rate " << fmt(*report.predicted_rate);
  out << '\n';
  out << "observed: " << report.observed << ", distance " << fmt(report.initial_distance) << " -> max "
      << fmt(report.max_distance);
  if (report.fit) out << ", fitted rate " << fmt(report.fit->rate);
  out << '\n';
  out << "drift: energy " << fmt(report.energy_drift) << ", charge " << fmt(report.charge_drift) << '\n';
  out << "agreement: " << (report.agreement ? "true" : "false") << '\n';
  out << "wrote " << csv_path << " and " << json_path << '\n';
  if (report.aborted) {
    out << "aborted at t=" << fmt(report.times.back()) << ": " << report.abort_reason << '\n';
    return kExitBlowUp;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and stability of Klein-Gordon solitary waves with a point nonlinearity",
               "kgdelta"};
  app.require_subcommand(1);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Spectrum of the linearization at one point");
  double sm = 1.0, sw = 0.0, sk = 0.0;
  std::string format = "text";
  bool verbose = false;
  Tolerances tol;
  spectrum->add_option("-m,--mass", sm, "Mass m > 0")->capture_default_str();
  spectrum->add_option("-w,--omega", sw, "Frequency, |omega| < m")->required();
  spectrum->add_option("-k,--kappa", sk, "Effective exponent kappa")->required();
  spectrum->add_option("--format", format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  spectrum->add_flag("-v,--verbose", verbose, "Include all root candidates");
  spectrum->add_option("--threshold", tol.threshold, "Tolerance for the classification curves")
      ->capture_default_str();
  spectrum->add_option("--boundary-tol", tol.boundary, "Virtual-level band")->capture_default_str();
  spectrum->add_option("--residual-tol", tol.residual, "Relative residual for roots of D")
      ->capture_default_str();

  // scan
  auto* scan = app.add_subcommand("scan", "Region map over the (omega, kappa) plane");
  ScanConfig scfg;
  double w_min = -0.96, w_max = 0.96, w_step = 0.02;
  double k_min = -2.0, k_max = 2.0, k_step = 0.05;
  std::string scan_out = "scan.csv";
  scan->add_option("-m,--mass", scfg.m, "Mass m > 0")->capture_default_str();
  scan->add_option("--omega-min", w_min)->capture_default_str();
  scan->add_option("--omega-max", w_max)->capture_default_str();
  scan->add_option("--omega-step", w_step)->capture_default_str();
  scan->add_option("--kappa-min", k_min)->capture_default_str();
  scan->add_option("--kappa-max", k_max)->capture_default_str();
  scan->add_option("--kappa-step", k_step)->capture_default_str();
  scan->add_option("--band", scfg.region.band, "Boundary band half-width")->capture_default_str();
  scan->add_option("--threads", scfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  scan->add_option("-o,--output", scan_out, "CSV path, or - for stdout")->capture_default_str();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Lattice simulation of a perturbed solitary wave");
  SimulateArgs sim;
  double sim_kappa = 0.0;
  auto* kopt = simulate->add_option("-k,--kappa", sim_kappa, "Power-law exponent");
  simulate->add_option("-m,--mass", sim.m)->capture_default_str();
  simulate->add_option("-w,--omega", sim.omega)->required();
  simulate->add_option("-g,--coupling", sim.g, "Power-law coupling g in a = g tau^kappa")
      ->capture_default_str();
  simulate->add_option("--nonlinearity", sim.nonlinearity_file, "JSON nonlinearity config")
      ->excludes(kopt);
  simulate->add_option("--eps", sim.cfg.epsilon, "Perturbation size in the energy norm")
      ->capture_default_str();
  simulate->add_option("-T,--time", sim.cfg.T, "Final time")->capture_default_str();
  double h = 0.0, dt = 0.0, L = 0.0;
  auto* hopt = simulate->add_option("--spacing", h, "Grid spacing h");
  auto* dtopt = simulate->add_option("--dt", dt, "Time step");
  auto* lopt = simulate->add_option("-L,--half-length", L, "Half-length L of the domain");
  simulate->add_option("--seed", sim.cfg.seed)->capture_default_str();
  simulate->add_option("--phase", sim.cfg.phase)->capture_default_str();
  simulate->add_option("--record-interval", sim.cfg.record_interval)->capture_default_str();
  simulate->add_option("-o,--output", sim.output, "Output prefix for .csv and .json")
      ->capture_default_str();

  // validate
  auto* validate = app.add_subcommand("validate", "Cross-check closed forms, cubic roots and scans");
  ValidateConfig vcfg;
  std::size_t grid_n = 21;
  std::vector<double> at;
  validate->add_option("-m,--mass", vcfg.m)->capture_default_str();
  validate->add_option("--grid", grid_n, "Points per axis of the (omega, kappa) grid")
      ->check(CLI::Range(2, 401))
      ->capture_default_str();
  validate->add_option("--step", vcfg.scan_step, "Dense-scan step")->capture_default_str();
  validate->add_option("--perturb-q", vcfg.perturb_q, "Relative fault injected into q")
      ->capture_default_str();
  validate->add_option("--at", at, "Single point m,omega,kappa")->delimiter(',')->expected(3);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(sm, sw, sk, format, verbose, tol, out);
    if (scan->parsed()) {
      scfg.omega = Axis::from_step(w_min, w_max, w_step);
      scfg.kappa = Axis::from_step(k_min, k_max, k_step);
      return cmd_scan(scfg, scan_out, out);
    }
    if (simulate->parsed()) {
      if (kopt->count()) sim.kappa = sim_kappa;
      if (hopt->count()) sim.cfg.h = h;
      if (dtopt->count()) sim.cfg.dt = dt;
      if (lopt->count()) sim.cfg.half_length = L;
      return cmd_simulate(sim, out);
    }
    if (validate->parsed()) {
      vcfg.omega = {-0.95 * vcfg.m, 0.95 * vcfg.m, grid_n};
      vcfg.kappa = {-2.0, 2.0, grid_n};
      if (!at.empty()) vcfg.at = std::array<double, 3>{at[0], at[1], at[2]};
      const auto report = run_validation(vcfg);
      print_report(report, out);
      return report.ok() ? kExitOk : kExitValidationFailed;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NoSolitaryWave& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidationFailed;
  }
  return kExitUsage;
}

}  // namespace kgdelta::app
