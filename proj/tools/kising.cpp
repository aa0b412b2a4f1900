// Command line front end: spectra, mapping verification, coupling scans,
// Wilson loop measurements, and the mean-field reference curves. All output
// carries a provenance header (tool version, seed, config echo) and no
// timestamps, so identical configs reproduce byte-identical files.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kising/analytic.hpp"
#include "kising/effective_maps.hpp"
#include "kising/exact_diag.hpp"
#include "kising/lattice.hpp"
#include "kising/model.hpp"
#include "kising/pauli.hpp"
#include "kising/version.hpp"

namespace {

using kising::CouplingParams;
using kising::Lattice;
using kising::LanczosOptions;
using kising::WilsonRegion;

struct LambdaRange {
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
  std::vector<double> values() const {
    std::vector<double> out;
    for (int i = 0; i < steps; ++i) {
      out.push_back(steps == 1
                        ? start
                        : start + (stop - start) * i / (steps - 1));
    }
    return out;
  }
};

struct RunConfig {
  std::vector<std::string> lattice_args;
  double j = 1.0;
  double k_coupling = 1.0;
  double lambda = 0.0;
  std::string lambda_range_text;
  int k = 6;
  std::uint64_t seed = 12345;
  double tol = 1e-10;
  double degeneracy_tol = 1e-8;
  std::string output;
  std::string format;
  std::vector<std::string> region_args;
};

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Lattice parse_lattice(const std::vector<std::string>& args) {
  if (args.empty()) throw CLI::ValidationError("--lattice is required");
  const std::string& kind = args[0];
  try {
    if (kind == "torus") {
      if (args.size() != 3) {
        throw CLI::ValidationError("--lattice torus needs LX LY");
      }
      return kising::build_torus(std::stoi(args[1]), std::stoi(args[2]));
    }
    if (kind == "ladder") {
      if (args.size() != 2) {
        throw CLI::ValidationError("--lattice ladder needs N");
      }
      return kising::build_ladder(std::stoi(args[1]));
    }
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(std::string("--lattice: ") + e.what());
  }
  throw CLI::ValidationError("--lattice kind must be torus or ladder");
}

LambdaRange parse_lambda_range(const std::string& text) {
  LambdaRange r;
  std::istringstream in(text);
  std::string a, b, c;
  if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
      !std::getline(in, c)) {
    throw CLI::ValidationError("--lambda-range must be start:stop:steps");
  }
  try {
    r.start = std::stod(a);
    r.stop = std::stod(b);
    r.steps = std::stoi(c);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--lambda-range must be start:stop:steps");
  }
  if (r.steps < 1) {
    throw CLI::ValidationError("--lambda-range needs at least one step");
  }
  return r;
}

std::vector<WilsonRegion> parse_regions(const Lattice& l,
                                        const std::vector<std::string>& args) {
  std::vector<WilsonRegion> out;
  for (const std::string& text : args) {
    std::istringstream in(text);
    std::string part;
    std::vector<int> nums;
    while (std::getline(in, part, ',')) {
      try {
        nums.push_back(std::stoi(part));
      } catch (const std::exception&) {
        throw CLI::ValidationError("--region must be x0,y0,w,h");
      }
    }
    if (nums.size() != 4) {
      throw CLI::ValidationError("--region must be x0,y0,w,h");
    }
    out.push_back(
        kising::make_rect_region(l, nums[0], nums[1], nums[2], nums[3]));
  }
  return out;
}

// Canonical config echo shared by all formats; field order is fixed so that
// reruns are byte-identical.
std::string config_echo(const std::string& command, const RunConfig& cfg) {
  std::ostringstream out;
  out << "command=" << command;
  out << " lattice=";
  for (std::size_t i = 0; i < cfg.lattice_args.size(); ++i) {
    out << (i == 0 ? "" : ",") << cfg.lattice_args[i];
  }
  out << " j=" << format_real(cfg.j);
  out << " k_coupling=" << format_real(cfg.k_coupling);
  if (cfg.lambda_range_text.empty()) {
    out << " lambda=" << format_real(cfg.lambda);
  } else {
    out << " lambda_range=" << cfg.lambda_range_text;
  }
  out << " k=" << cfg.k;
  out << " seed=" << cfg.seed;
  out << " tol=" << format_real(cfg.tol);
  out << " degeneracy_tol=" << format_real(cfg.degeneracy_tol);
  for (const std::string& r : cfg.region_args) out << " region=" << r;
  return out.str();
}

nlohmann::json provenance_json(const std::string& command,
                               const RunConfig& cfg) {
  return {{"tool", "kising"},
          {"version", kising::version},
          {"seed", cfg.seed},
          {"config", config_echo(command, cfg)}};
}

std::string csv_header(const std::string& command, const RunConfig& cfg) {
  std::ostringstream out;
  out << "# tool: kising " << kising::version << "\n";
  out << "# seed: " << cfg.seed << "\n";
  out << "# config: " << config_echo(command, cfg) << "\n";
  return out.str();
}

void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.output.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + cfg.output);
  }
  out << payload;
}

void require_format(const RunConfig& cfg, const std::string& needed) {
  if (!cfg.format.empty() && cfg.format != needed) {
    throw CLI::ValidationError("this command only supports --format " +
                               needed);
  }
}

CouplingParams couplings_of(const RunConfig& cfg, double lambda) {
  CouplingParams c;
  c.j = cfg.j;
  c.k = cfg.k_coupling;
  c.lambda = lambda;
  c.validate();
  return c;
}

LanczosOptions solver_options(const RunConfig& cfg) {
  LanczosOptions opts;
  opts.seed = cfg.seed;
  opts.tol = cfg.tol;
  opts.degeneracy_tol = cfg.degeneracy_tol;
  return opts;
}

int cmd_spectrum(const RunConfig& cfg) {
  require_format(cfg, "json");
  const Lattice l = parse_lattice(cfg.lattice_args);
  const CouplingParams c = couplings_of(cfg, cfg.lambda);
  const kising::PauliSum h = kising::build_hamiltonian(l, c);
  const kising::SpectrumResult result =
      kising::lowest_eigenpairs(h, cfg.k, solver_options(cfg));

  nlohmann::json doc = {{"provenance", provenance_json("spectrum", cfg)},
                        {"lattice", kising::lattice_to_json(l)},
                        {"couplings",
                         {{"j", c.j}, {"k", c.k}, {"lambda", c.lambda}}},
                        {"result", result.to_json()}};
  write_output(cfg, doc.dump(2) + "\n");
  if (!result.converged) {
    std::cerr << "solver did not reach the residual target; results are "
                 "partial (see residuals)\n";
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  require_format(cfg, "json");
  const Lattice l = parse_lattice(cfg.lattice_args);
  const CouplingParams c = couplings_of(cfg, cfg.lambda);
  const kising::MapReport report =
      l.kind == kising::LatticeKind::ladder
          ? kising::verify_ladder_map(l.lx, c, cfg.tol)
          : kising::verify_torus_map(l.lx, l.ly, c, cfg.tol);
  const kising::ExtremeStateReport extremes =
      kising::extreme_state_check(l, cfg.tol);

  nlohmann::json doc = {{"provenance", provenance_json("verify", cfg)},
                        {"report", report.to_json()},
                        {"extreme_states", extremes.to_json()}};
  write_output(cfg, doc.dump(2) + "\n");
  return (report.pass && extremes.pass) ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg) {
  require_format(cfg, "csv");
  if (cfg.lambda_range_text.empty()) {
    throw CLI::ValidationError("scan requires --lambda-range");
  }
  const Lattice l = parse_lattice(cfg.lattice_args);
  const LambdaRange range = parse_lambda_range(cfg.lambda_range_text);
  const std::vector<WilsonRegion> regions = parse_regions(l, cfg.region_args);
  const int k_solve = std::max(cfg.k, 4);

  std::ostringstream out;
  out << csv_header("scan", cfg);
  out << "lambda,e0,e1,e2,e3,gap,ground_degeneracy";
  for (std::size_t r = 0; r < regions.size(); ++r) out << ",wilson_" << r;
  out << "\n";

  bool all_converged = true;
  for (double lambda : range.values()) {
    const CouplingParams c = couplings_of(cfg, lambda);
    const kising::PauliSum h = kising::build_hamiltonian(l, c);
    const kising::SpectrumResult res =
        kising::lowest_eigenpairs(h, k_solve, solver_options(cfg));
    all_converged &= res.converged;

    out << format_real(lambda);
    for (int i = 0; i < 4; ++i) out << "," << format_real(res.eigenvalues[i]);
    out << "," << format_real(res.eigenvalues[1] - res.eigenvalues[0]);
    out << "," << res.degeneracies.front().size();
    if (!regions.empty()) {
      std::vector<kising::StateVector> multiplet;
      for (int idx : res.degeneracies.front()) {
        multiplet.push_back(res.eigenvectors[idx]);
      }
      for (const WilsonRegion& region : regions) {
        out << ","
            << format_real(kising::measure_wilson(multiplet, l, region));
      }
    }
    out << "\n";
  }
  write_output(cfg, out.str());
  if (!all_converged) {
    std::cerr << "solver did not reach the residual target on some rows\n";
    return 1;
  }
  return 0;
}

int cmd_wilson(const RunConfig& cfg) {
  require_format(cfg, "csv");
  const Lattice l = parse_lattice(cfg.lattice_args);
  if (cfg.region_args.empty()) {
    throw CLI::ValidationError("wilson requires at least one --region");
  }
  const std::vector<WilsonRegion> regions = parse_regions(l, cfg.region_args);
  const CouplingParams c = couplings_of(cfg, cfg.lambda);
  const double gamma = c.lambda / c.j;

  const kising::PauliSum h = kising::build_hamiltonian(l, c);
  const kising::SpectrumResult res =
      kising::lowest_eigenpairs(h, cfg.k, solver_options(cfg));
  std::vector<kising::StateVector> multiplet;
  for (int idx : res.degeneracies.front()) {
    multiplet.push_back(res.eigenvectors[idx]);
  }

  std::ostringstream out;
  out << csv_header("wilson", cfg);
  out << "region,area,perimeter,measured,kitaev_estimate,kitaev_valid,"
         "ising_estimate,ising_valid\n";
  std::vector<double> perimeters, areas, logs;
  for (std::size_t r = 0; r < regions.size(); ++r) {
    const WilsonRegion& region = regions[r];
    const double measured = kising::measure_wilson(multiplet, l, region);
    const double kitaev = kising::wilson_kitaev_estimate(gamma, region);
    const double ising =
        gamma > 0.0 ? kising::wilson_ising_estimate(gamma, region)
                    : std::numeric_limits<double>::quiet_NaN();
    out << "r" << r << "," << region.area() << "," << region.perimeter << ","
        << format_real(measured) << "," << format_real(kitaev) << ","
        << (kising::wilson_kitaev_estimate_valid(gamma) ? 1 : 0) << ","
        << format_real(ising) << ","
        << (kising::wilson_ising_estimate_valid(gamma) ? 1 : 0) << "\n";
    if (measured > 0.0) {
      perimeters.push_back(static_cast<double>(region.perimeter));
      areas.push_back(static_cast<double>(region.area()));
      logs.push_back(-std::log(measured));
    }
  }
  if (logs.size() == regions.size() && !logs.empty()) {
    const kising::OriginFit per_fit =
        kising::fit_through_origin(perimeters, logs);
    const kising::OriginFit area_fit = kising::fit_through_origin(areas, logs);
    out << "# perimeter_fit: slope=" << format_real(per_fit.slope)
        << " rms=" << format_real(per_fit.rms_residual) << "\n";
    out << "# area_fit: slope=" << format_real(area_fit.slope)
        << " rms=" << format_real(area_fit.rms_residual) << "\n";
  } else {
    out << "# fits skipped: non-positive Wilson averages\n";
  }
  write_output(cfg, out.str());
  if (!res.converged) {
    std::cerr << "solver did not reach the residual target\n";
    return 1;
  }
  return 0;
}

int cmd_meanfield(const RunConfig& cfg) {
  require_format(cfg, "csv");
  if (cfg.lambda_range_text.empty()) {
    throw CLI::ValidationError("meanfield requires --lambda-range");
  }
  const LambdaRange range = parse_lambda_range(cfg.lambda_range_text);

  std::ostringstream out;
  out << csv_header("meanfield", cfg);
  out << "lambda,x_expectation,z_plus,z_minus\n";
  for (double lambda : range.values()) {
    const CouplingParams c = couplings_of(cfg, lambda);
    const kising::MeanFieldResult mf = kising::mean_field(c);
    out << format_real(lambda) << "," << format_real(mf.x_expectation) << ","
        << format_real(mf.z_expectation_branches.first) << ","
        << format_real(mf.z_expectation_branches.second) << "\n";
  }
  write_output(cfg, out.str());
  return 0;
}

void add_common_options(CLI::App* sub, RunConfig& cfg, bool needs_lattice) {
  auto* lattice =
      sub->add_option("--lattice", cfg.lattice_args,
                      "Lattice: torus LX LY or ladder N")
          ->expected(2, 3);
  if (needs_lattice) lattice->required();
  sub->add_option("--j", cfg.j, "Vertex coupling J (> 0)");
  sub->add_option("--k-coupling", cfg.k_coupling, "Plaquette coupling K (> 0)");
  sub->add_option("--lambda", cfg.lambda, "Ising coupling (>= 0)");
  sub->add_option("--lambda-range", cfg.lambda_range_text,
                  "Coupling grid start:stop:steps");
  sub->add_option("--k", cfg.k, "Eigenpair count")->check(CLI::PositiveNumber);
  sub->add_option("--seed", cfg.seed, "Solver start-vector seed");
  sub->add_option("--tol", cfg.tol, "Residual / verification tolerance");
  sub->add_option("--degeneracy-tol", cfg.degeneracy_tol,
                  "Multiplet grouping tolerance");
  sub->add_option("--output", cfg.output, "Output file (default stdout)");
  sub->add_option("--format", cfg.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--region", cfg.region_args,
                  "Wilson region x0,y0,w,h (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kitaev-Ising model toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  int (*runner)(const RunConfig&) = nullptr;

  auto* spectrum = app.add_subcommand(
      "spectrum", "Lowest eigenvalues, degeneracies, residuals");
  add_common_options(spectrum, cfg, true);
  spectrum->callback([&] { runner = cmd_spectrum; });

  auto* verify = app.add_subcommand(
      "verify", "Spectral equivalence of the virtual-spin mapping");
  add_common_options(verify, cfg, true);
  verify->callback([&] { runner = cmd_verify; });

  auto* scan =
      app.add_subcommand("scan", "Spectrum rows over a coupling grid");
  add_common_options(scan, cfg, true);
  scan->callback([&] { runner = cmd_scan; });

  auto* wilson =
      app.add_subcommand("wilson", "Wilson loop averages and scaling fits");
  add_common_options(wilson, cfg, true);
  wilson->callback([&] { runner = cmd_wilson; });

  auto* meanfield =
      app.add_subcommand("meanfield", "Mean-field expectation curves");
  add_common_options(meanfield, cfg, false);
  meanfield->callback([&] { runner = cmd_meanfield; });

  CLI11_PARSE(app, argc, argv);

  try {
    return runner(cfg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
