// Command-line front end: spectral {analyze|szego|jost|reconstruct|roundtrip|continuum} [flags] INPUT

#include "spectral/continuum.hpp"
#include "spectral/inverse.hpp"
#include "spectral/io.hpp"
#include "spectral/jost.hpp"
#include "spectral/mfunction.hpp"
#include "spectral/orthopoly.hpp"
#include "spectral/sumrules.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

using namespace spectral;
using io::json;

namespace {

struct Flags {
  std::size_t grid = 2048;
  std::size_t nmax = 2000;
  double tol = 1e-8;
  std::string csv;
  std::optional<std::uint64_t> seed;
  std::size_t rank = 6;
  double radius = 0.5;
  std::size_t points = 1;
  std::string input;
};

void write_csv(const std::string& path, const std::string& header, const std::vector<std::vector<double>>& rows) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << header << "\n";
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out << (i ? "," : "") << buf;
    }
    out << "\n";
  }
}

json eigen_json(const SpectralMeasure& m, const std::vector<Eigenvalue>& ev) {
  json out = json::array();
  for (std::size_t k = 0; k < ev.size(); ++k) {
    double w = 0.0;
    for (const auto& p : m.points()) {
      if (std::abs(p.energy - ev[k].energy) < 1e-9 * std::max(1.0, std::abs(p.energy))) w = p.weight;
    }
    out.push_back({{"E", ev[k].energy}, {"z", ev[k].z}, {"weight", w}});
  }
  return out;
}

json analyze(const Flags& f) {
  const json in = io::read_json_file(f.input);
  const SequenceRule rule = io::rule_from_json(in);
  json out;
  if (rule.kind() == RuleKind::finite) {
    const PerturbedJacobi& J = rule.jacobi();
    const SpectralMeasure m = ac_density(J, f.grid);
    const JostData d = jost_data(J);
    out["operator"] = io::to_json(J);
    out["eigenvalues"] = eigen_json(m, eigenvalues_outside(J));
    out["measure"] = {{"grid", m.grid()},
                      {"point_mass", m.point_mass()},
                      {"density_mass", m.density_mass()},
                      {"total_mass", m.total_mass()}};
    out["jost"] = {{"u", io::to_json(d.u)}, {"L", io::to_json(d.L)}, {"prod_a", d.prod_a}};
    KillipSimonOptions ks;
    ks.grid = f.grid;
    out["killip_simon"] = io::to_json(killip_simon_report(J, ks));
    out["theorem_4_1"] = io::to_json(theorem_4_1_report(J));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.grid(); ++i) {
      const double t = SpectralMeasure::theta(i, m.grid());
      rows.push_back({t, 2.0 * std::cos(t), m.density()[i]});
    }
    write_csv(f.csv, "theta,E,f", rows);
  } else {
    const SumEstimate hs = hs_norm_sq(rule, std::max<std::size_t>(f.nmax, 100));
    out["hilbert_schmidt"] = {{"value", hs.value}, {"verdict", std::string(to_string(hs.verdict))}, {"note", hs.note}};
    out["hypotheses"] = io::to_json(check_hypotheses(rule, std::max<std::size_t>(f.nmax, 100), f.tol));
    if (rule.kind() == RuleKind::exponential) {
      ExponentialDecayOptions o;
      o.decay_window = std::max<std::size_t>(100, std::min<std::size_t>(f.nmax, 500));
      out["theorem_4_2"] = io::to_json(theorem_4_2_report(rule, o));
    }
  }
  return out;
}

json szego(const Flags& f) {
  const SequenceRule rule = io::rule_from_json(io::read_json_file(f.input));
  std::vector<cplx> grid;
  for (std::size_t j = 0; j < std::max<std::size_t>(f.points, 1); ++j) {
    grid.push_back(std::polar(f.radius, 2.0 * pi * static_cast<double>(j) / static_cast<double>(f.points)));
  }
  SzegoOptions o;
  o.base_n = std::max<std::size_t>(f.nmax / 8, 1);
  o.windows = 3;
  o.tolerance = f.tol;
  json pts = json::array();
  std::vector<std::vector<double>> rows;
  for (const auto& d : detect_szego_asymptotics(rule, grid, o)) {
    const cplx v = d.limit.value();
    pts.push_back({{"z", {d.z.real(), d.z.imag()}},
                   {"verdict", std::string(to_string(d.converged))},
                   {"limit", {v.real(), v.imag()}},
                   {"increments", d.test.increments}});
    std::vector<double> row{d.z.real(), d.z.imag()};
    row.insert(row.end(), d.test.increments.begin(), d.test.increments.end());
    rows.push_back(row);
  }
  write_csv(f.csv, "re_z,im_z,increments...", rows);
  json out{{"points", pts}, {"n_max", o.base_n << o.windows}};
  if (f.nmax >= 100) out["hypotheses"] = io::to_json(check_hypotheses(rule, f.nmax, f.tol));
  return out;
}

json jost(const Flags& f) {
  const PerturbedJacobi J = io::jacobi_from_json(io::read_json_file(f.input));
  const JostData d = jost_data(J);
  json out{{"u", io::to_json(d.u)},
           {"L", io::to_json(d.L)},
           {"prod_a", d.prod_a},
           {"zeros_in_disk", d.zeros_in_disk},
           {"boundary_zeros", d.boundary_zeros}};
  if (d.boundary_zeros.empty()) {
    const RealPolynomial u = jost_from_measure(ac_density(J, f.grid));
    out["factorization_deviation"] = u.max_coefficient_deviation(d.u);
  } else {
    out["factorization_deviation"] = nullptr;
  }
  double det = 0.0;
  for (double t : {0.3, 1.1, 2.0}) {
    const cplx z = std::polar(0.7, t);
    det = std::max(det, std::abs(perturbation_determinant(J, z) - d.L(z)));
  }
  out["determinant_deviation"] = det;
  return out;
}

json reconstruct(const Flags& f) {
  ReconstructOptions o;
  o.grid = std::max<std::size_t>(f.grid, 4096);
  o.tolerance = f.tol;
  const Reconstruction r = reconstruct_from_L(io::polynomial_from_json(io::read_json_file(f.input)), o);
  json out = io::to_json(r.jacobi);
  out["scale"] = r.scale;
  out["determinant_deviation"] = r.determinant_deviation;
  return out;
}

json roundtrip(const Flags& f) {
  PerturbedJacobi J;
  if (f.seed) {
    std::mt19937_64 rng(*f.seed);
    std::uniform_real_distribution<double> ad(0.5, 1.5), bd(-1.0, 1.0);
    std::vector<double> a(f.rank), b(f.rank);
    for (std::size_t i = 0; i < f.rank; ++i) {
      a[i] = ad(rng);
      b[i] = bd(rng);
    }
    J = PerturbedJacobi(a, b);
  } else {
    J = io::jacobi_from_json(io::read_json_file(f.input));
  }
  const std::size_t grid = std::max<std::size_t>(f.grid, 4096);
  const double dev = roundtrip_check(J, grid);
  return {{"operator", io::to_json(J)}, {"grid", grid}, {"max_deviation", dev}, {"pass", dev < 1e-6}};
}

json continuum(const Flags& f) {
  const bool is_json = f.input.size() >= 5 && f.input.substr(f.input.size() - 5) == ".json";
  const ContinuumPotential V =
      is_json ? io::potential_from_json(io::read_json_file(f.input)) : read_potential_csv(f.input);
  const ConditionReport r = theorem_2_1_report(V);
  std::vector<std::vector<double>> rows;
  if (!f.csv.empty()) {
    for (double k = 0.05; k <= 20.0; k += 0.05) {
      const cplx M = weyl_M(V, k);
      rows.push_back({k, M.real(), M.imag()});
    }
  }
  write_csv(f.csv, "k,re_M,im_M", rows);
  return {{"report", io::to_json(r)}, {"bound_states", r.at("weyl_support").trace}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral theory of Jacobi matrices and half-line Schrodinger operators"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* sub, bool need_input = true) {
    sub->add_option("--grid", f.grid, "theta grid size")->check(CLI::PositiveNumber);
    sub->add_option("--nmax", f.nmax, "recursion length");
    sub->add_option("--tol", f.tol, "tolerance");
    sub->add_option("--csv", f.csv, "write a CSV trace to this path");
    sub->add_option("--seed", f.seed, "seed for randomized runs");
    auto* in = sub->add_option("INPUT", f.input, "input file");
    if (need_input) in->required();
  };
  std::vector<std::pair<CLI::App*, json (*)(const Flags&)>> commands;
  auto* a = app.add_subcommand("analyze", "spectral report for an operator or rule");
  add_common(a);
  commands.emplace_back(a, analyze);
  auto* s = app.add_subcommand("szego", "Szego asymptotics of z^n p_n on a circle of points");
  add_common(s);
  s->add_option("--radius", f.radius, "|z| of the grid");
  s->add_option("--points", f.points, "number of grid points");
  commands.emplace_back(s, szego);
  auto* j = app.add_subcommand("jost", "Jost function, determinant and factorization check");
  add_common(j);
  commands.emplace_back(j, jost);
  auto* r = app.add_subcommand("reconstruct", "finite-rank operator from a perturbation determinant");
  add_common(r);
  commands.emplace_back(r, reconstruct);
  auto* t = app.add_subcommand("roundtrip", "J -> measure -> J");
  add_common(t, false);
  t->add_option("--rank", f.rank, "rank of the random operator");
  commands.emplace_back(t, roundtrip);
  auto* c = app.add_subcommand("continuum", "Schrodinger report for a CSV or JSON potential");
  add_common(c);
  commands.emplace_back(c, continuum);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (const auto& [sub, run] : commands) {
      if (sub->parsed()) {
        if (sub == t && !f.seed && f.input.empty()) throw ValidationError("roundtrip needs INPUT or --seed");
        std::cout << io::dump(run(f)) << "\n";
      }
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
