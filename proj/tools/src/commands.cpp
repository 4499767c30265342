#include "uscpol_cli/commands.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "uscpol/classical.hpp"
#include "uscpol/correlator.hpp"
#include "uscpol/emission.hpp"
#include "uscpol/errors.hpp"
#include "uscpol/hopfield.hpp"
#include "uscpol/parallel.hpp"
#include "uscpol/potential.hpp"
#include "uscpol/spectral_map.hpp"
#include "uscpol/tomography.hpp"
#include "uscpol/vacuum.hpp"

namespace uscpol::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string format12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc()) throw NumericalError("number formatting failed");
  return std::string(buf, end);
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename onto " + target.string());
  }
}

namespace {

class Csv {
 public:
  explicit Csv(std::initializer_list<const char*> header) {
    bool first = true;
    for (const char* h : header) {
      if (!first) text_ += ',';
      text_ += h;
      first = false;
    }
    text_ += '\n';
  }
  Csv& cell(double v) { return raw(format12(v)); }
  Csv& raw(const std::string& s) {
    if (!line_start_) text_ += ',';
    text_ += s;
    line_start_ = false;
    return *this;
  }
  void end() {
    text_ += '\n';
    line_start_ = true;
  }
  std::string str() const { return text_; }

 private:
  std::string text_;
  bool line_start_ = true;
};

std::vector<double> grid_or(const std::optional<Grid>& g, Grid fallback) { return (g ? *g : fallback).points(); }

std::vector<double> k_points(const Config& c, Grid fallback) { return grid_or(c.k_grid, fallback); }

const char* component_name(int i) {
  static const char* names[] = {"photon", "dresser", "emitter"};
  return names[i];
}

std::vector<OutputFile> cmd_dispersion(const Config& c) {
  const SystemParams& p = c.params;
  const auto ks = k_points(c, {0.001, 4.0, 400, false});
  Csv branches({"k", "omega_k", "omega_lp", "omega_up", "theta", "Omega_lp", "Omega_up"});
  Csv three({"k", "omega_1", "omega_2", "omega_3", "photon_1", "dresser_1", "emitter_1", "photon_2", "dresser_2",
             "emitter_2", "photon_3", "dresser_3", "emitter_3", "dominant_1", "dominant_2", "dominant_3"});
  const LinearDispersion disp;
  for (double k : ks) {
    const BranchPoint bp = branch_point(p, k, disp);
    branches.cell(bp.k).cell(bp.omega_k).cell(bp.omega_lp).cell(bp.omega_up).cell(bp.theta).cell(bp.Omega_lp).cell(
        bp.Omega_up);
    branches.end();
    const ThreeModeSpectrum s = three_mode_spectrum(p, disp.frequency(k));
    three.cell(k);
    for (double w : s.omega) three.cell(w);
    for (const auto& w : s.weights)
      for (double x : w) three.cell(x);
    for (int b = 0; b < 3; ++b) three.raw(component_name(s.dominant(b)));
    three.end();
  }
  return {{"dispersion.csv", branches.str()}, {"three_mode.csv", three.str()}};
}

std::vector<OutputFile> cmd_vacuum(const Config& c) {
  const auto ks = k_points(c, {0.001, 10.0, 400, true});
  Csv csv({"k", "d2_ratio", "e2_ratio", "dzp_lp", "dzp_up", "n_ph", "n_d", "n_int", "dw_zp"});
  for (double k : ks) {
    const VacuumObservables v = vacuum_observables(c.params, k);
    csv.cell(v.k).cell(v.d2_ratio).cell(v.e2_ratio).cell(v.dzp_lp).cell(v.dzp_up).cell(v.n_ph).cell(v.n_d).cell(
        v.n_int).cell(v.dw_zp);
    csv.end();
  }
  return {{"vacuum.csv", csv.str()}};
}

std::vector<OutputFile> cmd_potential(const Config& c, std::size_t threads) {
  const SystemParams& p = c.params;
  const double omega = p.omega_e;
  const auto rs = grid_or(c.r_grid, {0.05, 6.0, 200, true});
  PotentialOptions opt;
  opt.fft_size = c.fft_size;
  opt.threads = threads;
  const PotentialProfile prof = effective_potential(p, omega, rs, opt);
  Csv pot({"r", "U_raw", "U_normalized"});
  for (std::size_t i = 0; i < rs.size(); ++i) {
    pot.cell(rs[i]).cell(prof.u[i]).cell(prof.u_normalized[i]);
    pot.end();
  }
  Csv kern({"k", "K_value"});
  const auto ks = k_points(c, {0.001, 10.0, 1000, false});
  for (double k : ks) {
    kern.cell(k).cell(p.Omega_d == 0.0 ? 0.0 : kernel_K(p, k, omega));
    kern.end();
  }
  std::vector<OutputFile> out{{"potential.csv", pot.str()}, {"kernel.csv", kern.str()}};
  if (c.potential_oracle) {
    const auto ref = effective_potential_hankel(p, omega, rs, threads);
    Csv orc({"r", "U_hankel", "U_dft", "relative_difference"});
    for (std::size_t i = 0; i < rs.size(); ++i) {
      orc.cell(rs[i]).cell(ref[i]).cell(prof.u[i]).cell(ref[i] != 0.0 ? std::abs(prof.u[i] - ref[i]) / std::abs(ref[i])
                                                                      : std::abs(prof.u[i]));
      orc.end();
    }
    out.push_back({"potential_oracle.csv", orc.str()});
  }
  return out;
}

std::string regime_flag(const EmissionPoint& e) {
  if (e.weak_lp && e.weak_up) return "weak";
  if (!e.weak_lp && !e.weak_up) return "strong";
  return e.weak_lp ? "strong_up" : "strong_lp";
}

std::vector<OutputFile> cmd_emission(const Config& c) {
  const auto ks = k_points(c, {0.01, 4.0, 400, false});
  Csv csv({"k", "theta", "gamma_lp", "gamma_up", "Gamma_lp", "Gamma_up", "regime_flag"});
  for (double k : ks) {
    const EmissionPoint e = emission_point(c.params, k, c.loss_model);
    csv.cell(e.k).cell(e.theta).cell(e.gamma_lp).cell(e.gamma_up).cell(e.Gamma_lp).cell(e.Gamma_up).raw(
        regime_flag(e));
    csv.end();
  }
  return {{"emission.csv", csv.str()}};
}

const Grid kMapK{0.02, 4.0, 400, false};
const Grid kMapOmega{0.01, 3.0, 2000, false};

std::vector<OutputFile> cmd_transmission(const Config& c, const RunOptions& o, std::size_t threads) {
  const SpectralMap map =
      transmission_map(c.params, k_points(c, kMapK), grid_or(c.omega_grid, kMapOmega), threads);
  std::vector<OutputFile> out;
  if (o.format == "csv") {
    std::ostringstream s;
    write_map_csv(s, map);
    out.push_back({"transmission.csv", s.str()});
  } else {
    std::ostringstream s(std::ios::binary);
    write_map_binary(s, map);
    out.push_back({"transmission.bin", s.str()});
  }
  return out;
}

std::string branch_cell(Branch b) { return std::string(to_string(b)); }

void record_row(Csv& csv, const TomographyRecord& r) {
  csv.raw(branch_cell(r.branch)).cell(r.omega_e).cell(r.k_x).cell(r.omega_minus).cell(r.omega_plus).cell(r.omega_bar)
      .cell(r.Omega_bar);
  csv.end();
}

Branch branch_for(const SystemParams& p) {
  if (p.omega_e < p.omega_d) return Branch::lower;
  if (p.omega_e > p.omega_d_bar()) return Branch::upper;
  throw GapError(p.omega_d, p.omega_d_bar(),
                 "omega_e = " + format_number(p.omega_e) + " lies in the polariton gap; no anticrossing to measure");
}

std::vector<OutputFile> cmd_tomography(const Config& c, const RunOptions& o, std::size_t threads,
                                       std::vector<std::string>& notes) {
  const SystemParams& p = c.params;
  const double widest = std::max({p.gamma_c, p.kappa_d, p.kappa_e});
  Csv records({"branch", "omega_e", "k_x", "omega_minus", "omega_plus", "omega_bar", "Omega_bar"});
  if (!o.map_path.empty()) {
    std::ifstream in(o.map_path, std::ios::binary);
    if (!in) throw ConfigError("cannot open map file " + o.map_path);
    const SpectralMap map = read_map_binary(in);
    AnticrossingOptions ac;
    ac.window = 2.0 * std::max(p.Omega_e, widest);
    ac.rel_prominence = c.min_prominence;
    ac.threshold = 0.5 * widest;
    const TomographyRecord r = minimal_anticrossing(map, p.omega_e, branch_for(p), ac);
    if (r.at_edge) notes.push_back("minimal splitting lies on the edge of the paired k-range");
    record_row(records, r);
    return {{"records.csv", records.str()}};
  }

  std::vector<double> omega_e = c.omega_e_values();
  if (c.omega_e_list.empty()) {
    for (const Grid& g : {Grid{0.2, 0.95, 20, false}, Grid{1.5, 2.9, 20, false}})
      for (double w : g.points()) omega_e.push_back(w);
  }
  TomographyOptions opt;
  opt.rel_prominence = c.min_prominence;
  opt.threads = threads;
  const TomographyResult res =
      tomography_sweep(p, omega_e, k_points(c, kMapK), grid_or(c.omega_grid, kMapOmega), opt);
  for (const auto& r : res.lower) record_row(records, r);
  for (const auto& r : res.upper) record_row(records, r);
  Csv curve({"k", "tan_reconstructed", "tan_analytic", "relative_error"});
  for (std::size_t i = 0; i < res.curve.k.size(); ++i) {
    curve.cell(res.curve.k[i]).cell(res.curve.tan_reconstructed[i]).cell(res.curve.tan_analytic[i]).cell(
        res.curve.relative_error[i]);
    curve.end();
  }
  std::string diag = "median_relative_error " + format12(res.curve.median_error()) + "\n";
  for (const auto& d : res.diagnostics) diag += d + "\n";
  notes.insert(notes.end(), res.diagnostics.begin(), res.diagnostics.end());
  return {{"records.csv", records.str()}, {"reconstruction.csv", curve.str()}, {"diagnostics.txt", diag}};
}

std::vector<OutputFile> cmd_permittivity(const Config& c) {
  const SystemParams& p = c.params;
  Csv eps({"omega", "eps_hopfield_re", "eps_hopfield_im", "eps_matrix_re", "eps_matrix_im", "eps_independent_re",
           "eps_independent_im"});
  for (double w : grid_or(c.omega_grid, {0.01, 3.0, 1000, false})) {
    const PermittivityResult r = permittivity(p, w);
    const cplx ind = permittivity_independent(p, w);
    eps.cell(w).cell(r.eps_hopfield.real()).cell(r.eps_hopfield.imag()).cell(r.eps_matrix.real()).cell(
        r.eps_matrix.imag()).cell(ind.real()).cell(ind.imag());
    eps.end();
  }
  Csv roots({"k", "omega_1", "omega_2", "omega_3"});
  const LinearDispersion disp;
  for (double k : k_points(c, {0.01, 4.0, 100, false})) {
    const auto rs = classical_dispersion_roots(p, disp.frequency(k));
    roots.cell(k);
    for (std::size_t i = 0; i < 3; ++i) {
      if (i < rs.size())
        roots.cell(rs[i]);
      else
        roots.raw("");
    }
    roots.end();
  }
  return {{"permittivity.csv", eps.str()}, {"dispersion_roots.csv", roots.str()}};
}

double round12(double v) { return std::stod(format12(v)); }

std::vector<OutputFile> cmd_triplets(const Config& c) {
  const auto ks = k_points(c, {-2.0, 2.0, 81, false});
  const auto found = find_phase_matched_triplets(c.params, ks, c.tol_omega);
  json arr = json::array();
  for (const auto& t : found) {
    json j;
    j["l1"] = branch_cell(t.l1.branch);
    j["k1"] = round12(t.l1.k);
    j["l2"] = branch_cell(t.l2.branch);
    j["k2"] = round12(t.l2.k);
    j["l3"] = branch_cell(t.l3.branch);
    j["k3"] = round12(t.l3.k);
    j["mismatch"] = round12(t.mismatch);
    j["chi2_scale"] = round12(t.chi2_scale);
    arr.push_back(std::move(j));
  }
  return {{"triplets.json", arr.dump(2) + "\n"}};
}

json grid_json(const std::optional<Grid>& g) {
  if (!g) return nullptr;
  return {{"start", g->start}, {"stop", g->stop}, {"count", g->count}, {"log", g->log}};
}

std::string manifest_text(const Config& c, const RunOptions& o, const std::vector<OutputFile>& files) {
  json m;
  m["command"] = o.command;
  m["tool_version"] = kVersion;
  if (o.command == "transmission") m["format"] = o.format;
  if (!o.map_path.empty()) {
    std::ifstream in(o.map_path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    m["input_map"] = {{"path", o.map_path}, {"sha256", sha256_hex(s.str())}};
  }
  m["config"] = serialize(c);
  const SystemParams& p = c.params;
  m["params"] = {{"omega_d", p.omega_d}, {"Omega_d", p.Omega_d}, {"omega_e", p.omega_e}, {"Omega_e", p.Omega_e},
                 {"gamma_c", p.gamma_c}, {"kappa_d", p.kappa_d}, {"kappa_e", p.kappa_e},
                 {"loss_model", std::string(to_string(c.loss_model))}};
  json lists = json::array();
  for (const Grid& g : c.omega_e_list) lists.push_back(grid_json(g));
  m["grids"] = {{"k_grid", grid_json(c.k_grid)},
                {"omega_grid", grid_json(c.omega_grid)},
                {"r_grid", grid_json(c.r_grid)},
                {"omega_e_list", lists}};
  json outs = json::array();
  for (const auto& f : files) outs.push_back({{"file", f.name}, {"sha256", sha256_hex(f.content)}});
  m["outputs"] = outs;
  return m.dump(2) + "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"dispersion",   "vacuum",      "potential",    "emission",
                                              "transmission", "tomography",  "permittivity", "triplets"};
  return names;
}

std::vector<OutputFile> compute(const Config& config, const RunOptions& o, std::vector<std::string>& notes) {
  const std::size_t threads = resolve_threads(o.threads);
  if (o.format != "csv" && o.format != "bin") throw ConfigError("unknown format '" + o.format + "'; use csv or bin");
  if (!o.map_path.empty() && o.command != "tomography") throw ConfigError("--map applies to tomography only");
  for (const auto& w : config_warnings(config)) notes.push_back(w);
  if (o.command == "dispersion") return cmd_dispersion(config);
  if (o.command == "vacuum") return cmd_vacuum(config);
  if (o.command == "potential") return cmd_potential(config, threads);
  if (o.command == "emission") return cmd_emission(config);
  if (o.command == "transmission") return cmd_transmission(config, o, threads);
  if (o.command == "tomography") return cmd_tomography(config, o, threads, notes);
  if (o.command == "permittivity") return cmd_permittivity(config);
  if (o.command == "triplets") return cmd_triplets(config);
  throw ConfigError("unknown command '" + o.command + "'");
}

RunResult run(const Config& config, const RunOptions& o) {
  RunResult res;
  res.files = compute(config, o, res.notes);
  res.files.push_back({"manifest.json", manifest_text(config, o, res.files)});
  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw Error("cannot create output directory " + o.out_dir);
  for (const auto& f : res.files) write_atomic((fs::path(o.out_dir) / f.name).string(), f.content);
  return res;
}

std::vector<std::string> replay(const std::string& manifest_path, const std::string& out_dir, std::size_t threads) {
  std::ifstream in(manifest_path);
  if (!in) throw ConfigError("cannot open manifest " + manifest_path);
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed manifest: ") + e.what());
  }
  RunOptions o;
  try {
    o.command = m.at("command").get<std::string>();
    o.format = m.value("format", std::string("csv"));
    if (m.contains("input_map")) o.map_path = m.at("input_map").at("path").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("incomplete manifest: ") + e.what());
  }
  o.out_dir = out_dir;
  o.threads = threads;
  const Config c = load_config(m.at("config").get<std::string>());
  const RunResult res = run(c, o);
  std::vector<std::string> differ;
  const json& expected = m.at("outputs");
  for (const auto& f : res.files) {
    if (f.name == "manifest.json") continue;
    bool same = false;
    for (const auto& e : expected)
      if (e.at("file") == f.name && e.at("sha256") == sha256_hex(f.content)) same = true;
    if (!same) differ.push_back(f.name);
  }
  return differ;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return config_error;
  if (dynamic_cast<const ResolvabilityError*>(&e)) return resolvability_error;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const NumericalError*>(&e)) return numeric_error;
  return failure;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ultrastrong-coupling polariton calculations"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  RunOptions opt;
  std::string config_path;
  std::string manifest_path;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--threads", opt.threads, "worker threads (0: USCPOL_THREADS or all cores)");
    sub->add_option("--format", opt.format, "map format: csv or bin")->check(CLI::IsMember({"csv", "bin"}));
    if (name == "tomography") sub->add_option("--map", opt.map_path, "binary transmission map to analyse");
  }
  CLI::App* rep = app.add_subcommand("replay", "re-run a manifest and compare output hashes");
  rep->add_option("--manifest", manifest_path, "manifest.json from an earlier run")->required();
  rep->add_option("--out", opt.out_dir, "output directory");
  rep->add_option("--threads", opt.threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : config_error;
  }

  try {
    if (rep->parsed()) {
      const auto differ = replay(manifest_path, opt.out_dir, opt.threads);
      if (differ.empty()) {
        out << "replay matches manifest\n";
        return ok;
      }
      for (const auto& f : differ) err << "hash mismatch: " << f << "\n";
      return failure;
    }
    for (CLI::App* sub : app.get_subcommands()) opt.command = sub->get_name();
    const Config c = load_config_file(config_path);
    const RunResult res = run(c, opt);
    for (const auto& n : res.notes) err << "note: " << n << "\n";
    for (const auto& f : res.files) out << (fs::path(opt.out_dir) / f.name).string() << "\n";
    return ok;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace uscpol::cli
