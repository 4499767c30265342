#include "uscpol/params.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "uscpol/errors.hpp"

namespace uscpol {

double SystemParams::omega_d_bar() const { return std::sqrt(omega_d * omega_d + Omega_d * Omega_d); }

double SystemParams::omega_e_bar() const { return std::sqrt(omega_e * omega_e + Omega_e * Omega_e); }

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

void validate(const SystemParams& p) {
  const double all[] = {p.omega_d, p.Omega_d, p.omega_e, p.Omega_e, p.gamma_c, p.kappa_d, p.kappa_e};
  for (double v : all) require(std::isfinite(v), "parameters must be finite");
  require(p.omega_d > 0.0, "omega_d must be > 0");
  require(p.omega_e > 0.0, "omega_e must be > 0");
  require(p.Omega_d >= 0.0, "Omega_d must be >= 0");
  require(p.Omega_e >= 0.0, "Omega_e must be >= 0");
  require(p.gamma_c >= 0.0, "gamma_c must be >= 0");
  require(p.kappa_d >= 0.0, "kappa_d must be >= 0");
  require(p.kappa_e >= 0.0, "kappa_e must be >= 0");
}

bool weak_emitter(const SystemParams& p, double ratio) { return p.Omega_e < ratio * p.omega_e; }

double LinearDispersion::frequency(double k) const { return c * std::abs(k); }

double LinearDispersion::wavevector(double omega_k) const { return omega_k / c; }

std::vector<double> Grid::points() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double n = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / n;
    if (log)
      out[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    else
      out[i] = start + t * (stop - start);
  }
  out.front() = start;
  out.back() = stop;
  return out;
}

double Grid::step() const { return log ? 0.0 : (stop - start) / static_cast<double>(count - 1); }

double rabi_from_doping(const DopingInput& d) {
  if (!(d.n_2d >= 0.0) || !(d.L_c > 0.0) || !(d.m_eff > 0.0) || !(d.f_osc > 0.0 && d.f_osc <= 1.0))
    throw DomainError("doping input requires n_2d >= 0, L_c > 0, m_eff > 0 and f_osc in (0, 1]");
  const double e = codata::elementary_charge;
  return std::sqrt(d.f_osc * e * e * d.n_2d / (codata::vacuum_permittivity * d.m_eff * d.L_c));
}

std::string_view to_string(LossModelKind kind) {
  switch (kind) {
    case LossModelKind::cavity_dominated: return "cavity";
    case LossModelKind::dresser_dominated: return "dresser";
    case LossModelKind::combined: return "combined";
  }
  return "cavity";
}

LossModelKind parse_loss_model(std::string_view text) {
  if (text == "cavity") return LossModelKind::cavity_dominated;
  if (text == "dresser") return LossModelKind::dresser_dominated;
  if (text == "combined") return LossModelKind::combined;
  throw ValidationError("loss_model must be one of cavity, dresser, combined");
}

std::vector<double> Config::omega_e_values() const {
  std::vector<double> out;
  for (const Grid& g : omega_e_list) {
    auto pts = g.points();
    out.insert(out.end(), pts.begin(), pts.end());
  }
  return out;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

struct Field {
  std::string_view text;
  std::size_t column;  // 1-based
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

Field trim(std::string_view s, std::size_t column) {
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  return {s.substr(b, e - b), column + b};
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  double number(Field f) const {
    double v = 0.0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    if (f.text.empty()) fail(f.column, "expected a number");
    if (*first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last)
      fail(f.column, "invalid number '" + std::string(f.text) + "'");
    if (!std::isfinite(v)) fail(f.column, "number must be finite");
    return v;
  }

  std::size_t count(Field f) const {
    std::size_t v = 0;
    const char* first = f.text.data();
    const char* last = first + f.text.size();
    auto res = std::from_chars(first, last, v);
    if (f.text.empty() || res.ec != std::errc() || res.ptr != last)
      fail(f.column, "invalid count '" + std::string(f.text) + "'");
    return v;
  }

  Grid grid(Field f) const {
    std::vector<Field> parts = split(f, ':');
    if (parts.size() != 3 && parts.size() != 4) fail(f.column, "grid must be start:stop:count[:log]");
    Grid g;
    g.start = number(parts[0]);
    g.stop = number(parts[1]);
    g.count = count(parts[2]);
    if (parts.size() == 4) {
      if (parts[3].text != "log") fail(parts[3].column, "grid spacing must be 'log'");
      g.log = true;
    }
    if (g.count < 2) fail(parts[2].column, "grid count must be >= 2");
    if (!(g.stop > g.start)) fail(f.column, "grid stop must exceed start");
    if (g.log && !(g.start > 0.0)) fail(f.column, "log grid requires positive start");
    return g;
  }

  std::vector<Grid> grid_list(Field f) const {
    std::vector<Grid> out;
    for (Field item : split(f, ',')) {
      if (item.text.find(':') == std::string_view::npos) {
        const double v = number(item);
        out.push_back(Grid{v, v, 1, false});
      } else {
        out.push_back(grid(item));
      }
    }
    return out;
  }

  bool boolean(Field f) const {
    if (f.text == "true") return true;
    if (f.text == "false") return false;
    fail(f.column, "expected true or false");
  }

  [[noreturn]] void fail(std::size_t column, const std::string& what) const {
    throw ParseError(line_, column, what);
  }

  static std::vector<Field> split(Field f, char sep) {
    std::vector<Field> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= f.text.size(); ++i) {
      if (i == f.text.size() || f.text[i] == sep) {
        out.push_back(trim(f.text.substr(begin, i - begin), f.column + begin));
        begin = i + 1;
      }
    }
    return out;
  }

 private:
  std::size_t line_;
};

constexpr std::string_view kRequired[] = {"Omega_d", "omega_e", "Omega_e"};

}  // namespace

Config load_config(std::string_view text) {
  Config c;
  std::vector<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Field line = trim(raw, 1);
    if (line.text.empty()) {
      if (end == text.size()) break;
      continue;
    }
    LineParser lp(line_no);
    auto eq = line.text.find('=');
    if (eq == std::string_view::npos) lp.fail(line.column, "expected 'key = value'");
    Field key = trim(line.text.substr(0, eq), line.column);
    Field value = trim(line.text.substr(eq + 1), line.column + eq + 1);
    if (key.text.empty()) lp.fail(line.column, "missing key");
    if (value.text.empty()) lp.fail(value.column, "missing value for '" + std::string(key.text) + "'");
    std::string k(key.text);
    for (const auto& s : seen)
      if (s == k) lp.fail(key.column, "duplicate key '" + k + "'");
    seen.push_back(k);

    SystemParams& p = c.params;
    if (k == "omega_d") p.omega_d = lp.number(value);
    else if (k == "Omega_d") p.Omega_d = lp.number(value);
    else if (k == "omega_e") p.omega_e = lp.number(value);
    else if (k == "Omega_e") p.Omega_e = lp.number(value);
    else if (k == "gamma_c") p.gamma_c = lp.number(value);
    else if (k == "kappa_d") p.kappa_d = lp.number(value);
    else if (k == "kappa_e") p.kappa_e = lp.number(value);
    else if (k == "k_grid") c.k_grid = lp.grid(value);
    else if (k == "omega_grid") c.omega_grid = lp.grid(value);
    else if (k == "r_grid") c.r_grid = lp.grid(value);
    else if (k == "omega_e_list") c.omega_e_list = lp.grid_list(value);
    else if (k == "loss_model") {
      try {
        c.loss_model = parse_loss_model(value.text);
      } catch (const ValidationError& e) {
        lp.fail(value.column, e.what());
      }
    } else if (k == "fft_size") c.fft_size = lp.count(value);
    else if (k == "tol_omega") c.tol_omega = lp.number(value);
    else if (k == "min_prominence") c.min_prominence = lp.number(value);
    else if (k == "potential_oracle") c.potential_oracle = lp.boolean(value);
    else lp.fail(key.column, "unknown key '" + k + "'");

    if (end == text.size()) break;
  }

  std::string missing;
  for (auto req : kRequired) {
    bool found = false;
    for (const auto& s : seen) found = found || s == req;
    if (!found) missing += (missing.empty() ? "" : ", ") + std::string(req);
  }
  if (!missing.empty()) throw ValidationError("missing required keys: " + missing);

  validate(c.params);
  if (c.fft_size < 1024 || (c.fft_size & (c.fft_size - 1)) != 0)
    throw ValidationError("fft_size must be a power of two >= 1024");
  if (!(c.tol_omega >= 0.0)) throw ValidationError("tol_omega must be >= 0");
  if (!(c.min_prominence >= 0.0)) throw ValidationError("min_prominence must be >= 0");
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str());
}

namespace {

std::string grid_text(const Grid& g) {
  if (g.count == 1 && g.start == g.stop) return format_number(g.start);
  std::string s = format_number(g.start) + ":" + format_number(g.stop) + ":" + std::to_string(g.count);
  if (g.log) s += ":log";
  return s;
}

}  // namespace

std::string serialize(const Config& c) {
  const SystemParams& p = c.params;
  std::string out;
  auto put = [&out](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).append("\n");
  };
  put("omega_d", format_number(p.omega_d));
  put("Omega_d", format_number(p.Omega_d));
  put("omega_e", format_number(p.omega_e));
  put("Omega_e", format_number(p.Omega_e));
  put("gamma_c", format_number(p.gamma_c));
  put("kappa_d", format_number(p.kappa_d));
  put("kappa_e", format_number(p.kappa_e));
  if (c.k_grid) put("k_grid", grid_text(*c.k_grid));
  if (c.omega_grid) put("omega_grid", grid_text(*c.omega_grid));
  if (c.r_grid) put("r_grid", grid_text(*c.r_grid));
  if (!c.omega_e_list.empty()) {
    std::string list;
    for (const Grid& g : c.omega_e_list) list += (list.empty() ? "" : ", ") + grid_text(g);
    put("omega_e_list", list);
  }
  put("loss_model", std::string(to_string(c.loss_model)));
  put("fft_size", std::to_string(c.fft_size));
  put("tol_omega", format_number(c.tol_omega));
  put("min_prominence", format_number(c.min_prominence));
  put("potential_oracle", c.potential_oracle ? "true" : "false");
  return out;
}

std::vector<std::string> config_warnings(const Config& c) {
  std::vector<std::string> w;
  if (!weak_emitter(c.params))
    w.push_back("Omega_e exceeds 0.3 omega_e; the weak-emitter treatment may not hold");
  return w;
}

}  // namespace uscpol
