#include "orlicz/cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "orlicz/admissibility.hpp"
#include "orlicz/boundary.hpp"
#include "orlicz/counterexamples.hpp"
#include "orlicz/disk.hpp"

namespace orlicz {

SpecError::SpecError(const std::string& what, size_t pos)
    : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}

namespace {

struct SpecParser {
  const std::string& s;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw SpecError(msg, pos); }

  bool eof() const { return pos >= s.size(); }
  char peek() const { return eof() ? '\0' : s[pos]; }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string ident() {
    size_t start = pos;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
    if (pos == start) fail("expected a name");
    return s.substr(start, pos - start);
  }

  double number() {
    size_t consumed = 0;
    double v = 0.0;
    try {
      v = std::stod(s.substr(pos), &consumed);
    } catch (const std::exception&) {
      fail("expected a number");
    }
    pos += consumed;
    return v;
  }

  // key=value list up to the closing parenthesis (already past the '(').
  std::vector<std::pair<std::string, double>> kv_list() {
    std::vector<std::pair<std::string, double>> kv;
    if (peek() == ')') return kv;
    while (true) {
      std::string key = ident();
      expect('=');
      kv.emplace_back(key, number());
      if (peek() != ',') break;
      ++pos;
    }
    return kv;
  }
};

double take(std::vector<std::pair<std::string, double>>& kv, const std::string& key,
            const SpecParser& p) {
  for (auto it = kv.begin(); it != kv.end(); ++it)
    if (it->first == key) {
      double v = it->second;
      kv.erase(it);
      return v;
    }
  throw SpecError("missing parameter '" + key + "'", p.pos);
}

void reject_extras(const std::vector<std::pair<std::string, double>>& kv, const SpecParser& p) {
  if (!kv.empty()) throw SpecError("unknown parameter '" + kv.front().first + "'", p.pos);
}

std::string read_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read spec file: " + path);
  std::string text, line;
  std::getline(in, text);
  while (std::getline(in, line)) text += line;
  // trim
  size_t a = text.find_first_not_of(" \t\r\n");
  size_t b = text.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) throw std::runtime_error("empty spec file: " + path);
  return text.substr(a, b - a + 1);
}

DefiningFunction parse_phi(SpecParser& p);

GammaFunction parse_gamma(SpecParser& p) {
  std::string name = p.ident();
  p.expect('(');
  auto kv = p.kv_list();
  GammaFunction g = [&] {
    if (name == "power") {
      double C = take(kv, "C", p), q = take(kv, "p", p);
      return GammaFunction::power(C, q);
    }
    if (name == "log_weighted") {
      double a = take(kv, "alpha", p), e = take(kv, "eta", p);
      return GammaFunction::log_weighted(a, e);
    }
    if (name == "iterlog") {
      int k = static_cast<int>(take(kv, "k", p));
      double c = take(kv, "c", p);
      return GammaFunction::iterlog(k, c);
    }
    if (name == "sqrt_eps") return GammaFunction::sqrt_eps();
    if (name == "piecewise_concave")
      throw SpecError("piecewise_concave is not constructible from a spec string", p.pos);
    throw SpecError("unknown gamma family '" + name + "'", p.pos);
  }();
  reject_extras(kv, p);
  p.expect(')');
  return g;
}

DefiningFunction parse_phi(SpecParser& p) {
  std::string name = p.ident();
  p.expect('(');
  if (name == "composed") {
    DefiningFunction phi = parse_phi(p);
    p.expect(',');
    GammaFunction g = parse_gamma(p);
    p.expect(')');
    return DefiningFunction::composed(phi, g);
  }
  if (name == "scaled") {
    DefiningFunction phi = parse_phi(p);
    p.expect(',');
    auto kv = p.kv_list();
    double m = take(kv, "m", p);
    reject_extras(kv, p);
    p.expect(')');
    return phi.scaled_arg(m);
  }
  auto kv = p.kv_list();
  DefiningFunction f = [&] {
    if (name == "exp_pow") return DefiningFunction::exp_pow(take(kv, "alpha", p));
    if (name == "exp_lin") return DefiningFunction::exp_lin(take(kv, "p", p));
    if (name == "pow") return DefiningFunction::pow(take(kv, "p", p));
    if (name == "log_pow") return DefiningFunction::log_pow(take(kv, "alpha", p));
    if (name == "exp_log_quotient") {
      double a = take(kv, "alpha", p), d = take(kv, "delta", p);
      return DefiningFunction::exp_log_quotient(a, d);
    }
    if (name == "exp_iterlog")
      return DefiningFunction::exp_iterlog(static_cast<int>(take(kv, "j", p)));
    if (name == "staircase") {
      double g = take(kv, "gamma", p);
      int n = static_cast<int>(take(kv, "n", p));
      return DefiningFunction::staircase(build_staircase_phi(g, n));
    }
    throw SpecError("unknown defining-function family '" + name + "'", p.pos);
  }();
  reject_extras(kv, p);
  p.expect(')');
  return f;
}

std::string resolve_text(const std::string& text) {
  if (text.rfind("file:@", 0) == 0) return read_spec_file(text.substr(6));
  return text;
}

}  // namespace

DefiningFunction parse_phi_spec(const std::string& text) {
  std::string t = resolve_text(text);
  SpecParser p{t};
  DefiningFunction f = parse_phi(p);
  if (!p.eof()) p.fail("trailing input after spec");
  return f;
}

GammaFunction parse_gamma_spec(const std::string& text) {
  std::string t = resolve_text(text);
  SpecParser p{t};
  GammaFunction g = parse_gamma(p);
  if (!p.eof()) p.fail("trailing input after spec");
  return g;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

void write_canonical(const nlohmann::json& j, std::string& out, int indent) {
  const std::string pad(2 * indent, ' '), pad1(2 * (indent + 1), ' ');
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out += ",\n";
        first = false;
        out += pad1 + nlohmann::json(it.key()).dump() + ": ";
        write_canonical(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad1;
        write_canonical(el, out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();  // strings, integers, booleans, null
      return;
  }
}

}  // namespace

std::string to_json(const ReportDocument& rep) {
  std::string out;
  write_canonical(rep.body, out, 0);
  out += "\n";
  return out;
}

std::string to_csv(const ReportDocument& rep) {
  std::string out;
  for (size_t i = 0; i < rep.columns.size(); ++i) {
    if (i) out += ",";
    out += rep.columns[i];
  }
  out += "\n";
  for (const auto& row : rep.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += fmt_double(row[i]);
    }
    out += "\n";
  }
  return out;
}

std::string to_svg(const ReportDocument& rep) {
  std::vector<std::pair<double, double>> pts;
  for (auto [x, y] : rep.figure)
    if (std::isfinite(x) && std::isfinite(y)) pts.emplace_back(x, y);
  if (pts.empty()) throw std::invalid_argument("no figure data for an svg plot");
  double xmin = pts[0].first, xmax = xmin, ymin = pts[0].second, ymax = ymin;
  for (auto [x, y] : pts) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  auto sx = [&](double x) { return 50.0 + 570.0 * (x - xmin) / (xmax - xmin); };
  auto sy = [&](double y) { return 380.0 - 360.0 * (y - ymin) / (ymax - ymin); };
  char buf[128];
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
      "viewBox=\"0 0 640 400\">\n"
      "<rect x=\"50\" y=\"20\" width=\"570\" height=\"360\" fill=\"none\" stroke=\"black\"/>\n"
      "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (size_t i = 0; i < pts.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(pts[i].first),
                  sy(pts[i].second));
    out += buf;
  }
  out += "\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<text x=\"50\" y=\"396\" font-size=\"12\">x: %.6g .. %.6g</text>\n", xmin, xmax);
  out += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"400\" y=\"396\" font-size=\"12\">y: %.6g .. %.6g</text>\n", ymin, ymax);
  out += buf;
  out += "</svg>\n";
  return out;
}

void emit(const ReportDocument& rep, const ExperimentConfig& cfg, std::ostream& os) {
  std::string payload;
  if (cfg.format == "json")
    payload = to_json(rep);
  else if (cfg.format == "csv")
    payload = to_csv(rep);
  else
    throw std::invalid_argument("unknown format: " + cfg.format);
  if (cfg.out.empty()) {
    os << payload;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.out);
    f << payload;
  }
  if (!cfg.plot.empty()) {
    std::ofstream f(cfg.plot, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + cfg.plot);
    f << to_svg(rep);
  }
}

// ---------------------------------------------------------------------------
// experiment dispatch

namespace {

Grid make_grid(const ExperimentConfig& cfg) {
  auto colon = cfg.grid.find(':');
  std::string kind = cfg.grid.substr(0, colon);
  int n = colon == std::string::npos ? 200 : std::stoi(cfg.grid.substr(colon + 1));
  if (kind == "geometric") return Grid::geometric(cfg.t_min, cfg.t_max, n);
  if (kind == "linear") return Grid::linear(cfg.t_min, cfg.t_max, n);
  throw std::invalid_argument("unknown grid kind: " + cfg.grid);
}

const char* verdict_name(AdmissibilityReport::Verdict v) {
  switch (v) {
    case AdmissibilityReport::Verdict::AdmissibleEvidence: return "admissible-evidence";
    case AdmissibilityReport::Verdict::NonAdmissibleEvidence: return "non-admissible-evidence";
    default: return "inconclusive";
  }
}

const char* kind_name(SeriesVerdict::Kind k) {
  switch (k) {
    case SeriesVerdict::Kind::ConvergentWithTailBound: return "convergent-with-tail-bound";
    case SeriesVerdict::Kind::DivergentWithLowerBound: return "divergent-with-lower-bound";
    default: return "inconclusive";
  }
}

nlohmann::json modular_json(const ModularValue& m) {
  nlohmann::json j;
  j["finite"] = m.finite;
  j["log_value"] = m.value.log_value;
  if (m.finite && m.value.log_value < 700) j["value"] = m.value.value();
  j["error_bound"] = m.error_bound;
  j["kind"] = kind_name(m.verdict.kind);
  j["bound"] = m.verdict.bound;
  j["certificate"] = m.verdict.certificate;
  return j;
}

void set_samples(ReportDocument& rep, const std::vector<std::pair<double, double>>& samples,
                 const std::string& xcol, const std::string& ycol) {
  rep.columns = {xcol, ycol};
  for (auto [x, y] : samples) rep.rows.push_back({x, y});
  rep.figure = samples;
}

void mirror_table(ReportDocument& rep) {
  nlohmann::json t;
  t["columns"] = rep.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) rows.push_back(r);
  t["rows"] = rows;
  rep.body["table"] = t;
}

std::vector<std::vector<double>> parse_arc_fields(const std::string& text, size_t nfields) {
  std::vector<std::vector<double>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<double> fields;
    std::stringstream fs(item);
    std::string tok;
    while (std::getline(fs, tok, ':')) fields.push_back(std::stod(tok));
    if (fields.size() != nfields)
      throw std::invalid_argument("each arc needs " + std::to_string(nfields) + " fields");
    out.push_back(fields);
  }
  if (out.empty()) throw std::invalid_argument("empty arc list");
  return out;
}

StepFunction arcs_measure_theoretic(const std::string& text) {
  std::vector<std::pair<LogScalar, double>> arcs;
  for (const auto& f : parse_arc_fields(text, 2))
    arcs.emplace_back(LogScalar::from_value(f[0]), f[1]);
  return StepFunction::measure_theoretic(std::move(arcs));
}

StepFunction arcs_positioned(const std::string& text) {
  std::vector<std::array<double, 3>> arcs;
  for (const auto& f : parse_arc_fields(text, 3)) arcs.push_back({f[0], f[1], f[2]});
  return StepFunction::positioned(std::move(arcs));
}

DefiningFunction need_phi(const ExperimentConfig& cfg) {
  if (cfg.phi.empty()) throw std::invalid_argument("--phi is required for this command");
  return parse_phi_spec(cfg.phi);
}

GammaFunction need_gamma(const ExperimentConfig& cfg) {
  if (cfg.gamma.empty()) throw std::invalid_argument("--gamma is required for this command");
  return parse_gamma_spec(cfg.gamma);
}

double portable_uniform(std::mt19937_64& rng, double lo, double hi) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

void run_check_admissible(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  auto gamma = need_gamma(cfg);
  auto r = check_tilde_delta(phi, gamma, make_grid(cfg));
  rep.body["verdict"] = verdict_name(r.verdict);
  rep.body["sup_ratio_log"] = r.sup_ratio_log;
  rep.body["note"] = r.note;
  if (r.has_limit_estimate) rep.body["limit_estimate"] = r.limit_estimate;
  set_samples(rep, r.samples, "t", "log_ratio");
}

void run_check_nabla(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  auto gamma = need_gamma(cfg);
  auto r = check_tilde_nabla(phi, gamma, cfg.eps, make_grid(cfg));
  rep.body["verdict"] = verdict_name(r.verdict);
  rep.body["max_margin"] = r.sup_ratio_log;
  rep.body["note"] = r.note;
  set_samples(rep, r.samples, "s", "margin");
}

void run_compose_psi(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  auto gamma = need_gamma(cfg);
  auto psi = compose_psi(phi, gamma);
  rep.body["psi"] = psi.render();
  rep.body["capital_convex"] = psi.capital_convex();
  std::vector<std::pair<double, double>> samples;
  for (double t : Grid::geometric(1.0, cfg.t_max, 49).points) {
    double v = psi.eval_log(t);
    if (std::isfinite(v)) samples.emplace_back(t, v);
  }
  set_samples(rep, samples, "t", "log_psi");
}

void run_staircase(const ExperimentConfig& cfg, ReportDocument& rep) {
  StaircasePhi s = build_staircase_phi(cfg.gamma_exp, cfg.n);
  bool convex = true;
  double max_rel_err = 0.0;
  double partial = 0.0;
  int n0 = -1;
  rep.columns = {"n", "log_t", "log_phi", "log_dominator"};
  for (size_t i = 0; i < s.size(); ++i) {
    if (i > 0) {
      convex = convex && s.log_phi[i] >= s.log_phi[i - 1];
      partial += std::pow(static_cast<double>(i), cfg.gamma_exp);
      max_rel_err = std::max(max_rel_err, std::abs(s.log_phi[i] - partial) /
                                              std::max(1.0, std::abs(partial)));
    }
    // dominating scale: (ln t_{n-1})^beta against ln phi(t_n)
    double dom = i > 0 ? std::pow(s.t[i - 1].log_value, cfg.beta)
                       : -std::numeric_limits<double>::infinity();
    bool dominated = dom > s.log_phi[i];
    if (dominated && n0 < 0) n0 = static_cast<int>(i) + 1;
    if (!dominated) n0 = -1;
    rep.rows.push_back({static_cast<double>(i + 1), s.t[i].log_value, s.log_phi[i],
                        std::isfinite(dom) ? dom : 0.0});
    rep.figure.emplace_back(static_cast<double>(i + 1), s.log_phi[i]);
  }
  rep.body["convex"] = convex;
  rep.body["log_phi_max_rel_err"] = max_rel_err;
  rep.body["domination_n0"] = n0;
  rep.body["levels"] = static_cast<int>(s.size());
}

void levels_table(const CounterexampleReport& r, ReportDocument& rep) {
  rep.columns = {"n", "t_n", "log_weight", "product_term_log", "partial_lower"};
  for (const auto& row : r.levels) {
    rep.rows.push_back(
        {static_cast<double>(row.n), row.t_n, row.log_weight, row.product_term_log,
         row.partial_lower});
    rep.figure.emplace_back(static_cast<double>(row.n), row.partial_lower);
  }
  rep.body["modular_f"] = modular_json(r.modular_f);
  rep.body["modular_g"] = modular_json(r.modular_g);
  rep.body["modular_product"] = modular_json(r.modular_product);
  rep.body["narrative"] = r.narrative;
}

void run_counterexample(const ExperimentConfig& cfg, ReportDocument& rep) {
  rep.body["variant"] = cfg.variant;
  if (cfg.variant == "prop34") {
    auto r = prop34_build(need_phi(cfg), need_gamma(cfg), cfg.n);
    levels_table(r, rep);
  } else if (cfg.variant == "thm43") {
    StaircasePhi s = build_staircase_phi(cfg.gamma_exp, cfg.n);
    auto r = thm43_refute(s, cfg.k);
    levels_table(r, rep);
  } else if (cfg.variant == "thm42") {
    std::vector<int> range;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) range.push_back(n);
    auto r = thm42_inclusion_check(cfg.k, range);
    rep.body["k"] = r.k;
    rep.body["n0"] = r.n0;
    rep.columns = {"n", "exponent", "inclusion_holds"};
    for (const auto& row : r.rows) {
      rep.rows.push_back({static_cast<double>(row.n), row.exponent,
                          row.inclusion_holds ? 1.0 : 0.0});
      rep.figure.emplace_back(static_cast<double>(row.n), row.exponent);
    }
  } else {
    throw std::invalid_argument("unknown counterexample variant: " + cfg.variant);
  }
}

void run_envelope(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  ProfileFunction env = thm32_envelope(phi, cfg.eta);
  rep.body["eta"] = cfg.eta;
  std::vector<std::pair<double, double>> samples;
  for (double t : Grid::geometric(1e-8, 1.0, 65).points) {
    double v = env.eval_log(t);
    if (std::isfinite(v)) samples.emplace_back(t, v);
  }
  set_samples(rep, samples, "t", "envelope");
}

void run_modular(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  ModularValue m;
  if (!cfg.arcs.empty()) {
    m = modular(arcs_measure_theoretic(cfg.arcs), phi);
    rep.body["input"] = "step";
  } else {
    m = modular(thm32_extremal(phi, cfg.eta).f_profile, phi);
    rep.body["input"] = "extremal-profile";
    rep.body["eta"] = cfg.eta;
  }
  rep.body["modular"] = modular_json(m);
}

void run_luxemburg(const ExperimentConfig& cfg, ReportDocument& rep) {
  auto phi = need_phi(cfg);
  StepFunction f = StepFunction::from_arcs({});
  if (!cfg.arcs.empty()) {
    f = arcs_measure_theoretic(cfg.arcs);
    rep.body["input"] = "step";
  } else {
    if (!(cfg.m > 0) || cfg.m > 1)
      throw std::invalid_argument("indicator measure must lie in (0,1]");
    f = StepFunction::measure_theoretic(
        {{LogScalar::from_value(cfg.m), 0.0},
         {log_sub(LogScalar::one(), LogScalar::from_value(cfg.m)),
          -std::numeric_limits<double>::infinity()}});
    rep.body["input"] = "indicator";
    rep.body["measure"] = cfg.m;
    rep.body["closed_form"] = std::exp(-phi.invert(LogScalar::from_value(1.0 / cfg.m)));
  }
  rep.body["norm"] = luxemburg(f, phi, 1e-12);
  rep.body["is_norm"] = phi.capital_convex();
}

void run_outer(const ExperimentConfig& cfg, ReportDocument& rep) {
  if (cfg.arcs.empty()) throw std::invalid_argument("--arcs is required for outer");
  StepFunction f = arcs_positioned(cfg.arcs);
  std::complex<double> z{cfg.re, cfg.im};
  if (std::abs(z) >= 1.0) throw std::invalid_argument("evaluation point must lie inside the disk");
  std::complex<double> lf = outer_eval(f, z);
  rep.body["log_f_re"] = lf.real();
  rep.body["log_f_im"] = lf.imag();
  rep.body["abs_f"] = std::exp(lf.real());
  rep.body["abs_f_at_0"] = std::exp(outer_eval(f, {0.0, 0.0}).real());
  std::complex<double> dir = std::abs(z) > 0 ? z / std::abs(z) : std::complex<double>{1.0, 0.0};
  std::vector<std::pair<double, double>> samples;
  for (int i = 0; i <= 19; ++i) {
    double r = 0.05 * i;
    samples.emplace_back(r, outer_eval(f, r * dir).real());
  }
  set_samples(rep, samples, "r", "log_abs_f");
}

void run_interp_demo(const ExperimentConfig& cfg, ReportDocument& rep) {
  DefiningFunction psi =
      cfg.psi.empty() ? DefiningFunction::exp_pow(0.5) : parse_phi_spec(cfg.psi);
  DiskSequence seq = radial_carleson(cfg.q, cfg.n);
  double delta_n = carleson_constant(seq);
  double delta_half = carleson_constant(radial_carleson(cfg.q, std::max(1, cfg.n / 2)));
  BlaschkeWeightsReport bw = blaschke_weights(seq, cfg.theta);
  // Scale the gains uniformly so the smallest one still admits a pairing
  // distance below 0.9; the weighted sum stays summable (it scales too).
  double need = std::exp(psi.eval_log(1.0 + 2.0 / 0.9));
  double gmin = *std::min_element(bw.gamma.begin(), bw.gamma.end());
  double gain_scale = std::max(1.0, need / gmin * (1.0 + 1e-9));
  for (double& g : bw.gamma) g *= gain_scale;
  bw.weighted_sum *= gain_scale;
  bw.telescope_bound *= gain_scale;
  PairedSequences pair = pair_with_targets(seq, psi, bw.gamma);
  TraceWorstReport worst = trace_sum_worst(pair, psi, bw.gamma);
  double min_d = pair.d.empty() ? 0.0 : *std::min_element(pair.d.begin(), pair.d.end());
  DiskSequence uni = seq;
  uni.points.insert(uni.points.end(), pair.lambda2.points.begin(), pair.lambda2.points.end());
  double delta_union = carleson_constant(uni);
  rep.body["psi"] = psi.render();
  rep.body["theta"] = cfg.theta;
  rep.body["gain_scale"] = gain_scale;
  rep.body["delta_full"] = delta_n;
  rep.body["delta_half"] = delta_half;
  rep.body["delta_stability"] = std::abs(delta_n - delta_half);
  rep.body["weighted_gamma_sum"] = bw.weighted_sum;
  rep.body["telescope_bound"] = bw.telescope_bound;
  rep.body["key_inequality_holds"] = worst.term_bounded_by_gamma;
  rep.body["max_term_excess"] = worst.max_term_excess;
  rep.body["worst_trace_sum"] = modular_json(worst.sum);
  rep.body["gamma_bound_sum"] = worst.gamma_bound_sum;
  rep.body["min_d"] = min_d;
  rep.body["union_not_carleson"] = min_d < 0.01;
  rep.body["delta_union"] = delta_union;
  rep.columns = {"n", "w_n", "gamma_n", "d_n"};
  for (size_t i = 0; i < pair.d.size(); ++i) {
    rep.rows.push_back({static_cast<double>(i + 1), bw.weights[i], bw.gamma[i], pair.d[i]});
    rep.figure.emplace_back(static_cast<double>(i + 1), pair.d[i]);
  }
}

void run_calderon(const ExperimentConfig& cfg, ReportDocument& rep) {
  std::mt19937_64 rng(cfg.seed);
  int checks = 0;
  double max_recombine = 0.0, max_cap = 0.0, max_mass = 0.0;
  for (int c = 0; c < cfg.cases; ++c) {
    size_t n = 2 + rng() % 11;
    WeightedSequence a;
    for (size_t i = 0; i < n; ++i) {
      a.values.push_back(portable_uniform(rng, -1.0, 1.0));
      a.weights.push_back(portable_uniform(rng, 0.05, 1.0));
    }
    RearrangedStep r = weighted_rearrangement(a);
    for (double s : r.breakpoints) {
      auto [b, cc] = calderon_split(a, s);
      double level = r.value_at(std::min(s, r.total));
      double bmass = 0.0;
      for (size_t i = 0; i < n; ++i) {
        max_recombine = std::max(max_recombine, std::abs(b.values[i] + cc.values[i] - a.values[i]));
        max_cap = std::max(max_cap, std::abs(cc.values[i]) - level);
        bmass += b.weights[i] * std::abs(b.values[i]);
      }
      max_mass = std::max(max_mass, std::abs(bmass - (r.integral_to(s) - s * level)));
      ++checks;
    }
  }
  rep.body["cases"] = cfg.cases;
  rep.body["split_checks"] = checks;
  rep.body["max_recombine_error"] = max_recombine;
  rep.body["max_cap_excess"] = max_cap;
  rep.body["max_peak_mass_error"] = max_mass;
  bool pass = max_recombine <= 1e-12 && max_cap <= 1e-12 && max_mass <= 1e-12;
  rep.body["all_identities_hold"] = pass;
}

}  // namespace

ReportDocument run_experiment(const ExperimentConfig& cfg) {
  ReportDocument rep;
  rep.body = nlohmann::json::object();
  rep.body["command"] = cfg.command;
  rep.body["version"] = "1.0";
  nlohmann::json echo;
  echo["seed"] = static_cast<uint64_t>(cfg.seed);
  if (!cfg.phi.empty()) echo["phi"] = cfg.phi;
  if (!cfg.gamma.empty()) echo["gamma"] = cfg.gamma;
  if (!cfg.psi.empty()) echo["psi"] = cfg.psi;
  if (!cfg.variant.empty()) echo["variant"] = cfg.variant;
  rep.body["config"] = echo;

  if (cfg.command == "check-admissible")
    run_check_admissible(cfg, rep);
  else if (cfg.command == "check-nabla")
    run_check_nabla(cfg, rep);
  else if (cfg.command == "compose-psi")
    run_compose_psi(cfg, rep);
  else if (cfg.command == "staircase")
    run_staircase(cfg, rep);
  else if (cfg.command == "counterexample")
    run_counterexample(cfg, rep);
  else if (cfg.command == "envelope")
    run_envelope(cfg, rep);
  else if (cfg.command == "modular")
    run_modular(cfg, rep);
  else if (cfg.command == "luxemburg")
    run_luxemburg(cfg, rep);
  else if (cfg.command == "outer")
    run_outer(cfg, rep);
  else if (cfg.command == "interp-demo")
    run_interp_demo(cfg, rep);
  else if (cfg.command == "calderon")
    run_calderon(cfg, rep);
  else
    throw std::invalid_argument("unknown command: " + cfg.command);

  if (!rep.columns.empty() && !rep.body.contains("table")) mirror_table(rep);
  return rep;
}

}  // namespace orlicz
