#include "pstlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <filesystem>
#include <limits>
#include <numbers>
#include <set>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pstlab/error.hpp"
#include "pstlab/io.hpp"
#include "pstlab/limits.hpp"
#include "pstlab/search.hpp"
#include "pstlab/transfer.hpp"

namespace pstlab::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  CheckOptions check;
  ZeroScanOptions zeros;
  std::size_t workers = 0;
};

// %.12g. Magnitudes below 1e-12 are rounding noise and print as 0.
std::string num(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string num(Complex z) {
  const std::string im = num(z.imag());
  return num(z.real()) + (im.front() == '-' ? im : "+" + im) + "i";
}

// Rounds to 12 significant digits so JSON output matches the text output.
double j12(double x) { return std::stod(num(x)); }

ordered_json j12(Complex z) { return ordered_json::array({j12(z.real()), j12(z.imag())}); }

// ---------------------------------------------------------------- input

struct Input {
  std::optional<Graph> graph;
  std::optional<SingleExcitationHamiltonian> hamiltonian;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// JSON graph, JSON Hamiltonian, CSV Hamiltonian, or a graph6 line.
Input load_input(const std::string& path) {
  const std::string text = read_file(path);
  Input in;
  if (ends_with(path, ".csv")) {
    in.hamiltonian = hamiltonian_from_csv(text);
    return in;
  }
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ParseError("empty input file " + path);
  if (text[first] == '{') {
    const auto probe = nlohmann::json::parse(text, nullptr, false);
    if (probe.is_discarded()) throw ParseError("invalid JSON in " + path);
    if (probe.is_object() && (probe.contains("couplings") || probe.contains("fields"))) {
      in.hamiltonian = hamiltonian_from_json(text);
    } else {
      in.graph = graph_from_json(text);
    }
    return in;
  }
  const auto end = text.find_first_of("\r\n", first);
  in.graph = parse_graph6(text.substr(first, end == std::string::npos ? end : end - first));
  return in;
}

SingleExcitationHamiltonian resolve(const Input& in, const std::string& model) {
  if (in.graph) {
    if (model.empty() || model == "adjacency") return model_hamiltonian(*in.graph, Model::Adjacency);
    if (model == "laplacian") return model_hamiltonian(*in.graph, Model::Laplacian);
    throw UsageError("model '" + model + "' needs a Hamiltonian input (JSON couplings or CSV)");
  }
  if (!model.empty() && model != "weighted") {
    throw UsageError("model '" + model + "' needs a graph input");
  }
  return *in.hamiltonian;
}

std::optional<IntegerHamiltonian> integer_model(const Input& in, const std::string& model) {
  if (!in.graph) return std::nullopt;
  return model_integer_hamiltonian(*in.graph, model == "laplacian" ? Model::Laplacian : Model::Adjacency);
}

Graph graph_of(const Input& in) { return in.graph ? *in.graph : in.hamiltonian->support_graph(); }

void add_model(CLI::App* sub, std::string& model) {
  sub->add_option("--model", model, "adjacency | laplacian (graph input) or weighted (Hamiltonian input)")
      ->check(CLI::IsMember({"adjacency", "laplacian", "weighted"}, CLI::ignore_case));
}

void add_check_config(CLI::App* sub, Config& c) {
  sub->add_option("--grouping-tol", c.check.grouping_tol, "Relative eigenvalue merge tolerance")
      ->envname("PSTLAB_GROUPING_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--support-tol", c.check.support_tol, "Projection norm treated as zero")
      ->envname("PSTLAB_SUPPORT_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--proportionality-tol", c.check.proportionality_tol,
                  "Allowed deviation of P|b> from e^{i phi} P|a>")
      ->envname("PSTLAB_PROPORTIONALITY_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--phase-tol", c.check.phase_tol, "Phase quantisation tolerance (units of pi)")
      ->envname("PSTLAB_PHASE_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--residual-tol", c.check.residual_tol, "Commensurability residual tolerance")
      ->envname("PSTLAB_RESIDUAL_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--fidelity-tol", c.check.fidelity_tol, "Perfect needs fidelity >= 1 - tol")
      ->envname("PSTLAB_FIDELITY_TOL")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--max-denominator", c.check.max_denominator, "Continued fraction denominator cap")
      ->envname("PSTLAB_MAX_DENOMINATOR")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--t-max", c.check.t_max, "Numerical search horizon (1 / half spectral spread)")
      ->envname("PSTLAB_T_MAX")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_option("--scan-grid", c.check.scan_grid, "Numerical search grid points")
      ->envname("PSTLAB_SCAN_GRID")->check(CLI::Range(16, 100'000'000))->capture_default_str();
}

void add_zero_config(CLI::App* sub, Config& c) {
  sub->add_option("--zero-grid", c.zeros.grid, "Autocorrelation zero scan grid")
      ->envname("PSTLAB_ZERO_GRID")->check(CLI::Range(1000, 100'000'000))->capture_default_str();
  sub->add_option("--zero-tol", c.zeros.tol, "|f| threshold for an autocorrelation zero")
      ->envname("PSTLAB_ZERO_TOL")->check(CLI::PositiveNumber)->capture_default_str();
}

// CLI11 silently drops environment values that fail validation; reject them
// instead so a typo in a scripted run cannot fall back to a default.
void validate_environment() {
  struct Rule {
    const char* name;
    bool integer;
    double min;  // inclusive for integers, exclusive otherwise
  };
  static const Rule rules[] = {
      {"PSTLAB_GROUPING_TOL", false, 0.0}, {"PSTLAB_SUPPORT_TOL", false, 0.0},
      {"PSTLAB_PROPORTIONALITY_TOL", false, 0.0}, {"PSTLAB_PHASE_TOL", false, 0.0},
      {"PSTLAB_RESIDUAL_TOL", false, 0.0}, {"PSTLAB_FIDELITY_TOL", false, 0.0},
      {"PSTLAB_T_MAX", false, 0.0}, {"PSTLAB_ZERO_TOL", false, 0.0},
      {"PSTLAB_MAX_DENOMINATOR", true, 1.0}, {"PSTLAB_SCAN_GRID", true, 16.0},
      {"PSTLAB_ZERO_GRID", true, 1000.0}, {"PSTLAB_WORKERS", true, 0.0}};
  for (const auto& rule : rules) {
    const char* raw = std::getenv(rule.name);
    if (raw == nullptr) continue;
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    bool ok = end != raw && *end == '\0' && std::isfinite(value);
    if (rule.integer) ok = ok && value == std::floor(value) && value >= rule.min;
    else ok = ok && value > rule.min;
    if (!ok) throw UsageError(std::string("invalid environment value ") + rule.name + "='" + raw + "'");
  }
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string input, model;
  Vertex source = 0, target = 0;
  bool json = false;
};

int exit_code(TransferStatus s) {
  switch (s) {
    case TransferStatus::Perfect: return 0;
    case TransferStatus::NoTransfer: return 1;
    case TransferStatus::Undecided: return 2;
  }
  return kExitInternal;
}

int cmd_check(const CheckArgs& a, const Config& c, std::ostream& out) {
  const auto h = resolve(load_input(a.input), a.model);
  const auto dec = decompose(h, c.check.grouping_tol);
  const auto v = check_transfer(h, dec, a.source, a.target, c.check);
  const auto comps = support_components(dec, a.source);

  // Per-eigenspace phase and gap integer, indexed by eigenspace.
  std::vector<std::optional<double>> phase(dec.size());
  std::vector<std::optional<std::int64_t>> z(dec.size());
  for (std::size_t i = 0; i < v.supported.size(); ++i) phase[v.supported[i]] = v.phases[i];
  const bool fitted = v.exact && v.gap_structure.commensurable;
  if (fitted && !v.supported.empty()) {
    z[v.supported[0]] = 0;
    for (std::size_t i = 1; i < v.supported.size(); ++i) z[v.supported[i]] = v.gap_structure.integers[i - 1];
  }
  const bool perfect = v.status == TransferStatus::Perfect;

  if (a.json) {
    ordered_json j;
    j["status"] = to_string(v.status);
    j["reason"] = v.reason;
    j["source"] = v.source;
    j["target"] = v.target;
    j["t0"] = perfect ? ordered_json(j12(v.t0)) : ordered_json(nullptr);
    j["transfer_phase"] = perfect ? j12(v.transfer_phase) : ordered_json(nullptr);
    j["fidelity_at_t0"] = perfect ? ordered_json(j12(v.fidelity_at_t0)) : ordered_json(nullptr);
    j["exact"] = v.exact;
    j["chi"] = fitted ? ordered_json(j12(v.gap_structure.chi)) : ordered_json(nullptr);
    j["r"] = v.r;
    auto spaces = ordered_json::array();
    for (std::size_t k = 0; k < dec.size(); ++k) {
      ordered_json s;
      s["eigenvalue"] = j12(dec.eigenspaces[k].eigenvalue);
      s["dimension"] = dec.eigenspaces[k].dim();
      s["weight"] = j12(comps[k].norm * comps[k].norm);
      s["phase"] = phase[k] ? ordered_json(j12(*phase[k])) : ordered_json(nullptr);
      s["z"] = z[k] ? ordered_json(*z[k]) : ordered_json(nullptr);
      spaces.push_back(s);
    }
    j["eigenspaces"] = spaces;
    out << j.dump(2) << '\n';
    return exit_code(v.status);
  }

  out << "status: " << to_string(v.status) << '\n';
  if (!v.reason.empty()) out << "reason: " << v.reason << '\n';
  out << "source: " << v.source << "\ntarget: " << v.target << '\n';
  if (perfect) {
    out << "t0: " << num(v.t0) << '\n';
    out << "transfer phase: " << num(v.transfer_phase) << '\n';
    out << "fidelity at t0: " << num(v.fidelity_at_t0) << '\n';
  }
  if (fitted) out << "chi: " << num(v.gap_structure.chi) << "\nr: " << v.r << '\n';
  out << "eigenspaces:\n";
  out << "  eigenvalue          dim  weight              phi/pi              z\n";
  for (std::size_t k = 0; k < dec.size(); ++k) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-18s  %-3zu  %-18s  %-18s  %s\n",
                  num(dec.eigenspaces[k].eigenvalue).c_str(), dec.eigenspaces[k].dim(),
                  num(comps[k].norm * comps[k].norm).c_str(),
                  phase[k] ? num(*phase[k] / std::numbers::pi).c_str() : "-",
                  z[k] ? std::to_string(*z[k]).c_str() : "-");
    out << line;
  }
  return exit_code(v.status);
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
  std::string input, model, times, out_path;
  Vertex source = 0;
};

struct TimeGrid {
  double start = 0.0, end = 0.0;
  std::size_t steps = 0;
};

TimeGrid parse_times(const std::string& spec) {
  TimeGrid g;
  const auto p1 = spec.find(':');
  const auto p2 = p1 == std::string::npos ? p1 : spec.find(':', p1 + 1);
  if (p2 == std::string::npos) throw UsageError("--times must be start:end:steps");
  try {
    std::size_t used = 0;
    const std::string a = spec.substr(0, p1), b = spec.substr(p1 + 1, p2 - p1 - 1), s = spec.substr(p2 + 1);
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.end = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    const long long steps = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    if (steps < 2) throw UsageError("--times needs at least 2 steps");
    g.steps = static_cast<std::size_t>(steps);
  } catch (const std::logic_error&) {
    throw UsageError("--times must be start:end:steps, got '" + spec + "'");
  }
  if (!std::isfinite(g.start) || !std::isfinite(g.end)) throw UsageError("--times bounds must be finite");
  if (g.end < g.start) throw UsageError("--times end is before start");
  return g;
}

void write_curve(const SpectralDecomposition& dec, Vertex source, const TimeGrid& grid, std::ostream& os) {
  os << "time,target,re,im,magnitude\n";
  const ComplexVector e = basis_state(dec.n, source);
  for (std::size_t i = 0; i < grid.steps; ++i) {
    const double t = i + 1 == grid.steps
                         ? grid.end
                         : grid.start + (grid.end - grid.start) * static_cast<double>(i) /
                                            static_cast<double>(grid.steps - 1);
    const ComplexVector psi = evolve(dec, e, t);
    for (Eigen::Index v = 0; v < psi.size(); ++v) {
      os << num(t) << ',' << v << ',' << num(psi(v).real()) << ',' << num(psi(v).imag()) << ','
         << num(std::abs(psi(v))) << '\n';
    }
  }
}

int cmd_evolve(const EvolveArgs& a, const Config& c, std::ostream& out) {
  const TimeGrid grid = parse_times(a.times);
  const auto h = resolve(load_input(a.input), a.model);
  if (a.source >= h.n()) throw IndexOutOfRange("source " + std::to_string(a.source) + " out of range");
  const auto dec = decompose(h, c.check.grouping_tol);
  if (a.out_path.empty()) {
    write_curve(dec, a.source, grid, out);
    return 0;
  }
  std::ostringstream buffer;
  write_curve(dec, a.source, grid, buffer);
  std::ofstream file(a.out_path, std::ios::binary);
  if (!file || !(file << buffer.str()) || !file.flush()) throw IoError("cannot write " + a.out_path);
  out << "wrote " << grid.steps * h.n() << " rows to " << a.out_path << '\n';
  return 0;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::string input, model;
  bool json = false;
};

const char* superscript(char digit) {
  static const char* const table[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
  return table[digit - '0'];
}

// Descending powers, e.g. λ³−2λ.
std::string format_poly(const std::vector<BigInt>& c) {
  std::string s;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    const bool negative = c[k] < 0;
    const BigInt mag = negative ? BigInt(-c[k]) : c[k];
    if (negative) s += "−";
    else if (!s.empty()) s += "+";
    if (mag != 1 || k == 0) s += mag.str();
    if (k >= 1) s += "λ";
    if (k >= 2) {
      for (char d : std::to_string(k)) s += superscript(d);
    }
  }
  return s.empty() ? "0" : s;
}

ordered_json big_json(const BigInt& b) {
  if (b >= std::numeric_limits<std::int64_t>::min() && b <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(b);
  }
  return b.str();
}

int cmd_spectrum(const SpectrumArgs& a, const Config& c, std::ostream& out) {
  const Input in = load_input(a.input);
  const auto h = resolve(in, a.model);
  const auto dec = decompose(h, c.check.grouping_tol);
  const auto ih = integer_model(in, a.model);
  std::vector<BigInt> poly;
  IntegralSpectrum integral;
  if (ih) {
    poly = integer_char_poly(*ih);
    integral = is_integral_spectrum(*ih);
  }

  if (a.json) {
    ordered_json j;
    j["n"] = h.n();
    j["model"] = in.graph ? (a.model.empty() ? "adjacency" : a.model) : "weighted";
    auto spaces = ordered_json::array();
    for (const auto& s : dec.eigenspaces) {
      spaces.push_back({{"eigenvalue", j12(s.eigenvalue)}, {"multiplicity", s.dim()}});
    }
    j["eigenspaces"] = spaces;
    if (ih) {
      auto coeffs = ordered_json::array();
      for (const auto& b : poly) coeffs.push_back(big_json(b));
      j["char_poly"] = coeffs;
      j["integral"] = integral.integral;
      j["integer_roots"] = integral.roots;
    } else {
      j["char_poly"] = nullptr;
      j["integral"] = nullptr;
      j["integer_roots"] = nullptr;
    }
    out << j.dump(2) << '\n';
    return 0;
  }

  out << "eigenvalues:\n";
  for (const auto& s : dec.eigenspaces) {
    out << "  " << num(s.eigenvalue) << " (multiplicity " << s.dim() << ")\n";
  }
  if (ih) {
    out << "char poly: " << format_poly(poly) << "; integral: " << (integral.integral ? "true" : "false")
        << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::string input, model;
  std::vector<double> alphas;
  std::optional<Vertex> source, target;
  bool json = false;
};

int cmd_bounds(const BoundsArgs& a, const Config& c, std::ostream& out) {
  if (a.source.has_value() != a.target.has_value()) {
    throw UsageError("--source and --target must be given together");
  }
  for (double alpha : a.alphas) {
    if (!(alpha > 1.0)) throw UsageError("--alpha must exceed 1");
  }
  const Input in = load_input(a.input);
  const auto h = resolve(in, a.model);
  const Graph g = graph_of(in);

  std::optional<TransferVerdict> verdict;
  std::optional<RateReport> rate;
  bool full_support = false;
  if (a.source) {
    const auto dec = decompose(h, c.check.grouping_tol);
    verdict = check_transfer(h, dec, *a.source, *a.target, c.check);
    if (verdict->status == TransferStatus::Perfect) {
      rate = rate_report(h, dec, *verdict, c.zeros);
      // The D <= 2d consequence concerns the Laplacian with full support.
      if (in.graph && a.model == "laplacian") {
        full_support = full_eigenspace_support(dec, *a.source, c.check.support_tol);
      }
    }
  }
  const auto report = laplacian_diameter_bounds(g, a.alphas.empty() ? default_mohar_alphas() : a.alphas,
                                                full_support);

  if (a.json) {
    ordered_json j;
    ordered_json lb;
    lb["max_degree"] = report.max_degree;
    lb["two_d"] = report.two_d;
    lb["two_d_asserted"] = report.two_d_asserted;
    lb["distinct_eigenvalues"] = report.distinct_eigenvalues;
    lb["k_minus_1"] = report.k_minus_1;
    lb["diameter"] = report.diameter;
    lb["integral"] = report.integral;
    lb["algebraic_connectivity"] = j12(report.algebraic_connectivity);
    auto mohar = ordered_json::array();
    for (const auto& m : report.mohar) mohar.push_back({{"alpha", j12(m.alpha)}, {"bound", m.bound}});
    lb["mohar"] = mohar;
    lb["mohar_applicable"] = report.mohar_applicable;
    lb["all_satisfied"] = report.all_satisfied;
    j["laplacian_bounds"] = lb;
    if (verdict) {
      j["status"] = to_string(verdict->status);
      if (rate) {
        ordered_json r;
        r["D"] = rate->distance;
        r["M"] = rate->supported_eigenspaces;
        r["l"] = rate->zero_count;
        auto zs = ordered_json::array();
        for (double t : rate->zero_times) zs.push_back(j12(t));
        r["zero_times"] = zs;
        r["t0"] = j12(rate->t0);
        r["bound_satisfied"] = rate->bound_satisfied;
        r["ml_lower_bound"] = j12(rate->ml_lower_bound);
        j["rate"] = r;
      } else {
        j["rate"] = nullptr;
      }
    }
    out << j.dump(2) << '\n';
    return 0;
  }

  out << "laplacian bounds:\n";
  out << "  max degree d: " << report.max_degree << '\n';
  out << "  diameter D: " << report.diameter << '\n';
  out << "  distinct eigenvalues k: " << report.distinct_eigenvalues
      << (report.integral ? " (integral)" : "") << '\n';
  out << "  D+1 <= k: " << (report.diameter + 1 <= report.distinct_eigenvalues ? "yes" : "no") << '\n';
  out << "  2d: " << report.two_d << (report.two_d_asserted ? " (asserted)" : " (reported only)") << '\n';
  out << "  algebraic connectivity: " << num(report.algebraic_connectivity) << '\n';
  for (const auto& m : report.mohar) {
    out << "  mohar alpha=" << num(m.alpha) << ": " << m.bound
        << (report.mohar_applicable ? "" : " (not applicable)") << '\n';
  }
  out << "  all satisfied: " << (report.all_satisfied ? "yes" : "no") << '\n';
  if (verdict) {
    out << "transfer " << *a.source << " -> " << *a.target << ": " << to_string(verdict->status) << '\n';
    if (rate) {
      out << "rate bound:\n";
      out << "  D: " << rate->distance << "\n  M: " << rate->supported_eigenspaces
          << "\n  l: " << rate->zero_count << '\n';
      out << "  zero times:";
      for (double t : rate->zero_times) out << ' ' << num(t);
      out << "\n  2l+D <= M: " << (rate->bound_satisfied ? "yes" : "no") << '\n';
      out << "  t0: " << num(rate->t0) << "\n  margolus-levitin lower bound: " << num(rate->ml_lower_bound)
          << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------- scan

struct ScanArgs {
  std::string input, model;
  Vertex source = 0;
  bool json = false;
};

int cmd_scan(const ScanArgs& a, const Config& c, std::ostream& out) {
  const auto h = resolve(load_input(a.input), a.model);
  const auto scan = routing_impossibility_scan(h, a.source, c.check);
  if (a.json) {
    ordered_json j;
    j["source"] = scan.source;
    auto targets = ordered_json::array();
    for (const auto& v : scan.perfect) {
      targets.push_back({{"target", v.target}, {"t0", j12(v.t0)}, {"transfer_phase", j12(v.transfer_phase)}});
    }
    j["perfect"] = targets;
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "source: " << scan.source << '\n';
  out << "perfect targets: " << scan.perfect.size() << '\n';
  for (const auto& v : scan.perfect) {
    out << "  " << v.target << " at t0=" << num(v.t0) << " phase " << num(v.transfer_phase) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- product

struct ProductArgs {
  std::string op, first, second, format = "json";
};

Graph load_graph(const std::string& path) {
  const Input in = load_input(path);
  if (!in.graph) throw UsageError(path + " is a Hamiltonian, not a graph");
  return *in.graph;
}

int cmd_product(const ProductArgs& a, std::ostream& out, std::ostream& err) {
  const Graph g1 = load_graph(a.first);
  Graph result(1);
  if (a.op == "complement") {
    if (!a.second.empty()) throw UsageError("complement takes one graph");
    result = complement(g1);
  } else {
    if (a.second.empty()) throw UsageError(a.op + " takes two graphs");
    const Graph g2 = load_graph(a.second);
    if (a.op == "cartesian") result = cartesian_product(g1, g2);
    else if (a.op == "tensor") result = conjunction(g1, g2);
    else if (a.op == "strong") result = strong_product(g1, g2);
    else {
      auto joined = join(g1, g2);
      if (!joined.square_ok) err << "note: join factors have unequal vertex counts\n";
      result = std::move(joined.graph);
    }
  }
  if (a.format == "graph6") out << encode_graph6(result) << '\n';
  else out << graph_to_json(result) << '\n';
  return 0;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::optional<std::size_t> n;
  std::string graph6_file, models = "adjacency,laplacian", out_path, csv_path;
};

std::set<Model> parse_models(const std::string& list) {
  std::set<Model> models;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      models.insert(parse_model(item));
    } catch (const ParseError& e) {
      throw UsageError(e.what());
    }
  }
  if (models.empty()) throw UsageError("--models must name at least one model");
  return models;
}

int cmd_search(const SearchArgs& a, const Config& c, std::ostream& out, std::ostream& err) {
  if (a.n.has_value() == !a.graph6_file.empty()) throw UsageError("give exactly one of --n or --graph6-file");
  CensusOptions opts;
  opts.models = parse_models(a.models);
  opts.check = c.check;
  opts.zeros = c.zeros;
  opts.workers = c.workers;

  std::vector<Graph> graphs;
  std::size_t skipped = 0;
  if (a.n) {
    graphs = enumerate_connected_graphs(*a.n);
  } else {
    std::ifstream in(a.graph6_file);
    if (!in) throw IoError("cannot open " + a.graph6_file);
    auto batch = read_graph6_stream(in);
    for (const auto& [line, message] : batch.failures) {
      err << "skipped line " << line << ": " << message << '\n';
    }
    skipped = batch.failures.size();
    graphs = std::move(batch.graphs);
  }

  const CensusResult result = census(graphs, opts);
  for (const auto& u : result.undecided) {
    err << "undecided " << u.graph6 << ' ' << to_string(u.model) << ' ' << u.source << "->" << u.target
        << ": " << u.message << '\n';
  }
  for (const auto& f : result.failures) {
    err << "failed " << f.graph6 << ' ' << to_string(f.model) << ": " << f.message << '\n';
  }

  if (!a.csv_path.empty()) {
    std::ofstream csv(a.csv_path, std::ios::binary);
    if (!csv) throw IoError("cannot open " + a.csv_path + " for writing");
    write_records_csv(result.records, csv);
  }
  std::ostringstream summary;
  summary << "graphs: " << graphs.size() << ", records: " << result.records.size()
          << ", undecided: " << result.undecided.size()
          << ", failures: " << result.failures.size() + skipped << '\n';
  if (a.out_path.empty()) {
    write_records(result.records, out);
    err << summary.str();
  } else {
    write_records(result.records, std::filesystem::path(a.out_path));
    out << summary.str();
  }
  return 0;
}

// ---------------------------------------------------------------- dispatch

int error_code(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e) || dynamic_cast<const IndexOutOfRange*>(&e) ||
      dynamic_cast<const VertexCoincide*>(&e) || dynamic_cast<const NTooLarge*>(&e)) {
    return kExitUsage;
  }
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const MalformedGraph6*>(&e) ||
      dynamic_cast<const MalformedRecord*>(&e) || dynamic_cast<const NotHermitian*>(&e) ||
      dynamic_cast<const InvalidGraph*>(&e) || dynamic_cast<const NonRealHamiltonian*>(&e) ||
      dynamic_cast<const Disconnected*>(&e) || dynamic_cast<const DegenerateInput*>(&e)) {
    return kExitParse;
  }
  if (dynamic_cast<const IoError*>(&e)) return kExitNoInput;
  return kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer analysis on graphs and spin-chain Hamiltonians", "pstlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pstlab 0.1.0");

  Config config;

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide perfect state transfer between two vertices");
  c->add_option("input", check.input, "Graph (JSON or graph6) or Hamiltonian (JSON or CSV)")->required();
  add_model(c, check.model);
  c->add_option("--source", check.source, "Source vertex")->required();
  c->add_option("--target", check.target, "Target vertex")->required();
  c->add_flag("--json", check.json, "Machine-readable output");
  add_check_config(c, config);

  EvolveArgs evolve_args;
  auto* e = app.add_subcommand("evolve", "Write the fidelity curve of a source vertex as CSV");
  e->add_option("input", evolve_args.input, "Graph or Hamiltonian file")->required();
  add_model(e, evolve_args.model);
  e->add_option("--source", evolve_args.source, "Source vertex")->required();
  e->add_option("--times", evolve_args.times, "start:end:steps")->required();
  e->add_option("--out", evolve_args.out_path, "CSV output file (default stdout)");
  e->add_option("--grouping-tol", config.check.grouping_tol, "Relative eigenvalue merge tolerance")
      ->envname("PSTLAB_GROUPING_TOL")->check(CLI::PositiveNumber);

  SpectrumArgs spectrum;
  auto* s = app.add_subcommand("spectrum", "Eigenvalues, exact characteristic polynomial and integrality");
  s->add_option("input", spectrum.input, "Graph or Hamiltonian file")->required();
  add_model(s, spectrum.model);
  s->add_flag("--json", spectrum.json, "Machine-readable output");
  s->add_option("--grouping-tol", config.check.grouping_tol, "Relative eigenvalue merge tolerance")
      ->envname("PSTLAB_GROUPING_TOL")->check(CLI::PositiveNumber);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "Laplacian diameter bounds and, for a perfect pair, the rate bound");
  b->add_option("input", bounds.input, "Graph or Hamiltonian file")->required();
  add_model(b, bounds.model);
  b->add_option("--alpha", bounds.alphas, "Mohar bound parameter (repeatable, > 1)")
      ->check(CLI::Range(1.0, std::numeric_limits<double>::max()));
  b->add_option("--source", bounds.source, "Source vertex of a transfer pair");
  b->add_option("--target", bounds.target, "Target vertex of a transfer pair");
  b->add_flag("--json", bounds.json, "Machine-readable output");
  add_check_config(b, config);
  add_zero_config(b, config);

  ScanArgs scan;
  auto* r = app.add_subcommand("scan", "Perfect targets from one source (routing impossibility check)");
  r->add_option("input", scan.input, "Graph or Hamiltonian file")->required();
  add_model(r, scan.model);
  r->add_option("--source", scan.source, "Source vertex")->required();
  r->add_flag("--json", scan.json, "Machine-readable output");
  add_check_config(r, config);

  ProductArgs product;
  auto* p = app.add_subcommand("product", "Graph products and complement, written as JSON or graph6");
  p->add_option("op", product.op, "cartesian | tensor | strong | join | complement")
      ->required()
      ->check(CLI::IsMember({"cartesian", "tensor", "strong", "join", "complement"}));
  p->add_option("first", product.first, "First graph file")->required();
  p->add_option("second", product.second, "Second graph file");
  p->add_option("--format", product.format, "json | graph6")
      ->check(CLI::IsMember({"json", "graph6"}))
      ->capture_default_str();

  SearchArgs search;
  auto* q = app.add_subcommand("search", "Census of perfect transfer over small graphs");
  q->add_option("--n", search.n, "Enumerate connected graphs on n vertices (1..7)")
      ->check(CLI::Range(1, 64));
  q->add_option("--graph6-file", search.graph6_file, "One graph6 string per line");
  q->add_option("--models", search.models, "Comma-separated models")->capture_default_str();
  q->add_option("--out", search.out_path, "JSONL output file (default stdout)");
  q->add_option("--csv", search.csv_path, "Also write a CSV export");
  q->add_option("--workers", config.workers, "Worker threads (0 = available parallelism)")
      ->envname("PSTLAB_WORKERS")->check(CLI::NonNegativeNumber)->capture_default_str();
  add_check_config(q, config);
  add_zero_config(q, config);

  std::vector<const char*> argv{"pstlab"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    validate_environment();
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& v) {
    out << v.what() << '\n';
    return 0;
  } catch (const UsageError& ue) {
    err << "pstlab: " << ue.what() << '\n';
    return kExitUsage;
  } catch (const CLI::ParseError& pe) {
    err << "pstlab: " << pe.what() << '\n';
    if (!app.get_subcommands().empty()) err << "run 'pstlab " << app.get_subcommands().front()->get_name() << " --help' for usage\n";
    return kExitUsage;
  }

  std::ostringstream buffer;
  try {
    int code = kExitInternal;
    if (c->parsed()) {
      check.model = CLI::detail::to_lower(check.model);
      code = cmd_check(check, config, buffer);
    } else if (e->parsed()) {
      evolve_args.model = CLI::detail::to_lower(evolve_args.model);
      code = cmd_evolve(evolve_args, config, buffer);
    } else if (s->parsed()) {
      spectrum.model = CLI::detail::to_lower(spectrum.model);
      code = cmd_spectrum(spectrum, config, buffer);
    } else if (b->parsed()) {
      bounds.model = CLI::detail::to_lower(bounds.model);
      code = cmd_bounds(bounds, config, buffer);
    } else if (r->parsed()) {
      scan.model = CLI::detail::to_lower(scan.model);
      code = cmd_scan(scan, config, buffer);
    } else if (p->parsed()) {
      code = cmd_product(product, buffer, err);
    } else if (q->parsed()) {
      code = cmd_search(search, config, buffer, err);
    }
    out << buffer.str();
    out.flush();
    return code;
  } catch (const std::exception& ex) {
    err << "pstlab: error: " << ex.what() << '\n';
    return error_code(ex);
  }
}

}  // namespace pstlab::cli
