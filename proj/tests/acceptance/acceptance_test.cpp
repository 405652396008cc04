// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Reference values come from oracles written here (plain Eigen
// eigendecompositions, brute-force scans) rather than from the library.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pstlab/error.hpp"
#include "pstlab/limits.hpp"
#include "pstlab/search.hpp"
#include "pstlab/transfer.hpp"
#include "test_support.hpp"

namespace {

using namespace pstlab;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

const Complex kI(0.0, 1.0);

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// ------------------------------------------------------------------ oracles

// Dense eigendecomposition of a real symmetric H, independent of decompose().
struct Oracle {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  explicit Oracle(const Eigen::MatrixXd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    values = solver.eigenvalues();
    vectors = solver.eigenvectors();
  }
  explicit Oracle(const SingleExcitationHamiltonian& h) : Oracle(Eigen::MatrixXd(h.matrix().real())) {}

  Complex amplitude(Vertex a, Vertex b, double t) const {
    Complex sum = 0.0;
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      sum += vectors(a, j) * vectors(b, j) * std::exp(-kI * (values(j) * t));
    }
    return sum;
  }

  // Distinct eigenvalues (within 1e-8 relative) and the weight of |a> on each.
  std::vector<std::pair<double, double>> grouped_weights(Vertex a) const {
    std::vector<std::pair<double, double>> groups;
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      const double w = vectors(a, j) * vectors(a, j);
      if (!groups.empty() && values(j) - groups.back().first <= 1e-8 * scale) {
        groups.back().second += w;
      } else {
        groups.emplace_back(values(j), w);
      }
    }
    return groups;
  }

  std::size_t distinct() const { return grouped_weights(0).size(); }

  std::size_t supported(Vertex a) const {
    std::size_t m = 0;
    for (const auto& [value, w] : grouped_weights(a)) m += std::sqrt(w) > 1e-8;
    return m;
  }

  bool full_support(Vertex a) const { return supported(a) == distinct(); }

  bool integral() const {
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      if (std::abs(values(j) - std::round(values(j))) > 1e-6) return false;
    }
    return true;
  }
};

// Golden-section maximum of g on [lo, hi].
std::pair<double, double> maximise(const std::function<double(double)>& g, double lo, double hi) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    if (g1 < g2) {
      lo = x1, x1 = x2, g1 = g2, x2 = lo + r * (hi - lo), g2 = g(x2);
    } else {
      hi = x2, x2 = x1, g2 = g1, x1 = hi - r * (hi - lo), g1 = g(x1);
    }
  }
  return g1 >= g2 ? std::pair{x1, g1} : std::pair{x2, g2};
}

// Largest |<b|exp(-iHt)|a>| on (0, horizon]: grid scan plus refinement of
// every local maximum.
double max_fidelity(const Oracle& o, Vertex a, Vertex b, double horizon, std::size_t grid = 10'000) {
  const double step = horizon / static_cast<double>(grid);
  const auto f = [&](double t) { return std::abs(o.amplitude(a, b, t)); };
  std::vector<double> mag(grid + 2, 0.0);
  for (std::size_t j = 1; j <= grid; ++j) mag[j] = f(step * static_cast<double>(j));
  mag[grid + 1] = f(step * static_cast<double>(grid + 1));
  double best = 0.0;
  for (std::size_t j = 1; j <= grid; ++j) {
    if (mag[j] >= mag[j - 1] && mag[j] >= mag[j + 1]) {
      best = std::max(best, maximise(f, step * static_cast<double>(j - 1), step * static_cast<double>(j + 1)).second);
    }
  }
  return best;
}

// Zeros of <a|exp(-iHt)|a> in (0, t0): refined minima of |f| below 1e-8.
std::size_t count_return_zeros(const Oracle& o, Vertex a, double t0) {
  const std::size_t grid = 20'000;
  const double step = t0 / static_cast<double>(grid);
  const auto neg = [&](double t) { return -std::abs(o.amplitude(a, a, t)); };
  std::vector<double> mag(grid + 1);
  for (std::size_t j = 0; j <= grid; ++j) mag[j] = -neg(step * static_cast<double>(j));
  std::size_t zeros = 0;
  double last = -1.0;
  for (std::size_t j = 1; j < grid; ++j) {
    if (!(mag[j] <= mag[j - 1] && mag[j] < mag[j + 1])) continue;
    const auto [t, v] = maximise(neg, step * static_cast<double>(j - 1), step * static_cast<double>(j + 1));
    if (-v > 1e-8 || t < 1e-6 * t0 || t > t0 * (1 - 1e-6)) continue;
    if (last >= 0.0 && t - last < step) continue;
    last = t;
    ++zeros;
  }
  return zeros;
}

std::size_t bfs_distance(const Graph& g, Vertex a, Vertex b) {
  std::vector<std::size_t> dist(g.n(), SIZE_MAX);
  std::vector<Vertex> queue{a};
  dist[a] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex v : g.neighbors(queue[i])) {
      if (dist[v] == SIZE_MAX) dist[v] = dist[queue[i]] + 1, queue.push_back(v);
    }
  }
  return dist[b];
}

// Connected classes by exhaustive relabeling of every edge subset.
std::size_t brute_force_class_count(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  std::set<std::vector<bool>> classes;
  std::vector<std::size_t> perm(n);
  for (unsigned long mask = 0; mask < (1ul << slots.size()); ++mask) {
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (mask >> i & 1) adj[slots[i].first][slots[i].second] = adj[slots[i].second][slots[i].first] = true;
    }
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (adj[u][v] && !seen[v]) seen[v] = true, stack.push_back(v);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) continue;
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<bool> best;
    do {
      std::vector<bool> bits;
      for (const auto& [u, v] : slots) bits.push_back(adj[perm[u]][perm[v]]);
      if (best.empty() || bits < best) best = bits;
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
  return classes.size();
}

// ------------------------------------------------------------------ report

struct Report {
  int failures = 0;

  void line(int id, bool pass, const std::string& detail) {
    std::printf("%s  criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    failures += !pass;
  }
};

// Collects failure messages, keeping the first few for the report line.
struct Problems {
  std::size_t count = 0;
  std::string first;

  void add(const std::string& what) {
    if (count++ < 3) first += (first.empty() ? "" : "; ") + what;
  }
  bool ok() const { return count == 0; }
  std::string summary() const { return std::to_string(count) + " violation(s): " + first; }
};

// ------------------------------------------------------------------ criteria

void criterion1(Report& report) {
  Problems p;
  std::string detail;
  for (double j2 : {0.8, 1.0, 1.2}) {
    const auto start = Clock::now();
    const std::string tag = "J2=" + fmt(j2);
    // Independent evaluation of the published formulas.
    const double j1_sq = 2.5 - j2 * j2;
    const double j4_sq = 2.5 - 9.0 / (4.0 * j2 * j2);
    if (j1_sq <= 0.0 || j4_sq <= 0.0) {
      p.add(tag + ": J4^2 = " + fmt(j4_sq) + " < 0, couplings not real (valid J2 window is (" +
            fmt(std::sqrt(0.9)) + ", " + fmt(std::sqrt(2.5)) + "))");
      try {
        asymmetric_five_chain_couplings(j2);
        p.add(tag + ": library accepted imaginary couplings");
      } catch (const NonPositiveCoupling&) {
      }
      continue;
    }
    const std::array<double, 4> expected{std::sqrt(j1_sq), j2, 3.0 / (2.0 * j2), std::sqrt(j4_sq)};
    const auto j = asymmetric_five_chain_couplings(j2);
    for (int k = 0; k < 4; ++k) {
      if (std::abs(j[k] - expected[k]) > 1e-14) p.add(tag + ": coupling " + std::to_string(k + 1) + " differs");
    }
    const double identity = std::abs(j[0] * j[0] + j[1] * j[1] - j[2] * j[2] - j[3] * j[3]);
    if (identity > 1e-12) p.add(tag + ": coupling identity residual " + fmt(identity));
    if (!check_coupling_identity_5chain(j)) p.add(tag + ": check_coupling_identity_5chain false");
    const bool mirror = std::abs(j[0] - j[3]) < 1e-6 && std::abs(j[1] - j[2]) < 1e-6;
    if (mirror) p.add(tag + ": couplings are mirror symmetric");

    const auto h = chain_hamiltonian(j);
    const auto v = check_transfer(h, 1, 3);
    const double elapsed = seconds_since(start);
    if (v.status != TransferStatus::Perfect) {
      p.add(tag + ": verdict " + to_string(v.status) + " (" + v.reason + ")");
      continue;
    }
    if (std::abs(v.t0 - pi) > 1e-8) p.add(tag + ": t0 = " + fmt(v.t0));
    const double f = std::abs(Oracle(h).amplitude(1, 3, v.t0));
    if (f < 1.0 - 1e-9) p.add(tag + ": oracle fidelity " + fmt(f));
    if (elapsed >= 0.1) p.add(tag + ": runtime " + fmt(elapsed) + " s");
    detail += tag + " Perfect t0=" + fmt(v.t0) + "; ";
  }
  report.line(1, p.ok(), p.ok() ? "5-chain 2->4 perfect at pi for all J2 (" + detail + ")" : p.summary());
}

void criterion2(Report& report) {
  Problems p;
  const auto h = adjacency_hamiltonian(path_graph(3)).to_complex();
  const auto v = check_transfer(h, 0, 2);
  if (v.status != TransferStatus::Perfect) p.add("verdict " + std::string(to_string(v.status)));
  if (std::abs(v.t0 - pi / std::sqrt(2.0)) > 1e-8) p.add("t0 = " + fmt(v.t0));
  if (std::abs(v.transfer_phase + 1.0) > 1e-8) p.add("phase off -1");
  const std::vector<double> expected{-std::sqrt(2.0), 0.0, std::sqrt(2.0)};
  if (v.eigenvalues.size() != 3) {
    p.add("eigenvalue count " + std::to_string(v.eigenvalues.size()));
  } else {
    for (int k = 0; k < 3; ++k) {
      if (std::abs(v.eigenvalues[k] - expected[k]) > 1e-9) p.add("eigenvalue " + fmt(v.eigenvalues[k]));
    }
  }
  if (is_integral_spectrum(adjacency_hamiltonian(path_graph(3))).integral) p.add("spectrum reported integral");
  const Complex amp = Oracle(h).amplitude(0, 2, pi / std::sqrt(2.0));
  if (std::abs(amp + 1.0) > 1e-12) p.add("oracle amplitude " + fmt(amp.real()));
  report.line(2, p.ok(), p.ok() ? "P3 0->2 perfect at pi/sqrt2, phase -1, eigenvalues {0, +-sqrt2}, non-integral"
                                : p.summary());
}

void criterion3(Report& report) {
  Problems p;
  const auto start = Clock::now();
  Graph q = complete_graph(2);
  for (std::size_t d = 1; d <= 4; ++d) {
    if (d > 1) q = cartesian_product(q, complete_graph(2));
    const Vertex far = q.n() - 1;
    if (bfs_distance(q, 0, far) != d) p.add("d=" + std::to_string(d) + ": last vertex not antipodal");
    const auto v = check_transfer(adjacency_hamiltonian(q).to_complex(), 0, far);
    const Complex expected = std::pow(-kI, static_cast<double>(d));
    if (v.status != TransferStatus::Perfect) p.add("d=" + std::to_string(d) + ": " + to_string(v.status));
    if (std::abs(v.t0 - pi / 2) > 1e-8) p.add("d=" + std::to_string(d) + ": t0 " + fmt(v.t0));
    if (std::abs(v.transfer_phase - expected) > 1e-8) p.add("d=" + std::to_string(d) + ": phase");
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 2.0) p.add("runtime " + fmt(elapsed) + " s");
  report.line(3, p.ok(), p.ok() ? "Q1..Q4 antipodal transfer at pi/2 with phase (-i)^d in " + fmt(elapsed) + " s"
                                : p.summary());
}

struct CensusData {
  std::vector<SearchRecord> records;
  double seconds = 0.0;
  std::size_t graphs = 0;
  std::size_t undecided = 0;
  std::size_t failures = 0;
};

CensusData run_census() {
  CensusData data;
  const auto graphs = testing::connected_graphs_up_to(6);
  const auto start = Clock::now();
  const auto result = census(graphs);
  data.seconds = seconds_since(start);
  data.records = result.records;
  data.graphs = graphs.size();
  data.undecided = result.undecided.size();
  data.failures = result.failures.size();
  return data;
}

void criterion4(Report& report, const CensusData& data) {
  Problems p;
  if (data.seconds >= 60.0) p.add("census took " + fmt(data.seconds) + " s");
  if (data.undecided + data.failures > 0) p.add("undecided/failed instances in census");
  std::map<std::pair<std::string, Model>, std::map<Vertex, int>> endpoint_use;
  std::size_t full_support_records = 0;

  for (const auto& r : data.records) {
    const Graph g = parse_graph6(r.graph6);
    const auto h = model_hamiltonian(g, r.model);
    const Oracle o(h);
    const std::string tag = r.graph6 + "/" + to_string(r.model) + " " + std::to_string(r.source) + "->" +
                            std::to_string(r.target);

    if (std::abs(o.amplitude(r.source, r.target, r.t0)) < 1.0 - 1e-9) p.add(tag + ": oracle fidelity below 1");
    // (a) rate bound, with D, M and l recomputed.
    const std::size_t d = bfs_distance(g, r.source, r.target);
    const std::size_t m = o.supported(r.source);
    const std::size_t l = count_return_zeros(o, r.source, r.t0);
    if (d != r.D || m != r.M || l != r.l) {
      p.add(tag + ": record (D,M,l)=(" + std::to_string(r.D) + "," + std::to_string(r.M) + "," +
            std::to_string(r.l) + ") oracle (" + std::to_string(d) + "," + std::to_string(m) + "," +
            std::to_string(l) + ")");
    }
    if (2 * l + d > m) p.add(tag + ": 2l+D > M");
    // (b) bookkeeping for routing.
    ++endpoint_use[{r.graph6, r.model}][r.source];
    ++endpoint_use[{r.graph6, r.model}][r.target];
    // (c), (d) under full support.
    if (o.full_support(r.source)) {
      ++full_support_records;
      if ((r.model == Model::Laplacian || !r.bipartite) && !(r.integral_spectrum && o.integral())) {
        p.add(tag + ": spectrum not integral");
      }
      if (r.model == Model::Laplacian) {
        if (d > 2 * g.max_degree()) p.add(tag + ": D > 2d");
        if (d + 1 > o.distinct()) p.add(tag + ": D+1 > k");
      }
    }
    // (e) symmetry operator.
    const auto dec = decompose(h);
    const ComplexMatrix s = symmetry_operator(dec, r.source, r.target).matrix;
    const auto n = static_cast<Eigen::Index>(g.n());
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix hm = h.matrix();
    ComplexVector ea = ComplexVector::Zero(n), eb = ComplexVector::Zero(n);
    ea(r.source) = 1.0;
    eb(r.target) = 1.0;
    const double residual = std::max({(s * s.adjoint() - id).norm(), (s * hm * s.adjoint() - hm).norm(),
                                      (s * ea - eb).norm(), (s * s - id).norm()});
    if (residual > 1e-8) p.add(tag + ": symmetry residual " + fmt(residual));
  }
  for (const auto& [key, uses] : endpoint_use) {
    for (const auto& [v, count] : uses) {
      if (count > 1) p.add(key.first + ": vertex " + std::to_string(v) + " has " + std::to_string(count) + " perfect partners");
    }
  }
  std::ostringstream detail;
  detail << data.graphs << " graphs, " << data.records.size() << " perfect records (" << full_support_records
         << " with full support) in " << fmt(data.seconds) << " s; rate, routing, integrality, Laplacian and "
         << "symmetry checks hold";
  report.line(4, p.ok(), p.ok() ? detail.str() : p.summary());
}

void criterion5(Report& report, const CensusData& data) {
  Problems p;
  std::mt19937_64 rng(20240501);
  std::size_t instances = 0;
  for (const auto& r : data.records) {
    if (!r.bipartite || r.model != Model::Adjacency) continue;
    ++instances;
    const Graph g = parse_graph6(r.graph6);
    const auto h = model_hamiltonian(g, r.model);
    const std::string tag = r.graph6 + " " + std::to_string(r.source) + "->" + std::to_string(r.target);
    const Complex z = r.transfer_phase;
    const double to_real = std::min(std::abs(z - 1.0), std::abs(z + 1.0));
    const double to_imag = std::min(std::abs(z - kI), std::abs(z + kI));
    if ((r.D % 2 == 0 ? to_real : to_imag) > 1e-7) p.add(tag + ": phase class wrong for D=" + std::to_string(r.D));

    const Oracle o(h);
    const auto coloring = bipartite_coloring(g);
    std::uniform_real_distribution<double> time(0.0, 4.0 * r.t0);
    for (int k = 0; k < 100; ++k) {
      const double t = time(rng);
      for (Vertex m = 0; m < g.n(); ++m) {
        const bool same = coloring.colors[m] == coloring.colors[r.source];
        const auto cls = bipartite_phase_class(g, h, r.source, m, t);
        const Complex amp = o.amplitude(r.source, m, t);
        const double residual = same ? std::abs(amp.imag()) : std::abs(amp.real());
        if (cls.phase_class != (same ? PhaseClass::PurelyReal : PhaseClass::PurelyImaginary)) {
          p.add(tag + ": misclassified vertex " + std::to_string(m));
        }
        if (residual > 1e-8 || cls.residual > 1e-8) p.add(tag + ": residual " + fmt(residual));
      }
    }
  }
  if (instances == 0) p.add("no bipartite perfect records");
  report.line(5, p.ok(),
              p.ok() ? std::to_string(instances) +
                           " bipartite instances: phase in {+-1}/{+-i} by parity of D, amplitudes classified at "
                           "100 random times"
                     : p.summary());
}

void criterion6(Report& report, const CensusData& data) {
  Problems p;
  std::size_t checked = 0, predicted_perfect = 0;
  for (const auto& r : data.records) {
    if (r.model != Model::Adjacency || !r.regular) continue;
    const Graph g = parse_graph6(r.graph6);
    const Graph co = complement(g);
    if (!co.is_connected()) continue;
    ++checked;
    const Oracle o(adjacency_hamiltonian(co).to_complex());
    const bool simulated = std::abs(o.amplitude(r.source, r.target, r.t0)) >= 1.0 - 1e-8;
    const bool predicted = std::abs(std::exp(-kI * (r.t0 * static_cast<double>(g.n()))) - 1.0) <= 1e-8;
    predicted_perfect += predicted;
    if (simulated != predicted || complement_pst_condition(r.t0, g.n()) != predicted) {
      p.add(r.graph6 + ": simulation " + (simulated ? "perfect" : "not perfect") + ", rule " +
            (predicted ? "perfect" : "not perfect"));
    }
  }
  // No census record qualifies when K2 and C4 are the only regular perfect
  // graphs; larger hypercubes exercise the rule under both models.
  std::size_t supplementary = 0;
  for (std::size_t d : {3u, 4u}) {
    const Graph q = hypercube(d);
    const Graph co = complement(q);
    for (Model model : {Model::Adjacency, Model::Laplacian}) {
      const auto v = check_transfer(model_hamiltonian(q, model), 0, q.n() - 1);
      if (v.status != TransferStatus::Perfect || !co.is_connected()) {
        p.add("Q" + std::to_string(d) + " supplementary instance unusable");
        continue;
      }
      ++supplementary;
      const Oracle o(model_hamiltonian(co, model));
      const bool simulated = std::abs(o.amplitude(0, q.n() - 1, v.t0)) >= 1.0 - 1e-8;
      if (simulated != complement_pst_condition(v.t0, q.n())) {
        p.add("Q" + std::to_string(d) + " " + to_string(model) + ": rule disagrees with simulation");
      }
    }
  }
  // C4: the complement is two antipodal edges, perfect at pi/2 like C4 itself.
  const Graph c4 = cycle_graph(4);
  const auto on_c4 = check_transfer(adjacency_hamiltonian(c4).to_complex(), 0, 2);
  const Graph co4 = complement(c4);
  const auto on_co4 = check_transfer(adjacency_hamiltonian(co4).to_complex(), 0, 2);
  if (on_c4.status != TransferStatus::Perfect || std::abs(on_c4.t0 - pi / 2) > 1e-8) p.add("C4 not perfect at pi/2");
  if (!complement_pst_condition(on_c4.t0, 4)) p.add("C4 rule false");
  if (co4.edges().size() != 2 || !co4.has_edge(0, 2) || !co4.has_edge(1, 3)) p.add("complement of C4 wrong");
  if (on_co4.status != TransferStatus::Perfect || std::abs(on_co4.t0 - pi / 2) > 1e-8) {
    p.add("complement of C4 not perfect at pi/2");
  }
  if (std::abs(Oracle(adjacency_hamiltonian(co4).to_complex()).amplitude(0, 2, pi / 2)) < 1.0 - 1e-12) {
    p.add("oracle: complement of C4 not perfect");
  }
  report.line(6, p.ok(),
              p.ok() ? std::to_string(checked) + " census records qualify (regular perfect graphs at n<=6 are K2 "
                           "and C4, both with disconnected complements; " + std::to_string(predicted_perfect) +
                           " predicted perfect); " + std::to_string(supplementary) +
                           " hypercube instances (Q3, Q4; both models) agree with simulation; C4 and its "
                           "complement perfect at pi/2"
                     : p.summary());
}

void criterion7(Report& report) {
  Problems p;
  const auto h = standard_chain(5);
  const auto r = rate_report(h, 1, 3);
  const Oracle o(h);
  const std::size_t m_oracle = o.supported(1);
  const std::size_t l_oracle = count_return_zeros(o, 1, pi / 2);
  if (r.distance != 2) p.add("D = " + std::to_string(r.distance));
  if (r.zero_count != 1 || l_oracle != 1) p.add("l = " + std::to_string(r.zero_count) + ", oracle " + std::to_string(l_oracle));
  if (r.supported_eigenspaces != m_oracle) p.add("M = " + std::to_string(r.supported_eigenspaces) + ", oracle " + std::to_string(m_oracle));
  if (!r.bound_satisfied || 2 * r.zero_count + r.distance > r.supported_eigenspaces) p.add("2l+D > M");
  if (r.supported_eigenspaces > 5) p.add("M > N");
  std::string detail = "standard 5-chain from vertex 2: D=" + std::to_string(r.distance) +
                       ", l=" + std::to_string(r.zero_count) + " (zero at t=" +
                       (r.zero_times.empty() ? std::string("-") : fmt(r.zero_times[0])) +
                       "), 2l+D=" + std::to_string(2 * r.zero_count + r.distance) +
                       " <= M=" + std::to_string(r.supported_eigenspaces) + " <= N=5";
  if (m_oracle != 5) detail += " (criterion text says M=5; vertex 2 carries no weight on eigenvalue 0, so M=" +
                               std::to_string(m_oracle) + ")";
  report.line(7, p.ok(), p.ok() ? detail : p.summary());
}

struct Instance {
  std::string kind;
  SingleExcitationHamiltonian h;
  Vertex a, b;
};

std::vector<Instance> random_instances() {
  std::mt19937_64 rng(8675309);
  std::uniform_real_distribution<double> coupling(0.2, 2.0);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::vector<Instance> out;
  const auto pair = [&](std::size_t n) {
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    Vertex a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    return std::pair{a, b};
  };

  for (int i = 0; i < 100; ++i) {  // random-weight chains
    const std::size_t n = size(rng);
    std::vector<double> j(n - 1);
    for (auto& x : j) x = coupling(rng);
    auto [a, b] = pair(n);
    out.push_back({"chain", chain_hamiltonian(j), a, b});
  }
  for (int i = 0; i < 100; ++i) {  // mirror-symmetric chains, mirror pairs
    const std::size_t n = size(rng);
    std::vector<double> j(n - 1);
    for (std::size_t k = 0; k < (n - 1 + 1) / 2; ++k) j[k] = j[n - 2 - k] = coupling(rng);
    const Vertex a = std::uniform_int_distribution<Vertex>(0, n / 2 - 1)(rng);
    const Vertex b = n - 1 - a;
    out.push_back({"mirror", chain_hamiltonian(j), a, b});
  }
  const auto sparse_graph = [&](std::size_t n) {
    std::bernoulli_distribution edge(std::min(1.0, 2.0 / static_cast<double>(n)));
    std::vector<Edge> edges;
    for (Vertex u = 0; u + 1 < n; ++u) {
      // A random spanning tree keeps the graph connected.
      edges.push_back({std::uniform_int_distribution<Vertex>(0, u)(rng), u + 1});
    }
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (edge(rng)) edges.push_back({u, v});
    return Graph(n, edges);
  };
  for (int i = 0; i < 100; ++i) {  // sparse graphs, random weights
    const std::size_t n = std::max<std::size_t>(3, size(rng));
    const Graph g = sparse_graph(n);
    CouplingMap j;
    for (const auto& e : g.edges()) j[e] = coupling(rng);
    auto [a, b] = pair(n);
    out.push_back({"sparse-weighted", weighted_hamiltonian(g, j), a, b});
  }
  for (int i = 0; i < 100; ++i) {  // sparse graphs, one uniform weight
    const std::size_t n = std::max<std::size_t>(2, size(rng));
    const Graph g = n == 2 ? complete_graph(2) : sparse_graph(n);
    const double c = coupling(rng);
    auto [a, b] = pair(n);
    out.push_back({"sparse-uniform", adjacency_hamiltonian(g).to_complex().scaled(c), a, b});
  }
  for (int i = 0; i < 60; ++i) {  // scaled standard chains
    const std::size_t n = size(rng);
    double jmin = 1e300, jmax = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      const double jk = std::sqrt(static_cast<double>(k * (n - k)));
      jmin = std::min(jmin, jk), jmax = std::max(jmax, jk);
    }
    const double c = std::uniform_real_distribution<double>(0.2 / jmin, 2.0 / jmax)(rng);
    const Vertex a = std::uniform_int_distribution<Vertex>(0, n / 2 - 1)(rng);
    out.push_back({"standard", standard_chain(n).scaled(c), a, n - 1 - a});
  }
  for (int i = 0; i < 40; ++i) {  // asymmetric 5-chain family
    const double j2 = std::uniform_real_distribution<double>(0.96, 1.56)(rng);
    out.push_back({"five-chain", chain_hamiltonian(asymmetric_five_chain_couplings(j2)), 1, 3});
  }
  return out;
}

void criterion8(Report& report) {
  Problems p;
  const auto instances = random_instances();
  std::size_t perfect = 0;
  std::map<std::string, std::size_t> perfect_by_kind;
  for (const auto& inst : instances) {
    for (Eigen::Index r = 0; r < inst.h.matrix().rows(); ++r)
      for (Eigen::Index c = 0; c < r; ++c) {
        const double x = std::abs(inst.h.matrix()(r, c));
        if (x != 0.0 && (x < 0.2 - 1e-12 || x > 2.0 + 1e-12)) p.add(inst.kind + ": coupling " + fmt(x) + " outside [0.2, 2]");
      }
    const auto v = check_transfer(inst.h, inst.a, inst.b);
    const double t_hat = v.status == TransferStatus::Perfect ? v.t0 : 50.0;
    const double best = max_fidelity(Oracle(inst.h), inst.a, inst.b, 4.0 * t_hat);
    const bool oracle_perfect = best >= 1.0 - 1e-9;
    const bool verdict_perfect = v.status == TransferStatus::Perfect;
    if (v.status == TransferStatus::Undecided || oracle_perfect != verdict_perfect) {
      p.add(inst.kind + " n=" + std::to_string(inst.h.n()) + " " + std::to_string(inst.a) + "->" +
            std::to_string(inst.b) + ": verdict " + to_string(v.status) + ", oracle max fidelity " + fmt(best));
    }
    if (verdict_perfect) ++perfect, ++perfect_by_kind[inst.kind];
  }
  std::ostringstream detail;
  detail << instances.size() << " instances, " << perfect << " perfect (";
  bool first = true;
  for (const auto& [kind, count] : perfect_by_kind) {
    detail << (first ? "" : ", ") << kind << " " << count;
    first = false;
  }
  detail << "), zero disagreements with the fidelity-scan oracle";
  report.line(8, p.ok(), p.ok() ? detail.str() : p.summary());
}

void criterion9(Report& report) {
  Problems p;
  const std::map<std::size_t, std::size_t> expected{{3, 2}, {4, 6}, {5, 21}, {6, 112}};
  std::string counts;
  for (const auto& [n, count] : expected) {
    const std::size_t oracle = brute_force_class_count(n);
    const auto graphs = enumerate_connected_graphs(n);
    if (oracle != count) p.add("oracle n=" + std::to_string(n) + " gives " + std::to_string(oracle));
    if (graphs.size() != oracle) p.add("n=" + std::to_string(n) + ": " + std::to_string(graphs.size()) + " classes");
    for (const auto& g : graphs) {
      const std::string s = encode_graph6(g);
      if (!(parse_graph6(s) == g) || encode_graph6(parse_graph6(s)) != s) p.add("round trip fails for " + s);
    }
    counts += (counts.empty() ? "" : ", ") + std::string("n=") + std::to_string(n) + ":" + std::to_string(graphs.size());
  }
  report.line(9, p.ok(), p.ok() ? "connected classes " + counts + " match the brute-force oracle; graph6 round trips"
                                : p.summary());
}

template <typename F>
void guarded(Report& report, int id, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    report.line(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  Report report;
  guarded(report, 1, [&] { criterion1(report); });
  guarded(report, 2, [&] { criterion2(report); });
  guarded(report, 3, [&] { criterion3(report); });
  CensusData data;
  bool census_ok = true;
  try {
    data = run_census();
  } catch (const std::exception& e) {
    census_ok = false;
    for (int id : {4, 5, 6}) report.line(id, false, std::string("census failed: ") + e.what());
  }
  if (census_ok) {
    guarded(report, 4, [&] { criterion4(report, data); });
    guarded(report, 5, [&] { criterion5(report, data); });
    guarded(report, 6, [&] { criterion6(report, data); });
  }
  guarded(report, 7, [&] { criterion7(report); });
  guarded(report, 8, [&] { criterion8(report); });
  guarded(report, 9, [&] { criterion9(report); });
  std::printf("%d of 9 criteria failed\n", report.failures);
  return report.failures == 0 ? 0 : 1;
}
