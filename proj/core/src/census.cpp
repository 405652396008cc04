#include <algorithm>
#include <atomic>
#include <cctype>
#include <istream>
#include <string>
#include <thread>

#include "pstlab/error.hpp"
#include "pstlab/search.hpp"

namespace pstlab {

const char* to_string(Model model) {
  return model == Model::Adjacency ? "adjacency" : "laplacian";
}

Model parse_model(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "adjacency") return Model::Adjacency;
  if (lower == "laplacian") return Model::Laplacian;
  throw ParseError("unknown model '" + std::string(text) + "'");
}

IntegerHamiltonian model_integer_hamiltonian(const Graph& g, Model model) {
  return model == Model::Adjacency ? adjacency_hamiltonian(g) : laplacian_hamiltonian(g);
}

SingleExcitationHamiltonian model_hamiltonian(const Graph& g, Model model) {
  return model_integer_hamiltonian(g, model).to_complex();
}

bool record_less(const SearchRecord& a, const SearchRecord& b) {
  return std::tie(a.graph6, a.model, a.source, a.target) <
         std::tie(b.graph6, b.model, b.source, b.target);
}

namespace {

struct GraphOutcome {
  std::vector<SearchRecord> records;
  std::vector<CensusIssue> undecided;
  std::vector<CensusIssue> failures;
};

GraphOutcome analyse(const Graph& g, const CensusOptions& options) {
  GraphOutcome out;
  const std::string id = encode_graph6(g);
  const bool bipartite = bipartite_coloring(g).valid;
  for (Model model : options.models) {
    try {
      const IntegerHamiltonian exact = model_integer_hamiltonian(g, model);
      const SingleExcitationHamiltonian h = exact.to_complex();
      const SpectralDecomposition dec = decompose(h, options.check.grouping_tol);
      std::optional<bool> integral;
      for (Vertex a = 0; a < g.n(); ++a) {
        for (Vertex b = a + 1; b < g.n(); ++b) {
          const TransferVerdict v = check_transfer(h, dec, a, b, options.check);
          if (v.status == TransferStatus::Undecided) {
            out.undecided.push_back({id, model, a, b, v.reason});
            continue;
          }
          if (v.status != TransferStatus::Perfect) continue;
          if (!integral) integral = is_integral_spectrum(exact).integral;
          const RateReport rate = rate_report(h, dec, v, options.zeros);
          SearchRecord r;
          r.graph6 = id;
          r.n = g.n();
          r.model = model;
          r.source = a;
          r.target = b;
          r.t0 = v.t0;
          r.transfer_phase = v.transfer_phase;
          r.D = rate.distance;
          r.M = rate.supported_eigenspaces;
          r.l = rate.zero_count;
          r.integral_spectrum = *integral;
          r.bipartite = bipartite;
          r.regular = g.is_regular();
          r.max_degree = g.max_degree();
          out.records.push_back(std::move(r));
        }
      }
    } catch (const std::exception& e) {
      out.failures.push_back({id, model, 0, 0, e.what()});
    }
  }
  return out;
}

}  // namespace

CensusResult census(std::span<const Graph> graphs, const CensusOptions& options) {
  std::vector<GraphOutcome> outcomes(graphs.size());
  std::size_t workers = options.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(graphs.size(), 1));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < graphs.size(); i = next++) {
      outcomes[i] = analyse(graphs[i], options);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  CensusResult result;
  for (auto& o : outcomes) {
    std::move(o.records.begin(), o.records.end(), std::back_inserter(result.records));
    std::move(o.undecided.begin(), o.undecided.end(), std::back_inserter(result.undecided));
    std::move(o.failures.begin(), o.failures.end(), std::back_inserter(result.failures));
  }
  std::stable_sort(result.records.begin(), result.records.end(), record_less);
  return result;
}

Graph6Batch read_graph6_stream(std::istream& in) {
  Graph6Batch batch;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      batch.graphs.push_back(parse_graph6(line));
    } catch (const Error& e) {
      batch.failures.emplace_back(number, e.what());
    }
  }
  return batch;
}

}  // namespace pstlab
