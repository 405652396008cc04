#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"
#include "pstlab/limits.hpp"
#include "pstlab/options.hpp"

namespace pstlab {

enum class Model { Adjacency, Laplacian };

const char* to_string(Model model);
// Accepts "adjacency" / "laplacian" (case-insensitive); throws ParseError.
Model parse_model(std::string_view text);

SingleExcitationHamiltonian model_hamiltonian(const Graph& g, Model model);
IntegerHamiltonian model_integer_hamiltonian(const Graph& g, Model model);

// One perfect transfer found by the census, source < target.
struct SearchRecord {
  std::string graph6;
  std::size_t n = 0;
  Model model = Model::Adjacency;
  Vertex source = 0;
  Vertex target = 0;
  double t0 = 0.0;
  Complex transfer_phase{1.0, 0.0};
  std::size_t D = 0;
  std::size_t M = 0;
  std::size_t l = 0;
  bool integral_spectrum = false;
  bool bipartite = false;
  bool regular = false;
  std::size_t max_degree = 0;

  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

// Order used for deterministic output: (graph6, model, source, target).
bool record_less(const SearchRecord& a, const SearchRecord& b);

// Lexicographically smallest column-major upper-triangle bit string over all
// vertex relabelings, packed most-significant-first. Needs n <= 11.
std::uint64_t canonical_code(const Graph& g);
// The relabeled graph realising canonical_code(g).
Graph canonical_form(const Graph& g);
Graph graph_from_code(std::size_t n, std::uint64_t code);

inline constexpr std::size_t kMaxEnumerationOrder = 7;

// One canonical representative per isomorphism class of connected graphs
// on n vertices, ordered by canonical code. Throws NTooLarge for n > 7 and
// InvalidGraph for n == 0.
std::vector<Graph> enumerate_connected_graphs(std::size_t n);

struct CensusOptions {
  std::set<Model> models{Model::Adjacency, Model::Laplacian};
  CheckOptions check;
  ZeroScanOptions zeros;
  // 0 means std::thread::hardware_concurrency().
  std::size_t workers = 0;
};

struct CensusIssue {
  std::string graph6;
  Model model = Model::Adjacency;
  Vertex source = 0;
  Vertex target = 0;
  std::string message;
};

struct CensusResult {
  std::vector<SearchRecord> records;      // sorted with record_less
  std::vector<CensusIssue> undecided;
  std::vector<CensusIssue> failures;      // graphs skipped after an exception
};

// check_transfer on every unordered pair of every graph under every model.
CensusResult census(std::span<const Graph> graphs, const CensusOptions& options = {});

struct Graph6Batch {
  std::vector<Graph> graphs;
  // (1-based line, message) for lines that failed to parse.
  std::vector<std::pair<std::size_t, std::string>> failures;
};

// One graph6 string per line; blank lines are skipped.
Graph6Batch read_graph6_stream(std::istream& in);

// JSON Lines, one record per line. Throws IoError / MalformedRecord.
void write_records(std::span<const SearchRecord> records, std::ostream& out);
void write_records(std::span<const SearchRecord> records, const std::filesystem::path& path);
std::vector<SearchRecord> read_records(std::istream& in);
std::vector<SearchRecord> read_records(const std::filesystem::path& path);

// Spreadsheet export with the phase split into phase_re, phase_im.
void write_records_csv(std::span<const SearchRecord> records, std::ostream& out);

}  // namespace pstlab
