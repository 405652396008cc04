#include "pstlab/io.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"
#include "pstlab/error.hpp"

namespace pstlab {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::size_t vertex_count(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw ParseError("expected an object with a positive integer field \"n\"");
  }
  return j["n"].get<std::size_t>();
}

std::size_t index_in(const json& value, std::size_t n, const char* what) {
  if (!value.is_number_integer() || value.get<long long>() < 0 ||
      value.get<std::size_t>() >= n) {
    throw ParseError(std::string(what) + " index out of range");
  }
  return value.get<std::size_t>();
}

double number(const json& value, const char* what) {
  if (!value.is_number()) throw ParseError(std::string(what) + " must be a number");
  return value.get<double>();
}

}  // namespace

Graph graph_from_json(std::string_view text) {
  const json j = parse_json(text);
  const std::size_t n = vertex_count(j);
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be [u, v]");
      const std::size_t u = index_in(e[0], n, "edge");
      const std::size_t v = index_in(e[1], n, "edge");
      if (u == v) throw ParseError("self-loop in edge list");
      edges.push_back({u, v});
    }
  }
  return Graph(n, edges);
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n();
  j["edges"] = json::array();
  for (const auto& e : g.edges()) j["edges"].push_back({e.u, e.v});
  return j.dump();
}

SingleExcitationHamiltonian hamiltonian_from_json(std::string_view text) {
  const json j = parse_json(text);
  const std::size_t n = vertex_count(j);
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  if (j.contains("couplings")) {
    if (!j["couplings"].is_array()) throw ParseError("\"couplings\" must be an array");
    for (const auto& c : j["couplings"]) {
      if (!c.is_array() || (c.size() != 3 && c.size() != 4)) {
        throw ParseError("each coupling must be [u, v, re] or [u, v, re, im]");
      }
      const std::size_t u = index_in(c[0], n, "coupling");
      const std::size_t v = index_in(c[1], n, "coupling");
      if (u == v) throw ParseError("coupling on the diagonal; use \"fields\"");
      const Complex value(number(c[2], "coupling"), c.size() == 4 ? number(c[3], "coupling") : 0.0);
      m(u, v) = value;
      m(v, u) = std::conj(value);
    }
  }
  if (j.contains("fields")) {
    const auto& f = j["fields"];
    if (!f.is_array() || f.size() != n) throw ParseError("\"fields\" must list n numbers");
    for (std::size_t i = 0; i < n; ++i) m(i, i) = number(f[i], "field");
  }
  return SingleExcitationHamiltonian::from_matrix(m, 0.0);
}

std::string hamiltonian_to_json(const SingleExcitationHamiltonian& h) {
  nlohmann::ordered_json j;
  j["n"] = h.n();
  j["couplings"] = json::array();
  for (std::size_t u = 0; u < h.n(); ++u) {
    for (std::size_t v = u + 1; v < h.n(); ++v) {
      const Complex c = h(u, v);
      if (c != Complex(0.0, 0.0)) j["couplings"].push_back({u, v, c.real(), c.imag()});
    }
  }
  j["fields"] = json::array();
  for (std::size_t i = 0; i < h.n(); ++i) j["fields"].push_back(h(i, i).real());
  return j.dump();
}

SingleExcitationHamiltonian hamiltonian_from_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) throw ParseError("empty CSV cell");
      const std::string trimmed = cell.substr(b, e - b + 1);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
      if (ec != std::errc() || ptr != trimmed.data() + trimmed.size()) {
        throw ParseError("bad number '" + trimmed + "' in CSV");
      }
      row.push_back(value);
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("empty CSV matrix");
  const auto dim = static_cast<Eigen::Index>(n);
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != 2 * n) {
      throw ParseError("CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                       " values, expected " + std::to_string(2 * n));
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Complex(rows[r][2 * c], rows[r][2 * c + 1]);
  }
  return SingleExcitationHamiltonian::from_matrix(m, 1e-12);
}

}  // namespace pstlab
