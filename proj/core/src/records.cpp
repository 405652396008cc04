#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"

#include "pstlab/error.hpp"
#include "pstlab/search.hpp"

namespace pstlab {

namespace {

using nlohmann::json;

SearchRecord from_json(const json& j) {
  SearchRecord r;
  r.graph6 = j.at("graph6").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.model = parse_model(j.at("model").get<std::string>());
  r.source = j.at("source").get<std::size_t>();
  r.target = j.at("target").get<std::size_t>();
  r.t0 = j.at("t0").get<double>();
  const auto& phase = j.at("transfer_phase");
  if (!phase.is_array() || phase.size() != 2) throw ParseError("transfer_phase must be [re, im]");
  r.transfer_phase = {phase[0].get<double>(), phase[1].get<double>()};
  r.D = j.at("D").get<std::size_t>();
  r.M = j.at("M").get<std::size_t>();
  r.l = j.at("l").get<std::size_t>();
  r.integral_spectrum = j.at("integral_spectrum").get<bool>();
  r.bipartite = j.at("bipartite").get<bool>();
  r.regular = j.at("regular").get<bool>();
  r.max_degree = j.at("max_degree").get<std::size_t>();
  return r;
}

std::string record_line(const SearchRecord& r) {
  nlohmann::ordered_json j;
  j["graph6"] = r.graph6;
  j["n"] = r.n;
  j["model"] = to_string(r.model);
  j["source"] = r.source;
  j["target"] = r.target;
  j["t0"] = r.t0;
  j["transfer_phase"] = {r.transfer_phase.real(), r.transfer_phase.imag()};
  j["D"] = r.D;
  j["M"] = r.M;
  j["l"] = r.l;
  j["integral_spectrum"] = r.integral_spectrum;
  j["bipartite"] = r.bipartite;
  j["regular"] = r.regular;
  j["max_degree"] = r.max_degree;
  return j.dump();
}

}  // namespace

void write_records(std::span<const SearchRecord> records, std::ostream& out) {
  for (const auto& r : records) out << record_line(r) << '\n';
  if (!out) throw IoError("failed writing records");
}

void write_records(std::span<const SearchRecord> records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_records(records, out);
}

std::vector<SearchRecord> read_records(std::istream& in) {
  std::vector<SearchRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      out.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw MalformedRecord(number, e.what());
    } catch (const ParseError& e) {
      throw MalformedRecord(number, e.what());
    }
  }
  if (in.bad()) throw IoError("failed reading records");
  return out;
}

std::vector<SearchRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_records(in);
}

void write_records_csv(std::span<const SearchRecord> records, std::ostream& out) {
  out << "graph6,n,model,source,target,t0,phase_re,phase_im,D,M,l,integral_spectrum,bipartite,"
         "regular,max_degree\n";
  std::ostringstream row;
  for (const auto& r : records) {
    row.str("");
    row << std::setprecision(17);
    // graph6 may contain characters a spreadsheet treats specially.
    std::string quoted = "\"";
    for (char c : r.graph6) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
    quoted += '"';
    row << quoted << ',' << r.n << ',' << to_string(r.model) << ',' << r.source << ','
        << r.target << ',' << r.t0 << ',' << r.transfer_phase.real() << ','
        << r.transfer_phase.imag() << ',' << r.D << ',' << r.M << ',' << r.l << ','
        << (r.integral_spectrum ? "true" : "false") << ',' << (r.bipartite ? "true" : "false")
        << ',' << (r.regular ? "true" : "false") << ',' << r.max_degree << '\n';
    out << row.str();
  }
  if (!out) throw IoError("failed writing CSV");
}

}  // namespace pstlab
