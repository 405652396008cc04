#pragma once

#include <string>
#include <string_view>

#include "pstlab/graph.hpp"
#include "pstlab/hamiltonian.hpp"

namespace pstlab {

// {"n": int, "edges": [[u, v], ...]}. Throws ParseError.
Graph graph_from_json(std::string_view text);
std::string graph_to_json(const Graph& g);

// {"n": int, "couplings": [[u, v, re, im], ...], "fields": [b0, ...]}.
// A coupling sets entry (u, v) to re + i im and (v, u) to its conjugate;
// "fields" may be omitted. Throws ParseError.
SingleExcitationHamiltonian hamiltonian_from_json(std::string_view text);
std::string hamiltonian_to_json(const SingleExcitationHamiltonian& h);

// Dense matrix: n rows of 2n comma-separated numbers, re/im interleaved.
// Lines starting with '#' and blank lines are ignored. Throws ParseError,
// or NotHermitian if the matrix is not Hermitian to 1e-12 relative.
SingleExcitationHamiltonian hamiltonian_from_csv(std::string_view text);

}  // namespace pstlab
