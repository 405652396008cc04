#include <cmath>

#include <gtest/gtest.h>

#include "pstlab/error.hpp"
#include "pstlab/hamiltonian.hpp"
#include "test_support.hpp"

namespace pstlab {
namespace {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (auto v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

void expect_exactly_hermitian(const SingleExcitationHamiltonian& h) {
  for (std::size_t r = 0; r < h.n(); ++r) {
    EXPECT_EQ(h(r, r).imag(), 0.0);
    for (std::size_t c = 0; c < h.n(); ++c) EXPECT_EQ(h(r, c), std::conj(h(c, r)));
  }
}

TEST(AdjacencyTest, Examples) {
  EXPECT_EQ(adjacency_hamiltonian(complete_graph(2)).entries(), int_matrix({{0, 1}, {1, 0}}));
  EXPECT_EQ(adjacency_hamiltonian(path_graph(3)).entries(),
            int_matrix({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(adjacency_hamiltonian(cycle_graph(4)).entries(),
            int_matrix({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}));
}

TEST(LaplacianTest, Examples) {
  EXPECT_EQ(laplacian_hamiltonian(complete_graph(2)).entries(), int_matrix({{1, -1}, {-1, 1}}));
  EXPECT_EQ(laplacian_hamiltonian(complete_graph(3)).entries(),
            int_matrix({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
  EXPECT_EQ(laplacian_hamiltonian(Graph(3)).entries(), IntMatrix::Zero(3, 3));
}

TEST(IntegerHamiltonianTest, RowSumsTracesAndDegreesOnAllGraphsUpToSeven) {
  for (const Graph& g : testing::connected_graphs_up_to(7)) {
    const auto a = adjacency_hamiltonian(g);
    const auto l = laplacian_hamiltonian(g);
    EXPECT_EQ(a.trace(), 0);
    EXPECT_TRUE((l.entries().rowwise().sum().array() == 0).all());
    std::int64_t degree_sum = 0;
    for (auto d : g.degrees()) degree_sum += static_cast<std::int64_t>(d);
    EXPECT_EQ(l.trace(), degree_sum);
    expect_exactly_hermitian(l.to_complex());
  }
}

TEST(IntegerHamiltonianTest, RejectsAsymmetric) {
  EXPECT_THROW(IntegerHamiltonian(int_matrix({{0, 1}, {0, 0}})), NotHermitian);
}

TEST(WeightedHamiltonianTest, AsymmetricFiveChain) {
  const auto j = asymmetric_five_chain_couplings(1.0);
  EXPECT_DOUBLE_EQ(j[0], std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(j[1], 1.0);
  EXPECT_DOUBLE_EQ(j[2], 1.5);
  EXPECT_DOUBLE_EQ(j[3], 0.5);
  const auto h = chain_hamiltonian(j);
  EXPECT_TRUE(h.is_real());
  EXPECT_EQ(h.support_graph(), path_graph(5));
  EXPECT_DOUBLE_EQ(h(0, 1).real(), std::sqrt(1.5));
  EXPECT_DOUBLE_EQ(h(4, 3).real(), 0.5);
  expect_exactly_hermitian(h);
}

TEST(WeightedHamiltonianTest, UniformCouplingsMatchAdjacency) {
  for (const Graph& g : testing::connected_graphs_up_to(5)) {
    CouplingMap j;
    for (const auto& e : g.edges()) j[e] = 1.0;
    const auto h = weighted_hamiltonian(g, j);
    EXPECT_EQ(h.matrix(), adjacency_hamiltonian(g).to_complex().matrix());
    EXPECT_TRUE(h.is_real());
  }
}

TEST(WeightedHamiltonianTest, ComplexCoupling) {
  const auto h = weighted_hamiltonian(complete_graph(2), {{Edge{0, 1}, Complex(0.0, 1.0)}});
  EXPECT_EQ(h(0, 1), Complex(0.0, 1.0));
  EXPECT_EQ(h(1, 0), Complex(0.0, -1.0));
  EXPECT_FALSE(h.is_real());
  expect_exactly_hermitian(h);

  // Reversed key orientation stores the conjugate in the upper triangle.
  const auto r = weighted_hamiltonian(complete_graph(2), {{Edge{1, 0}, Complex(0.0, 1.0)}});
  EXPECT_EQ(r(0, 1), Complex(0.0, -1.0));
}

TEST(WeightedHamiltonianTest, FieldsAndErrors) {
  const Graph p3 = path_graph(3);
  const auto h = weighted_hamiltonian(p3, {{Edge{0, 1}, 2.0}}, {{2, -0.5}});
  EXPECT_EQ(h(2, 2), Complex(-0.5, 0.0));
  EXPECT_EQ(h.support_graph(), Graph(3, {{0, 1}}));
  EXPECT_FALSE(h.has_zero_diagonal());
  EXPECT_THROW(weighted_hamiltonian(p3, {{Edge{0, 2}, 1.0}}), EdgeNotInGraph);
  EXPECT_THROW(weighted_hamiltonian(p3, {}, {{3, 1.0}}), IndexOutOfRange);
}

TEST(FromMatrixTest, ValidatesAndSymmetrises) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(-1, 0);
  const auto h = SingleExcitationHamiltonian::from_matrix(m);
  EXPECT_FALSE(h.is_real());
  expect_exactly_hermitian(h);

  m(1, 0) = Complex(0.5, 0.25);
  EXPECT_THROW(SingleExcitationHamiltonian::from_matrix(m), NotHermitian);
  EXPECT_THROW(SingleExcitationHamiltonian::from_matrix(ComplexMatrix(2, 3)), NotHermitian);

  m(1, 0) = Complex(0.5, -0.25 + 1e-14);
  expect_exactly_hermitian(SingleExcitationHamiltonian::from_matrix(m));
}

TEST(CouplingIdentityTest, Examples) {
  EXPECT_TRUE(check_coupling_identity_5chain({std::sqrt(1.5), 1.0, 1.5, 0.5}));
  EXPECT_TRUE(check_coupling_identity_5chain({1.0, 1.0, 1.0, 1.0}));
  EXPECT_FALSE(check_coupling_identity_5chain({2.0, 1.0, 1.0, 1.0}));
  EXPECT_THROW(check_coupling_identity_5chain({1.0, 0.0, 1.0, 1.0}), NonPositiveCoupling);
  EXPECT_THROW(check_coupling_identity_5chain({1.0, -1.0, 1.0, 1.0}), NonPositiveCoupling);
  EXPECT_THROW(check_coupling_identity_5chain({1.0, NAN, 1.0, 1.0}), NonPositiveCoupling);
}

TEST(CouplingIdentityTest, HoldsAcrossTheRealWindow) {
  for (double j2 = 0.95; j2 < 1.58; j2 += 0.01) {
    const auto j = asymmetric_five_chain_couplings(j2);
    EXPECT_TRUE(check_coupling_identity_5chain(j)) << j2;
  }
  EXPECT_THROW(asymmetric_five_chain_couplings(0.8), NonPositiveCoupling);
  EXPECT_THROW(asymmetric_five_chain_couplings(1.6), NonPositiveCoupling);
}

TEST(StandardChainTest, Couplings) {
  const auto h = standard_chain(5);
  EXPECT_DOUBLE_EQ(h(0, 1).real(), 2.0);
  EXPECT_DOUBLE_EQ(h(1, 2).real(), std::sqrt(6.0));
  EXPECT_DOUBLE_EQ(h(2, 3).real(), std::sqrt(6.0));
  EXPECT_DOUBLE_EQ(h(3, 4).real(), 2.0);
}

}  // namespace
}  // namespace pstlab
