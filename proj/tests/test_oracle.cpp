#include <gtest/gtest.h>

#include "kcut/oracle.hpp"
#include "test_support.hpp"

using namespace kcut;

namespace {

// B^{(x)n} diag(e^{i gamma (C(x) - offset)}) |+>^{(x)n} as one dense product.
Eigen::VectorXcd dense_qaoa1(const CostHamiltonian &H, const Angles &a) {
  const int k = H.k(), n = H.n();
  const CMatrix B = b_unitary(a.beta);
  CMatrix U = CMatrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    CMatrix next(U.rows() * k, U.cols() * k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        next.block(i * U.rows(), j * U.cols(), U.rows(), U.cols()) = B(i, j) * U;
    U = next;
  }
  const long dim = U.rows();
  Eigen::VectorXcd psi(dim);
  Coloring x(n);
  for (long idx = 0; idx < dim; ++idx) {
    long c = idx;
    for (int q = 0; q < n; ++q) {
      x[q] = c % k;
      c /= k;
    }
    psi(idx) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                          a.gamma * (classical_energy(H, x) - H.offset()));
  }
  return U * psi;
}

} // namespace

TEST(StateVector, ZeroAnglesGiveUniformAmplitudes) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(4), 3);
  const auto psi = statevector_qaoa1(H, {{0, 0, 0}, 0.0});
  ASSERT_EQ(psi.amplitudes.size(), 81u);
  for (Complex amp : psi.amplitudes)
    EXPECT_LT(std::abs(amp - Complex(1.0 / 9.0)), 1e-15);
}

TEST(StateVector, NormIsPreserved) {
  Rng rng(81);
  for (int k : {2, 3, 4}) {
    const auto H = test::random_hamiltonian(6, k, rng, false);
    const auto psi = statevector_qaoa1(H, test::random_angles(k, rng));
    double norm = 0.0;
    for (Complex amp : psi.amplitudes)
      norm += std::norm(amp);
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
}

TEST(StateVector, MatchesDenseKroneckerConstruction) {
  Rng rng(82);
  for (auto [n, k] : {std::pair{3, 2}, {4, 2}, {3, 3}, {4, 3}, {3, 4}}) {
    const auto H = test::random_hamiltonian(n, k, rng, false, 0.8);
    const Angles a = test::random_angles(k, rng);
    const auto psi = statevector_qaoa1(H, a);
    const auto dense = dense_qaoa1(H, a);
    for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
      EXPECT_LT(std::abs(psi.amplitudes[i] - dense(i)), 1e-12);
  }
}

TEST(StateVector, SingleEdgeProjectorMatchesEngine) {
  const auto H = CostHamiltonian::from_graph(Graph(2, {{0, 1}}), 2);
  const Angles a{{0.3, -0.8}, 0.9};
  const auto psi = statevector_qaoa1(H, a);
  const auto M = correlation_table(H, a);
  EXPECT_NEAR(statevector_expectation(psi, 0, 1, pi_projector(2, 1)).real(), M.at({0, 1})[1],
              1e-12);
}

TEST(StateVector, ExpectationBasics) {
  Rng rng(83);
  const auto H = test::random_hamiltonian(5, 3, rng, false);
  const auto psi = statevector_qaoa1(H, test::random_angles(3, rng));
  EXPECT_NEAR(std::abs(statevector_expectation(psi, 1, 3, CMatrix::Identity(9, 9)) - 1.0),
              0.0, 1e-12);
  Complex total = 0.0;
  for (int b = 0; b < 3; ++b)
    total += statevector_expectation(psi, 4, 0, pi_projector(3, b));
  EXPECT_NEAR(std::abs(total - 1.0), 0.0, 1e-12);
  EXPECT_THROW(statevector_expectation(psi, 0, 1, CMatrix::Identity(4, 4)),
               std::invalid_argument);
  EXPECT_THROW(statevector_reduced_density(psi, 0, 5), std::out_of_range);
}

TEST(StateVector, OffsetIsAGlobalPhase) {
  Rng rng(84);
  auto H = test::random_hamiltonian(5, 3, rng, false);
  const Angles a = test::random_angles(3, rng);
  const auto before = statevector_qaoa1(H, a);
  const double e_before = statevector_energy(H, before);
  H.add_offset(3.25);
  const auto after = statevector_qaoa1(H, a);
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v)
      if (u != v)
        EXPECT_LT(test::max_abs(statevector_reduced_density(before, u, v).matrix -
                                statevector_reduced_density(after, u, v).matrix),
                  1e-12);
  EXPECT_NEAR(statevector_energy(H, after), e_before + 3.25, 1e-12);
}

TEST(StateVector, SizeGuard) {
  const auto H = CostHamiltonian::from_graph(test::path_graph(13), 3);
  EXPECT_THROW(statevector_qaoa1(H, {{0, 0, 0}, 0.1}), std::length_error);
}

TEST(ExactMaxCut, SmallGraphs) {
  EXPECT_EQ(exact_max_kcut(CostHamiltonian::from_graph(test::complete_graph(3), 3), 3).value,
            3.0);
  EXPECT_EQ(exact_max_kcut(CostHamiltonian::from_graph(test::complete_graph(4), 3), 3).value,
            5.0);
  for (int k : {2, 3, 4}) {
    const Graph g = test::cycle_graph(8);
    const auto r = exact_max_kcut(CostHamiltonian::from_graph(g, k), k);
    EXPECT_EQ(r.value, 8.0);
    EXPECT_EQ(cut_value(g, r.x), 8);
  }
}

TEST(ExactMaxCut, AgreesWithUnpinnedEnumeration) {
  Rng rng(85);
  for (int t = 0; t < 10; ++t) {
    const auto H = test::random_hamiltonian(6, 3, rng, false);
    const auto r = exact_max_kcut(H, 3);
    EXPECT_NEAR(r.value, test::brute_force_max(H), 1e-12);
    EXPECT_NEAR(classical_energy(H, r.x), r.value, 1e-12);
  }
}

TEST(ExactMaxCut, Guards) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(3), 3);
  EXPECT_THROW(exact_max_kcut(H, 4), std::invalid_argument);
  EXPECT_THROW(exact_max_kcut(CostHamiltonian::from_graph(test::path_graph(16), 3), 3),
               std::length_error);
}
