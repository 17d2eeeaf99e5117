#include <gtest/gtest.h>

#include "kcut/hamiltonian.hpp"
#include "test_support.hpp"

using namespace kcut;

TEST(FromGraph, TriangleCouplings) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(3), 3);
  ASSERT_EQ(H.num_couplings(), 3u);
  for (const auto &[pair, J] : H.couplings())
    EXPECT_EQ(J, (std::vector<double>{0, 1, 1}));
  EXPECT_EQ(H.offset(), 0.0);
}

TEST(FromGraph, EmptyGraph) {
  const auto H = CostHamiltonian::from_graph(Graph(5), 3);
  EXPECT_EQ(H.num_couplings(), 0u);
  EXPECT_EQ(H.offset(), 0.0);
  EXPECT_EQ(H.num_active(), 5);
}

TEST(FromGraph, SingleEdgeMaxCut) {
  const auto H = CostHamiltonian::from_graph(Graph(2, {{0, 1}}), 2);
  EXPECT_EQ(H.coupling(0, 1, 0), 0.0);
  EXPECT_EQ(H.coupling(0, 1, 1), 1.0);
}

TEST(FromGraph, RejectsSingleColor) {
  EXPECT_THROW(CostHamiltonian::from_graph(test::complete_graph(3), 1),
               std::invalid_argument);
}

TEST(Couplings, ReverseOrientationNegatesShift) {
  CostHamiltonian H(3, 3);
  H.add_coupling(0, 2, std::vector<double>{0.5, 1.0, 2.0});
  EXPECT_EQ(H.coupling(2, 0, 1), 2.0);
  EXPECT_EQ(H.coupling(2, 0, 2), 1.0);
  EXPECT_EQ(H.coupling_table(2, 0), (std::vector<double>{0.5, 2.0, 1.0}));

  // Adding through the reverse orientation accumulates into the same table.
  H.add_coupling(2, 0, std::vector<double>{0.0, 1.0, 0.0});
  EXPECT_EQ(H.coupling_table(0, 2), (std::vector<double>{0.5, 1.0, 3.0}));
  EXPECT_EQ(H.num_couplings(), 1u);
  EXPECT_TRUE(H.coupled(2, 0));
  EXPECT_EQ(H.coupling(0, 1, 1), 0.0);
  EXPECT_TRUE(H.coupling_table(0, 1).empty());
}

TEST(Couplings, ConstantTablesBecomeOffset) {
  CostHamiltonian H(3, 2);
  H.add_coupling(0, 1, std::vector<double>{0, 1, 1});
  H.add_coupling(0, 1, std::vector<double>{1, 0, 0});
  EXPECT_EQ(H.num_couplings(), 0u);
  EXPECT_EQ(H.offset(), 1.0);
  EXPECT_TRUE(H.neighbors(0).empty());
}

TEST(Couplings, DeactivateRequiresNoCouplings) {
  auto H = CostHamiltonian::from_graph(test::path_graph(3), 3);
  EXPECT_THROW(H.deactivate(1), std::logic_error);
  H.remove_coupling(0, 1);
  H.remove_coupling(2, 1);
  H.deactivate(1);
  EXPECT_FALSE(H.is_active(1));
  EXPECT_EQ(H.active_qudits(), (std::vector<int>{0, 2}));
  EXPECT_THROW(H.add_coupling(0, 1, std::vector<double>{0, 1, 0}), std::invalid_argument);
}

TEST(Couplings, ShapeErrors) {
  CostHamiltonian H(3, 3);
  EXPECT_THROW(H.add_coupling(1, 1, std::vector<double>{0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(H.add_coupling(0, 1, std::vector<double>{0, 1}), std::invalid_argument);
  EXPECT_THROW(H.coupling(0, 3, 0), std::out_of_range);
}

TEST(Fourier, MaxThreeCutEdge) {
  CostHamiltonian H(3, 2);
  H.add_coupling(0, 1, std::vector<double>{0, 1, 1});
  const auto t = fourier_tables(H);
  const auto &h = t.h.at({0, 1});
  const auto &hh = t.h_hat.at({0, 1});
  // h(a) = (w^a + w^{2a}) / 3 with w = e^{2 pi i / 3}, summed by hand.
  const std::vector<double> h_expected{2.0 / 3, -1.0 / 3, -1.0 / 3};
  const std::vector<double> hh_expected{0, 1, 1};
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(h[a].real(), h_expected[a], 1e-12);
    EXPECT_NEAR(h[a].imag(), 0.0, 1e-12);
    EXPECT_NEAR(hh[a].real(), hh_expected[a], 1e-12);
    EXPECT_NEAR(hh[a].imag(), 0.0, 1e-12);
  }
}

TEST(Fourier, AllZeroHamiltonianHasNoTables) {
  const auto t = fourier_tables(CostHamiltonian(4, 3));
  EXPECT_TRUE(t.h.empty());
  EXPECT_TRUE(t.h_hat.empty());
}

TEST(Fourier, ConjugationSymmetryAndRoundTrip) {
  Rng rng(11);
  for (int k : {2, 3, 4, 5}) {
    for (bool integer : {true, false}) {
      const auto H = test::random_hamiltonian(6, k, rng, integer);
      const auto t = fourier_tables(H);
      for (const auto &[pair, J] : H.couplings()) {
        const auto &h = t.h.at(pair);
        const auto &hh = t.h_hat.at(pair);
        for (int r = 0; r < k; ++r) {
          EXPECT_LT(std::abs(std::conj(h[r]) - h[mod_k(-r, k)]), 1e-12);
          EXPECT_LT(std::abs(hh[r] - J[mod_k(-r, k)]), 1e-12);
        }
      }
    }
  }
}

TEST(Fourier, OrientedLookups) {
  Rng rng(12);
  const auto H = test::random_hamiltonian(5, 4, rng, false, 1.0);
  const auto t = fourier_tables(H);
  for (const auto &[pair, J] : H.couplings()) {
    const auto forward = t.h_hat_oriented(pair.first, pair.second);
    const auto backward = t.h_hat_oriented(pair.second, pair.first);
    const auto J_back = H.coupling_table(pair.second, pair.first);
    for (int b = 0; b < 4; ++b) {
      EXPECT_EQ(backward[b], forward[mod_k(-b, 4)]);
      EXPECT_LT(std::abs(backward[b] - J_back[mod_k(-b, 4)]), 1e-12);
    }
    const auto h_back = t.h_oriented(pair.second, pair.first);
    for (int r = 0; r < 4; ++r)
      EXPECT_EQ(h_back[r], t.h.at(pair)[mod_k(-r, 4)]);
  }
}

TEST(ClassicalEnergy, Triangle) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(3), 3);
  EXPECT_EQ(classical_energy(H, Coloring{0, 1, 2}), 3.0);
  EXPECT_EQ(classical_energy(H, Coloring{0, 0, 0}), 0.0);
}

TEST(ClassicalEnergy, K4BestThreeColoringCutsFive) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(4), 3);
  EXPECT_EQ(test::brute_force_max(H), 5.0);
}

TEST(ClassicalEnergy, GlobalShiftInvariance) {
  Rng rng(13);
  std::uniform_int_distribution<int> color(0, 3);
  for (int t = 0; t < 20; ++t) {
    const auto H = test::random_hamiltonian(6, 4, rng, false);
    Coloring x(6);
    for (int &c : x)
      c = color(rng);
    for (int shift = 1; shift < 4; ++shift) {
      Coloring y = x;
      for (int &c : y)
        c = mod_k(c + shift, 4);
      EXPECT_DOUBLE_EQ(classical_energy(H, x), classical_energy(H, y));
    }
  }
}

TEST(ClassicalEnergy, MissingColorIsAnError) {
  auto H = CostHamiltonian::from_graph(test::path_graph(3), 3);
  EXPECT_THROW(classical_energy(H, Coloring{0, kUnassigned, 1}), std::invalid_argument);
  EXPECT_THROW(classical_energy(H, Coloring{0, 1}), std::invalid_argument);
  H.remove_coupling(1, 2);
  H.deactivate(2);
  EXPECT_EQ(classical_energy(H, Coloring{0, 1, kUnassigned}), 1.0);
}
