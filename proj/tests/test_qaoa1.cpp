#include <gtest/gtest.h>

#include <set>

#include <Eigen/Eigenvalues>

#include "kcut/oracle.hpp"
#include "kcut/qaoa1.hpp"
#include "test_support.hpp"

using namespace kcut;

namespace {

CMatrix kron(const CMatrix &a, const CMatrix &b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Dense C_{u,v} straight from the coupling table: J_{u,v}(d - c) on |c, d>.
CMatrix dense_pair_cost(const CostHamiltonian &H, int u, int v) {
  const int k = H.k();
  CMatrix C = CMatrix::Zero(k * k, k * k);
  for (int c = 0; c < k; ++c)
    for (int d = 0; d < k; ++d)
      C(c * k + d, c * k + d) = H.coupling(u, v, mod_k(d - c, k));
  return C;
}

TwoQuditDensity random_density(int k, Rng &rng) {
  std::normal_distribution<double> gauss;
  CMatrix A(k * k, k * k);
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      A(i, j) = Complex(gauss(rng), gauss(rng));
  CMatrix rho = A * A.adjoint();
  rho /= rho.trace();
  return {k, rho};
}

} // namespace

TEST(BUnitary, ZeroIsIdentity) {
  for (int k : {2, 3, 5}) {
    const CMatrix B = b_unitary(std::vector<double>(k, 0.0));
    EXPECT_LT(test::max_abs(B - CMatrix::Identity(k, k)), 1e-12);
  }
}

TEST(BUnitary, ConstantIsGlobalPhase) {
  const double c = 0.731;
  const CMatrix B = b_unitary(std::vector<double>(4, c));
  EXPECT_LT(test::max_abs(B - std::polar(1.0, c) * CMatrix::Identity(4, 4)), 1e-12);
}

TEST(BUnitary, UnitaryAndNegationIsAdjoint) {
  Rng rng(21);
  for (int k : {2, 3, 4}) {
    for (int t = 0; t < 10; ++t) {
      const Angles a = test::random_angles(k, rng);
      std::vector<double> neg(a.beta);
      for (double &b : neg)
        b = -b;
      const CMatrix B = b_unitary(a.beta);
      EXPECT_LT(test::max_abs(B * b_unitary(neg) - CMatrix::Identity(k, k)), 1e-12);
      EXPECT_LT(test::max_abs(b_unitary(neg) - B.adjoint()), 1e-12);
    }
  }
}

TEST(BUnitary, PhiStatesAreEigenvectors) {
  const std::vector<double> beta{0.1, -0.4, 1.3};
  const CMatrix B = b_unitary(beta);
  for (int a = 0; a < 3; ++a) {
    const Eigen::VectorXcd phi = phi_state(3, a);
    EXPECT_LT((B * phi - std::polar(1.0, beta[a]) * phi).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PiProjector, SumsToIdentity) {
  CMatrix total = CMatrix::Zero(9, 9);
  for (int b = 0; b < 3; ++b)
    total += pi_projector(3, b);
  EXPECT_LT(test::max_abs(total - CMatrix::Identity(9, 9)), 1e-15);
  EXPECT_EQ(pi_projector(3, 1)(0 * 3 + 1, 0 * 3 + 1), Complex(1.0));
  EXPECT_EQ(pi_projector(3, 1)(2 * 3 + 0, 2 * 3 + 0), Complex(1.0));
}

TEST(PairObservable, MatchesCouplingTable) {
  Rng rng(22);
  for (int k : {2, 3, 4}) {
    const auto H = test::random_hamiltonian(5, k, rng, false, 1.0);
    const auto tables = fourier_tables(H);
    for (const auto &[pair, J] : H.couplings()) {
      EXPECT_LT(test::max_abs(pair_observable(tables, pair.first, pair.second) -
                              dense_pair_cost(H, pair.first, pair.second)),
                1e-12);
      EXPECT_LT(test::max_abs(pair_observable(tables, pair.second, pair.first) -
                              dense_pair_cost(H, pair.second, pair.first)),
                1e-12);
    }
  }
}

TEST(EnvChannel, ZeroGammaLeavesStateUnchanged) {
  Rng rng(23);
  const auto H = CostHamiltonian::from_graph(test::complete_graph(3), 3);
  const auto tables = fourier_tables(H);
  const auto eta = random_density(3, rng);
  EXPECT_EQ(env_channel_step(eta, 0, 1, 2, tables, 0.0).matrix, eta.matrix);
}

TEST(EnvChannel, UncoupledEnvironmentLeavesStateUnchanged) {
  Rng rng(24);
  const auto H = CostHamiltonian::from_graph(Graph(4, {{0, 1}}), 3);
  const auto tables = fourier_tables(H);
  const auto eta = random_density(3, rng);
  EXPECT_EQ(env_channel_step(eta, 0, 1, 3, tables, 0.9).matrix, eta.matrix);
}

TEST(EnvChannel, PreservesDiagonalTraceAndHermiticity) {
  Rng rng(25);
  const auto H = test::random_hamiltonian(4, 3, rng, false, 1.0);
  const auto tables = fourier_tables(H);
  const auto eta = random_density(3, rng);
  const auto out = env_channel_step(eta, 0, 1, 2, tables, 0.77);
  EXPECT_LT((out.matrix.diagonal() - eta.matrix.diagonal()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(std::abs(out.matrix.trace() - Complex(1.0)), 0.0, 1e-12);
  EXPECT_LT(test::max_abs(out.matrix - out.matrix.adjoint()), 1e-12);
}

TEST(EnvChannel, RejectsEnvironmentInPair) {
  const auto H = CostHamiltonian::from_graph(test::complete_graph(3), 3);
  const auto tables = fourier_tables(H);
  const TwoQuditDensity eta{3, CMatrix::Identity(9, 9) / 9.0};
  EXPECT_THROW(env_channel_step(eta, 0, 1, 1, tables, 0.5), std::invalid_argument);
}

TEST(ReducedDensity, ZeroGammaIsUniform) {
  Rng rng(26);
  const auto H = test::random_hamiltonian(6, 4, rng, false, 0.8);
  const auto tables = fourier_tables(H);
  const auto rho = reduced_density(tables, H, 0.0, 1, 4);
  EXPECT_LT((rho.matrix.array() - Complex(1.0 / 16)).abs().maxCoeff(), 1e-15);
}

TEST(ReducedDensity, IsAValidState) {
  Rng rng(27);
  for (int k : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const auto H = test::random_hamiltonian(7, k, rng, false);
      const auto tables = fourier_tables(H);
      const double gamma = test::random_angles(k, rng).gamma;
      for (const auto &[pair, J] : H.couplings()) {
        const auto rho = reduced_density(tables, H, gamma, pair.first, pair.second);
        EXPECT_NEAR(std::abs(rho.matrix.trace() - Complex(1.0)), 0.0, 1e-12);
        EXPECT_LT(test::max_abs(rho.matrix - rho.matrix.adjoint()), 1e-10);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix);
        EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
      }
    }
  }
}

TEST(ReducedDensity, MatchesStateVectorPartialTrace) {
  Rng rng(28);
  for (int k : {2, 3}) {
    for (int t = 0; t < 5; ++t) {
      const auto H = test::random_hamiltonian(6, k, rng, false);
      const auto tables = fourier_tables(H);
      Angles a = test::random_angles(k, rng);
      std::fill(a.beta.begin(), a.beta.end(), 0.0);
      const auto psi = statevector_qaoa1(H, a);
      for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v) {
          if (u == v)
            continue;
          const auto engine = reduced_density(tables, H, a.gamma, u, v);
          const auto exact = statevector_reduced_density(psi, u, v);
          EXPECT_LT(test::max_abs(engine.matrix - exact.matrix), 1e-9)
              << "k=" << k << " pair (" << u << "," << v << ")";
        }
    }
  }
}

TEST(ReducedDensity, RejectsInactiveQudit) {
  auto H = CostHamiltonian::from_graph(test::path_graph(3), 3);
  H.remove_coupling(1, 2);
  H.deactivate(2);
  const auto tables = fourier_tables(H);
  EXPECT_THROW(reduced_density(tables, H, 0.3, 0, 2), std::invalid_argument);
  EXPECT_THROW(reduced_density(tables, H, 0.3, 0, 0), std::invalid_argument);
}

TEST(ReducedDensity, ChannelCountIsEnvironmentSize) {
  Rng rng(29);
  const auto H = test::random_hamiltonian(9, 3, rng, true, 0.5);
  const auto tables = fourier_tables(H);
  for (const auto &[pair, J] : H.couplings()) {
    std::size_t calls = 0;
    reduced_density(tables, H, 0.4, pair.first, pair.second, &calls);
    std::set<int> env(H.neighbors(pair.first).begin(), H.neighbors(pair.first).end());
    env.insert(H.neighbors(pair.second).begin(), H.neighbors(pair.second).end());
    env.erase(pair.first);
    env.erase(pair.second);
    EXPECT_EQ(calls, env.size());
    EXPECT_LE(calls, static_cast<std::size_t>(H.degree(pair.first) + H.degree(pair.second)));
  }
}

TEST(Expectation, IdentityGivesOne) {
  Rng rng(30);
  const auto rho = random_density(3, rng);
  EXPECT_NEAR(expectation(rho, test::random_angles(3, rng).beta, CMatrix::Identity(9, 9)),
              1.0, 1e-12);
}

TEST(Expectation, ZeroBetaDiagonalObservable) {
  Rng rng(31);
  const auto rho = random_density(3, rng);
  CMatrix O = CMatrix::Zero(9, 9);
  double expected = 0.0;
  for (int i = 0; i < 9; ++i) {
    O(i, i) = 0.5 * i - 1.0;
    expected += rho.matrix(i, i).real() * O(i, i).real();
  }
  EXPECT_NEAR(expectation(rho, std::vector<double>(3, 0.0), O), expected, 1e-12);
}

TEST(Expectation, UniformStateProjectors) {
  const int k = 4;
  const TwoQuditDensity rho{k, CMatrix::Constant(k * k, k * k, Complex(1.0 / (k * k)))};
  Rng rng(32);
  for (int b = 1; b < k; ++b)
    EXPECT_NEAR(expectation(rho, test::random_angles(k, rng).beta, pi_projector(k, b)),
                1.0 / k, 1e-12);
}

TEST(Expectation, BlockRotationMatchesDenseConjugation) {
  Rng rng(33);
  for (int k : {2, 3, 4, 5}) {
    const auto rho = random_density(k, rng);
    const auto beta = test::random_angles(k, rng).beta;
    CMatrix O(k * k, k * k);
    std::normal_distribution<double> gauss;
    for (int i = 0; i < O.rows(); ++i)
      for (int j = 0; j < O.cols(); ++j)
        O(i, j) = Complex(gauss(rng), gauss(rng));
    const CMatrix BB = kron(b_unitary(beta), b_unitary(beta));
    const Complex dense = (BB * rho.matrix * BB.adjoint() * O).trace();
    EXPECT_LT(std::abs(expectation_complex(rho, beta, O) - dense), 1e-12);
  }
}

TEST(Expectation, DimensionMismatch) {
  const TwoQuditDensity rho{3, CMatrix::Identity(9, 9) / 9.0};
  EXPECT_THROW(expectation(rho, std::vector<double>(2, 0.0), CMatrix::Identity(9, 9)),
               std::invalid_argument);
  EXPECT_THROW(expectation(rho, std::vector<double>(3, 0.0), CMatrix::Identity(4, 4)),
               std::invalid_argument);
}

TEST(Expectation, NonHermitianResidueIsReported) {
  const TwoQuditDensity rho{2, CMatrix::Identity(4, 4) / 4.0};
  const CMatrix O = Complex(0.0, 1.0) * CMatrix::Identity(4, 4);
  EXPECT_THROW(expectation(rho, std::vector<double>(2, 0.0), O), std::logic_error);
}

TEST(ZZExpectation, PhaseBasisIdentityMatchesDenseOperator) {
  Rng rng(34);
  for (int k : {2, 3, 4}) {
    const auto rho = random_density(k, rng);
    const auto beta = test::random_angles(k, rng).beta;
    for (int r = 0; r < k; ++r) {
      CMatrix Zr = CMatrix::Zero(k, k), Zmr = CMatrix::Zero(k, k);
      for (int c = 0; c < k; ++c) {
        Zr(c, c) = root_of_unity(static_cast<long>(r) * c, k);
        Zmr(c, c) = std::conj(Zr(c, c));
      }
      const Complex dense = expectation_complex(rho, beta, kron(Zr, Zmr));
      EXPECT_LT(std::abs(zz_expectation(rho, beta, r) - dense), 1e-12);
    }
  }
}

TEST(Energy, ZeroGammaIsRandomGuessValue) {
  Rng rng(35);
  for (int k : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const Graph g = test::random_graph(8, 0.5, rng);
      const auto H = CostHamiltonian::from_graph(g, k);
      Angles a = test::random_angles(k, rng);
      a.gamma = 0.0;
      EXPECT_NEAR(energy(H, a), g.num_edges() * (1.0 - 1.0 / k), 1e-12);
    }
  }
}

TEST(Energy, MatchesStateVector) {
  Rng rng(36);
  for (int k : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const auto H = test::random_hamiltonian(5, k, rng, false);
      const Angles a = test::random_angles(k, rng);
      EXPECT_NEAR(energy(H, a), statevector_energy(H, statevector_qaoa1(H, a)), 1e-9);
    }
  }
}

TEST(Energy, GlobalBetaShiftInvariance) {
  Rng rng(37);
  const auto H = test::random_hamiltonian(7, 3, rng, false);
  const Angles a = test::random_angles(3, rng);
  Angles shifted = a;
  for (double &b : shifted.beta)
    b += 0.913;
  EXPECT_NEAR(energy(H, a), energy(H, shifted), 1e-12);
}

TEST(Energy, ThreeColorConjugationSymmetry) {
  Rng rng(38);
  for (int t = 0; t < 5; ++t) {
    const auto H = test::random_hamiltonian(7, 3, rng, false);
    const Angles a = test::random_angles(3, rng);
    const Angles mirrored{{-a.beta[0], -a.beta[2], -a.beta[1]}, -a.gamma};
    EXPECT_NEAR(energy(H, a), energy(H, mirrored), 1e-12);
  }
}

TEST(Energy, OffsetAddsThrough) {
  auto H = CostHamiltonian::from_graph(test::complete_graph(4), 3);
  const Angles a{{0.2, -0.1, 0.5}, 0.8};
  const double before = energy(H, a);
  H.add_offset(2.5);
  EXPECT_NEAR(energy(H, a), before + 2.5, 1e-12);
}

TEST(Correlations, DistributionPerPairAndOracleAgreement) {
  Rng rng(39);
  for (int k : {2, 3, 4}) {
    const auto H = test::random_hamiltonian(5, k, rng, false);
    const Angles a = test::random_angles(k, rng);
    const auto M = correlation_table(H, a);
    const auto psi = statevector_qaoa1(H, a);
    ASSERT_EQ(M.size(), H.num_couplings());
    for (const auto &[pair, row] : M) {
      double total = 0.0;
      for (int b = 0; b < k; ++b) {
        total += row[b];
        EXPECT_GE(row[b], -1e-9);
        const Complex exact =
            statevector_expectation(psi, pair.first, pair.second, pi_projector(k, b));
        EXPECT_NEAR(row[b], exact.real(), 1e-9);
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
    }
  }
}

TEST(PairStatistics, AgreesWithSeparateCalls) {
  Rng rng(40);
  const auto H = test::random_hamiltonian(7, 3, rng, false);
  const Angles a = test::random_angles(3, rng);
  const auto stats = pair_statistics(H, a);
  EXPECT_EQ(stats.energy, energy(H, a));
  EXPECT_EQ(stats.correlations, correlation_table(H, a));
}

TEST(Parallel, KernelsAreBitwiseIdentical) {
  Rng rng(41);
  for (int k : {3, 4}) {
    const auto H = test::random_hamiltonian(14, k, rng, false, 0.5);
    const auto tables = fourier_tables(H);
    const auto serial = detail::pair_densities_serial(H, tables, 0.61);
    const auto parallel = detail::pair_densities_omp(H, tables, 0.61);
    ASSERT_EQ(serial.size(), parallel.size());
    for (std::size_t p = 0; p < serial.size(); ++p) {
      EXPECT_EQ(serial[p].pair, parallel[p].pair);
      EXPECT_EQ(serial[p].channel_calls, parallel[p].channel_calls);
      EXPECT_TRUE(serial[p].rho.matrix == parallel[p].rho.matrix);
    }
    const Angles a = test::random_angles(k, rng);
    EXPECT_EQ(energy(H, a, Exec::serial), energy(H, a, Exec::parallel));
    EXPECT_EQ(correlation_table(H, a, Exec::serial), correlation_table(H, a, Exec::parallel));
  }
}
