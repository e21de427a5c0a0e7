#include <gtest/gtest.h>

#include <Eigen/Sparse>

#include "fqpw/statesim/momentum.hpp"
#include "fqpw/statesim/qubitization.hpp"
#include "test_support.hpp"

using namespace fqpw;
using fqpw::testing::cubic_material;
using fqpw::testing::ortho_material;

namespace {

Atom atom(int Z, double x, double y, double z) {
  Atom a;
  a.symbol = "X";
  a.Z = Z;
  a.R = Vec3(x, y, z);
  return a;
}

LcuOptions opts(AmplificationMode aa, int bits = 6) {
  LcuOptions o;
  o.aa = aa;
  o.momentum_bits = bits;
  return o;
}

Eigen::VectorXd spectrum(const Qubitization& q) {
  auto H = build_dense_hamiltonian(q.material(), q.grid(), q.eta(), q.system_dim());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

TEST(Prep, TargetNormalizedAndMomentumMass) {
  auto mat = cubic_material(0.8, {atom(1, 0.3, 0.2, 0.1)}, 2);
  PlaneWaveGrid grid(2);
  Qubitization q(mat, grid, opts(AmplificationMode::off));
  auto st = q.target_state();
  EXPECT_NEAR(st.amplitudes.squaredNorm(), 1.0, 1e-12);
  auto iso = q.prep_operator();
  EXPECT_EQ(iso.matrix.cols(), 1);

  // mass on j = 0 equals the momentum-state success probability
  double j0 = 0.0;
  for (const auto& [s, t] : q.support())
    if (s.j == 0) j0 += t * t;
  const double p = momentum_success_probability(2, std::uint64_t(1) << 6, inequality_weights(mat.cell));
  EXPECT_NEAR(j0, p, 1e-12);
  EXPECT_NEAR(q.norms().p_nu, p, 1e-12);
}

TEST(Prep, RegisterMarginals) {
  auto mat = ortho_material(0.6, 0.7, 0.8, {atom(2, 0.3, 0.2, 0.1), atom(1, 0.1, 0.2, 0.3)}, 2);
  PlaneWaveGrid grid(3);
  Qubitization q(mat, grid, opts(AmplificationMode::on));
  const auto& n = q.norms();
  double a1 = 0.0, m0 = 0.0, l0 = 0.0, f0 = 0.0;
  for (const auto& [s, t] : q.support()) {
    if (s.a == 1) a1 += t * t;
    if (s.m == 0) m0 += t * t;
    if (s.l == 0) l0 += t * t;
    if (s.f == 0) f0 += t * t;
  }
  const double w = n.lambda_U + n.lambda_V * 2.0 / 1.0;
  EXPECT_NEAR(a1, w / (n.p_amp * n.lambda_total), 1e-12);
  EXPECT_NEAR(m0, n.lambda_U / w, 1e-12);
  EXPECT_NEAR(l0, 2.0 / 3.0, 1e-12);
  const double inv = 1 / 0.36 + 1 / 0.49 + 1 / 0.64;
  EXPECT_NEAR(f0, (1 / 0.36) / inv, 1e-12);
}

TEST(Select, InvolutionOneParticle) {
  auto mat = cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1);
  for (auto aa : {AmplificationMode::off, AmplificationMode::on}) {
    Qubitization q(mat, PlaneWaveGrid(2), opts(aa));
    auto c = q.check_select();
    EXPECT_EQ(c.states, q.select_space_dim());
    EXPECT_EQ(c.involution_failures, 0u);
    EXPECT_LT(c.max_phase_deviation, 1e-12);
  }
}

TEST(Select, InvolutionTwoParticles) {
  auto mat = cubic_material(0.8, {atom(1, 0.4, 0.7, 0.1)}, 2);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::off));
  auto c = q.check_select();
  EXPECT_EQ(c.involution_failures, 0u);
  EXPECT_LT(c.max_phase_deviation, 1e-12);
}

TEST(Select, SparseMatrixUnitaryAndHermitian) {
  auto mat = cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::on));
  auto M = q.select_sparse();
  Eigen::SparseMatrix<cplx> Md = M.adjoint();
  Eigen::SparseMatrix<cplx> G = Md * M;
  Eigen::SparseMatrix<cplx> I(M.rows(), M.cols());
  I.setIdentity();
  EXPECT_LT((G - I).norm(), 1e-10);
  EXPECT_LT((Md - M).norm(), 1e-10);
}

struct BlockCase {
  const char* name;
  Material mat;
  int n_p;
  AmplificationMode aa;
};

class BlockEncoding : public ::testing::TestWithParam<int> {};

static std::vector<BlockCase> block_cases() {
  return {
      {"cubic_eta1_off", cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1), 2, AmplificationMode::off},
      {"cubic_eta1_on", cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1), 2, AmplificationMode::on},
      {"cubic_eta2_off", cubic_material(0.8, {atom(2, 0.4, 0.7, 0.1)}, 2), 2, AmplificationMode::off},
      {"ortho_eta2_on",
       ortho_material(2.0, 2.7, 3.1, {atom(1, 0.4, 0.7, 1.1), atom(3, 1.5, 0.2, 2.9)}, 2), 2,
       AmplificationMode::on},
      {"ortho_eta1_np3_off", ortho_material(2.0, 2.7, 3.1, {atom(2, 0.4, 0.7, 1.1)}, 1), 3,
       AmplificationMode::off},
  };
}

TEST_P(BlockEncoding, MatchesShiftedHamiltonian) {
  const auto c = block_cases()[std::size_t(GetParam())];
  Qubitization q(c.mat, PlaneWaveGrid(c.n_p), opts(c.aa));
  auto B = q.block_encoding();
  auto E = q.expected_block();
  EXPECT_LT((B - E).cwiseAbs().maxCoeff(), 1e-10) << c.name;
  EXPECT_LT((B - B.adjoint()).cwiseAbs().maxCoeff(), 1e-12) << c.name;
}

INSTANTIATE_TEST_SUITE_P(Cases, BlockEncoding, ::testing::Range(0, 5));

TEST(BlockEncodingFault, HalvedLambdaDetected) {
  auto mat = cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::off));
  auto B = q.block_encoding();
  EXPECT_GT((B - q.expected_block(0.5)).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Walk, SpectrumAndReflectionOneParticle) {
  auto mat = cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1);
  for (auto aa : {AmplificationMode::off, AmplificationMode::on}) {
    Qubitization q(mat, PlaneWaveGrid(2), opts(aa));
    auto w = walk_operator(q);
    auto chk = check_walk(w, spectrum(q));
    EXPECT_LT(chk.max_eigen_deviation, 1e-9);
    EXPECT_LT(chk.unitarity_deviation, 1e-9);
    EXPECT_LT(chk.reflection_deviation_1, 1e-9);
    EXPECT_LT(chk.reflection_deviation_2, 1e-9);
  }
}

TEST(Walk, GramAndSpectralFormsAgree) {
  auto mat = ortho_material(2.0, 2.7, 3.1, {atom(1, 0.4, 0.7, 1.1)}, 1);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::on));
  const auto B = q.block_encoding();
  const auto g = walk_operator(B, q.norms().lambda_total, q.norms().identity_shift, WalkMethod::gram);
  const auto s = walk_operator(B, q.norms().lambda_total, q.norms().identity_shift, WalkMethod::spectral);
  ASSERT_TRUE(g.dense());
  ASSERT_FALSE(s.dense());
  const auto Qs = assemble_walk(s);
  ASSERT_EQ(Qs.matrix.rows(), g.Q.matrix.rows());
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> e1(g.Q.matrix, false), e2(Qs.matrix, false);
  std::vector<double> a, b;
  for (auto z : e1.eigenvalues()) a.push_back(std::arg(z));
  for (auto z : e2.eigenvalues()) b.push_back(std::arg(z));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-8);
  const auto cs = check_walk(s, spectrum(q));
  EXPECT_LT(cs.max_eigen_deviation, 1e-9);
  EXPECT_LT(cs.reflection_deviation_1, 1e-10);
}

TEST(Walk, SpectrumTwoParticles) {
  auto mat = cubic_material(0.8, {atom(2, 0.4, 0.7, 0.1)}, 2);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::off));
  auto chk = check_walk(walk_operator(q), spectrum(q));
  EXPECT_LT(chk.max_eigen_deviation, 1e-8);
  EXPECT_LT(chk.unitarity_deviation, 1e-8);
  EXPECT_LT(chk.reflection_deviation_1, 1e-8);
}

// Build the walk on the full (ancilla, system, overflow) space from sparse vectors and compare.
TEST(Walk, ExplicitConstructionAgrees) {
  auto mat = cubic_material(2.5, {atom(1, 0.4, 0.7, 1.1)}, 1);
  Qubitization q(mat, PlaneWaveGrid(2), opts(AmplificationMode::off));
  auto SEL = q.select_sparse();
  const Eigen::Index D = SEL.rows(), n = q.system_dim();
  const auto tau = q.target_state().amplitudes;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index a = 0; a < tau.size(); ++a)
    if (tau[a] != cplx(0.0))
      for (Eigen::Index x = 0; x < n; ++x) trip.emplace_back((a * n + x) * 2, x, tau[a]);
  Eigen::SparseMatrix<cplx> G(D, n);
  G.setFromTriplets(trip.begin(), trip.end());

  Eigen::SparseMatrix<cplx> SG = SEL * G;
  Eigen::MatrixXcd Y(D, 2 * n);
  Y << Eigen::MatrixXcd(G), Eigen::MatrixXcd(SG);
  Eigen::MatrixXcd SY = SEL * Y;
  Eigen::MatrixXcd W = 2.0 * (G * (G.adjoint() * SY)) - SY;  // (2 Pi_G - I) SEL Y
  Eigen::MatrixXcd S = Y.adjoint() * Y, M = Y.adjoint() * W;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < S.rows(); ++i)
    if (es.eigenvalues()[i] > 1e-10) keep.push_back(i);
  Eigen::MatrixXcd E(S.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c)
    E.col(Eigen::Index(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(es.eigenvalues()[keep[c]]);
  Eigen::MatrixXcd QK = E.adjoint() * M * E;
  // the span must be invariant: Q' Y stays inside span(Y)
  Eigen::MatrixXcd proj = Y * (E * (E.adjoint() * (Y.adjoint() * W)));
  EXPECT_LT((proj - W).cwiseAbs().maxCoeff(), 1e-9);

  auto w = walk_operator(q, WalkMethod::gram);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> e1(QK, false), e2(w.Q.matrix, false);
  ASSERT_EQ(e1.eigenvalues().size(), e2.eigenvalues().size());
  auto sorted = [](const Eigen::VectorXcd& v) {
    std::vector<std::pair<double, double>> out;
    for (auto z : v) out.emplace_back(std::round(z.real() * 1e8) / 1e8, z.imag());
    std::sort(out.begin(), out.end());
    return out;
  };
  auto s1 = sorted(e1.eigenvalues()), s2 = sorted(e2.eigenvalues());
  for (std::size_t i = 0; i < s1.size(); ++i) {
    EXPECT_NEAR(s1[i].first, s2[i].first, 1e-7);
    EXPECT_NEAR(std::abs(s1[i].second), std::abs(s2[i].second), 1e-7);
  }
}

TEST(Qubitization, CapsEnforced) {
  auto mat = cubic_material(3.0, {atom(1, 0.4, 0.7, 1.1)}, 4);
  EXPECT_THROW(Qubitization(mat, PlaneWaveGrid(2)), CapExceededError);
}
