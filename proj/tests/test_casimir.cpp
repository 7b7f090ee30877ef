// Lie-algebraic Casimir generators: frames, predicted vs numeric spectra,
// gap/decay constants, explicit sl2 eigenvectors, the classical restriction
// and the Gamma-calculus curvature bound.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "qms/casimir.hpp"
#include "qms/sampling.hpp"

using namespace qms;
using qms::roots::Rational;

namespace {

SpectralBasis numeric_basis(const MatrixLieRep& rep) {
  KillingFrame frame = killing_orthonormalize(rep);
  GnsSpace space = make_gns_space(maximally_mixed(rep.dim_V));
  return spectral_decomposition(build_casimir_generator(frame), space);
}

// Numeric spectrum as value -> multiplicity at absolute tolerance 1e-8,
// keyed by the predicted exact values.
void check_spectrum_matches(const MatrixLieRep& rep) {
  REQUIRE(rep.root_type.has_value());
  roots::RootDatum datum = roots::build_root_datum(*rep.root_type, rep.root_rank);
  std::map<Rational, long long> predicted =
      predicted_spectrum(datum, rep.highest_weight);
  SpectralBasis basis = numeric_basis(rep);
  std::map<Rational, long long> counted;
  for (double lambda : basis.eigenvalues) {
    bool matched = false;
    for (const auto& [value, mult] : predicted) {
      if (std::abs(lambda - value.convert_to<double>()) < 1e-8) {
        counted[value] += 1;
        matched = true;
        break;
      }
    }
    CHECK(matched);
  }
  for (const auto& [value, mult] : predicted) CHECK(counted[value] == mult);
}

}  // namespace

TEST_CASE("built-in representations validate") {
  for (int n = 2; n <= 5; ++n) validate(sl_defining(n));
  for (int n = 3; n <= 7; ++n) validate(so_defining(n));
  validate(sp_defining(4));
  validate(sp_defining(6));
  for (int n = 2; n <= 8; ++n) validate(sl2_irrep(n));
  validate(sl3_adjoint());
  CHECK_THROWS(sl_defining(6));
  CHECK_THROWS(sp_defining(5));
  CHECK_THROWS(sl2_irrep(1));
}

TEST_CASE("Killing frame: Hermitian, correct count, frame-independent generator") {
  MatrixLieRep rep = sl_defining(3);
  KillingFrame frame = killing_orthonormalize(rep);
  CHECK(frame.ell.size() == 8);
  for (const Operator& l : frame.ell)
    CHECK((l - l.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  // Rotating the spanning basis leaves the assembled generator unchanged.
  MatrixLieRep rotated = rep;
  for (size_t j = 0; j + 1 < rotated.hermitian_basis.size(); j += 2) {
    Operator a = rotated.hermitian_basis[j];
    Operator b = rotated.hermitian_basis[j + 1];
    rotated.hermitian_basis[j] = (0.6 * a + 0.8 * b);
    rotated.hermitian_basis[j + 1] = (0.8 * a - 0.6 * b);
  }
  Superoperator l1 = build_casimir_generator(frame);
  Superoperator l2 = build_casimir_generator(killing_orthonormalize(rotated));
  CHECK((l1.matrix - l2.matrix).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("the Casimir generator fixes scalars and acts as 1 on the frame span") {
  for (const MatrixLieRep& rep :
       {sl_defining(2), sl_defining(3), sp_defining(4)}) {
    KillingFrame frame = killing_orthonormalize(rep);
    LindbladSpec spec = casimir_spec(frame);
    CHECK(apply_generator(spec, identity(rep.dim_V)).cwiseAbs().maxCoeff() <
          1e-10);
    // The frame spans a copy of the adjoint representation, normalized to
    // Casimir value exactly 1: -L l = l.
    for (const Operator& l : frame.ell)
      CHECK((apply_generator(spec, l) + l).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(check_ergodic(spec));
  }
}

TEST_CASE("sl2 spectra: i(i+1)/2 with multiplicity 2i+1") {
  for (int n : {2, 3, 4}) {
    SpectralBasis basis = numeric_basis(sl2_irrep(n));
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      double expected = 0.5 * i * (i + 1);
      for (int l = 0; l <= 2 * i; ++l, ++idx)
        CHECK(std::abs(basis.eigenvalues[idx] - expected) < 1e-8);
    }
    CHECK(std::abs(spectral_gap(basis) - 1.0) < 1e-8);
  }
}

TEST_CASE("predicted spectra match numeric diagonalization") {
  check_spectrum_matches(sl_defining(3));
  check_spectrum_matches(so_defining(5));
  check_spectrum_matches(sp_defining(4));
  check_spectrum_matches(sl2_irrep(4));
}

TEST_CASE("sp4 realizes the C2=B2 gap 2/3") {
  SpectralBasis basis = numeric_basis(sp_defining(4));
  CHECK(std::abs(spectral_gap(basis) - 2.0 / 3.0) < 1e-8);
  GapDecay gd = gap_and_decay(sp_defining(4));
  CHECK(gd.g0 == Rational(2, 3));
  CHECK(std::abs(gd.gap - 2.0 / 3.0) < 1e-8);
}

TEST_CASE("gap_and_decay and the trace-distance decay bound") {
  MatrixLieRep rep = sl2_irrep(4);
  GapDecay gd = gap_and_decay(rep);
  CHECK(gd.g0 == Rational(1));
  CHECK(std::abs(gd.gap - 1.0) < 1e-8);
  CHECK(gd.decay_constant > 0.0);
  CHECK(decay_bound(gd, 2.0) ==
        doctest::Approx(gd.decay_constant * std::exp(-2.0 * gd.gap)));

  KillingFrame frame = killing_orthonormalize(rep);
  LindbladSpec spec = casimir_spec(frame);
  DensityState sigma = maximally_mixed(rep.dim_V);
  Rng rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    DensityState rho = random_state(rng, rep.dim_V);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
      double d = trace_distance(evolve_state(spec, rho, t), sigma);
      CHECK(d <= decay_bound(gd, t) + 1e-12);
    }
  }
}

TEST_CASE("eigen_clusters, norm bound and the cluster identity") {
  for (const MatrixLieRep& rep : {sl2_irrep(3), sl_defining(3), sp_defining(4)}) {
    SpectralBasis basis = numeric_basis(rep);
    GnsSpace space = make_gns_space(maximally_mixed(rep.dim_V));
    auto clusters = eigen_clusters(basis);
    size_t total = 0;
    for (const auto& c : clusters) total += c.size();
    CHECK(total == basis.eigenvalues.size());
    CHECK(check_norm_bound(basis, space) <= 1.0 + 1e-8);
    CHECK(cluster_identity_residual(basis) < 1e-8);
  }
}

TEST_CASE("standard sl2 generator agrees with the Killing-frame assembly") {
  for (int n : {2, 3, 4, 5}) {
    Superoperator std_gen = sl2_standard_generator(n);
    Superoperator frame_gen =
        build_casimir_generator(killing_orthonormalize(sl2_irrep(n)));
    CHECK((std_gen.matrix - frame_gen.matrix).cwiseAbs().maxCoeff() < 1e-8);
    // Direct application agrees with the assembled matrix.
    Rng rng(72);
    Operator a = random_operator(rng, n);
    CHECK((sl2_apply_standard(n, a) - std_gen.apply(a)).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("explicit sl2 eigenvectors: orthonormal and exact eigenvalues") {
  for (int n : {2, 3, 6, 10}) {
    std::vector<Operator> vs = sl2_explicit_eigenvectors(n);
    REQUIRE(Eigen::Index(vs.size()) == Eigen::Index(n) * n);
    GnsSpace space = make_gns_space(maximally_mixed(n));
    size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l <= 2 * i; ++l, ++idx) {
        const Operator& v = vs[idx];
        double lambda = 0.5 * i * (i + 1);
        CHECK((sl2_apply_standard(n, v) + lambda * v).cwiseAbs().maxCoeff() <
              1e-10 * std::max(1.0, v.cwiseAbs().maxCoeff()));
        CHECK(std::abs(gns_norm(space, v) - 1.0) < 1e-10);
      }
    }
    for (size_t i = 0; i < vs.size(); ++i)
      for (size_t j = i + 1; j < vs.size(); ++j)
        CHECK(std::abs(gns_inner(space, vs[i], vs[j])) < 1e-10);
  }
  // Large-n stability of the alternating sums.
  std::vector<Operator> big = sl2_explicit_eigenvectors(40);
  const Operator& v = big.back();
  CHECK((sl2_apply_standard(40, v) + 0.5 * 39 * 40 * v).cwiseAbs().maxCoeff() <
        1e-8 * v.cwiseAbs().maxCoeff());
}

TEST_CASE("classical restriction of the sl2 generator") {
  for (int n : {3, 6, 12}) {
    Sl2Classical cl = sl2_classical_restriction(n);
    REQUIRE(cl.generator.rows() == n);
    CHECK(cl.generator.rowwise().sum().cwiseAbs().maxCoeff() < 1e-10);
    // -L_cl gamma^(i) = (1/2) i(i+1) gamma^(i).
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd g = cl.eigenfunctions.row(i).transpose();
      Eigen::VectorXd r =
          cl.generator * g + 0.5 * i * (i + 1) * g;
      CHECK(r.cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, g.cwiseAbs().maxCoeff()));
    }
    // The diagonal embedding: the quantum generator applied to a diagonal
    // matrix reproduces the classical generator.
    Rng rng(73);
    Eigen::VectorXd f = Eigen::VectorXd::Random(n);
    Operator diag = f.cast<Complex>().asDiagonal();
    Operator lf = sl2_apply_standard(n, diag);
    Eigen::VectorXd qf = cl.generator * f;
    for (int x = 0; x < n; ++x) CHECK(std::abs(lf(x, x).real() - qf(x)) < 1e-10);
  }
}

TEST_CASE("exact rational classical eigen-identity") {
  for (int n : {2, 5, 12, 30})
    for (int i = 0; i < n; i += (n > 12 ? 7 : 1))
      CHECK(sl2_classical_identity_exact(n, i));
  CHECK(sl2_classical_identity_exact(30, 29));
}

TEST_CASE("Gamma-calculus curvature and the commutator tensor identity") {
  for (const MatrixLieRep& rep : {sl2_irrep(3), sl_defining(3), so_defining(5)}) {
    KillingFrame frame = killing_orthonormalize(rep);
    CHECK(gamma_calculus_check(frame, 50, 2024) >= -1e-8);
    CHECK(gamma_tensor_identity_residual(frame) < 1e-8);
  }
}

TEST_CASE("angular-momentum normalization doubles the gap") {
  for (int n : {3, 4, 5}) {
    KillingFrame frame = so3_angular_momentum(n);
    GnsSpace space = make_gns_space(maximally_mixed(n));
    SpectralBasis basis =
        spectral_decomposition(build_casimir_generator(frame), space);
    CHECK(std::abs(spectral_gap(basis) - 2.0) < 1e-8);
  }
}
