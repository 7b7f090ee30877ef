// Lindblad generators, detailed balance, GNS spectra, ergodicity bounds,
// evolution and time reversal.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "qms/lindblad.hpp"
#include "qms/sampling.hpp"

using namespace qms;

namespace {

Operator unit(Eigen::Index dim, Eigen::Index x, Eigen::Index y) {
  Operator e = Operator::Zero(dim, dim);
  e(x, y) = 1.0;
  return e;
}

// Reversible qubit amplitude-damping-type generator built from the
// Ad_sigma eigenvector construction for a two-level Gibbs state.
struct QubitModel {
  DensityState sigma;
  LindbladSpec spec;
};

QubitModel qubit_model(double beta) {
  Operator h(2, 2);
  h << 0, 0, 0, 1;
  DensityState sigma = gibbs_state(h, beta);
  // sigma v sigma^{-1} = e^{beta} v for v = |0><1|.
  std::vector<std::pair<double, Operator>> pairs = {
      {beta, unit(2, 0, 1)}, {-beta, unit(2, 1, 0)}};
  return {sigma, ad_sigma_construction(sigma, pairs)};
}

LindbladSpec depolarizing_qubit() {
  // Killing-normalized su(2) frame: Pauli matrices / (2 sqrt 2); the
  // associated generator has spectrum {0, 1, 1, 1}.
  Operator sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  double c = 1.0 / (2.0 * std::sqrt(2.0));
  LindbladSpec spec;
  spec.dim = 2;
  spec.jumps = {c * sx, c * sy, c * sz};
  return spec;
}

}  // namespace

TEST_CASE("validate rejects bad specs") {
  LindbladSpec spec;
  spec.dim = 2;
  spec.hamiltonian = unit(2, 0, 1);  // not Hermitian
  CHECK_THROWS(validate(spec));
  spec.hamiltonian.reset();
  spec.jumps = {Operator::Zero(3, 3)};
  CHECK_THROWS(validate(spec));
}

TEST_CASE("vectorize/unvectorize and kron match the sandwich convention") {
  Rng rng(31);
  Operator a = random_operator(rng, 3);
  CHECK((unvectorize(vectorize(a), 3) - a).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(vectorize(a)(1 * 3 + 2) - a(1, 2)) == 0.0);

  Operator x = random_operator(rng, 3), y = random_operator(rng, 3);
  Eigen::MatrixXcd k = kron(x, y.transpose());
  Operator lhs = unvectorize(k * vectorize(a), 3);
  CHECK((lhs - x * a * y).cwiseAbs().maxCoeff() < 1e-12);

  Superoperator s = sandwich_superoperator(x, y);
  CHECK((s.apply(a) - x * a * y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generator of the lowering-jump qubit matches the hand expansion") {
  LindbladSpec spec;
  spec.dim = 2;
  spec.jumps = {unit(2, 0, 1)};  // lowering operator
  Superoperator L = build_generator(spec);
  // Basis order 00,01,10,11: L E00 = 2 E11, L E01 = -E01, L E10 = -E10,
  // L E11 = -2 E11.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(3, 0) = 2.0;
  expected(1, 1) = -1.0;
  expected(2, 2) = -1.0;
  expected(3, 3) = -2.0;
  CHECK((L.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("generator is unital, *-preserving and zero without jumps") {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    LindbladSpec spec;
    spec.dim = 4;
    spec.hamiltonian = random_hermitian(rng, 4);
    spec.jumps = {random_operator(rng, 4), random_operator(rng, 4)};
    CHECK(apply_generator(spec, identity(4)).cwiseAbs().maxCoeff() < 1e-12);
    Operator a = random_operator(rng, 4);
    // L(a)* = L(a*) for the full generator (Hamiltonian included).
    CHECK((apply_generator(spec, a).adjoint() -
           apply_generator(spec, a.adjoint()))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    // Dense assembly agrees with the direct application.
    Superoperator L = build_generator(spec);
    CHECK((L.apply(a) - apply_generator(spec, a)).cwiseAbs().maxCoeff() <
          1e-10);
  }
  LindbladSpec empty;
  empty.dim = 3;
  CHECK(build_generator(empty).matrix.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dissipative part drops the Hamiltonian") {
  Rng rng(33);
  LindbladSpec spec;
  spec.dim = 3;
  spec.hamiltonian = random_hermitian(rng, 3);
  spec.jumps = {random_operator(rng, 3)};
  LindbladSpec no_h = spec;
  no_h.hamiltonian.reset();
  CHECK((build_dissipative_part(spec).matrix - build_generator(no_h).matrix)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("dual generator satisfies the trace duality and preserves trace") {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    LindbladSpec spec;
    spec.dim = 3;
    spec.hamiltonian = random_hermitian(rng, 3);
    spec.jumps = {random_operator(rng, 3), random_operator(rng, 3)};
    Superoperator L = build_generator(spec);
    Superoperator Ld = build_dual(spec);
    Operator a = random_operator(rng, 3);
    Operator rho = random_state(rng, 3).op;
    Complex lhs = (rho * L.apply(a)).trace();
    Complex rhs = (Ld.apply(rho) * a).trace();
    CHECK(std::abs(lhs - rhs) < 1e-9);
    CHECK(std::abs(Ld.apply(rho).trace()) < 1e-11);
  }
}

TEST_CASE("ad_sigma construction gives invariant states and detailed balance") {
  for (double beta : {0.0, 0.5, 2.0}) {
    QubitModel m = qubit_model(beta);
    // sigma is invariant for the dual.
    CHECK(build_dual(m.spec).apply(m.sigma.op).cwiseAbs().maxCoeff() < 1e-12);
    DetailedBalanceReport rep = check_detailed_balance(m.spec, m.sigma);
    CHECK(rep.holds_sufficient);
    CHECK(rep.holds_necessary);
    CHECK(rep.residual_sufficient < 1e-10);
    CHECK(rep.residual_necessary < 1e-10);
  }
}

TEST_CASE("ad_sigma construction rejects bad inputs") {
  Operator h(2, 2);
  h << 0, 0, 0, 1;
  DensityState sigma = gibbs_state(h, 1.0);
  // Missing the (-omega, v*) partner.
  std::vector<std::pair<double, Operator>> missing = {{1.0, unit(2, 0, 1)}};
  CHECK_THROWS(ad_sigma_construction(sigma, missing));
  // Not an Ad_sigma eigenvector for the claimed omega.
  std::vector<std::pair<double, Operator>> wrong = {{0.25, unit(2, 0, 1)},
                                                    {-0.25, unit(2, 1, 0)}};
  CHECK_THROWS(ad_sigma_construction(sigma, wrong));
  // omega = 0 with a Hermitian commuting jump is accepted.
  Operator z(2, 2);
  z << 1, 0, 0, -1;
  std::vector<std::pair<double, Operator>> zero = {{0.0, z}};
  LindbladSpec spec = ad_sigma_construction(sigma, zero);
  CHECK(check_detailed_balance(spec, sigma).holds_sufficient);
}

TEST_CASE("detailed balance fails for a generic non-normal jump") {
  LindbladSpec spec;
  spec.dim = 2;
  Operator j(2, 2);
  j << 0.2, 1.1, -0.4, 0.9;
  spec.jumps = {j};
  DetailedBalanceReport rep =
      check_detailed_balance(spec, maximally_mixed(2));
  CHECK_FALSE(rep.holds_necessary);
}

TEST_CASE("spectral decomposition: zero generator and depolarizing qubit") {
  GnsSpace space = make_gns_space(maximally_mixed(2));
  LindbladSpec empty;
  empty.dim = 2;
  SpectralBasis flat = spectral_decomposition(build_generator(empty), space);
  for (double lambda : flat.eigenvalues) CHECK(std::abs(lambda) < 1e-12);

  SpectralBasis basis =
      spectral_decomposition(build_generator(depolarizing_qubit()), space);
  REQUIRE(basis.eigenvalues.size() == 4);
  CHECK(std::abs(basis.eigenvalues[0]) < 1e-10);
  for (int j = 1; j < 4; ++j)
    CHECK(std::abs(basis.eigenvalues[j] - 1.0) < 1e-10);
  // Zero mode of an ergodic generator is the identity.
  CHECK((basis.eigenvectors[0] - identity(2)).cwiseAbs().maxCoeff() < 1e-10);
  // Orthonormality in L2(sigma) and the eigen-relations themselves.
  Superoperator L = build_generator(depolarizing_qubit());
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      Complex g = gns_inner(space, basis.eigenvectors[i], basis.eigenvectors[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
    CHECK((L.apply(basis.eigenvectors[i]) +
           basis.eigenvalues[i] * basis.eigenvectors[i])
              .cwiseAbs()
              .maxCoeff() < 1e-9);
  }
}

TEST_CASE("spectral decomposition rejects non-self-adjoint generators") {
  LindbladSpec spec;
  spec.dim = 2;
  Operator j(2, 2);
  j << 0.2, 1.1, -0.4, 0.9;
  spec.jumps = {j};
  GnsSpace space = make_gns_space(maximally_mixed(2));
  CHECK_THROWS_AS(spectral_decomposition(build_generator(spec), space),
                  not_self_adjoint);
}

TEST_CASE("phase fixing makes eigenvectors deterministic") {
  QubitModel m = qubit_model(0.8);
  GnsSpace space = make_gns_space(m.sigma);
  SpectralBasis b1 = spectral_decomposition(build_generator(m.spec), space);
  SpectralBasis b2 = spectral_decomposition(build_generator(m.spec), space);
  for (size_t j = 0; j < b1.eigenvectors.size(); ++j)
    CHECK((b1.eigenvectors[j] - b2.eigenvectors[j]).cwiseAbs().maxCoeff() ==
          0.0);
}

TEST_CASE("check_ergodic closed cases") {
  LindbladSpec diag;
  diag.dim = 2;
  diag.jumps = {(Operator(2, 2) << 1, 0, 0, 2).finished()};
  CHECK_FALSE(check_ergodic(diag));  // commutant contains all diagonals

  CHECK(check_ergodic(depolarizing_qubit()));
  CHECK(check_ergodic(qubit_model(1.0).spec));

  LindbladSpec empty;
  empty.dim = 2;
  CHECK_FALSE(check_ergodic(empty));
  LindbladSpec scalar;
  scalar.dim = 1;
  CHECK(check_ergodic(scalar));
}

TEST_CASE("spectral_gap and the Poincare inequality") {
  QubitModel m = qubit_model(0.6);
  GnsSpace space = make_gns_space(m.sigma);
  SpectralBasis basis = spectral_decomposition(build_generator(m.spec), space);
  double gap = spectral_gap(basis);
  CHECK(gap > 0.0);
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    Operator a = random_operator(rng, 2);
    Operator centered =
        a - gns_inner(space, identity(2), a) * identity(2);
    double var = gns_norm(space, centered);
    CHECK(dirichlet_form(m.spec, space, a) + 1e-10 >= gap * var * var);
  }
  // Degenerate zero eigenvalue throws.
  LindbladSpec empty;
  empty.dim = 2;
  SpectralBasis flat =
      spectral_decomposition(build_generator(empty),
                             make_gns_space(maximally_mixed(2)));
  CHECK_THROWS_AS(spectral_gap(flat), not_ergodic);
}

TEST_CASE("dirichlet form equals the commutator-norm sum") {
  QubitModel m = qubit_model(1.1);
  GnsSpace space = make_gns_space(m.sigma);
  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    Operator a = random_operator(rng, 2);
    double direct = dirichlet_form(m.spec, space, a);
    double sum = 0.0;
    for (const Operator& l : m.spec.jumps) {
      double n = gns_norm(space, l.adjoint() * a - a * l.adjoint());
      sum += n * n;
    }
    CHECK(std::abs(direct - sum) < 1e-9);
    CHECK(direct >= -1e-12);
  }
}

TEST_CASE("ergodicity bound: exact at t=0 and dominated by the uniform bound") {
  QubitModel m = qubit_model(0.9);
  GnsSpace space = make_gns_space(m.sigma);
  SpectralBasis basis = spectral_decomposition(build_generator(m.spec), space);
  CHECK(ergodicity_bound(basis, m.sigma, 1.0) < 1e-15);
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    DensityState rho = random_state(rng, 2);
    double chi2 = chi2_divergence(rho, space);
    CHECK(std::abs(ergodicity_bound(basis, rho, 0.0) - 0.25 * chi2) < 1e-10);
    for (double t : {0.0, 0.5, 2.0}) {
      CHECK(ergodicity_bound(basis, rho, t) <=
            ergodicity_bound_uniform(basis, t) + 1e-12);
    }
  }
  // Uniform bound is non-increasing in t and matches the precomputed norms.
  double prev = ergodicity_bound_uniform(basis, 0.0);
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    double b = ergodicity_bound_uniform(basis, t);
    CHECK(b <= prev + 1e-15);
    prev = b;
  }
  std::vector<double> norms = basis_operator_norms(basis);
  double manual = 0.0;
  for (size_t j = 1; j < norms.size(); ++j)
    manual += 0.25 * std::exp(-2.0 * basis.eigenvalues[j]) * norms[j] *
              norms[j];
  CHECK(std::abs(manual - ergodicity_bound_uniform(basis, 1.0)) < 1e-12);
}

TEST_CASE("trace distance decay obeys the spectral ergodicity bound") {
  QubitModel m = qubit_model(1.3);
  GnsSpace space = make_gns_space(m.sigma);
  SpectralBasis basis = spectral_decomposition(build_generator(m.spec), space);
  Rng rng(38);
  for (int trial = 0; trial < 50; ++trial) {
    DensityState rho = random_state(rng, 2);
    for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      DensityState evolved = evolve_state(m.spec, rho, t);
      double d = trace_distance(evolved, m.sigma);
      CHECK(d * d <= ergodicity_bound(basis, rho, t) + 1e-9);
    }
  }
}

TEST_CASE("evolution: semigroup law, invariance and GNS contraction") {
  QubitModel m = qubit_model(0.4);
  Rng rng(39);
  DensityState rho = random_state(rng, 2);
  CHECK((evolve_state(m.spec, rho, 0.0).op - rho.op).cwiseAbs().maxCoeff() <
        1e-12);
  DensityState one_then_one =
      evolve_state(m.spec, evolve_state(m.spec, rho, 1.0), 1.0);
  DensityState two = evolve_state(m.spec, rho, 2.0);
  CHECK((one_then_one.op - two.op).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((evolve_state(m.spec, m.sigma, 3.0).op - m.sigma.op)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
  CHECK(std::abs(evolve_state(m.spec, rho, 1.7).op.trace().real() - 1.0) <
        1e-11);
  // Precomputed-exponential overload agrees.
  Superoperator Ld = build_dual(m.spec);
  Eigen::MatrixXcd e = (1.7 * Ld.matrix).exp();
  CHECK((evolve_state(e, rho).op - evolve_state(m.spec, rho, 1.7).op)
            .cwiseAbs()
            .maxCoeff() < 1e-10);

  // Heisenberg contraction in L2(sigma): ||P_t a||_sigma <= ||a||_sigma.
  GnsSpace space = make_gns_space(m.sigma);
  Superoperator L = build_generator(m.spec);
  Eigen::MatrixXcd pt = (0.8 * L.matrix).exp();
  for (int trial = 0; trial < 50; ++trial) {
    Operator a = random_operator(rng, 2);
    Operator pa = unvectorize(pt * vectorize(a), 2);
    CHECK(gns_norm(space, pa) <= gns_norm(space, a) + 1e-10);
  }
}

TEST_CASE("time reversal holds for reversible generators and fails otherwise") {
  QubitModel m = qubit_model(0.7);
  Rng rng(40);
  std::vector<Operator> ops = {random_hermitian(rng, 2),
                               random_hermitian(rng, 2)};
  CHECK(check_time_reversal(m.spec, m.sigma, {0.3, 1.1}, ops) < 1e-8);
  std::vector<Operator> three = {random_hermitian(rng, 2),
                                 random_hermitian(rng, 2),
                                 random_hermitian(rng, 2)};
  CHECK(check_time_reversal(m.spec, m.sigma, {0.2, 0.7, 1.4}, three) < 1e-8);

  // Adding a Hamiltonian that does not commute with sigma breaks it.
  LindbladSpec driven = m.spec;
  Operator hx(2, 2);
  hx << 0, 1, 1, 0;
  driven.hamiltonian = hx;
  CHECK(check_time_reversal(driven, m.sigma, {0.3, 1.1}, ops) > 1e-3);
}
