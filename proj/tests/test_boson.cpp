// Bosonic Ornstein-Uhlenbeck semigroup: symbolic spectral decomposition,
// truncated-Fock numerics, moment-class bounds and the classical chain.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include "qms/boson.hpp"
#include "qms/sampling.hpp"

using namespace qms;

namespace {
BosonSystem sys1(double beta = 1.0, double omega = 1.0) {
  return make_boson_system(beta, {omega});
}
}  // namespace

TEST_CASE("system construction: delta - gamma = 1 and input guards") {
  BosonSystem s = make_boson_system(0.7, {1.0, 1.4});
  REQUIRE(s.N == 2);
  for (int k = 0; k < 2; ++k) {
    CHECK(std::abs(s.delta[k] - s.gamma[k] - 1.0) < 1e-13);
    double g = std::exp(-s.beta * s.omegas[k] / 2.0) /
               (2.0 * std::sinh(s.beta * s.omegas[k] / 2.0));
    CHECK(std::abs(s.gamma[k] - g) < 1e-13);
  }
  CHECK_THROWS(make_boson_system(0.0, {1.0}));   // needs beta > 0
  CHECK_THROWS(make_boson_system(1.0, {-1.0}));  // needs omega > 0
  CHECK_THROWS(make_boson_system(1.0, {}));
}

TEST_CASE("normal-ordered algebra reproduces the CCR") {
  // a a* = a* a + 1.
  NormalOrderedElement x = bose_monomial(1, {0}, {1}, 1.0);  // a
  NormalOrderedElement prod = mult_right_adag(x, 0);
  CHECK(std::abs(prod.terms.at({{1}, {1}}) - Complex(1)) < 1e-15);
  CHECK(std::abs(prod.terms.at({{0}, {0}}) - Complex(1)) < 1e-15);
  CHECK(prod.terms.size() == 2);

  // Symbolic products match the truncated matrix representation away from
  // the cutoff boundary.
  TruncatedFock fock = make_truncated_fock(1, 20);
  NormalOrderedElement p = bose_monomial(1, {2}, {1}, Complex(0.5, -1.0));
  NormalOrderedElement q = bose_monomial(1, {1}, {2}, Complex(1.0, 0.25));
  Operator lhs = to_operator(multiply(p, q), fock);
  Operator rhs = to_operator(p, fock) * to_operator(q, fock);
  CHECK((lhs - rhs).topLeftCorner(12, 12).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("generator annihilates the identity and shifts the ladder operators") {
  BosonSystem s = sys1(0.8, 1.3);
  CHECK(max_coefficient(apply_boson_generator(s, bose_identity(1))) < 1e-14);
  // L a* = -2 sinh(beta omega/2) a*.
  NormalOrderedElement adag = bose_monomial(1, {1}, {0}, 1.0);
  NormalOrderedElement la = apply_boson_generator(s, adag);
  add_scaled(la, adag, 2.0 * std::sinh(s.beta * s.omegas[0] / 2.0));
  prune(la);
  CHECK(max_coefficient(la) < 1e-12);
}

TEST_CASE("g_{1,1} = a*a - gamma and the number operator eigen-relation") {
  BosonSystem s = sys1(1.0, 1.0);
  NormalOrderedElement g = eigenvector_g(s, {1}, {1});
  CHECK(std::abs(g.terms.at({{1}, {1}}) - Complex(1)) < 1e-14);
  CHECK(std::abs(g.terms.at({{0}, {0}}) + Complex(s.gamma[0])) < 1e-14);
  CHECK(g.terms.size() == 2);
  CHECK(check_eigenrelation(s, {1}, {1}) < 1e-13);
  CHECK(std::abs(bose_eigenvalue(s, {2}) -
                 4.0 * std::sinh(s.beta * s.omegas[0] / 2.0)) < 1e-13);
}

TEST_CASE("symbolic eigen-relation residuals, one and two modes") {
  BosonSystem one = sys1(0.9, 1.1);
  for (int l = 0; l <= 8; ++l)
    for (int m = 0; m + l <= 8; ++m)
      CHECK(check_eigenrelation(one, {l}, {m}) < 1e-10);

  BosonSystem two = make_boson_system(0.6, {1.0, 1.7});
  for (int total = 0; total <= 4; ++total)
    for (int l0 = 0; l0 <= total; ++l0)
      for (int l1 = 0; l1 + l0 <= total; ++l1)
        for (int m0 = 0; m0 + l0 + l1 <= total; ++m0) {
          int m1 = total - l0 - l1 - m0;
          CHECK(check_eigenrelation(two, {l0, l1}, {m0, m1}) < 1e-10);
        }
}

TEST_CASE("the two product forms of g agree after re-normal-ordering") {
  BosonSystem s = sys1(1.2, 0.9);
  for (int l = 0; l <= 5; ++l)
    for (int m = 0; m + l <= 6; ++m) {
      NormalOrderedElement g = eigenvector_g(s, {l}, {m}, false);
      NormalOrderedElement h = eigenvector_g(s, {l}, {m}, true);
      add_scaled(g, h, -1.0);
      prune(g);
      CHECK(max_coefficient(g) < 1e-10);
    }
  CHECK_THROWS(eigenvector_g(s, {13}, {12}));  // degree guard
}

TEST_CASE("closed-form GNS norms match truncated traces") {
  BosonSystem s = sys1(1.0, 1.0);
  TruncatedFock fock = make_truncated_fock(1, fock_cutoff(s, 8));
  std::vector<std::pair<BoseIndex, BoseIndex>> pairs;
  for (int l = 0; l <= 4; ++l)
    for (int m = 0; m + l <= 6; ++m) pairs.push_back({{l}, {m}});
  Eigen::MatrixXcd gram = gns_gram(s, pairs, fock);
  for (size_t i = 0; i < pairs.size(); ++i) {
    double closed = gns_norm_g(s, pairs[i].first, pairs[i].second);
    CHECK(std::abs(gram(i, i).real() - closed) < 1e-6 * closed);
    for (size_t j = 0; j < pairs.size(); ++j)
      if (j != i)
        CHECK(std::abs(gram(i, j)) <
              1e-8 * std::sqrt(gram(i, i).real() * gram(j, j).real()));
  }
}

TEST_CASE("exponential kernel of the eigenfunction generating function") {
  // <g(zt,wt), g(z,w)>_sigma = exp(gamma conj(zt) z + delta conj(wt) w),
  // with g(z,w) = e^{-gamma z w} e^{z a*} e^{w a} on a generous truncation.
  BosonSystem s = sys1(1.0, 1.0);
  TruncatedFock fock = make_truncated_fock(1, 30);
  Operator sigma = fock_thermal_state(s, fock).op;
  Rng rng(61);
  std::uniform_real_distribution<double> unit(-0.5, 0.5);
  auto g = [&](Complex z, Complex w) -> Operator {
    Operator ez = (z * fock.a_dag[0]).exp();
    Operator ew = (w * fock.a[0]).exp();
    return std::exp(-s.gamma[0] * z * w) * ez * ew;
  };
  for (int trial = 0; trial < 20; ++trial) {
    Complex z(unit(rng), unit(rng)), w(unit(rng), unit(rng));
    Complex zt(unit(rng), unit(rng)), wt(unit(rng), unit(rng));
    Complex inner = (g(zt, wt).adjoint() * sigma * g(z, w)).trace();
    Complex expected = std::exp(s.gamma[0] * std::conj(zt) * z +
                                s.delta[0] * std::conj(wt) * w);
    CHECK(std::abs(inner - expected) < 1e-6 * std::abs(expected));
  }
}

TEST_CASE("truncated generator: invariance, reversibility, eigenvalues") {
  BosonSystem s = sys1(1.0, 1.0);
  TruncatedFock fock = make_truncated_fock(1, 25);
  LindbladSpec spec = fock_generator(s, fock);
  DensityState sigma = fock_thermal_state(s, fock);
  // The truncated thermal state is invariant up to the cutoff tail.
  CHECK(build_dual(spec).apply(sigma.op).cwiseAbs().maxCoeff() < 1e-9);
  // Eigen-relation for low-degree closed forms on the truncated space,
  // tested away from the boundary.
  for (int l = 0; l <= 2; ++l)
    for (int m = 0; m <= 2; ++m) {
      Operator g = to_operator(eigenvector_g(s, {l}, {m}), fock);
      Operator r = apply_generator(spec, g) + bose_eigenvalue(s, {l + m}) * g;
      CHECK(r.topLeftCorner(15, 15).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("moment class membership") {
  BosonSystem s = sys1(1.0, 1.0);
  TruncatedFock fock = make_truncated_fock(1, fock_cutoff(s, 4));
  DensityState thermal = fock_thermal_state(s, fock);
  CHECK(moment_class_check(thermal, fock, s.delta[0] + 0.01, 4));
  CHECK_FALSE(moment_class_check(thermal, fock, 0.01, 4));
  // A superposition with large off-diagonal moments fails a small K.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(fock.dim);
  psi(0) = 1.0 / std::sqrt(2.0);
  psi(4) = 1.0 / std::sqrt(2.0);
  DensityState pure = make_density(psi * psi.adjoint());
  CHECK_FALSE(moment_class_check(pure, fock, 0.2, 4));
}

TEST_CASE("mixing bound decays and the mixing time closes it") {
  BosonSystem s = make_boson_system(1.0, {1.0, 1.5});
  double prev = bose_bound(s, 4.0, 0.0);
  CHECK(std::isfinite(prev));
  for (double t : {1.0, 2.0, 4.0, 8.0}) {
    double b = bose_bound(s, 4.0, t);
    CHECK(b <= prev + 1e-15);
    prev = b;
  }
  CHECK(bose_bound(s, 4.0, 50.0) < 1e-10);
  for (double eps : {0.5, 0.1, 0.01}) {
    double teps = bose_mixing_time(s, 4.0, eps);
    CHECK(bose_bound(s, 4.0, teps) <= eps * eps * (1.0 + 1e-9));
  }
}

TEST_CASE("sampled trace-distance decay sits under the moment-class bound") {
  BosonSystem s = sys1(1.0, 1.0);
  double K = 4.0;
  TruncatedFock fock = make_truncated_fock(1, 25);
  LindbladSpec spec = fock_generator(s, fock);
  DensityState sigma = fock_thermal_state(s, fock);
  // States supported on low Fock levels, verified members of the class.
  std::vector<DensityState> states;
  states.push_back(sigma);
  Eigen::MatrixXcd low = Eigen::MatrixXcd::Zero(fock.dim, fock.dim);
  low(0, 0) = 0.5;
  low(1, 1) = 0.3;
  low(2, 2) = 0.2;
  states.push_back(make_density(low));
  double T = bose_mixing_time(s, K, 1.0);
  Superoperator dual = build_dual(spec);
  for (double t : {T, T + 1.0, T + 2.0}) {
    Eigen::MatrixXcd e = (t * dual.matrix).exp();
    for (const DensityState& rho : states) {
      CHECK(moment_class_check(rho, fock, K, 4));
      double d = trace_distance(evolve_state(e, rho), sigma);
      CHECK(d * d <= bose_bound(s, K, t) + 1e-9);
    }
  }
}

TEST_CASE("classical birth-death chain: rates, reversibility, spectrum") {
  BosonSystem s = sys1(0.8, 1.0);
  int M = 60;
  Eigen::MatrixXd Q = classical_birth_death(s, M);
  REQUIRE(Q.rows() == M + 1);
  double up = 2.0 * std::exp(-s.beta * s.omegas[0] / 2.0);
  double down = 2.0 * std::exp(s.beta * s.omegas[0] / 2.0);
  for (int l = 1; l < M; ++l) {
    CHECK(std::abs(Q(l, l + 1) - (l + 1) * up) < 1e-12);
    CHECK(std::abs(Q(l, l - 1) - l * down) < 1e-12);
    CHECK(std::abs(Q.row(l).sum()) < 1e-10);
    // Reversibility with the geometric weights pi_l ~ e^{-beta omega l}.
    double pi_ratio = std::exp(-s.beta * s.omegas[0]);
    CHECK(std::abs(pi_ratio * Q(l + 1, l) / Q(l, l + 1) - 1.0) < 1e-12);
  }
  // Low-lying eigenvalues of -Q approximate 2 lambda_l = 4 sinh(bw/2) l.
  Eigen::VectorXcd ev = Q.eigenvalues();
  std::vector<double> lambdas;
  for (Eigen::Index j = 0; j < ev.size(); ++j) lambdas.push_back(-ev(j).real());
  std::sort(lambdas.begin(), lambdas.end());
  for (int l = 0; l <= 5; ++l)
    CHECK(std::abs(lambdas[l] - 2.0 * bose_eigenvalue(s, {l})) < 1e-6);
}

TEST_CASE("classical eigenfunctions satisfy the chain eigen-identity") {
  BosonSystem s = sys1(0.8, 1.0);
  int M = 80;
  Eigen::MatrixXd Q = classical_birth_death(s, M);
  for (int l = 0; l <= 6; ++l) {
    std::vector<double> coeffs = chebyshev_like_eigenfunctions(s, l);
    Eigen::VectorXd f(M + 1);
    for (int m = 0; m <= M; ++m) {
      double v = 0.0, p = 1.0;
      for (double c : coeffs) {
        v += c * p;
        p *= m;
      }
      f(m) = v;
    }
    Eigen::VectorXd r = Q * f + 2.0 * bose_eigenvalue(s, {l}) * f;
    // Interior rows are exact; scale by the local magnitude of f.
    double scale = f.head(M / 2).cwiseAbs().maxCoeff();
    CHECK(r.head(M / 2).cwiseAbs().maxCoeff() < 1e-8 * scale);
  }
  // f_0 is constant.
  std::vector<double> f0 = chebyshev_like_eigenfunctions(s, 0);
  REQUIRE(f0.size() == 1);
  CHECK(std::abs(f0[0] - 1.0) < 1e-12);
}

TEST_CASE("diagonal matrices embed the classical chain in the quantum generator") {
  BosonSystem s = sys1(0.8, 1.0);
  TruncatedFock fock = make_truncated_fock(1, 30);
  LindbladSpec spec = fock_generator(s, fock);
  Eigen::MatrixXd Q = classical_birth_death(s, fock.cutoff);
  Rng rng(62);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd f(fock.dim);
    for (Eigen::Index m = 0; m < fock.dim; ++m) f(m) = unit(rng);
    Operator diag = f.cast<Complex>().asDiagonal();
    Operator lf = apply_generator(spec, diag);
    Eigen::VectorXd qf = Q * f;
    for (Eigen::Index m = 0; m + 1 < fock.dim; ++m)
      CHECK(std::abs(lf(m, m).real() - qf(m)) < 1e-9);
    // Off-diagonal entries stay zero.
    CHECK((lf - Operator(lf.diagonal().asDiagonal())).cwiseAbs().maxCoeff() <
          1e-10);
  }
}

TEST_CASE("exact rational eigen-identity for the classical chain") {
  for (BoseRational s : {BoseRational(3, 2), BoseRational(2), BoseRational(7, 5)}) {
    for (int l = 0; l <= 10; ++l) CHECK(classical_eigen_identity_exact(s, l));
  }
  // The exact coefficients match the floating normalization up to the
  // constant prefactor (gamma delta)^{-l/2}.
  double beta = 2.0 * std::log(1.5);  // s = 3/2 with omega = 1
  BosonSystem sysf = sys1(beta, 1.0);
  for (int l = 1; l <= 6; ++l) {
    std::vector<BoseRational> exact = classical_eigenfunction_exact(BoseRational(3, 2), l);
    std::vector<double> norm = chebyshev_like_eigenfunctions(sysf, l);
    REQUIRE(exact.size() == norm.size());
    double pre = std::pow(sysf.gamma[0] * sysf.delta[0], -0.5 * l);
    for (size_t j = 0; j < exact.size(); ++j)
      CHECK(std::abs(pre * exact[j].convert_to<double>() - norm[j]) <
            1e-10 * std::max(1.0, std::abs(norm[j])));
  }
}
