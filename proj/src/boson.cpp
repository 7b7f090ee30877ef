#include "qms/boson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qms/lindblad.hpp"

namespace qms {

namespace {

long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long long factorial_ll(int n) {
  long long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int total(const BoseIndex& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

void check_index(const BosonSystem& sys, const BoseIndex& v) {
  if (static_cast<int>(v.size()) != sys.N)
    throw dimension_mismatch("boson multi-index has wrong mode count");
  for (int x : v)
    if (x < 0) throw std::invalid_argument("boson multi-index must be >= 0");
}

void add_term(NormalOrderedElement& x, BoseIndex p, BoseIndex q, Complex c) {
  if (c == Complex(0)) return;
  auto key = std::make_pair(std::move(p), std::move(q));
  auto [it, inserted] = x.terms.emplace(std::move(key), c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0)) x.terms.erase(it);
  }
}

}  // namespace

BosonSystem make_boson_system(double beta, const std::vector<double>& omegas) {
  BosonSystem sys;
  sys.N = static_cast<int>(omegas.size());
  sys.beta = beta;
  sys.omegas = omegas;
  validate(sys);
  for (double w : omegas) {
    const double sh = 2.0 * std::sinh(beta * w / 2.0);
    sys.gamma.push_back(std::exp(-beta * w / 2.0) / sh);
    sys.delta.push_back(std::exp(beta * w / 2.0) / sh);
  }
  return sys;
}

void validate(const BosonSystem& sys) {
  if (sys.N < 1) throw std::invalid_argument("BosonSystem: need N >= 1 modes");
  if (sys.beta <= 0)
    throw std::invalid_argument("BosonSystem: beta must be positive");
  if (static_cast<int>(sys.omegas.size()) != sys.N)
    throw dimension_mismatch("BosonSystem: need N frequencies");
  for (double w : sys.omegas)
    if (w <= 0)
      throw std::invalid_argument("BosonSystem: frequencies must be positive");
}

NormalOrderedElement bose_zero(int N) {
  NormalOrderedElement x;
  x.N = N;
  return x;
}

NormalOrderedElement bose_identity(int N) {
  return bose_monomial(N, BoseIndex(N, 0), BoseIndex(N, 0), 1.0);
}

NormalOrderedElement bose_monomial(int N, const BoseIndex& p,
                                   const BoseIndex& q, Complex coeff) {
  if (static_cast<int>(p.size()) != N || static_cast<int>(q.size()) != N)
    throw dimension_mismatch("bose_monomial: index size mismatch");
  NormalOrderedElement x;
  x.N = N;
  add_term(x, p, q, coeff);
  return x;
}

void add_scaled(NormalOrderedElement& x, const NormalOrderedElement& y,
                Complex c) {
  if (x.N != y.N) throw dimension_mismatch("add_scaled: mode count mismatch");
  for (const auto& [key, coeff] : y.terms)
    add_term(x, key.first, key.second, c * coeff);
}

void prune(NormalOrderedElement& x, double eps) {
  for (auto it = x.terms.begin(); it != x.terms.end();)
    it = (std::abs(it->second) < eps) ? x.terms.erase(it) : std::next(it);
}

double max_coefficient(const NormalOrderedElement& x) {
  double m = 0.0;
  for (const auto& [key, c] : x.terms) m = std::max(m, std::abs(c));
  return m;
}

NormalOrderedElement mult_left_a(const NormalOrderedElement& x, int k) {
  // a_k (a*)^p a^q = (a*)^p a^{q+e_k} + p_k (a*)^{p-e_k} a^q
  NormalOrderedElement out = bose_zero(x.N);
  for (const auto& [key, c] : x.terms) {
    BoseIndex q = key.second;
    q[k] += 1;
    add_term(out, key.first, q, c);
    if (key.first[k] > 0) {
      BoseIndex p = key.first;
      p[k] -= 1;
      add_term(out, p, key.second, c * double(key.first[k]));
    }
  }
  return out;
}

NormalOrderedElement mult_left_adag(const NormalOrderedElement& x, int k) {
  NormalOrderedElement out = bose_zero(x.N);
  for (const auto& [key, c] : x.terms) {
    BoseIndex p = key.first;
    p[k] += 1;
    add_term(out, p, key.second, c);
  }
  return out;
}

NormalOrderedElement mult_right_a(const NormalOrderedElement& x, int k) {
  NormalOrderedElement out = bose_zero(x.N);
  for (const auto& [key, c] : x.terms) {
    BoseIndex q = key.second;
    q[k] += 1;
    add_term(out, key.first, q, c);
  }
  return out;
}

NormalOrderedElement mult_right_adag(const NormalOrderedElement& x, int k) {
  // (a*)^p a^q a_k* = (a*)^{p+e_k} a^q + q_k (a*)^p a^{q-e_k}
  NormalOrderedElement out = bose_zero(x.N);
  for (const auto& [key, c] : x.terms) {
    BoseIndex p = key.first;
    p[k] += 1;
    add_term(out, p, key.second, c);
    if (key.second[k] > 0) {
      BoseIndex q = key.second;
      q[k] -= 1;
      add_term(out, key.first, q, c * double(key.second[k]));
    }
  }
  return out;
}

NormalOrderedElement multiply(const NormalOrderedElement& x,
                              const NormalOrderedElement& y) {
  if (x.N != y.N) throw dimension_mismatch("multiply: mode count mismatch");
  NormalOrderedElement out = bose_zero(x.N);
  for (const auto& [key, c] : y.terms) {
    NormalOrderedElement acc = x;
    for (int k = 0; k < x.N; ++k)
      for (int r = 0; r < key.first[k]; ++r) acc = mult_right_adag(acc, k);
    for (int k = 0; k < x.N; ++k)
      for (int r = 0; r < key.second[k]; ++r) acc = mult_right_a(acc, k);
    add_scaled(out, acc, c);
  }
  return out;
}

NormalOrderedElement apply_boson_generator(const BosonSystem& sys,
                                           const NormalOrderedElement& x) {
  validate(sys);
  if (x.N != sys.N)
    throw dimension_mismatch("apply_boson_generator: mode count mismatch");
  NormalOrderedElement out = bose_zero(sys.N);
  for (int k = 0; k < sys.N; ++k) {
    const double ep = std::exp(sys.beta * sys.omegas[k] / 2.0);
    const double em = 1.0 / ep;
    // e^{+bw/2} (2 a* x a - x a* a - a* a x)
    add_scaled(out, mult_right_a(mult_left_adag(x, k), k), 2.0 * ep);
    add_scaled(out, mult_right_a(mult_right_adag(x, k), k), -ep);
    add_scaled(out, mult_left_adag(mult_left_a(x, k), k), -ep);
    // e^{-bw/2} (2 a x a* - x a a* - a a* x)
    add_scaled(out, mult_right_adag(mult_left_a(x, k), k), 2.0 * em);
    add_scaled(out, mult_right_adag(mult_right_a(x, k), k), -em);
    add_scaled(out, mult_left_a(mult_left_adag(x, k), k), -em);
  }
  return out;
}

NormalOrderedElement eigenvector_g(const BosonSystem& sys, const BoseIndex& l,
                                   const BoseIndex& m, bool delta_form) {
  validate(sys);
  check_index(sys, l);
  check_index(sys, m);
  if (total(l) + total(m) > 24)
    throw std::invalid_argument("eigenvector_g: |l|+|m| must be <= 24");

  NormalOrderedElement out = bose_zero(sys.N);
  BoseIndex j(sys.N, 0);
  while (true) {
    double coeff = 1.0;
    int parity = 0;
    for (int k = 0; k < sys.N; ++k) {
      coeff *= double(factorial_ll(j[k])) * double(binomial_ll(l[k], j[k])) *
               double(binomial_ll(m[k], j[k])) *
               std::pow(delta_form ? sys.delta[k] : sys.gamma[k], j[k]);
      parity += j[k];
    }
    if (parity % 2) coeff = -coeff;
    BoseIndex p(sys.N), q(sys.N);
    for (int k = 0; k < sys.N; ++k) {
      p[k] = l[k] - j[k];
      q[k] = m[k] - j[k];
    }
    if (!delta_form) {
      add_term(out, p, q, coeff);
    } else {
      // a^{m-j} (a*)^{l-j}, re-normal-ordered
      NormalOrderedElement rev = bose_monomial(sys.N, BoseIndex(sys.N, 0), q, 1.0);
      for (int k = 0; k < sys.N; ++k)
        for (int r = 0; r < p[k]; ++r) rev = mult_right_adag(rev, k);
      add_scaled(out, rev, coeff);
    }
    int k = 0;
    while (k < sys.N && (j[k] == std::min(l[k], m[k]))) j[k++] = 0;
    if (k == sys.N) break;
    ++j[k];
  }
  return out;
}

double bose_eigenvalue(const BosonSystem& sys, const BoseIndex& l) {
  validate(sys);
  check_index(sys, l);
  double lam = 0.0;
  for (int k = 0; k < sys.N; ++k)
    lam += 2.0 * std::sinh(sys.beta * sys.omegas[k] / 2.0) * l[k];
  return lam;
}

double check_eigenrelation(const BosonSystem& sys, const BoseIndex& l,
                           const BoseIndex& m) {
  const NormalOrderedElement g = eigenvector_g(sys, l, m);
  BoseIndex lm(sys.N);
  for (int k = 0; k < sys.N; ++k) lm[k] = l[k] + m[k];
  NormalOrderedElement resid = apply_boson_generator(sys, g);
  add_scaled(resid, g, bose_eigenvalue(sys, lm));
  return max_coefficient(resid);
}

double gns_norm_g(const BosonSystem& sys, const BoseIndex& l,
                  const BoseIndex& m) {
  validate(sys);
  check_index(sys, l);
  check_index(sys, m);
  double v = 1.0;
  for (int k = 0; k < sys.N; ++k)
    v *= double(factorial_ll(l[k])) * double(factorial_ll(m[k])) *
         std::pow(sys.gamma[k], l[k]) * std::pow(sys.delta[k], m[k]);
  return v;
}

TruncatedFock make_truncated_fock(int N, int cutoff) {
  if (N < 1 || cutoff < 1)
    throw std::invalid_argument("make_truncated_fock: need N >= 1, cutoff >= 1");
  TruncatedFock fock;
  fock.N = N;
  fock.cutoff = cutoff;
  const Eigen::Index d1 = cutoff + 1;
  Eigen::Index dim = 1;
  for (int k = 0; k < N; ++k) dim *= d1;
  fock.dim = dim;

  Operator a1 = Operator::Zero(d1, d1);
  for (Eigen::Index l = 1; l <= cutoff; ++l)
    a1(l - 1, l) = std::sqrt(double(l));

  for (int k = 0; k < N; ++k) {
    Operator op(1, 1);
    op(0, 0) = 1;
    for (int j = 0; j < N; ++j)
      op = kron(op, (j == k) ? a1 : Operator(identity(d1)));
    fock.a.push_back(op);
    fock.a_dag.push_back(op.adjoint());
  }
  return fock;
}

int fock_cutoff(const BosonSystem& sys, int degree) {
  validate(sys);
  double wmin = sys.omegas[0];
  for (double w : sys.omegas) wmin = std::min(wmin, w);
  const int tail =
      static_cast<int>(std::ceil(12.0 * std::log(10.0) / (sys.beta * wmin)));
  return degree + tail + 1;
}

Operator to_operator(const NormalOrderedElement& x, const TruncatedFock& fock) {
  if (x.N != fock.N)
    throw dimension_mismatch("to_operator: mode count mismatch");
  Operator out = Operator::Zero(fock.dim, fock.dim);
  for (const auto& [key, c] : x.terms) {
    Operator term = identity(fock.dim);
    for (int k = 0; k < fock.N; ++k)
      for (int r = 0; r < key.first[k]; ++r) term = term * fock.a_dag[k];
    for (int k = 0; k < fock.N; ++k)
      for (int r = 0; r < key.second[k]; ++r) term = term * fock.a[k];
    out += c * term;
  }
  return out;
}

Operator fock_hamiltonian(const BosonSystem& sys, const TruncatedFock& fock) {
  if (sys.N != fock.N)
    throw dimension_mismatch("fock_hamiltonian: mode count mismatch");
  Operator h = Operator::Zero(fock.dim, fock.dim);
  for (int k = 0; k < sys.N; ++k)
    h += sys.omegas[k] * fock.a_dag[k] * fock.a[k];
  return h;
}

DensityState fock_thermal_state(const BosonSystem& sys,
                                const TruncatedFock& fock) {
  return gibbs_state(fock_hamiltonian(sys, fock), sys.beta);
}

LindbladSpec fock_generator(const BosonSystem& sys, const TruncatedFock& fock) {
  if (sys.N != fock.N)
    throw dimension_mismatch("fock_generator: mode count mismatch");
  LindbladSpec spec;
  spec.dim = fock.dim;
  for (int k = 0; k < sys.N; ++k) {
    const double e4 = std::exp(sys.beta * sys.omegas[k] / 4.0);
    spec.jumps.push_back(e4 * fock.a[k]);
    spec.jumps.push_back((1.0 / e4) * fock.a_dag[k]);
  }
  return spec;
}

Eigen::MatrixXcd gns_gram(
    const BosonSystem& sys,
    const std::vector<std::pair<BoseIndex, BoseIndex>>& pairs,
    const TruncatedFock& fock) {
  // The truncated thermal state has tail eigenvalues below the
  // faithfulness floor, so take the traces directly.
  const Operator sigma = fock_thermal_state(sys, fock).op;
  std::vector<Operator> ops;
  for (const auto& [l, m] : pairs)
    ops.push_back(to_operator(eigenvector_g(sys, l, m), fock));
  const auto n = static_cast<Eigen::Index>(ops.size());
  Eigen::MatrixXcd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      gram(i, j) = (ops[i].adjoint() * sigma * ops[j]).trace();
  return gram;
}

bool moment_class_check(const DensityState& rho, const TruncatedFock& fock,
                        double K, int degree) {
  if (rho.op.rows() != fock.dim)
    throw dimension_mismatch("moment_class_check: state dimension mismatch");
  // cache per-mode powers applied cumulatively
  std::vector<BoseIndex> indices;
  BoseIndex v(fock.N, 0);
  while (true) {
    if (total(v) <= degree) indices.push_back(v);
    int k = 0;
    while (k < fock.N && v[k] == degree) v[k++] = 0;
    if (k == fock.N) break;
    ++v[k];
  }
  for (const auto& l : indices)
    for (const auto& m : indices) {
      Operator mon = identity(fock.dim);
      for (int k = 0; k < fock.N; ++k)
        for (int r = 0; r < l[k]; ++r) mon = mon * fock.a_dag[k];
      for (int k = 0; k < fock.N; ++k)
        for (int r = 0; r < m[k]; ++r) mon = mon * fock.a[k];
      double bound = std::pow(K, total(l) + total(m));
      for (int k = 0; k < fock.N; ++k)
        bound *= double(factorial_ll(l[k])) * double(factorial_ll(m[k]));
      const double lhs = std::norm((rho.op * mon).trace());
      if (lhs > bound) return false;
    }
  return true;
}

namespace {

double big_lambda_bose(const BosonSystem& sys) {
  double lam = std::numeric_limits<double>::infinity();
  for (double w : sys.omegas)
    lam = std::min(lam, 2.0 * std::sinh(sys.beta * w / 2.0));
  return lam;
}

double decay_constant_a(const BosonSystem& sys, double K) {
  const double lam = big_lambda_bose(sys);
  if (lam <= 0)
    throw std::invalid_argument("bose bound requires Lambda > 0");
  double gmax = 0.0;
  for (double g : sys.gamma) gmax = std::max(gmax, g);
  const double k_eff = std::max({K, std::sqrt(2.0) * gmax, 1.0});
  const double t_big = std::log(6.0 * k_eff) / (2.0 * lam);
  return std::max(6.0 * k_eff, 4.0 * std::exp(2.0 * lam * t_big));
}

}  // namespace

double bose_bound(const BosonSystem& sys, double K, double t) {
  validate(sys);
  const double a = decay_constant_a(sys, K);
  const double lam = big_lambda_bose(sys);
  return (std::pow(1.0 + a * std::exp(-2.0 * lam * t), sys.N) - 1.0) / 4.0;
}

double bose_mixing_time(const BosonSystem& sys, double K, double epsilon) {
  validate(sys);
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const double a = decay_constant_a(sys, K);
  const double lam = big_lambda_bose(sys);
  return std::log(a * sys.N / std::log1p(4.0 * epsilon * epsilon)) /
         (2.0 * lam);
}

Eigen::MatrixXd classical_birth_death(const BosonSystem& sys, int truncation) {
  validate(sys);
  if (sys.N != 1)
    throw std::invalid_argument("classical_birth_death: single mode only");
  if (truncation < 1)
    throw std::invalid_argument("classical_birth_death: truncation >= 1");
  const double ep = std::exp(sys.beta * sys.omegas[0] / 2.0);
  const int d = truncation + 1;
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(d, d);
  for (int l = 0; l <= truncation; ++l) {
    const double up = 2.0 * (l + 1) / ep;
    const double down = 2.0 * l * ep;
    if (l + 1 <= truncation) g(l, l + 1) += up;
    g(l, l) -= up;  // truncated: birth rate kept on the diagonal even at l=M
    if (l >= 1) {
      g(l, l - 1) += down;
      g(l, l) -= down;
    }
  }
  return g;
}

std::vector<double> chebyshev_like_eigenfunctions(const BosonSystem& sys,
                                                  int ell) {
  validate(sys);
  if (sys.N != 1)
    throw std::invalid_argument(
        "chebyshev_like_eigenfunctions: single mode only");
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const double gamma = sys.gamma[0], delta = sys.delta[0];
  const double prefactor = std::pow(gamma * delta, -0.5 * ell);
  std::vector<double> coeffs(ell + 1, 0.0);
  for (int j = 0; j <= ell; ++j) {
    const double w = double(binomial_ll(ell, j)) * ((j % 2) ? -1.0 : 1.0) *
                     std::pow(gamma, j) * prefactor;
    // C(m, ell-j) = m(m-1)...(m-(ell-j)+1)/(ell-j)!
    const int k = ell - j;
    std::vector<double> poly{1.0};
    for (int i = 0; i < k; ++i) {
      std::vector<double> next(poly.size() + 1, 0.0);
      for (std::size_t c = 0; c < poly.size(); ++c) {
        next[c + 1] += poly[c];
        next[c] -= double(i) * poly[c];
      }
      poly = std::move(next);
    }
    const double kfact = double(factorial_ll(k));
    for (std::size_t c = 0; c < poly.size(); ++c)
      coeffs[c] += w * poly[c] / kfact;
  }
  return coeffs;
}

namespace {

using RatPoly = std::vector<BoseRational>;  // coefficients in m, ascending

RatPoly poly_scale(RatPoly p, const BoseRational& c) {
  for (auto& x : p) x *= c;
  return p;
}

void poly_add(RatPoly& p, const RatPoly& q) {
  if (q.size() > p.size()) p.resize(q.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += q[i];
}

RatPoly poly_mul(const RatPoly& p, const RatPoly& q) {
  RatPoly out(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

// f(m + shift)
RatPoly poly_shift(const RatPoly& p, long long shift) {
  RatPoly out(p.size(), 0);
  for (std::size_t deg = 0; deg < p.size(); ++deg) {
    // (m + shift)^deg
    BoseRational pow_shift = 1;
    for (std::size_t i = 0; i <= deg; ++i) {
      const std::size_t exp_m = deg - i;
      BoseRational binom = 1;
      for (std::size_t r = 1; r <= i; ++r)
        binom = binom * BoseRational(deg - i + r) / BoseRational(r);
      out[exp_m] += p[deg] * binom * pow_shift;
      pow_shift *= shift;
    }
  }
  return out;
}

// C(m, k) as a rational polynomial in m
RatPoly falling_binomial(int k) {
  RatPoly poly{1};
  for (int i = 0; i < k; ++i)
    poly = poly_mul(poly, RatPoly{BoseRational(-i), 1});
  BoseRational kfact = 1;
  for (int i = 2; i <= k; ++i) kfact *= i;
  return poly_scale(poly, BoseRational(1) / kfact);
}

BoseRational rat_binomial(int n, int k) {
  BoseRational r = 1;
  for (int i = 1; i <= k; ++i) r = r * BoseRational(n - k + i) / BoseRational(i);
  return r;
}

}  // namespace

std::vector<BoseRational> classical_eigenfunction_exact(const BoseRational& s,
                                                        int ell) {
  if (s <= 1) throw std::invalid_argument("need s = e^{beta omega/2} > 1");
  if (ell < 0) throw std::invalid_argument("ell must be >= 0");
  const BoseRational gamma = BoseRational(1) / (s * s - 1);
  RatPoly f(1, 0);
  BoseRational gamma_j = 1;
  for (int j = 0; j <= ell; ++j) {
    const BoseRational w =
        rat_binomial(ell, j) * ((j % 2) ? -1 : 1) * gamma_j;
    poly_add(f, poly_scale(falling_binomial(ell - j), w));
    gamma_j *= gamma;
  }
  return f;
}

bool classical_eigen_identity_exact(const BoseRational& s, int ell) {
  const RatPoly f = classical_eigenfunction_exact(s, ell);
  // c+(m) = 2(m+1)/s, c-(m) = 2 m s
  RatPoly up_diff = poly_shift(f, 1);
  poly_add(up_diff, poly_scale(f, -1));
  RatPoly down_diff = poly_shift(f, -1);
  poly_add(down_diff, poly_scale(f, -1));

  RatPoly lf = poly_mul(RatPoly{BoseRational(2) / s, BoseRational(2) / s},
                        up_diff);
  poly_add(lf, poly_mul(RatPoly{0, 2 * s}, down_diff));

  // -L f must equal 2(s - 1/s) ell f
  RatPoly resid = poly_scale(lf, 1);
  poly_add(resid, poly_scale(f, 2 * (s - BoseRational(1) / s) * ell));
  for (const auto& c : resid)
    if (c != 0) return false;
  return true;
}

}  // namespace qms
