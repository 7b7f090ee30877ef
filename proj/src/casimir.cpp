#include "qms/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qms/sampling.hpp"

namespace qms {

namespace {

using BigInt = roots::BigInt;
using Rational = roots::Rational;

BigInt big_binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

double log_binomial(long long n, long long k) {
  return std::lgamma(double(n + 1)) - std::lgamma(double(k + 1)) -
         std::lgamma(double(n - k + 1));
}

struct StructureData {
  std::vector<Eigen::MatrixXcd> ad;  // adjoint matrices over the given basis
  double closure_residual = 0.0;
};

StructureData structure_constants(const std::vector<Operator>& basis) {
  const auto d = static_cast<Eigen::Index>(basis.size());
  if (d == 0) throw std::invalid_argument("empty Lie algebra basis");
  const Eigen::Index dv = basis[0].rows();

  Eigen::MatrixXcd span(dv * dv, d);
  for (Eigen::Index a = 0; a < d; ++a)
    span.col(a) = Eigen::Map<const Eigen::VectorXcd>(basis[a].data(), dv * dv);
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(span);
  if (cod.rank() < d)
    throw std::invalid_argument("Lie algebra basis is linearly dependent");

  StructureData out;
  out.ad.assign(d, Eigen::MatrixXcd::Zero(d, d));
  double scale = 0.0;
  for (const auto& x : basis) scale = std::max(scale, x.cwiseAbs().maxCoeff());
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      const Operator comm = basis[a] * basis[b] - basis[b] * basis[a];
      const Eigen::VectorXcd rhs =
          Eigen::Map<const Eigen::VectorXcd>(comm.data(), dv * dv);
      const Eigen::VectorXcd c = cod.solve(rhs);
      const double resid = (span * c - rhs).cwiseAbs().maxCoeff();
      out.closure_residual =
          std::max(out.closure_residual, resid / std::max(1.0, scale * scale));
      out.ad[a].col(b) = c;
    }
  return out;
}

std::vector<Operator> hermitian_gl_basis(int n, bool traceless) {
  std::vector<Operator> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Operator x = Operator::Zero(n, n), y = Operator::Zero(n, n);
      x(i, j) = x(j, i) = 1;
      y(i, j) = Complex(0, 1);
      y(j, i) = Complex(0, -1);
      out.push_back(x);
      out.push_back(y);
    }
  if (traceless) {
    for (int i = 0; i + 1 < n; ++i) {
      Operator h = Operator::Zero(n, n);
      h(i, i) = 1;
      h(i + 1, i + 1) = -1;
      out.push_back(h);
    }
  }
  return out;
}

}  // namespace

MatrixLieRep sl_defining(int n) {
  if (n < 2 || n > 5)
    throw std::invalid_argument("sl_defining: n must be in 2..5");
  MatrixLieRep rep;
  rep.algebra = "sl" + std::to_string(n);
  rep.dim_V = n;
  rep.hermitian_basis = hermitian_gl_basis(n, true);
  rep.basis = rep.hermitian_basis;
  rep.root_type = roots::Type::A;
  rep.root_rank = n - 1;
  std::vector<long long> hw(n - 1, 0);
  hw[0] = 1;
  rep.highest_weight = roots::WeightVec{hw};
  return rep;
}

MatrixLieRep so_defining(int n) {
  if (n < 3 || n > 7)
    throw std::invalid_argument("so_defining: n must be in 3..7");
  MatrixLieRep rep;
  rep.algebra = "so" + std::to_string(n);
  rep.dim_V = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Operator y = Operator::Zero(n, n);
      y(i, j) = Complex(0, 1);
      y(j, i) = Complex(0, -1);
      rep.hermitian_basis.push_back(y);
    }
  rep.basis = rep.hermitian_basis;
  if (n == 3) {
    rep.root_type = roots::Type::A;
    rep.root_rank = 1;
    rep.highest_weight = roots::WeightVec{{2}};
  } else if (n == 5) {
    rep.root_type = roots::Type::B;
    rep.root_rank = 2;
    rep.highest_weight = roots::WeightVec{{1, 0}};
  } else if (n == 7) {
    rep.root_type = roots::Type::B;
    rep.root_rank = 3;
    rep.highest_weight = roots::WeightVec{{1, 0, 0}};
  }
  // so4 (not simple) and so6 (use sl4 instead) carry no root datum here.
  return rep;
}

MatrixLieRep sp_defining(int two_n) {
  if (two_n != 4 && two_n != 6)
    throw std::invalid_argument("sp_defining: dimension must be 4 or 6");
  const int n = two_n / 2;
  MatrixLieRep rep;
  rep.algebra = "sp" + std::to_string(two_n);
  rep.dim_V = two_n;
  // Hermitian elements of sp(2n, C): [[A, B], [B*, -A^T]] with A Hermitian
  // and B symmetric.
  auto embed_a = [&](const Operator& a) {
    Operator x = Operator::Zero(two_n, two_n);
    x.topLeftCorner(n, n) = a;
    x.bottomRightCorner(n, n) = -a.transpose();
    return x;
  };
  auto embed_b = [&](const Operator& b) {
    Operator x = Operator::Zero(two_n, two_n);
    x.topRightCorner(n, n) = b;
    x.bottomLeftCorner(n, n) = b.adjoint();
    return x;
  };
  for (const auto& a : hermitian_gl_basis(n, false))
    rep.hermitian_basis.push_back(embed_a(a));
  for (int i = 0; i < n; ++i) {
    Operator e = Operator::Zero(n, n);
    e(i, i) = 1;
    rep.hermitian_basis.push_back(embed_a(e));
  }
  std::vector<Operator> sym;
  for (int i = 0; i < n; ++i) {
    Operator e = Operator::Zero(n, n);
    e(i, i) = 1;
    sym.push_back(e);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Operator e = Operator::Zero(n, n);
      e(i, j) = e(j, i) = 1;
      sym.push_back(e);
    }
  for (const auto& s : sym) {
    rep.hermitian_basis.push_back(embed_b(s));
    rep.hermitian_basis.push_back(embed_b(Complex(0, 1) * s));
  }
  rep.basis = rep.hermitian_basis;
  if (two_n == 4) {
    // sp4 ~ so5: the defining 4-dimensional module is V_{wp_2} of B2
    rep.root_type = roots::Type::B;
    rep.root_rank = 2;
    rep.highest_weight = roots::WeightVec{{0, 1}};
  } else {
    rep.root_type = roots::Type::C;
    rep.root_rank = 3;
    rep.highest_weight = roots::WeightVec{{1, 0, 0}};
  }
  return rep;
}

MatrixLieRep sl2_irrep(int n) {
  if (n < 2 || n > 40)
    throw std::invalid_argument("sl2_irrep: dimension must be in 2..40");
  Operator e = Operator::Zero(n, n);
  for (int x = 1; x < n; ++x)
    e(x - 1, x) = std::sqrt(double(x) * double(n - x));
  const Operator f = e.adjoint();
  Operator h = Operator::Zero(n, n);
  for (int x = 1; x <= n; ++x) h(x - 1, x - 1) = double(n + 1 - 2 * x);

  MatrixLieRep rep;
  rep.algebra = "sl2:n=" + std::to_string(n);
  rep.dim_V = n;
  rep.hermitian_basis = {e + f, Complex(0, 1) * (e - f), h};
  rep.basis = rep.hermitian_basis;
  rep.root_type = roots::Type::A;
  rep.root_rank = 1;
  rep.highest_weight = roots::WeightVec{{n - 1}};
  return rep;
}

MatrixLieRep sl3_adjoint() {
  const KillingFrame frame = killing_orthonormalize(sl_defining(3));
  const StructureData sd = structure_constants(frame.ell);
  MatrixLieRep rep;
  rep.algebra = "sl3:adjoint";
  rep.dim_V = 8;
  // Over a Killing-orthonormal Hermitian frame, each adjoint matrix is
  // Hermitian (i times a real antisymmetric matrix).
  for (const auto& ad : sd.ad) rep.hermitian_basis.push_back(ad);
  rep.basis = rep.hermitian_basis;
  rep.root_type = roots::Type::A;
  rep.root_rank = 2;
  rep.highest_weight = roots::WeightVec{{1, 1}};
  return rep;
}

void validate(const MatrixLieRep& rep) {
  if (rep.hermitian_basis.empty())
    throw std::invalid_argument("MatrixLieRep: empty Hermitian basis");
  for (const auto& x : rep.hermitian_basis) {
    if (x.rows() != rep.dim_V || x.cols() != rep.dim_V)
      throw dimension_mismatch("MatrixLieRep: basis dimension mismatch");
    if ((x - x.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("MatrixLieRep: basis element not Hermitian");
  }
  const StructureData sd = structure_constants(rep.hermitian_basis);
  if (sd.closure_residual > 1e-9)
    throw std::invalid_argument(
        "MatrixLieRep: commutators do not close in the span");
  LindbladSpec spec;
  spec.dim = rep.dim_V;
  spec.jumps = rep.hermitian_basis;
  if (!check_ergodic(spec))
    throw std::invalid_argument("MatrixLieRep: representation is reducible");
}

KillingFrame killing_orthonormalize(const MatrixLieRep& rep) {
  validate(rep);
  const StructureData sd = structure_constants(rep.hermitian_basis);
  const auto d = static_cast<Eigen::Index>(rep.hermitian_basis.size());
  Eigen::MatrixXd gram(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      const Complex k = (sd.ad[a] * sd.ad[b]).trace();
      if (std::abs(k.imag()) > 1e-9 * std::max(1.0, std::abs(k.real())))
        throw std::runtime_error("Killing form is not real on the basis");
      gram(a, b) = k.real();
    }
  gram = 0.5 * (gram + gram.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::invalid_argument(
        "Killing Gram matrix is not positive definite (wrong real form?)");
  const Eigen::MatrixXd inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseInverse().cwiseSqrt().asDiagonal() *
      es.eigenvectors().transpose();

  KillingFrame frame;
  frame.dim_V = rep.dim_V;
  for (Eigen::Index j = 0; j < d; ++j) {
    Operator l = Operator::Zero(rep.dim_V, rep.dim_V);
    for (Eigen::Index a = 0; a < d; ++a)
      l += inv_sqrt(j, a) * rep.hermitian_basis[a];
    frame.ell.push_back(l);
  }
  return frame;
}

LindbladSpec casimir_spec(const KillingFrame& frame) {
  LindbladSpec spec;
  spec.dim = frame.dim_V;
  spec.jumps = frame.ell;
  return spec;
}

Superoperator build_casimir_generator(const KillingFrame& frame) {
  return build_generator(casimir_spec(frame));
}

std::map<roots::Rational, long long> predicted_spectrum(
    const roots::RootDatum& datum, const roots::WeightVec& lambda) {
  const roots::WeightVec dual = roots::dual_weight(datum, lambda);
  std::map<roots::Rational, long long> spectrum;
  for (const auto& [mu, n] : roots::tensor_decompose(datum, lambda, dual)) {
    const long long dim =
        roots::weyl_dimension(datum, mu).convert_to<long long>();
    spectrum[roots::casimir_scalar(datum, mu)] += n * dim;
  }
  return spectrum;
}

double casimir_decay_constant(const roots::RootDatum& datum, double gap) {
  const int r = datum.rank;
  double total = 0.0;
  double prev_shell = std::numeric_limits<double>::infinity();
  for (long long s = 1; s <= 500; ++s) {
    double shell = 0.0;
    std::vector<long long> n(r, 0);
    auto recurse = [&](auto&& self, int pos, long long left) -> void {
      if (pos == r - 1) {
        n[pos] = left;
        // membership in the root lattice
        for (int i = 0; i < r; ++i) {
          Rational c = 0;
          for (int j = 0; j < r; ++j) c += datum.cartan_inverse[i][j] * n[j];
          if (denominator(c) != 1) return;
        }
        const roots::WeightVec mu{n};
        const double c_mu =
            roots::casimir_scalar(datum, mu).convert_to<double>();
        const double dim =
            roots::weyl_dimension(datum, mu).convert_to<double>();
        shell += std::exp(-2.0 * c_mu) * dim * dim * dim;
        return;
      }
      for (long long k = 0; k <= left; ++k) {
        n[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    recurse(recurse, 0, s);
    total += shell;
    if (total > 0 && shell < prev_shell && shell <= 1e-12 * total)
      return 0.5 * std::exp(gap) * std::sqrt(total);
    if (shell > 0) prev_shell = shell;
  }
  throw std::runtime_error("decay-constant series did not converge");
}

GapDecay gap_and_decay(const MatrixLieRep& rep) {
  if (!rep.root_type)
    throw std::invalid_argument("gap_and_decay: no root datum for this rep");
  const KillingFrame frame = killing_orthonormalize(rep);
  const Superoperator gen = build_casimir_generator(frame);
  const GnsSpace space = make_gns_space(maximally_mixed(rep.dim_V));
  const SpectralBasis basis = spectral_decomposition(gen, space);

  GapDecay gd;
  gd.gap = spectral_gap(basis);
  const roots::RootDatum datum =
      roots::build_root_datum(*rep.root_type, rep.root_rank);
  gd.g0 = roots::compute_g0(datum).g0;
  gd.decay_constant = casimir_decay_constant(datum, gd.gap);
  return gd;
}

double decay_bound(const GapDecay& gd, double t) {
  return gd.decay_constant * std::exp(-gd.gap * t);
}

std::vector<std::vector<int>> eigen_clusters(const SpectralBasis& basis,
                                             double rel_tol) {
  std::vector<std::vector<int>> clusters;
  for (int j = 0; j < static_cast<int>(basis.eigenvalues.size()); ++j) {
    const double lam = basis.eigenvalues[j];
    if (clusters.empty() ||
        lam - basis.eigenvalues[clusters.back().back()] >
            rel_tol * std::max(1.0, lam))
      clusters.emplace_back();
    clusters.back().push_back(j);
  }
  return clusters;
}

double check_norm_bound(const SpectralBasis& basis, const GnsSpace& space,
                        double cluster_rel_tol) {
  double worst = 0.0;
  for (const auto& cluster : eigen_clusters(basis, cluster_rel_tol)) {
    const double root_dim = std::sqrt(double(cluster.size()));
    for (int j : cluster) {
      const double ratio =
          operator_norm(basis.eigenvectors[j]) /
          (root_dim * gns_norm(space, basis.eigenvectors[j]));
      worst = std::max(worst, ratio);
    }
  }
  return worst;
}

double cluster_identity_residual(const SpectralBasis& basis,
                                 double cluster_rel_tol) {
  double worst = 0.0;
  const Eigen::Index d = basis.eigenvectors.front().rows();
  for (const auto& cluster : eigen_clusters(basis, cluster_rel_tol)) {
    Operator sum = Operator::Zero(d, d);
    for (int j : cluster)
      sum += basis.eigenvectors[j].adjoint() * basis.eigenvectors[j];
    sum -= double(cluster.size()) * identity(d);
    worst = std::max(worst, sum.cwiseAbs().maxCoeff());
  }
  return worst;
}

Superoperator sl2_standard_generator(int n) {
  if (n < 2) throw std::invalid_argument("sl2_standard_generator: n >= 2");
  Operator e = Operator::Zero(n, n);
  for (int x = 1; x < n; ++x)
    e(x - 1, x) = std::sqrt(double(x) * double(n - x));
  const Operator f = e.adjoint();
  Operator h = Operator::Zero(n, n);
  for (int x = 1; x <= n; ++x) h(x - 1, x - 1) = double(n + 1 - 2 * x);

  const Operator id = identity(n);
  auto ad = [&](const Operator& x) {
    return (kron(x, id) - kron(id, x.transpose())).eval();
  };
  const Eigen::MatrixXcd ae = ad(e), af = ad(f), ah = ad(h);

  Superoperator gen;
  gen.dim = n;
  gen.matrix = -0.25 * (ae * af + af * ae + 0.5 * ah * ah);
  return gen;
}

Operator sl2_apply_standard(int n, const Operator& a) {
  if (a.rows() != n || a.cols() != n)
    throw dimension_mismatch("sl2_apply_standard: dimension mismatch");
  Operator e = Operator::Zero(n, n);
  for (int x = 1; x < n; ++x)
    e(x - 1, x) = std::sqrt(double(x) * double(n - x));
  const Operator f = e.adjoint();
  Operator h = Operator::Zero(n, n);
  for (int x = 1; x <= n; ++x) h(x - 1, x - 1) = double(n + 1 - 2 * x);
  auto ad = [](const Operator& x, const Operator& y) {
    return (x * y - y * x).eval();
  };
  return -0.25 * (ad(e, ad(f, a)) + ad(f, ad(e, a)) +
                  0.5 * ad(h, ad(h, a)));
}

std::vector<Operator> sl2_explicit_eigenvectors(int n) {
  if (n < 2 || n > 40)
    throw std::invalid_argument("sl2_explicit_eigenvectors: n in 2..40");
  std::vector<Operator> out;
  for (int i = 0; i < n; ++i) {
    for (int l = 0; l <= 2 * i; ++l) {
      // prefactor i! sqrt(n) / (l! sqrt(C(2i,l) C(n+i,2i+1)))
      const double log_pre = std::lgamma(double(i + 1)) -
                             std::lgamma(double(l + 1)) +
                             0.5 * (std::log(double(n)) - log_binomial(2 * i, l) -
                                    log_binomial(n + i, 2 * i + 1));
      Operator v = Operator::Zero(n, n);
      for (int x = 1; x <= n; ++x) {
        const int y = x + i - l;  // column index
        if (y < 1 || y > n) continue;
        BigInt sum = 0;
        for (int j = 0; j <= l; ++j) {
          const BigInt term = big_binomial(l, j) *
                              big_binomial(x + i - j - 1, i) *
                              big_binomial(n - x + j, i);
          sum += ((l - j) % 2) ? -term : term;
        }
        // sqrt((x-1)! (n-x-i+l)! / ((x-1+i-l)! (n-x)!))
        const double log_g =
            0.5 * (std::lgamma(double(x)) + std::lgamma(double(n - x - i + l + 1)) -
                   std::lgamma(double(x + i - l)) - std::lgamma(double(n - x + 1)));
        v(x - 1, y - 1) = sum.convert_to<double>() * std::exp(log_pre + log_g);
      }
      out.push_back(v);
    }
  }
  return out;
}

Sl2Classical sl2_classical_restriction(int n) {
  if (n < 2) throw std::invalid_argument("sl2_classical_restriction: n >= 2");
  Sl2Classical out;
  out.generator = Eigen::MatrixXd::Zero(n, n);
  for (int x = 1; x <= n; ++x) {
    const double up = 0.5 * double(x) * double(n - x);
    const double down = 0.5 * double(x - 1) * double(n - x + 1);
    if (x + 1 <= n) out.generator(x - 1, x) += up;
    if (x - 1 >= 1) out.generator(x - 1, x - 2) += down;
    out.generator(x - 1, x - 1) -= up + down;
  }

  out.eigenfunctions = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double pre1 =
        std::exp(0.5 * (std::log(double(n)) - log_binomial(2 * i, i) -
                        log_binomial(n + i, 2 * i + 1)));
    const double pre2 =
        std::exp(std::lgamma(double(i + 1)) +
                 0.5 * (std::lgamma(double(n - i)) - std::lgamma(double(n + i + 1)) +
                        std::log(double(2 * i + 1)) + std::log(double(n))));
    for (int x = 1; x <= n; ++x) {
      BigInt s1 = 0, s2 = 0;
      for (int j = 0; j <= i; ++j) {
        const int sign = ((i - j) % 2) ? -1 : 1;
        s1 += sign * big_binomial(i, j) * big_binomial(x + i - j - 1, i) *
              big_binomial(n - x + j, i);
        s2 += sign * big_binomial(i, j) * big_binomial(x - 1, j) *
              big_binomial(n - x, i - j);
      }
      const double v1 = pre1 * s1.convert_to<double>();
      const double v2 = pre2 * s2.convert_to<double>();
      if (std::abs(v1 - v2) > 1e-8 * std::max(1.0, std::abs(v2)))
        throw std::runtime_error(
            "classical eigenfunction forms disagree beyond tolerance");
      out.eigenfunctions(i, x - 1) = v2;
    }
  }
  return out;
}

namespace {

using RatPoly = std::vector<Rational>;  // coefficients in x, ascending

void rp_add(RatPoly& p, const RatPoly& q, const Rational& c) {
  if (q.size() > p.size()) p.resize(q.size(), 0);
  for (std::size_t i = 0; i < q.size(); ++i) p[i] += c * q[i];
}

RatPoly rp_mul(const RatPoly& p, const RatPoly& q) {
  RatPoly out(p.size() + q.size() - 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

RatPoly rp_shift(const RatPoly& p, long long shift) {
  RatPoly out(p.size(), 0);
  for (std::size_t deg = 0; deg < p.size(); ++deg) {
    Rational pow_shift = 1;
    for (std::size_t i = 0; i <= deg; ++i) {
      Rational binom = 1;
      for (std::size_t r = 1; r <= i; ++r)
        binom = binom * Rational(deg - i + r) / Rational(r);
      out[deg - i] += p[deg] * binom * pow_shift;
      pow_shift *= shift;
    }
  }
  return out;
}

// C(a0 + a1 x, k) as a polynomial in x
RatPoly rp_binomial(long long a0, long long a1, int k) {
  RatPoly poly{1};
  Rational kfact = 1;
  for (int r = 0; r < k; ++r) {
    poly = rp_mul(poly, RatPoly{Rational(a0 - r), Rational(a1)});
    kfact *= (r + 1);
  }
  for (auto& c : poly) c /= kfact;
  return poly;
}

}  // namespace

bool sl2_classical_identity_exact(int n, int i) {
  if (n < 2 || i < 0 || i >= n)
    throw std::invalid_argument("sl2_classical_identity_exact: need 0 <= i < n");
  // p_i(x) = sum_j (-1)^{i-j} C(i,j) C(x-1,j) C(n-x,i-j)
  RatPoly p(1, 0);
  for (int j = 0; j <= i; ++j) {
    Rational c = 1;
    for (int r = 1; r <= j; ++r) c = c * Rational(i - j + r) / Rational(r);
    if ((i - j) % 2) c = -c;
    rp_add(p, rp_mul(rp_binomial(-1, 1, j), rp_binomial(n, -1, i - j)), c);
  }
  // resid = L_cl p + (1/2) i(i+1) p, with
  // (L_cl p)(x) = (1/2)x(n-x)[p(x+1)-p(x)] + (1/2)(x-1)(n-x+1)[p(x-1)-p(x)]
  RatPoly up = rp_shift(p, 1);
  rp_add(up, p, -1);
  RatPoly down = rp_shift(p, -1);
  rp_add(down, p, -1);

  RatPoly resid = rp_mul(rp_mul(RatPoly{0, Rational(1, 2)},
                                RatPoly{Rational(n), -1}),
                         up);
  rp_add(resid,
         rp_mul(rp_mul(RatPoly{Rational(-1, 2), Rational(1, 2)},
                       RatPoly{Rational(n + 1), -1}),
                down),
         1);
  rp_add(resid, p, Rational(i) * Rational(i + 1) / 2);
  for (const auto& c : resid)
    if (c != 0) return false;
  return true;
}

double gamma_calculus_check(const KillingFrame& frame, int samples,
                            std::uint64_t seed) {
  const LindbladSpec spec = casimir_spec(frame);
  auto gamma = [&](const Operator& a, const Operator& b) {
    return (0.5 * (apply_generator(spec, a * b) - apply_generator(spec, a) * b -
                   a * apply_generator(spec, b)))
        .eval();
  };
  auto gamma2 = [&](const Operator& a, const Operator& b) {
    return (0.5 * (apply_generator(spec, gamma(a, b)) -
                   gamma(apply_generator(spec, a), b) -
                   gamma(a, apply_generator(spec, b))))
        .eval();
  };
  Rng rng(seed);
  double min_eig = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const Operator a = random_operator(rng, frame.dim_V);
    const Operator m = gamma2(a, a.adjoint()) - 0.25 * gamma(a, a.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> es(
        Operator(0.5 * (m + m.adjoint())));
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  return min_eig;
}

double gamma_tensor_identity_residual(const KillingFrame& frame) {
  const Eigen::Index d2 = frame.dim_V * frame.dim_V;
  Eigen::MatrixXcd resid = Eigen::MatrixXcd::Zero(d2, d2);
  for (const auto& li : frame.ell)
    for (const auto& lj : frame.ell) {
      const Operator comm = li * lj - lj * li;
      resid += kron(comm, comm);
    }
  for (const auto& l : frame.ell) resid += kron(l, l);
  return resid.cwiseAbs().maxCoeff();
}

KillingFrame so3_angular_momentum(int n) {
  if (n < 2) throw std::invalid_argument("so3_angular_momentum: n >= 2");
  const double j = 0.5 * double(n - 1);
  Operator jp = Operator::Zero(n, n);
  for (int x = 1; x < n; ++x) {
    const double m = j - double(x);
    jp(x - 1, x) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Operator jm = jp.adjoint();
  Operator jz = Operator::Zero(n, n);
  for (int x = 0; x < n; ++x) jz(x, x) = j - double(x);

  KillingFrame frame;
  frame.dim_V = n;
  frame.ell = {0.5 * (jp + jm), Complex(0, -0.5) * (jp - jm), jz};
  return frame;
}

}  // namespace qms
