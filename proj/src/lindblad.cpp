#include "qms/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <unsupported/Eigen/MatrixFunctions>

#include "qms/parallel.hpp"

namespace qms {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Eigen::MatrixXcd out(ar * br, ac * bc);
  parallel::parallel_for(ar, [&](std::int64_t i) {
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  });
  return out;
}

Operator apply_generator(const LindbladSpec& spec, const Operator& a) {
  Operator out = Operator::Zero(spec.dim, spec.dim);
  if (spec.hamiltonian) {
    const Operator& h = *spec.hamiltonian;
    out += Complex(0, 1) * (h * a - a * h);
  }
  for (const auto& l : spec.jumps) {
    const Operator ls = l.adjoint();
    out += (ls * a - a * ls) * l + ls * (a * l - l * a);
  }
  return out;
}

namespace {

Operator ad_sigma(const DensityState& sigma, const Operator& sigma_inv,
                  const Operator& x) {
  return sigma.op * x * sigma_inv;
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

void validate(const LindbladSpec& spec) {
  if (spec.dim <= 0) throw dimension_mismatch("LindbladSpec: dim must be positive");
  if (spec.hamiltonian) {
    const Operator& h = *spec.hamiltonian;
    if (h.rows() != spec.dim || h.cols() != spec.dim)
      throw dimension_mismatch("LindbladSpec: Hamiltonian dimension mismatch");
    if (max_abs(h - h.adjoint()) > tol::hermiticity)
      throw state_error("LindbladSpec: Hamiltonian not Hermitian");
  }
  for (const auto& l : spec.jumps)
    if (l.rows() != spec.dim || l.cols() != spec.dim)
      throw dimension_mismatch("LindbladSpec: jump dimension mismatch");
}

Eigen::VectorXcd vectorize(const Operator& a) {
  const Eigen::Index d = a.rows();
  Eigen::VectorXcd v(d * d);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) v(x * d + y) = a(x, y);
  return v;
}

Operator unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim) {
  Operator a(dim, dim);
  for (Eigen::Index x = 0; x < dim; ++x)
    for (Eigen::Index y = 0; y < dim; ++y) a(x, y) = v(x * dim + y);
  return a;
}

Operator Superoperator::apply(const Operator& a) const {
  return unvectorize(matrix * vectorize(a), dim);
}

Superoperator sandwich_superoperator(const Operator& x, const Operator& y) {
  Superoperator s;
  s.dim = x.rows();
  s.matrix = kron(x, y.transpose());
  return s;
}

Superoperator build_dissipative_part(const LindbladSpec& spec) {
  validate(spec);
  const Eigen::Index d = spec.dim;
  const Operator id = identity(d);
  Superoperator s;
  s.dim = d;
  s.matrix = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& l : spec.jumps) {
    const Operator lsl = l.adjoint() * l;
    s.matrix += 2.0 * kron(l.adjoint(), l.transpose());
    s.matrix -= kron(lsl, id);
    s.matrix -= kron(id, lsl.transpose());
  }
  return s;
}

Superoperator build_generator(const LindbladSpec& spec) {
  Superoperator s = build_dissipative_part(spec);
  if (spec.hamiltonian) {
    const Operator& h = *spec.hamiltonian;
    const Operator id = identity(spec.dim);
    s.matrix += Complex(0, 1) * (kron(h, id) - kron(id, h.transpose()));
  }
  return s;
}

Superoperator build_dual(const LindbladSpec& spec) {
  validate(spec);
  const Eigen::Index d = spec.dim;
  const Operator id = identity(d);
  Superoperator s;
  s.dim = d;
  s.matrix = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (const auto& l : spec.jumps) {
    const Operator lsl = l.adjoint() * l;
    s.matrix += 2.0 * kron(l, l.adjoint().transpose());
    s.matrix -= kron(lsl, id);
    s.matrix -= kron(id, lsl.transpose());
  }
  if (spec.hamiltonian) {
    const Operator& h = *spec.hamiltonian;
    s.matrix -= Complex(0, 1) * (kron(h, id) - kron(id, h.transpose()));
  }
  return s;
}

DetailedBalanceReport check_detailed_balance(const LindbladSpec& spec,
                                             const DensityState& sigma,
                                             double threshold) {
  validate(spec);
  if (!sigma.faithful)
    throw state_error("check_detailed_balance requires a faithful state");
  const Eigen::Index d = spec.dim;
  const Operator sigma_inv = sigma.op.inverse();
  const Operator id = identity(d);

  Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Zero(d * d, d * d);
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(d * d, d * d);
  Operator weighted = Operator::Zero(d, d);  // sum Ad_sigma(l*l) - l*l
  for (const auto& l : spec.jumps) {
    const Operator ad_ls = ad_sigma(sigma, sigma_inv, l.adjoint());
    lhs += kron(l, ad_ls);
    rhs += kron(l.adjoint(), l);
    const Operator lsl = l.adjoint() * l;
    weighted += ad_sigma(sigma, sigma_inv, lsl) - lsl;
  }

  DetailedBalanceReport rep;
  rep.residual_sufficient = max_abs(lhs - rhs);
  rep.residual_necessary = max_abs(2.0 * (lhs - rhs) - kron(id, weighted));
  rep.holds_sufficient = rep.residual_sufficient < threshold;
  rep.holds_necessary = rep.residual_necessary < threshold;
  return rep;
}

LindbladSpec ad_sigma_construction(
    const DensityState& sigma,
    const std::vector<std::pair<double, Operator>>& pairs) {
  if (!sigma.faithful)
    throw state_error("ad_sigma_construction requires a faithful state");
  const Operator sigma_inv = sigma.op.inverse();
  const Eigen::Index d = sigma.dim();

  for (const auto& [omega, v] : pairs) {
    if (v.rows() != d || v.cols() != d)
      throw dimension_mismatch("ad_sigma_construction: dimension mismatch");
    const double scale = std::max(1.0, max_abs(v));
    const double resid =
        max_abs(ad_sigma(sigma, sigma_inv, v) - std::exp(omega) * v);
    if (resid > 1e-8 * scale)
      throw state_error(
          "ad_sigma_construction: v is not an Ad_sigma eigenvector for the "
          "given omega");
  }
  // closure under (omega, v) -> (-omega, v*)
  for (const auto& [omega, v] : pairs) {
    bool found = false;
    for (const auto& [omega2, v2] : pairs) {
      if (std::abs(omega2 + omega) < 1e-8 &&
          max_abs(v2 - v.adjoint()) < 1e-8 * std::max(1.0, max_abs(v))) {
        found = true;
        break;
      }
    }
    if (!found)
      throw state_error(
          "ad_sigma_construction: pair list not closed under adjoints");
  }

  LindbladSpec spec;
  spec.dim = d;
  for (const auto& [omega, v] : pairs)
    spec.jumps.push_back(std::exp(omega / 4.0) * v);
  return spec;
}

SpectralBasis spectral_decomposition(const Superoperator& L,
                                     const GnsSpace& space,
                                     double self_adjoint_tol) {
  const Eigen::Index d = L.dim;
  if (d != space.dim())
    throw dimension_mismatch("spectral_decomposition: dimension mismatch");
  const Eigen::Index n = d * d;

  // GNS Gram of the matrix-unit basis: <u,v>_sigma = vec(u)^* M vec(v),
  // i.e. M = kron(sigma, I) in the row-major vectorization.
  Eigen::MatrixXcd m(n, n);
  m.setZero();
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index xp = 0; xp < d; ++xp)
      for (Eigen::Index y = 0; y < d; ++y)
        m(x * d + y, xp * d + y) = space.sigma.op(x, xp);

  Eigen::MatrixXcd s = -(m * L.matrix);  // represents -L in the GNS metric
  const double asym = max_abs(s - s.adjoint());
  if (asym > self_adjoint_tol * std::max(1.0, max_abs(s)))
    throw not_self_adjoint("generator is not self-adjoint in L2(sigma)");
  s = 0.5 * (s + s.adjoint().eval());

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(s, m);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("generalized eigensolver failed");

  SpectralBasis basis;
  basis.eigenvalues.resize(n);
  basis.eigenvectors.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    basis.eigenvalues[j] = ges.eigenvalues()(j);
    Operator f = unvectorize(ges.eigenvectors().col(j), d);
    // phase fix: largest-modulus entry real positive
    Eigen::Index rmax = 0, cmax = 0;
    f.cwiseAbs().maxCoeff(&rmax, &cmax);
    const Complex z = f(rmax, cmax);
    if (std::abs(z) > 0) f *= std::conj(z) / std::abs(z);
    basis.eigenvectors[j] = f;
  }

  // zero mode of an ergodic generator is the identity
  if (n >= 2 && std::abs(basis.eigenvalues[0]) < 1e-8 &&
      basis.eigenvalues[1] > 1e-8) {
    basis.eigenvectors[0] = identity(d);
  }
  return basis;
}

bool check_ergodic(const LindbladSpec& spec) {
  validate(spec);
  const Eigen::Index d = spec.dim;
  const Eigen::Index n = d * d;
  if (spec.jumps.empty()) return n == 1;

  const Operator id = identity(d);
  Eigen::MatrixXcd stacked(2 * spec.jumps.size() * n, n);
  Eigen::Index row = 0;
  for (const auto& l : spec.jumps) {
    stacked.block(row, 0, n, n) = kron(id, l.transpose()) - kron(l, id);
    row += n;
    const Operator ls = l.adjoint();
    stacked.block(row, 0, n, n) = kron(id, ls.transpose()) - kron(ls, id);
    row += n;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index nullity = n;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) --nullity;
  return nullity == 1;
}

double spectral_gap(const SpectralBasis& basis, double zero_tol) {
  if (basis.eigenvalues.size() < 2)
    throw not_ergodic("spectral basis too small");
  if (std::abs(basis.eigenvalues[0]) > zero_tol)
    throw not_ergodic("smallest eigenvalue of -L is not zero");
  if (basis.eigenvalues[1] < zero_tol)
    throw not_ergodic("zero eigenvalue of -L is degenerate");
  return basis.eigenvalues[1];
}

double ergodicity_bound(const SpectralBasis& basis, const DensityState& rho,
                        double t) {
  double sum = 0.0;
  for (std::size_t j = 1; j < basis.eigenvectors.size(); ++j) {
    const Complex val = (rho.op * basis.eigenvectors[j]).trace();
    sum += std::exp(-2.0 * basis.eigenvalues[j] * t) * std::norm(val);
  }
  return 0.25 * sum;
}

std::vector<double> basis_operator_norms(const SpectralBasis& basis) {
  std::vector<double> norms(basis.eigenvectors.size(), 0.0);
  parallel::parallel_for(
      static_cast<std::int64_t>(basis.eigenvectors.size()),
      [&](std::int64_t j) { norms[j] = operator_norm(basis.eigenvectors[j]); });
  return norms;
}

double ergodicity_bound_uniform(const SpectralBasis& basis, double t) {
  const std::vector<double> norms = basis_operator_norms(basis);
  double sum = 0.0;
  for (std::size_t j = 1; j < norms.size(); ++j)
    sum += std::exp(-2.0 * basis.eigenvalues[j] * t) * norms[j] * norms[j];
  return 0.25 * sum;
}

DensityState evolve_state(const Eigen::MatrixXcd& dual_exponential,
                          const DensityState& rho) {
  const Eigen::Index d = rho.dim();
  Operator out = unvectorize(dual_exponential * vectorize(rho.op), d);
  out = 0.5 * (out + out.adjoint().eval());
  const double drift = std::abs(out.trace().real() - 1.0);
  if (drift > 1e-9)
    throw state_error("evolve_state: trace drift exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<Operator> es(out);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw state_error(
        "evolve_state: positivity violation — generator is not a valid "
        "Lindblad dual");
  // clip eigenvalue noise and renormalize
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  w /= w.sum();
  out = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return make_density(out);
}

DensityState evolve_state(const LindbladSpec& spec, const DensityState& rho,
                          double t) {
  if (t < 0) throw std::invalid_argument("evolve_state: t must be >= 0");
  const Superoperator dual = build_dual(spec);
  const Eigen::MatrixXcd e = (t * dual.matrix).exp();
  return evolve_state(e, rho);
}

double check_time_reversal(const LindbladSpec& spec, const DensityState& sigma,
                           const std::vector<double>& times,
                           const std::vector<Operator>& ops) {
  validate(spec);
  if (times.size() != ops.size() || times.empty())
    throw std::invalid_argument("check_time_reversal: need matching nonempty "
                                "times and operators");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw std::invalid_argument("check_time_reversal: times must ascend");

  const Superoperator L = build_generator(spec);
  const Eigen::Index d = spec.dim;
  std::map<double, Eigen::MatrixXcd> cache;
  auto semigroup = [&](double t, const Operator& a) -> Operator {
    if (t == 0.0) return a;
    auto it = cache.find(t);
    if (it == cache.end())
      it = cache.emplace(t, (t * L.matrix).exp()).first;
    return unvectorize(it->second * vectorize(a), d);
  };

  const std::size_t n = ops.size();
  // forward: P_{t1}(a1 P_{t2-t1}(a2 ... P_{tn-t_{n-1}}(an)...))
  Operator fwd = ops[n - 1];
  for (std::size_t k = n - 1; k-- > 0;)
    fwd = ops[k] * semigroup(times[k + 1] - times[k], fwd);
  fwd = semigroup(times[0], fwd);

  // reversed: P(... P_{t3-t2}(P_{t2-t1}(a1) a2) ... an); the outermost
  // semigroup factor drops under the trace against the invariant state.
  Operator rev = ops[0];
  for (std::size_t k = 1; k < n; ++k)
    rev = semigroup(times[k] - times[k - 1], rev) * ops[k];
  rev = semigroup(times[0], rev);

  const Complex cf = (sigma.op * fwd).trace();
  const Complex cr = (sigma.op * rev).trace();
  return std::abs(cf - cr);
}

double dirichlet_form(const LindbladSpec& spec, const GnsSpace& space,
                      const Operator& a) {
  const Superoperator L0 = build_dissipative_part(spec);
  return -gns_inner(space, a, L0.apply(a)).real();
}

}  // namespace qms
