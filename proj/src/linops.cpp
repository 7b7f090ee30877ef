#include "qms/linops.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace qms {

Operator identity(Eigen::Index dim) {
  return Operator::Identity(dim, dim);
}

DensityState make_density(const Operator& op) {
  if (op.rows() != op.cols() || op.rows() == 0)
    throw state_error("density matrix must be square and nonempty");
  const double herm = (op - op.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol::hermiticity)
    throw state_error("density matrix not Hermitian");
  Eigen::SelfAdjointEigenSolver<Operator> es(op, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev.minCoeff() < -tol::positivity)
    throw state_error("density matrix has a negative eigenvalue");
  if (std::abs(op.trace().real() - 1.0) > tol::trace_one ||
      std::abs(op.trace().imag()) > tol::trace_one)
    throw state_error("density matrix trace is not 1");
  DensityState s;
  s.op = 0.5 * (op + op.adjoint().eval());
  s.faithful = ev.minCoeff() > tol::positivity;
  return s;
}

DensityState maximally_mixed(Eigen::Index dim) {
  return make_density(Operator::Identity(dim, dim) / double(dim));
}

DensityState gibbs_state(const Operator& h, double beta) {
  Eigen::SelfAdjointEigenSolver<Operator> es(h);
  // shift by the minimum energy so the exponentials stay bounded
  Eigen::VectorXd w = (-beta * (es.eigenvalues().array() -
                                es.eigenvalues().minCoeff()))
                          .exp();
  w /= w.sum();
  Operator sigma = es.eigenvectors() * w.asDiagonal() *
                   es.eigenvectors().adjoint();
  return make_density(sigma);
}

GnsSpace make_gns_space(const DensityState& sigma) {
  if (!sigma.faithful) throw state_error("GNS space requires a faithful state");
  GnsSpace space;
  space.sigma = sigma;
  space.sigma_inverse = sigma.op.inverse();
  return space;
}

Complex gns_inner(const GnsSpace& space, const Operator& a, const Operator& b) {
  if (a.rows() != space.dim() || b.rows() != space.dim() ||
      a.cols() != space.dim() || b.cols() != space.dim())
    throw dimension_mismatch("gns_inner: dimension mismatch");
  return (a.adjoint() * space.sigma.op * b).trace();
}

double gns_norm(const GnsSpace& space, const Operator& a) {
  return std::sqrt(std::max(0.0, gns_inner(space, a, a).real()));
}

double trace_distance(const DensityState& rho, const DensityState& sigma) {
  if (rho.dim() != sigma.dim())
    throw dimension_mismatch("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Operator> es(rho.op - sigma.op,
                                             Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double chi2_divergence(const DensityState& rho, const GnsSpace& space) {
  if (rho.dim() != space.dim())
    throw dimension_mismatch("chi2_divergence: dimension mismatch");
  const Operator d = rho.op - space.sigma.op;
  return std::max(0.0, (d * space.sigma_inverse * d).trace().real());
}

double relative_entropy(const DensityState& rho, const DensityState& sigma) {
  if (rho.dim() != sigma.dim())
    throw dimension_mismatch("relative_entropy: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Operator> er(rho.op), es(sigma.op);

  // support check: rho must carry no weight on the kernel of sigma
  Operator ker = Operator::Zero(rho.dim(), rho.dim());
  for (Eigen::Index i = 0; i < sigma.dim(); ++i)
    if (es.eigenvalues()(i) <= tol::eig_floor)
      ker += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  if ((ker * rho.op * ker).trace().real() > 1e-10)
    throw state_error("relative_entropy: supp(rho) not within supp(sigma)");

  double h = 0.0;  // tr(rho log rho)
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    const double p = er.eigenvalues()(i);
    if (p > tol::eig_floor) h += p * std::log(p);
  }
  // tr(rho log sigma) on the support of sigma
  Operator log_sigma = Operator::Zero(rho.dim(), rho.dim());
  for (Eigen::Index i = 0; i < sigma.dim(); ++i) {
    const double q = es.eigenvalues()(i);
    if (q > tol::eig_floor)
      log_sigma += std::log(q) * es.eigenvectors().col(i) *
                   es.eigenvectors().col(i).adjoint();
  }
  const double cross = (rho.op * log_sigma).trace().real();
  return h - cross;
}

double operator_norm(const Operator& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Operator>(a).singularValues()(0);
}

}  // namespace qms
