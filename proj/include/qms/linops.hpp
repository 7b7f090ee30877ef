// linops.hpp — operators, density states, the GNS inner product and the
// divergences (trace distance, quantum chi^2, relative entropy).

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace qms {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;

// Tolerances shared across the library.
namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double positivity = 1e-10;
inline constexpr double trace_one = 1e-10;
inline constexpr double eig_floor = 1e-12;
inline constexpr double gns = 1e-8;
}  // namespace tol

struct dimension_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct state_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Operator identity(Eigen::Index dim);

// Positive unit-trace operator; faithful iff the smallest eigenvalue is
// bounded away from zero.
struct DensityState {
  Operator op;
  bool faithful = false;

  Eigen::Index dim() const { return op.rows(); }
};

// Validates Hermiticity, positivity and unit trace, and sets the
// faithfulness flag. Throws state_error on violation.
DensityState make_density(const Operator& op);

// Maximally mixed state I/d.
DensityState maximally_mixed(Eigen::Index dim);

// Gibbs state exp(-beta h)/Z for Hermitian h.
DensityState gibbs_state(const Operator& h, double beta);

// Faithful state together with its cached inverse; carrier of the GNS
// inner product <a,b> = tr(a* sigma b).
struct GnsSpace {
  DensityState sigma;
  Operator sigma_inverse;

  Eigen::Index dim() const { return sigma.dim(); }
};

GnsSpace make_gns_space(const DensityState& sigma);

Complex gns_inner(const GnsSpace& space, const Operator& a, const Operator& b);
double gns_norm(const GnsSpace& space, const Operator& a);

// 1/2 sum |lambda_i| over the eigenvalues of rho - sigma.
double trace_distance(const DensityState& rho, const DensityState& sigma);

// tr((rho-sigma) sigma^{-1} (rho-sigma)); requires faithful sigma.
double chi2_divergence(const DensityState& rho, const GnsSpace& space);

// tr(rho (log rho - log sigma)); eigenvalues below tol::eig_floor are
// treated as zero. Throws state_error if supp(rho) is not contained in
// supp(sigma).
double relative_entropy(const DensityState& rho, const DensityState& sigma);

// Largest singular value.
double operator_norm(const Operator& a);

}  // namespace qms
