// lindblad.hpp — Lindblad generators, detailed balance, superoperator
// spectra in the GNS metric, and the trace-distance ergodicity bounds.
//
// Sign convention: the semigroup is P_t = exp(tL) and spectra are always
// reported for -L, so eigenvalues satisfy 0 = lambda_0 <= lambda_1 <= ...
// for reversible ergodic generators.

#pragma once

#include <optional>
#include <vector>

#include "qms/linops.hpp"

namespace qms {

struct LindbladSpec {
  Eigen::Index dim = 0;
  std::optional<Operator> hamiltonian;  // Hermitian when present
  std::vector<Operator> jumps;
};

// Throws on non-Hermitian Hamiltonian or mismatched jump dimensions.
void validate(const LindbladSpec& spec);

// Linear map on End(H) stored densely over the matrix-unit basis E_xy in
// row-major order: vec(a)[x*dim+y] = a(x,y).
struct Superoperator {
  Eigen::Index dim = 0;  // operator dimension; matrix is dim^2 x dim^2
  Eigen::MatrixXcd matrix;

  Operator apply(const Operator& a) const;
};

Eigen::VectorXcd vectorize(const Operator& a);
Operator unvectorize(const Eigen::VectorXcd& v, Eigen::Index dim);

// Kronecker product; with the row-major vectorization above, the
// superoperator of a |-> x a y is kron(x, y^T).
Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// L a applied directly to a single operator, without assembling the
// dim^2 x dim^2 superoperator. O(J d^3).
Operator apply_generator(const LindbladSpec& spec, const Operator& a);

// Superoperator of a |-> x a y  (both optional sides).
Superoperator sandwich_superoperator(const Operator& x, const Operator& y);

// L a = i[h,a] + sum_j ([l_j*, a] l_j + l_j* [a, l_j])
Superoperator build_generator(const LindbladSpec& spec);

// As build_generator but with the Hamiltonian part dropped.
Superoperator build_dissipative_part(const LindbladSpec& spec);

// L† rho = -i[h,rho] + sum_j ([l_j rho, l_j*] + [l_j, rho l_j*])
Superoperator build_dual(const LindbladSpec& spec);

struct DetailedBalanceReport {
  bool holds_sufficient = false;
  bool holds_necessary = false;
  double residual_sufficient = 0.0;
  double residual_necessary = 0.0;
};

// Tests the tensor conditions for self-adjointness of the dissipative part
// in L2(sigma): the sufficient one sum l_j (x) Ad_sigma(l_j*) = sum l_j* (x) l_j
// and the necessary-and-sufficient one.
DetailedBalanceReport check_detailed_balance(const LindbladSpec& spec,
                                             const DensityState& sigma,
                                             double threshold = 1e-9);

// Builds jumps e^{omega_j/4} v_j from eigenvectors of Ad_sigma; each v must
// satisfy sigma v sigma^{-1} = e^omega v and the list must be closed under
// (omega, v) -> (-omega, v*).
LindbladSpec ad_sigma_construction(
    const DensityState& sigma,
    const std::vector<std::pair<double, Operator>>& pairs);

struct SpectralBasis {
  std::vector<double> eigenvalues;   // of -L, ascending
  std::vector<Operator> eigenvectors;  // orthonormal in L2(sigma)
};

struct not_self_adjoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct not_ergodic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigenpairs of -L, orthonormal in L2(sigma). Requires L self-adjoint in
// the GNS metric (checked; throws not_self_adjoint). Eigenvectors are
// phase-fixed so the largest-modulus entry is real positive; the zero mode
// of an ergodic generator is replaced by the identity.
SpectralBasis spectral_decomposition(const Superoperator& L,
                                     const GnsSpace& space,
                                     double self_adjoint_tol = 1e-8);

// True iff the commutant of {l_j, l_j*} is the scalars.
bool check_ergodic(const LindbladSpec& spec);

// lambda_1; throws not_ergodic when the zero eigenvalue is degenerate.
double spectral_gap(const SpectralBasis& basis, double zero_tol = 1e-8);

// 1/4 sum_{j>=1} e^{-2 lambda_j t} |rho(f_j)|^2
double ergodicity_bound(const SpectralBasis& basis, const DensityState& rho,
                        double t);

// 1/4 sum_{j>=1} e^{-2 lambda_j t} ||f_j||^2  (operator norms)
double ergodicity_bound_uniform(const SpectralBasis& basis, double t);

// Operator norms of all eigenvectors, aligned with basis.eigenvalues;
// precompute once for sweeps of ergodicity_bound_uniform over many times.
std::vector<double> basis_operator_norms(const SpectralBasis& basis);

// exp(t L†) rho via dense matrix exponential of the dual generator.
DensityState evolve_state(const LindbladSpec& spec, const DensityState& rho,
                          double t);

// Same, with the dual superoperator exponential precomputed by the caller.
DensityState evolve_state(const Eigen::MatrixXcd& dual_exponential,
                          const DensityState& rho);

// Absolute difference between the forward and time-reversed multi-time
// correlations tr(sigma a_1(t_1)...a_n(t_n)); vanishes for reversible
// generators.
double check_time_reversal(const LindbladSpec& spec, const DensityState& sigma,
                           const std::vector<double>& times,
                           const std::vector<Operator>& ops);

// -<L0 a, a>_sigma; equals sum_j ||[l_j*, a]||_sigma^2 for reversible L0.
double dirichlet_form(const LindbladSpec& spec, const GnsSpace& space,
                      const Operator& a);

}  // namespace qms
