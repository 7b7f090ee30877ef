// boson.hpp — bosonic Ornstein-Uhlenbeck semigroup: exact symbolic
// verification of the spectral decomposition on normal-ordered polynomials
// of the mode operators, truncated-Fock numerics for norms and evolution,
// moment-class mixing bounds, and the classical birth-death restriction
// (with an exact-rational mode for the polynomial eigen-identity).

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <utility>
#include <vector>

#include "qms/lindblad.hpp"
#include "qms/linops.hpp"

namespace qms {

struct BosonSystem {
  int N = 0;
  double beta = 0.0;
  std::vector<double> omegas;
  // gamma_k = e^{-beta omega_k/2}/(2 sinh(beta omega_k/2)), delta_k = gamma_k e^{beta omega_k}
  std::vector<double> gamma, delta;
};

BosonSystem make_boson_system(double beta, const std::vector<double>& omegas);
void validate(const BosonSystem& sys);

// Multi-index over modes; one entry per mode, all >= 0.
using BoseIndex = std::vector<int>;

// Finite combination sum c_{p,q} (a*)^p a^q in normal order.
struct NormalOrderedElement {
  int N = 0;
  std::map<std::pair<BoseIndex, BoseIndex>, Complex> terms;
};

NormalOrderedElement bose_zero(int N);
NormalOrderedElement bose_identity(int N);
NormalOrderedElement bose_monomial(int N, const BoseIndex& p,
                                   const BoseIndex& q, Complex coeff);

void add_scaled(NormalOrderedElement& x, const NormalOrderedElement& y,
                Complex c);
// Drops coefficients below eps in modulus.
void prune(NormalOrderedElement& x, double eps = 1e-14);
double max_coefficient(const NormalOrderedElement& x);

// Elementary products, re-normal-ordered via the CCR [a_h, a_k*] = delta_hk.
NormalOrderedElement mult_left_a(const NormalOrderedElement& x, int k);
NormalOrderedElement mult_left_adag(const NormalOrderedElement& x, int k);
NormalOrderedElement mult_right_a(const NormalOrderedElement& x, int k);
NormalOrderedElement mult_right_adag(const NormalOrderedElement& x, int k);
NormalOrderedElement multiply(const NormalOrderedElement& x,
                              const NormalOrderedElement& y);

// L x = sum_k e^{beta omega_k/2}(2 a* x a - {a*a, x}) + e^{-beta omega_k/2}(2 a x a* - {a a*, x})
NormalOrderedElement apply_boson_generator(const BosonSystem& sys,
                                           const NormalOrderedElement& x);

// g_{l,m} = sum_j j! C(l,j) C(m,j) (-1)^|j| gamma^j (a*)^{l-j} a^{m-j};
// delta_form builds the equivalent delta-weighted reversed-order sum and
// re-normal-orders it. Guard: |l|+|m| <= 24.
NormalOrderedElement eigenvector_g(const BosonSystem& sys, const BoseIndex& l,
                                   const BoseIndex& m, bool delta_form = false);

// lambda_l = 2 sum_k sinh(beta omega_k/2) l_k
double bose_eigenvalue(const BosonSystem& sys, const BoseIndex& l);

// max coefficient of L g_{l,m} + lambda_{l+m} g_{l,m}
double check_eigenrelation(const BosonSystem& sys, const BoseIndex& l,
                           const BoseIndex& m);

// ||g_{l,m}||_sigma^2 = l! m! gamma^l delta^m (closed form)
double gns_norm_g(const BosonSystem& sys, const BoseIndex& l,
                  const BoseIndex& m);

struct TruncatedFock {
  int N = 0;
  int cutoff = 0;  // occupations 0..cutoff per mode
  Eigen::Index dim = 0;
  std::vector<Operator> a, a_dag;
};

TruncatedFock make_truncated_fock(int N, int cutoff);

// Smallest cutoff M with Gibbs tail e^{-beta omega_min (M - degree)} < 1e-12.
int fock_cutoff(const BosonSystem& sys, int degree);

Operator to_operator(const NormalOrderedElement& x, const TruncatedFock& fock);

Operator fock_hamiltonian(const BosonSystem& sys, const TruncatedFock& fock);
DensityState fock_thermal_state(const BosonSystem& sys,
                                const TruncatedFock& fock);

// Truncated quantum generator as a LindbladSpec (jumps e^{beta omega/4} a_k
// and e^{-beta omega/4} a_k* on the truncated space).
LindbladSpec fock_generator(const BosonSystem& sys, const TruncatedFock& fock);

// GNS Gram matrix of the listed g_{l,m} via truncated traces.
Eigen::MatrixXcd gns_gram(const BosonSystem& sys,
                          const std::vector<std::pair<BoseIndex, BoseIndex>>& pairs,
                          const TruncatedFock& fock);

// |rho((a*)^l a^m)|^2 <= l! m! K^{|l|+|m|} for all |l|,|m| <= degree
bool moment_class_check(const DensityState& rho, const TruncatedFock& fock,
                        double K, int degree);

// ((1 + A e^{-2 Lambda t})^N - 1)/4 with Lambda = min_k 2 sinh(beta omega_k/2)
// and the proof-derived constant A = max(6K, 4 e^{2 Lambda T}),
// T = log(6K)/(2 Lambda), after raising K to max(K, sqrt(2) max_k gamma_k, 1).
double bose_bound(const BosonSystem& sys, double K, double t);

// t(eps) = (1/2 Lambda) log(A N / log(1 + 4 eps^2))
double bose_mixing_time(const BosonSystem& sys, double K, double epsilon);

// Birth-death generator on occupations 0..M (single mode), rates
// c+(l) = 2(l+1) e^{-beta omega/2}, c-(l) = 2 l e^{beta omega/2}.
// Rows above M are truncated; only the interior rows are exact.
Eigen::MatrixXd classical_birth_death(const BosonSystem& sys, int truncation);

// Power-basis coefficients in m of the normalized classical eigenfunction
// f_l(m) = (gamma delta)^{-l/2} sum_j C(l,j) C(m,l-j) (-1)^j gamma^j (N=1).
std::vector<double> chebyshev_like_eigenfunctions(const BosonSystem& sys,
                                                  int ell);

// ---- exact-rational classical chain, parametrized by rational s = e^{beta omega/2} ----

using BoseRational = boost::multiprecision::cpp_rational;

// Coefficients in m of the unnormalized eigenfunction
// F_l(m) = sum_j C(l,j) C(m,l-j) (-1)^j gamma^j with gamma = 1/(s^2-1).
// The omitted prefactor (gamma delta)^{-l/2} is constant and cancels in the
// eigen-identity.
std::vector<BoseRational> classical_eigenfunction_exact(const BoseRational& s,
                                                        int ell);

// True iff -L_cl F_l = 2(s - 1/s) l F_l holds exactly as polynomials in m.
bool classical_eigen_identity_exact(const BoseRational& s, int ell);

}  // namespace qms
