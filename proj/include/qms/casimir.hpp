// casimir.hpp — the Lie-algebraic QMS family L = -sum_j ad_{l_j}^2 for a
// Killing-orthonormal frame {l_j} of i g0: representation validation,
// frame construction, predicted vs numeric spectra, spectral-gap/decay
// constants, the operator-norm-vs-L2 bound per g-submodule, explicit sl2
// eigenvectors, the classical restriction to diagonal matrices, and the
// Gamma-calculus curvature bound.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qms/lindblad.hpp"
#include "qms/linops.hpp"
#include "qms/rootsys.hpp"

namespace qms {

struct MatrixLieRep {
  std::string algebra;  // label, e.g. "sl3" or "sl2:n=7"
  Eigen::Index dim_V = 0;
  std::vector<Operator> basis;            // spans pi(g) over C
  std::vector<Operator> hermitian_basis;  // Hermitian, spans pi(i g0) over R
  // Root datum and highest weight of V, when a predicted spectrum is
  // available for this representation.
  std::optional<roots::Type> root_type;
  int root_rank = 0;
  roots::WeightVec highest_weight;
};

// Built-in representations. All pass validate().
MatrixLieRep sl_defining(int n);    // 2 <= n <= 5
MatrixLieRep so_defining(int n);    // 3 <= n <= 7
MatrixLieRep sp_defining(int two_n);  // 4 or 6
MatrixLieRep sl2_irrep(int n);      // irreducible of dimension 2 <= n <= 40
MatrixLieRep sl3_adjoint();

// Checks Hermiticity of hermitian_basis, closure of the commutators in the
// span (residual < 1e-9), and irreducibility (trivial commutant).
void validate(const MatrixLieRep& rep);

struct KillingFrame {
  Eigen::Index dim_V = 0;
  std::vector<Operator> ell;  // Hermitian, orthonormal for <a,b> = kappa(a*,b)
};

// Structure constants by least squares in the representation, adjoint
// matrices, Killing Gram kappa_ab = tr(ad_a ad_b), then Gram^{-1/2}.
KillingFrame killing_orthonormalize(const MatrixLieRep& rep);

// L = -sum_j ad_{l_j}^2 as a LindbladSpec (the Hermitian frame elements are
// the jumps) and as an assembled superoperator.
LindbladSpec casimir_spec(const KillingFrame& frame);
Superoperator build_casimir_generator(const KillingFrame& frame);

// Spectrum of -L predicted from the decomposition of V (x) V*:
// eigenvalue c_mu -> sum of n(mu) dim(V_mu) over mu with that Casimir value.
std::map<roots::Rational, long long> predicted_spectrum(
    const roots::RootDatum& datum, const roots::WeightVec& lambda);

struct GapDecay {
  double gap = 0.0;
  roots::Rational g0;
  double decay_constant = 0.0;  // A with d_tr(rho P_t, sigma) <= A e^{-gap t}
};

// A = (1/2) e^{gap} (sum_{mu in root-lattice dominant cone, mu != 0}
// e^{-2 c_mu} dim(V_mu)^3)^{1/2}, shell-truncated when the tail falls
// below 1e-12 of the partial sum.
double casimir_decay_constant(const roots::RootDatum& datum, double gap);

// Numeric gap from the spectral decomposition plus the exact g0 and the
// series constant. Requires rep.root_type.
GapDecay gap_and_decay(const MatrixLieRep& rep);
double decay_bound(const GapDecay& gd, double t);

// Eigenvalue clusters (g-submodules) at relative gap rel_tol; each cluster
// is a list of indices into the basis.
std::vector<std::vector<int>> eigen_clusters(const SpectralBasis& basis,
                                             double rel_tol = 1e-6);

// max over eigenvectors b of ||b|| / (sqrt(dim cluster) ||b||_sigma)
double check_norm_bound(const SpectralBasis& basis, const GnsSpace& space,
                        double cluster_rel_tol = 1e-6);

// max over clusters of max-entry of sum_i b_i* b_i - dim(cluster) * 1
double cluster_identity_residual(const SpectralBasis& basis,
                                 double cluster_rel_tol = 1e-6);

// L = -(1/4)(ad_e ad_f + ad_f ad_e + (1/2) ad_h^2) on the n-dimensional
// irreducible representation, assembled from the standard e, f, h matrices.
Superoperator sl2_standard_generator(int n);

// The same operator applied directly through commutators, O(n^3) per call.
Operator sl2_apply_standard(int n, const Operator& a);

// v^(i)_l, flattened over i = 0..n-1, l = 0..2i (eigenvalue i(i+1)/2 each);
// orthonormal under the normalized Hilbert-Schmidt inner product.
std::vector<Operator> sl2_explicit_eigenvectors(int n);

struct Sl2Classical {
  Eigen::MatrixXd generator;  // n x n, rows indexed by x = 1..n
  // values table: eigenfunctions[i][x-1] = gamma^(i)(x), normalized
  Eigen::MatrixXd eigenfunctions;
};

// (L_cl f)(x) = (1/2) x(n-x)[f(x+1)-f(x)] + (1/2)(x-1)(n-x+1)[f(x-1)-f(x)];
// eigenfunctions computed from both displayed forms (checked mutually equal).
Sl2Classical sl2_classical_restriction(int n);

// Exact rational check of -L_cl p_i = (1/2) i(i+1) p_i for the unnormalized
// integer-coefficient polynomial p_i(x) = sum_j (-1)^{i-j} C(i,j) C(x-1,j) C(n-x,i-j).
bool sl2_classical_identity_exact(int n, int i);

// min over sampled a of the smallest eigenvalue of Gamma_2(a,a*) - (1/4)Gamma(a,a*)
double gamma_calculus_check(const KillingFrame& frame, int samples,
                            std::uint64_t seed);

// max-entry residual of sum_{ij} [l_i,l_j] (x) [l_i,l_j] + sum_j l_j (x) l_j
double gamma_tensor_identity_residual(const KillingFrame& frame);

// Angular-momentum normalized frame {J_x, J_y, J_z} on the n-dimensional
// spin representation ([J_a, J_b] = i eps_abc J_c); the associated
// generator has gap 2 instead of 1.
KillingFrame so3_angular_momentum(int n);

}  // namespace qms
