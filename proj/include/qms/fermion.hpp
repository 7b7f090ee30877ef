// fermion.hpp — fermionic Ornstein-Uhlenbeck semigroup: Jordan-Wigner
// operators, the reversible generator with jumps built from the parity
// string, the closed-form eigensystem, and the uniform mixing bound.

#pragma once

#include <array>
#include <vector>

#include "qms/lindblad.hpp"

namespace qms {

struct FermionSystem {
  int N = 1;             // mode count, 1..10
  double beta = 0.0;     // inverse temperature, >= 0
  std::vector<double> omegas;  // N mode frequencies
};

void validate(const FermionSystem& sys);

// per-mode labels (i,j) in {0,1}x{0,1}; |alpha_k| = i+j
using FermiEigenLabel = std::vector<std::array<int, 2>>;

struct LadderPair {
  Operator a;       // annihilation
  Operator a_dag;   // creation
};

// 2^N-dimensional integer matrices satisfying the anticommutation
// relations exactly.
std::vector<LadderPair> jordan_wigner(const FermionSystem& sys);

// Free Hamiltonian sum_k omega_k n_k.
Operator fermi_hamiltonian(const FermionSystem& sys);

// Thermal state exp(-beta h)/Z.
DensityState fermi_state(const FermionSystem& sys);

// Jumps {e^{beta omega_k/4} v_k, e^{-beta omega_k/4} v_k*} with
// v_k = w a_k and w the parity operator prod_k (2 n_k - 1).
LindbladSpec build_fermi_generator(const FermionSystem& sys);

struct FermiEigensystem {
  std::vector<FermiEigenLabel> labels;
  std::vector<Operator> vectors;     // g_alpha, unnormalized
  std::vector<double> eigenvalues;   // lambda_alpha = 2 sum |alpha_k| ch(beta omega_k/2)
  std::vector<double> gns_norms;     // squared: prod A(omega_k)_{alpha_k}
  std::vector<double> op_norms;      // prod B(omega_k)_{alpha_k}
};

// Closed-form eigenbasis of -L, in ascending eigenvalue order (ties broken
// by label lexicographic order).
FermiEigensystem fermi_eigensystem(const FermionSystem& sys);

// ((1 + 9 e^{-2 Lambda (t-1)})^N - 1)/4 with Lambda = min_k 2 ch(beta omega_k/2).
double fermi_mixing_bound(const FermionSystem& sys, double t);

// t(eps) = 1 + log(9N / log(1+4 eps^2)) / (2 Lambda)
double fermi_mixing_time(const FermionSystem& sys, double epsilon);

// Action of L on diagonal matrices as a 2^N x 2^N classical generator
// (biased random walk on the hypercube); rows sum to zero.
Eigen::MatrixXd hypercube_restriction(const FermionSystem& sys);

}  // namespace qms
