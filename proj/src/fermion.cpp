#include "qms/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qms {

namespace {

Operator pauli_plus() {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Operator pauli_z() {
  Operator m = Operator::Zero(2, 2);
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

// A(omega): squared GNS norms of the four per-mode eigenvector factors,
// indexed (row, col) = alpha_k.
std::array<std::array<double, 2>, 2> gram_factor(double beta, double omega) {
  return {{{1.0, 1.0 / (1.0 + std::exp(beta * omega))},
           {1.0 / (1.0 + std::exp(-beta * omega)), 1.0}}};
}

// B(omega): operator norms of the same factors.
std::array<std::array<double, 2>, 2> norm_factor(double beta, double omega) {
  return {{{1.0, 1.0}, {1.0, std::exp(std::abs(beta * omega) / 2.0)}}};
}

double big_lambda(const FermionSystem& sys) {
  double lam = std::numeric_limits<double>::infinity();
  for (double w : sys.omegas)
    lam = std::min(lam, 2.0 * std::cosh(sys.beta * w / 2.0));
  return lam;
}

}  // namespace

void validate(const FermionSystem& sys) {
  if (sys.N < 1 || sys.N > 10)
    throw std::invalid_argument("FermionSystem: N must be in 1..10");
  if (sys.beta < 0)
    throw std::invalid_argument("FermionSystem: beta must be >= 0");
  if (static_cast<int>(sys.omegas.size()) != sys.N)
    throw dimension_mismatch("FermionSystem: need N frequencies");
}

std::vector<LadderPair> jordan_wigner(const FermionSystem& sys) {
  validate(sys);
  const Operator sp = pauli_plus();
  const Operator sz = pauli_z();
  const Operator id2 = identity(2);

  std::vector<LadderPair> out;
  for (int k = 1; k <= sys.N; ++k) {
    Operator a(1, 1);
    a(0, 0) = 1;
    for (int j = 1; j <= sys.N; ++j) {
      const Operator& block = (j < k) ? sz : (j == k) ? sp : id2;
      a = kron(a, block);
    }
    out.push_back({a, a.adjoint()});
  }
  return out;
}

Operator fermi_hamiltonian(const FermionSystem& sys) {
  const auto ladders = jordan_wigner(sys);
  const Eigen::Index d = Eigen::Index(1) << sys.N;
  Operator h = Operator::Zero(d, d);
  for (int k = 0; k < sys.N; ++k)
    h += sys.omegas[k] * ladders[k].a_dag * ladders[k].a;
  return h;
}

DensityState fermi_state(const FermionSystem& sys) {
  return gibbs_state(fermi_hamiltonian(sys), sys.beta);
}

LindbladSpec build_fermi_generator(const FermionSystem& sys) {
  const auto ladders = jordan_wigner(sys);
  const Eigen::Index d = Eigen::Index(1) << sys.N;

  Operator w = identity(d);  // parity string prod_k (2 n_k - 1)
  for (const auto& lp : ladders)
    w = w * (2.0 * lp.a_dag * lp.a - identity(d));

  LindbladSpec spec;
  spec.dim = d;
  for (int k = 0; k < sys.N; ++k) {
    const Operator v = w * ladders[k].a;
    spec.jumps.push_back(std::exp(sys.beta * sys.omegas[k] / 4.0) * v);
    spec.jumps.push_back(std::exp(-sys.beta * sys.omegas[k] / 4.0) *
                         v.adjoint());
  }
  return spec;
}

FermiEigensystem fermi_eigensystem(const FermionSystem& sys) {
  validate(sys);
  const bool with_vectors = sys.N <= 6;
  const auto ladders =
      with_vectors ? jordan_wigner(sys) : std::vector<LadderPair>{};
  const Eigen::Index d = Eigen::Index(1) << sys.N;

  struct Entry {
    FermiEigenLabel label;
    Operator vec;
    double lambda, gram, norm;
  };
  std::vector<Entry> entries;

  const std::size_t count = std::size_t(1) << (2 * sys.N);
  entries.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    Entry e;
    e.lambda = 0.0;
    e.gram = 1.0;
    e.norm = 1.0;
    if (with_vectors) e.vec = identity(d);
    for (int k = 0; k < sys.N; ++k) {
      const int i = static_cast<int>((code >> (2 * k)) & 1);
      const int j = static_cast<int>((code >> (2 * k + 1)) & 1);
      e.label.push_back({i, j});
      const double bw = sys.beta * sys.omegas[k];
      e.lambda += 2.0 * (i + j) * std::cosh(bw / 2.0);
      e.gram *= gram_factor(sys.beta, sys.omegas[k])[i][j];
      e.norm *= norm_factor(sys.beta, sys.omegas[k])[i][j];
      if (with_vectors) {
        Operator factor;
        if (i == 0 && j == 0) {
          factor = identity(d);
        } else if (i == 1 && j == 0) {
          factor = ladders[k].a;
        } else if (i == 0 && j == 1) {
          factor = ladders[k].a_dag;
        } else {
          const Operator n = ladders[k].a_dag * ladders[k].a;
          factor = std::exp(bw / 2.0) * n -
                   std::exp(-bw / 2.0) * (identity(d) - n);
        }
        e.vec = e.vec * factor;
      }
    }
    entries.push_back(std::move(e));
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
    if (x.lambda != y.lambda) return x.lambda < y.lambda;
    return x.label < y.label;
  });

  FermiEigensystem out;
  for (auto& e : entries) {
    out.labels.push_back(std::move(e.label));
    if (with_vectors) out.vectors.push_back(std::move(e.vec));
    out.eigenvalues.push_back(e.lambda);
    out.gns_norms.push_back(e.gram);
    out.op_norms.push_back(e.norm);
  }
  return out;
}

double fermi_mixing_bound(const FermionSystem& sys, double t) {
  validate(sys);
  const double lam = big_lambda(sys);
  return (std::pow(1.0 + 9.0 * std::exp(-2.0 * lam * (t - 1.0)), sys.N) -
          1.0) /
         4.0;
}

double fermi_mixing_time(const FermionSystem& sys, double epsilon) {
  validate(sys);
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const double lam = big_lambda(sys);
  return 1.0 + std::log(9.0 * sys.N / std::log1p(4.0 * epsilon * epsilon)) /
                   (2.0 * lam);
}

Eigen::MatrixXd hypercube_restriction(const FermionSystem& sys) {
  const LindbladSpec spec = build_fermi_generator(sys);
  const Eigen::Index d = spec.dim;
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index y = 0; y < d; ++y) {
    Operator e = Operator::Zero(d, d);
    e(y, y) = 1;
    const Operator img = apply_generator(spec, e);
    for (Eigen::Index x = 0; x < d; ++x) m(x, y) = img(x, x).real();
  }
  return m;
}

}  // namespace qms
