#include "qms/sampling.hpp"

namespace qms {

Operator random_operator(Rng& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Operator g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

Operator random_hermitian(Rng& rng, Eigen::Index dim) {
  Operator g = random_operator(rng, dim);
  return 0.5 * (g + g.adjoint().eval());
}

DensityState random_state(Rng& rng, Eigen::Index dim) {
  Operator g = random_operator(rng, dim);
  Operator w = g * g.adjoint();
  w /= w.trace().real();
  return make_density(w);
}

}  // namespace qms
