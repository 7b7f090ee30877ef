// rootsys.hpp — exact rational root-system engine: Cartan data for all
// simple types, Casimir scalars, Weyl dimensions, Freudenthal weight
// multiplicities, tensor-product decompositions at small rank, and the
// exact minimization producing the spectral-gap constant g0.
//
// Conventions: weights are stored by their integer coordinates over the
// fundamental weights; roots by integer coordinates over the simple
// roots. The Cartan matrix is A_ij = 2(alpha_i|alpha_j)/(alpha_i|alpha_i)
// and the fundamental-weight Gram matrix is S = diag(d) A^{-1} with the
// symmetrizer d_i = |alpha_i|^2/2. Global scale is immaterial: every
// exported quantity is a ratio or uses S uniformly.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

namespace qms::roots {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Type { A, B, C, D, E6, E7, E8, F4, G2 };

// "A","B","C","D","E6","E7","E8","F4","G2" (case-insensitive)
Type parse_type(const std::string& label);
std::string type_name(Type t);

struct WeightVec {
  std::vector<long long> coords;  // over fundamental weights

  auto operator<=>(const WeightVec&) const = default;
};

struct RootDatum {
  Type type;
  int rank = 0;
  std::vector<std::vector<long long>> cartan;
  std::vector<Rational> symmetrizer;
  std::vector<std::vector<Rational>> cartan_inverse;
  std::vector<std::vector<Rational>> weight_gram;     // S
  std::vector<Rational> two_delta_pairing;            // (wp_i | 2 delta)
  WeightVec theta;                                    // highest root
  std::vector<std::vector<long long>> positive_roots; // simple-root coords
};

// Valid ranks: A r>=1, B r>=2, C r>=3, D r>=4, E6/E7/E8, F4, G2;
// classical ranks capped at 12.
RootDatum build_root_datum(Type type, int rank);

// (mu|nu) over fundamental-weight coordinates, via S.
Rational pairing(const RootDatum& datum, const WeightVec& mu,
                 const WeightVec& nu);

// c_mu = (mu|mu+2delta)/(theta|theta+2delta)
Rational casimir_scalar(const RootDatum& datum, const WeightVec& mu);

BigInt weyl_dimension(const RootDatum& datum, const WeightVec& lambda);

struct G0Result {
  Rational g0;
  WeightVec minimizer;
};

// Exact minimization of c_mu over the nonzero dominant weights in the
// root lattice, by coordinate shells with a linear lower-bound cutoff.
G0Result compute_g0(const RootDatum& datum);

// All weights of V_lambda with multiplicities (Freudenthal recursion).
std::map<WeightVec, long long> weight_multiplicities(const RootDatum& datum,
                                                     const WeightVec& lambda);

// V_{l1} (x) V_{l2} = sum_mu n(mu) V_mu by iterated highest-weight
// character subtraction. Guard: rank <= 4 and factor dimensions <= 2000.
std::map<WeightVec, long long> tensor_decompose(const RootDatum& datum,
                                                const WeightVec& lambda1,
                                                const WeightVec& lambda2);

// Highest weight of the dual representation, -w0(lambda).
WeightVec dual_weight(const RootDatum& datum, const WeightVec& lambda);

// n(mu) <= dim V_mu for every mu in the support of the decomposition.
bool check_prv_bound(const RootDatum& datum, const WeightVec& lambda1,
                     const WeightVec& lambda2);

std::string rational_str(const Rational& q);

}  // namespace qms::roots
