#include "qms/rootsys.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qms::roots {

namespace {

using LLMat = std::vector<std::vector<long long>>;
using RatMat = std::vector<std::vector<Rational>>;
using RatVec = std::vector<Rational>;

LLMat simply_laced_chain(int r) {
  LLMat a(r, std::vector<long long>(r, 0));
  for (int i = 0; i < r; ++i) {
    a[i][i] = 2;
    if (i + 1 < r) a[i][i + 1] = a[i + 1][i] = -1;
  }
  return a;
}

LLMat cartan_matrix(Type type, int r) {
  switch (type) {
    case Type::A:
      return simply_laced_chain(r);
    case Type::B: {
      LLMat a = simply_laced_chain(r);
      a[r - 1][r - 2] = -2;  // short last root
      return a;
    }
    case Type::C: {
      LLMat a = simply_laced_chain(r);
      a[r - 2][r - 1] = -2;  // long last root
      return a;
    }
    case Type::D: {
      LLMat a = simply_laced_chain(r - 1);
      for (auto& row : a) row.push_back(0);
      a.push_back(std::vector<long long>(r, 0));
      a[r - 1][r - 1] = 2;
      a[r - 3][r - 1] = a[r - 1][r - 3] = -1;
      return a;
    }
    case Type::E6:
    case Type::E7:
    case Type::E8: {
      // chain 1..r-1 with node r attached to the chain node b
      const int b = (type == Type::E6) ? 3 : (type == Type::E7) ? 4 : 5;
      LLMat a = simply_laced_chain(r - 1);
      for (auto& row : a) row.push_back(0);
      a.push_back(std::vector<long long>(r, 0));
      a[r - 1][r - 1] = 2;
      a[b - 1][r - 1] = a[r - 1][b - 1] = -1;
      return a;
    }
    case Type::F4:
      return {{2, -1, 0, 0}, {-1, 2, -1, 0}, {0, -2, 2, -1}, {0, 0, -1, 2}};
    case Type::G2:
      return {{2, -1}, {-3, 2}};
  }
  throw std::logic_error("unreachable");
}

RatVec symmetrizer_for(Type type, int r) {
  RatVec d(r, 1);
  switch (type) {
    case Type::B:
      d[r - 1] = Rational(1, 2);
      break;
    case Type::C:
      for (int i = 0; i < r - 1; ++i) d[i] = Rational(1, 2);
      break;
    case Type::F4:
      d[2] = d[3] = Rational(1, 2);
      break;
    case Type::G2:
      d[1] = Rational(1, 3);
      break;
    default:
      break;
  }
  return d;
}

RatMat invert(const LLMat& a) {
  const int n = static_cast<int>(a.size());
  RatMat m(n, RatVec(n)), inv(n, RatVec(n, 0));
  for (int i = 0; i < n; ++i) {
    inv[i][i] = 1;
    for (int j = 0; j < n; ++j) m[i][j] = a[i][j];
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("Cartan matrix is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (int j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (int j = 0; j < n; ++j) {
        m[i][j] -= f * m[col][j];
        inv[i][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// BFS closure over root strings; roots in simple-root coordinates.
std::vector<std::vector<long long>> enumerate_positive_roots(const LLMat& a) {
  const int r = static_cast<int>(a.size());
  std::set<std::vector<long long>> found;
  std::vector<std::vector<long long>> frontier;
  for (int i = 0; i < r; ++i) {
    std::vector<long long> root(r, 0);
    root[i] = 1;
    found.insert(root);
    frontier.push_back(root);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<long long>> next;
    for (const auto& beta : frontier) {
      for (int i = 0; i < r; ++i) {
        // p = depth of the alpha_i-string below beta
        long long p = 0;
        std::vector<long long> down = beta;
        while (true) {
          down[i] -= 1;
          bool nonneg = true;
          for (long long c : down) nonneg &= (c >= 0);
          if (!nonneg || !found.count(down)) break;
          ++p;
        }
        long long cartan_pairing = 0;
        for (int j = 0; j < r; ++j) cartan_pairing += a[i][j] * beta[j];
        if (p - cartan_pairing < 1) continue;
        std::vector<long long> up = beta;
        up[i] += 1;
        if (found.insert(up).second) next.push_back(up);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<long long>> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(),
            [](const std::vector<long long>& x,
               const std::vector<long long>& y) {
              long long hx = 0, hy = 0;
              for (long long c : x) hx += c;
              for (long long c : y) hy += c;
              if (hx != hy) return hx < hy;
              return x < y;
            });
  return out;
}

// (mu|alpha) for mu over fundamental weights, alpha over simple roots
Rational pair_weight_root(const RootDatum& d, const std::vector<long long>& n,
                          const std::vector<long long>& c) {
  Rational s = 0;
  for (int j = 0; j < d.rank; ++j)
    s += d.symmetrizer[j] * c[j] * n[j];
  return s;
}

std::vector<long long> root_to_fw(const RootDatum& d,
                                  const std::vector<long long>& c) {
  std::vector<long long> n(d.rank, 0);
  for (int j = 0; j < d.rank; ++j)
    for (int i = 0; i < d.rank; ++i) n[j] += d.cartan[j][i] * c[i];
  return n;
}

bool is_dominant(const std::vector<long long>& n) {
  for (long long x : n)
    if (x < 0) return false;
  return true;
}

std::vector<long long> dominant_conjugate(const RootDatum& d,
                                          std::vector<long long> n) {
  while (true) {
    int i = -1;
    for (int j = 0; j < d.rank; ++j)
      if (n[j] < 0) {
        i = j;
        break;
      }
    if (i < 0) return n;
    const long long ni = n[i];
    for (int j = 0; j < d.rank; ++j) n[j] -= ni * d.cartan[j][i];
  }
}

Rational height(const RootDatum& d, const std::vector<long long>& n) {
  // sum of simple-root coordinates A^{-1} n
  Rational h = 0;
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) h += d.cartan_inverse[i][j] * n[j];
  return h;
}

void check_guard(const RootDatum& d, const WeightVec& lambda) {
  if (d.rank > 4)
    throw std::invalid_argument("weight machinery limited to rank <= 4");
  if (weyl_dimension(d, lambda) > 2000)
    throw std::invalid_argument("representation dimension exceeds 2000");
}

// Freudenthal recursion; no dimension guard (used internally on
// components of guarded products as well).
std::map<WeightVec, long long> multiplicities_unguarded(
    const RootDatum& d, const WeightVec& lambda) {
  if (static_cast<int>(lambda.coords.size()) != d.rank)
    throw std::invalid_argument("weight rank mismatch");
  if (!is_dominant(lambda.coords))
    throw std::invalid_argument("weight must be dominant");
  const int r = d.rank;
  const auto& n_lam = lambda.coords;

  // box bound: simple-root coordinates of any weight <= lambda
  std::vector<long long> box(r, 0);
  for (int i = 0; i < r; ++i) {
    Rational c = 0;
    for (int j = 0; j < r; ++j) c += d.cartan_inverse[i][j] * n_lam[j];
    box[i] = static_cast<long long>(numerator(c) / denominator(c));
  }

  struct Dominant {
    std::vector<long long> beta;  // lambda - mu over simple roots
    std::vector<long long> n;     // mu over fundamental weights
    long long mult = 0;
  };
  std::vector<Dominant> doms;
  std::vector<long long> b(r, 0);
  // enumerate the integer box
  while (true) {
    std::vector<long long> n = n_lam;
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) n[j] -= d.cartan[j][i] * b[i];
    if (is_dominant(n)) doms.push_back({b, n, 0});
    int k = 0;
    while (k < r && b[k] == box[k]) b[k++] = 0;
    if (k == r) break;
    ++b[k];
  }
  std::sort(doms.begin(), doms.end(), [](const Dominant& x, const Dominant& y) {
    long long hx = 0, hy = 0;
    for (long long c : x.beta) hx += c;
    for (long long c : y.beta) hy += c;
    if (hx != hy) return hx < hy;
    return x.beta < y.beta;
  });

  std::map<std::vector<long long>, long long> dom_mult;
  auto mult_of = [&](const std::vector<long long>& n) -> long long {
    auto it = dom_mult.find(dominant_conjugate(d, n));
    return it == dom_mult.end() ? 0 : it->second;
  };

  std::vector<long long> shifted(n_lam);
  for (auto& x : shifted) x += 1;
  WeightVec lam_delta{shifted};
  const Rational lam_sq = pairing(d, lam_delta, lam_delta);

  for (auto& dom : doms) {
    bool is_top = true;
    for (long long c : dom.beta) is_top &= (c == 0);
    if (is_top) {
      dom.mult = 1;
      dom_mult[dom.n] = 1;
      continue;
    }
    Rational rhs = 0;
    for (const auto& alpha : d.positive_roots) {
      const auto fw_alpha = root_to_fw(d, alpha);
      for (long long k = 1;; ++k) {
        bool inside = true;
        for (int i = 0; i < r; ++i)
          inside &= (dom.beta[i] - k * alpha[i] >= 0);
        if (!inside) break;
        std::vector<long long> nu = dom.n;
        for (int i = 0; i < r; ++i) nu[i] += k * fw_alpha[i];
        const long long m = mult_of(nu);
        if (m == 0) continue;
        rhs += 2 * m * pair_weight_root(d, nu, alpha);
      }
    }
    std::vector<long long> mu_delta = dom.n;
    for (auto& x : mu_delta) x += 1;
    WeightVec md{mu_delta};
    const Rational factor = lam_sq - pairing(d, md, md);
    const Rational mult = rhs / factor;
    if (denominator(mult) != 1 || mult <= 0)
      throw std::runtime_error("Freudenthal recursion produced a non-integer");
    dom.mult = static_cast<long long>(numerator(mult));
    dom_mult[dom.n] = dom.mult;
  }

  // expand Weyl orbits
  std::map<WeightVec, long long> out;
  for (const auto& dom : doms) {
    if (dom.mult == 0) continue;
    std::set<std::vector<long long>> orbit{dom.n};
    std::vector<std::vector<long long>> frontier{dom.n};
    while (!frontier.empty()) {
      std::vector<std::vector<long long>> next;
      for (const auto& n : frontier) {
        for (int i = 0; i < r; ++i) {
          if (n[i] == 0) continue;
          std::vector<long long> refl = n;
          for (int j = 0; j < r; ++j) refl[j] -= n[i] * d.cartan[j][i];
          if (orbit.insert(refl).second) next.push_back(refl);
        }
      }
      frontier = std::move(next);
    }
    for (const auto& n : orbit) out[WeightVec{n}] += dom.mult;
  }
  return out;
}

}  // namespace

Type parse_type(const std::string& label) {
  std::string s;
  for (char c : label) s += static_cast<char>(std::toupper(c));
  if (s == "A") return Type::A;
  if (s == "B") return Type::B;
  if (s == "C") return Type::C;
  if (s == "D") return Type::D;
  if (s == "E6") return Type::E6;
  if (s == "E7") return Type::E7;
  if (s == "E8") return Type::E8;
  if (s == "F4") return Type::F4;
  if (s == "G2") return Type::G2;
  throw std::invalid_argument("unknown simple type: " + label);
}

std::string type_name(Type t) {
  switch (t) {
    case Type::A: return "A";
    case Type::B: return "B";
    case Type::C: return "C";
    case Type::D: return "D";
    case Type::E6: return "E6";
    case Type::E7: return "E7";
    case Type::E8: return "E8";
    case Type::F4: return "F4";
    case Type::G2: return "G2";
  }
  return "?";
}

RootDatum build_root_datum(Type type, int rank) {
  int min_rank = 1, max_rank = 12;
  switch (type) {
    case Type::A: min_rank = 1; break;
    case Type::B: min_rank = 2; break;
    case Type::C: min_rank = 3; break;
    case Type::D: min_rank = 4; break;
    case Type::E6: min_rank = max_rank = 6; break;
    case Type::E7: min_rank = max_rank = 7; break;
    case Type::E8: min_rank = max_rank = 8; break;
    case Type::F4: min_rank = max_rank = 4; break;
    case Type::G2: min_rank = max_rank = 2; break;
  }
  if (rank < min_rank || rank > max_rank)
    throw std::invalid_argument("invalid rank for type " + type_name(type));

  RootDatum d;
  d.type = type;
  d.rank = rank;
  d.cartan = cartan_matrix(type, rank);
  d.symmetrizer = symmetrizer_for(type, rank);
  d.cartan_inverse = invert(d.cartan);
  d.weight_gram.assign(rank, RatVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      d.weight_gram[i][j] = d.symmetrizer[i] * d.cartan_inverse[i][j];
  d.two_delta_pairing.assign(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      d.two_delta_pairing[i] += 2 * d.weight_gram[i][j];
  d.positive_roots = enumerate_positive_roots(d.cartan);
  d.theta = WeightVec{root_to_fw(d, d.positive_roots.back())};
  return d;
}

Rational pairing(const RootDatum& datum, const WeightVec& mu,
                 const WeightVec& nu) {
  if (static_cast<int>(mu.coords.size()) != datum.rank ||
      static_cast<int>(nu.coords.size()) != datum.rank)
    throw std::invalid_argument("weight rank mismatch");
  Rational s = 0;
  for (int i = 0; i < datum.rank; ++i)
    for (int j = 0; j < datum.rank; ++j)
      s += datum.weight_gram[i][j] * mu.coords[i] * nu.coords[j];
  return s;
}

namespace {

// (mu|mu+2delta)
Rational casimir_numerator(const RootDatum& d, const WeightVec& mu) {
  Rational s = pairing(d, mu, mu);
  for (int i = 0; i < d.rank; ++i)
    s += d.two_delta_pairing[i] * mu.coords[i];
  return s;
}

}  // namespace

Rational casimir_scalar(const RootDatum& datum, const WeightVec& mu) {
  if (!is_dominant(mu.coords))
    throw std::invalid_argument("casimir_scalar: weight must be dominant");
  return casimir_numerator(datum, mu) / casimir_numerator(datum, datum.theta);
}

BigInt weyl_dimension(const RootDatum& datum, const WeightVec& lambda) {
  if (static_cast<int>(lambda.coords.size()) != datum.rank)
    throw std::invalid_argument("weight rank mismatch");
  if (!is_dominant(lambda.coords))
    throw std::invalid_argument("weyl_dimension: weight must be dominant");
  std::vector<long long> shifted = lambda.coords;
  for (auto& x : shifted) x += 1;
  const std::vector<long long> ones(datum.rank, 1);
  Rational prod = 1;
  for (const auto& alpha : datum.positive_roots)
    prod *= pair_weight_root(datum, shifted, alpha) /
            pair_weight_root(datum, ones, alpha);
  if (denominator(prod) != 1)
    throw std::runtime_error("Weyl dimension is not an integer");
  return numerator(prod);
}

G0Result compute_g0(const RootDatum& datum) {
  const int r = datum.rank;
  const Rational theta_value = casimir_numerator(datum, datum.theta);
  Rational best = theta_value;
  WeightVec best_mu = datum.theta;

  Rational min_two_delta = datum.two_delta_pairing[0];
  for (const auto& q : datum.two_delta_pairing)
    min_two_delta = std::min(min_two_delta, q);

  auto in_root_lattice = [&](const std::vector<long long>& n) {
    for (int i = 0; i < r; ++i) {
      Rational c = 0;
      for (int j = 0; j < r; ++j) c += datum.cartan_inverse[i][j] * n[j];
      if (denominator(c) != 1) return false;
    }
    return true;
  };

  // enumerate coordinate shells sum(n) = s until the linear lower bound
  // s * min_i (wp_i | 2delta) rules out any improvement
  for (long long s = 1; Rational(s) * min_two_delta < best; ++s) {
    std::vector<long long> n(r, 0);
    auto recurse = [&](auto&& self, int pos, long long left) -> void {
      if (pos == r - 1) {
        n[pos] = left;
        if (in_root_lattice(n)) {
          const Rational val = casimir_numerator(datum, WeightVec{n});
          if (val < best || (val == best && WeightVec{n} < best_mu)) {
            best = val;
            best_mu = WeightVec{n};
          }
        }
        return;
      }
      for (long long k = 0; k <= left; ++k) {
        n[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    recurse(recurse, 0, s);
  }
  return {best / theta_value, best_mu};
}

std::map<WeightVec, long long> weight_multiplicities(const RootDatum& datum,
                                                     const WeightVec& lambda) {
  check_guard(datum, lambda);
  return multiplicities_unguarded(datum, lambda);
}

std::map<WeightVec, long long> tensor_decompose(const RootDatum& datum,
                                                const WeightVec& lambda1,
                                                const WeightVec& lambda2) {
  check_guard(datum, lambda1);
  check_guard(datum, lambda2);
  const auto wm1 = multiplicities_unguarded(datum, lambda1);
  const auto wm2 = multiplicities_unguarded(datum, lambda2);

  std::map<WeightVec, long long> character;
  for (const auto& [mu1, m1] : wm1)
    for (const auto& [mu2, m2] : wm2) {
      std::vector<long long> sum(datum.rank);
      for (int i = 0; i < datum.rank; ++i)
        sum[i] = mu1.coords[i] + mu2.coords[i];
      character[WeightVec{sum}] += m1 * m2;
    }

  std::map<WeightVec, long long> decomposition;
  while (true) {
    // highest remaining weight
    bool any = false;
    WeightVec top;
    Rational top_height = 0;
    for (const auto& [mu, m] : character) {
      if (m == 0) continue;
      if (m < 0)
        throw std::runtime_error("character subtraction went negative");
      const Rational h = height(datum, mu.coords);
      if (!any || h > top_height ||
          (h == top_height && mu > top)) {
        any = true;
        top = mu;
        top_height = h;
      }
    }
    if (!any) break;
    if (!is_dominant(top.coords))
      throw std::runtime_error("highest remaining weight is not dominant");
    const long long mult = character[top];
    decomposition[top] += mult;
    for (const auto& [mu, m] : multiplicities_unguarded(datum, top)) {
      auto it = character.find(mu);
      if (it == character.end())
        throw std::runtime_error("component weight missing from character");
      it->second -= mult * m;
      if (it->second == 0) character.erase(it);
    }
  }
  return decomposition;
}

WeightVec dual_weight(const RootDatum& datum, const WeightVec& lambda) {
  check_guard(datum, lambda);
  const auto wm = multiplicities_unguarded(datum, lambda);
  bool any = false;
  WeightVec lowest;
  Rational lowest_height = 0;
  for (const auto& [mu, m] : wm) {
    const Rational h = height(datum, mu.coords);
    if (!any || h < lowest_height) {
      any = true;
      lowest = mu;
      lowest_height = h;
    }
  }
  std::vector<long long> n(datum.rank);
  for (int i = 0; i < datum.rank; ++i) n[i] = -lowest.coords[i];
  if (!is_dominant(n))
    throw std::runtime_error("negated lowest weight is not dominant");
  return WeightVec{n};
}

bool check_prv_bound(const RootDatum& datum, const WeightVec& lambda1,
                     const WeightVec& lambda2) {
  for (const auto& [mu, m] : tensor_decompose(datum, lambda1, lambda2))
    if (BigInt(m) > weyl_dimension(datum, mu)) return false;
  return true;
}

std::string rational_str(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

}  // namespace qms::roots
