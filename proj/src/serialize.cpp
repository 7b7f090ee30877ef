#include "qms/serialize.hpp"

#include <cstdio>

namespace qms {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

nlohmann::json operator_to_json(const Operator& a) {
  const Eigen::Index d = a.rows();
  nlohmann::json j;
  j["dim"] = d;
  auto& re = j["re"] = nlohmann::json::array();
  auto& im = j["im"] = nlohmann::json::array();
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) {
      re.push_back(a(x, y).real());
      im.push_back(a(x, y).imag());
    }
  return j;
}

Operator operator_from_json(const nlohmann::json& j) {
  const Eigen::Index d = j.at("dim").get<Eigen::Index>();
  if (d <= 0) throw dimension_mismatch("operator JSON: dim must be positive");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != d * d ||
      static_cast<Eigen::Index>(im.size()) != d * d)
    throw dimension_mismatch("operator JSON: entry count mismatch");
  Operator a(d, d);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y)
      a(x, y) = Complex(re[x * d + y].get<double>(),
                        im[x * d + y].get<double>());
  return a;
}

nlohmann::json spec_to_json(const LindbladSpec& spec) {
  nlohmann::json j;
  j["dim"] = spec.dim;
  if (spec.hamiltonian) j["hamiltonian"] = operator_to_json(*spec.hamiltonian);
  auto& jumps = j["jumps"] = nlohmann::json::array();
  for (const auto& l : spec.jumps) jumps.push_back(operator_to_json(l));
  return j;
}

LindbladSpec spec_from_json(const nlohmann::json& j) {
  LindbladSpec spec;
  spec.dim = j.at("dim").get<Eigen::Index>();
  if (j.contains("hamiltonian"))
    spec.hamiltonian = operator_from_json(j["hamiltonian"]);
  for (const auto& l : j.at("jumps")) spec.jumps.push_back(operator_from_json(l));
  validate(spec);
  return spec;
}

nlohmann::json basis_to_json(const SpectralBasis& basis) {
  nlohmann::json j;
  j["eigenvalues"] = basis.eigenvalues;
  auto& vecs = j["vectors"] = nlohmann::json::array();
  for (const auto& f : basis.eigenvectors) vecs.push_back(operator_to_json(f));
  return j;
}

SpectralBasis basis_from_json(const nlohmann::json& j) {
  SpectralBasis basis;
  basis.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  for (const auto& v : j.at("vectors"))
    basis.eigenvectors.push_back(operator_from_json(v));
  return basis;
}

std::string basis_to_csv(const SpectralBasis& basis) {
  std::string out = "index,eigenvalue\n";
  for (std::size_t i = 0; i < basis.eigenvalues.size(); ++i)
    out += std::to_string(i) + "," + format_double(basis.eigenvalues[i]) + "\n";
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace qms
