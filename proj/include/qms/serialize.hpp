// serialize.hpp — JSON/CSV interchange for operators, generator specs and
// spectral bases. Numbers are emitted with 17 significant digits so
// round-trips are bit-exact for doubles.

#pragma once

#include <string>

#include <json.hpp>

#include "qms/lindblad.hpp"

namespace qms {

// {dim, re: row-major, im: row-major}
nlohmann::json operator_to_json(const Operator& a);
Operator operator_from_json(const nlohmann::json& j);

// {dim, hamiltonian?, jumps: [...]}
nlohmann::json spec_to_json(const LindbladSpec& spec);
LindbladSpec spec_from_json(const nlohmann::json& j);

// {eigenvalues: [...], vectors: [...]}
nlohmann::json basis_to_json(const SpectralBasis& basis);
SpectralBasis basis_from_json(const nlohmann::json& j);

// eigenvalues only, one per line under a header
std::string basis_to_csv(const SpectralBasis& basis);

// shortest representation with 17 significant digits
std::string format_double(double x);

std::string dump_json(const nlohmann::json& j);

}  // namespace qms
