#pragma once

// Tagged JSON encodings, formats factor_system/v1 and dynamical_system/v1.
// The group block is either a reference to a named builder with its
// decomposition seed, or inline structure tensors that are re-validated and
// decomposed deterministically on load.

#include "qfactor/extract.hpp"
#include "qfactor/factor_system.hpp"

#include <string>

namespace qf {

std::string to_json(const FactorSystem& fs);
std::string to_json(const DynamicalSystem& ds);
std::string catalog_to_json(const Catalog& cat);

// The "format" tag of a document, without decoding the payload.
std::string json_format(const std::string& text);

FactorSystem factor_system_from_json(const std::string& text);
DynamicalSystem dynamical_system_from_json(const std::string& text);

}  // namespace qf
