#pragma once

// Built-in example systems shared by the test suite and the CLI.

#include "qfactor/extract.hpp"
#include "qfactor/factor_system.hpp"

#include <string>
#include <vector>

namespace qf {

// Factor systems: pauli, trivial-dual-z2xz2, trivial-fun-s3, broken-omega.
// Dynamical systems: m2-gauge, product-dual-z2xz2, trivial-coaction.
std::vector<std::string> fixture_names();
bool fixture_is_dynamical(const std::string& name);
FactorSystem fixture_factor_system(const std::string& name);
DynamicalSystem fixture_dynamical_system(const std::string& name);

}  // namespace qf
