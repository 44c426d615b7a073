#include "qfactor/fixtures.hpp"

#include <memory>
#include <utility>

namespace qf {

namespace {

std::shared_ptr<const Catalog> catalog_of(const std::string& name) {
  return std::make_shared<Catalog>(build_catalog(QuantumGroup::from_name(name)));
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"pauli",    "trivial-dual-z2xz2",  "trivial-fun-s3",
          "broken-omega", "m2-gauge", "product-dual-z2xz2", "trivial-coaction"};
}

bool fixture_is_dynamical(const std::string& name) {
  return name == "m2-gauge" || name == "product-dual-z2xz2" || name == "trivial-coaction";
}

FactorSystem fixture_factor_system(const std::string& name) {
  if (name == "pauli") return pauli_system(catalog_of("dual:z2xz2"));
  if (name == "trivial-dual-z2xz2")
    return trivial_system(BlockAlgebra{{1}}, catalog_of("dual:z2xz2"));
  if (name == "trivial-fun-s3") return trivial_system(BlockAlgebra{{1, 1}}, catalog_of("fun:s3"));
  if (name == "broken-omega") {
    // A rescaled structure matrix; fails the partial isometry and unitarity
    // checks with a Gram defect of 0.19 on the affected pair.
    FactorSystem fs = pauli_system(catalog_of("dual:z2xz2"));
    fs.omega[{1, 1}] = fs.omega.at({1, 1}).scaled(0.9);
    return fs;
  }
  throw StructuralError("no factor system fixture named " + name);
}

DynamicalSystem fixture_dynamical_system(const std::string& name) {
  if (name == "m2-gauge") return m2_gauge_ds(catalog_of("dual:z2"));
  if (name == "product-dual-z2xz2")
    return ds_tensor_trivial(BlockAlgebra{{2}}, catalog_of("dual:z2xz2"));
  if (name == "trivial-coaction") return trivial_coaction_ds(catalog_of("dual:z2"));
  throw StructuralError("no dynamical system fixture named " + name);
}

}  // namespace qf
