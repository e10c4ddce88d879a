// A short tour: both routes on a few group algebras, a Dennis-Stein word
// reduced to normal form, and why C2 is excluded from the tensor route.

#include "relk2/report.hpp"

#include <iostream>

using namespace relk2;

int main() {
  for (const auto& spec : {GroupSpec(2, {1, 1}), GroupSpec(3, {1}), GroupSpec(2, {1, 2})}) {
    K2Report rep = k2_relative_structure(spec, Route::both);
    std::cout << "F_" << spec.p() << "[" << spec.name() << "]: " << rep.structure.to_string() << "  basis";
    for (const auto& b : rep.basis) std::cout << " " << b;
    std::cout << "\n";
  }

  // <x1|G~><G~|x1> is the identity; <x1|G~> alone is not.
  GroupRingContext c = group_ring_context(GroupSpec(2, {1, 1}));
  auto pres = SymbolPresentation::build(make_square_zero_context(c.ideal), PresentationMode::full);
  SymbolExpr word{{c.x[0], c.gtilde, 1}, {c.gtilde, c.x[0], 1}};
  std::cout << pres.to_text(word[0]) << " " << pres.to_text(word[1]) << " trivial: " << pres.is_identity(word) << "\n";
  std::cout << pres.to_text(word[0]) << " trivial: " << pres.is_identity({word[0]}) << "\n";

  // On F_2[C2] the map <a,b> -> a (x) db does not respect every relation.
  GroupRingContext c2 = group_ring_context(GroupSpec(2, {1}));
  auto p2 = SymbolPresentation::build(make_square_zero_context(c2.ideal), PresentationMode::full);
  RhoCheck rc = rho_well_defined(p2, RhoMap(c2.ideal, omega(c2.algebra)));
  std::cout << "C2: rho breaks " << rc.failures << " of " << rc.relations_checked << " relations\n";

  ExcisionReport e = excision_check(GroupSpec(2, {1, 1}));
  std::cout << "excision C2 x C2: " << e.integral.to_string() << " vs " << e.modular.to_string() << "\n";
}
