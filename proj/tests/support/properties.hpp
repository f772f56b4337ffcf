#pragma once

// Property suites over randomly drawn curves. Each suite counts its cases and
// keeps the first counterexample.

#include <cstdint>
#include <string>
#include <vector>

namespace aszeta::testing {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return cases > 0 && failures == 0; }
};

/// Gram rank of the quadric on V_s equals n_s = s - dim W(F_{p^s}).
PropertyResult prop_quadric_nondegenerate(std::uint64_t seed, std::size_t curves);
/// B_c: B^p - B = cR + R(c)X, b_{h-1}^p = c a_h, b^p - b = cR(c),
/// B_{c1+c2} = B_{c1} + B_{c2}, Tr(cR(c)) = 0, and a nonzero residual off W.
PropertyResult prop_b_invariants(std::uint64_t seed, std::size_t curves);
/// Every L-polynomial the library produces, closed form or reconstructed:
/// functional equation, roots on the Weil circle, Newton slopes s/2.
PropertyResult prop_lpoly_shape(std::uint64_t seed, std::size_t curves);
/// Newton reconstruction inverts predicted_count on every table row.
PropertyResult prop_newton_roundtrip(std::uint64_t seed, std::size_t cases);

std::vector<PropertyResult> run_property_suites(std::uint64_t seed, std::size_t curves);

std::string describe(const PropertyResult& r);

}  // namespace aszeta::testing
