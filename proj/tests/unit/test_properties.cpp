#include <doctest.h>

#include "property_suites.hpp"

using namespace resavg::props;

// Same generators as the acceptance run, with different seeds.
TEST_CASE("property suites") {
  const std::uint64_t seed = 20261015;
  for (auto r : {telescoping(300, seed), dual_formula(300, seed), recursion(300, seed),
                 monotone(300, seed), nested_divergence(300, seed), ratio_tail(300, seed),
                 matrix_divisibility(300, seed)}) {
    INFO(r.failure);
    CHECK(r.passed);
    CHECK(r.cases > 0);
  }
  auto g = grigorchuk_relations(4);
  INFO(g.failure);
  CHECK(g.passed);
}
