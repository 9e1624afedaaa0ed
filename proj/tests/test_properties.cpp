#include <doctest.h>

#include "property_suite.hpp"

TEST_CASE("randomized property run") {
  const auto report = property_suite::run(200, 20240611);
  REQUIRE(report.properties.size() == 6);
  for (const auto& [name, tally] : report.properties) {
    CAPTURE(name);
    CAPTURE(tally.first_failure);
    CHECK(tally.checks > 0);
    CHECK(tally.failures == 0);
  }
  MESSAGE(report.blowups << " of " << report.cases << " upper members blew up");
}
