#include <gtest/gtest.h>

#include "properties.hpp"

TEST(Properties, TimescaleNonNegative) {
  const auto s = props::timescale_positivity(1001, 200);
  EXPECT_LE(s.worst, 1e-12);
}

TEST(Properties, SwapSymmetry) { EXPECT_LE(props::swap_symmetry(1002, 120).worst, 1e-12); }

TEST(Properties, SubsystemEntropiesAgree) {
  EXPECT_LE(props::subsystem_symmetry(1003, 120).worst, 1e-10);
}

TEST(Properties, EntropyDecreasesWithOrder) {
  EXPECT_LE(props::order_monotonicity(1004, 120).worst, 1e-10);
}

TEST(Properties, PartialTraceOracle) {
  EXPECT_LE(props::partial_trace_agreement(1005, 120).worst, 1e-12);
}

TEST(Properties, JcmClosedFormPropagator) {
  EXPECT_LE(props::jcm_propagator_agreement(1006, 120).worst, 1e-9);
}
