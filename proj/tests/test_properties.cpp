#include <gtest/gtest.h>

#include "properties.hpp"

namespace {

void expect_property(const props::PropertyResult& r) {
  EXPECT_GE(r.cases, 1000u) << r.name;
  EXPECT_EQ(r.failures, 0u) << r.name << ": " << r.first_failure;
}

TEST(Properties, DualityInvarianceOfChi) { expect_property(props::duality_invariance(1200, 11)); }

TEST(Properties, TwoFormEulerEquality) { expect_property(props::two_form_equality(5000, 12)); }

TEST(Properties, OddCoreIdempotence) { expect_property(props::odd_core_idempotence(1000, 13)); }

TEST(Properties, SylowKleinOrDihedralForOddChi) { expect_property(props::sylow_klein_or_dihedral(1000, 14)); }

TEST(Properties, SnfDivisibilityChainAndDeterminant) { expect_property(props::snf_chain_and_det(1500, 15)); }

TEST(Properties, ConstructorCensusAgreement) { expect_property(props::census_equivalence(1000)); }

}  // namespace
