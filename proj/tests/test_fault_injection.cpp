#include <gtest/gtest.h>

#include <sstream>

#include "symdyn/cli.hpp"

// Built with SYMDYN_INJECT_CN_FAULT: the C_n recursion reads C_{n-2}.

using namespace symdyn;

TEST(FaultInjection, SelfcheckNamesVerifyBounds) {
    std::ostringstream out, err;
    EXPECT_EQ(cli::run({"selfcheck"}, out, err), cli::invariant);
    EXPECT_NE(out.str().find("FAIL verify_bounds: verify_bounds: n = "), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("PASS fekete"), std::string::npos);
    EXPECT_NE(out.str().find("PASS k_blocks"), std::string::npos);
}

TEST(FaultInjection, VerifyBoundsThrowsOnTheFaultyRecursion) {
    const auto inst = AvoidanceInstance::seeded(2, 4, 2, 7, 200);
    EXPECT_THROW(verify_bounds(bookkeeping(inst, 200), inst), invariant_failure);
}
