#pragma once

#include <functional>

#include <gtest/gtest.h>

#include "polsar/error.hpp"
#include "random_matrices.hpp"

namespace polsar::testing {

/// Runs fn and checks it throws polsar::Error with the given code.
inline void expect_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(code);
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), code) << e.what();
    }
}

}  // namespace polsar::testing
