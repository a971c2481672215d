#pragma once

// Shared helpers for the test suites.

#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <random>

#include <heckenorm/errors.hpp>

namespace testutil {

// Runs f and reports the heckenorm error code it threw, if any.
template <class F>
std::optional<heckenorm::errc> thrown_code(F&& f) {
    try {
        f();
    } catch (const heckenorm::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

#define REQUIRE_ERRC(expr, code)                                                       \
    do {                                                                               \
        auto got_ = testutil::thrown_code([&] { (void)(expr); });                      \
        REQUIRE(got_.has_value());                                                     \
        REQUIRE(*got_ == (code));                                                      \
    } while (0)

inline std::mt19937_64 seeded_rng(unsigned long long seed) { return std::mt19937_64(seed); }

} // namespace testutil
