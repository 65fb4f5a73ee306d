#pragma once

#include <doctest.h>

#include <functional>
#include <random>

#include "cobordize/error.hpp"

// Runs f and returns the error code it throws; fails the test if nothing is thrown.
inline cobordize::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const cobordize::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return cobordize::ErrorCode::internal;
}

inline long pick(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}
