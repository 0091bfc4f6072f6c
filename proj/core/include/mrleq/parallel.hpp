#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace mrleq {

// Worker threads to use: hardware concurrency, capped by the MRLEQ_THREADS
// environment variable when set to a positive integer.
unsigned worker_count();

// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index runs
// exactly once; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// SplitMix64 step; used to derive independent per-chunk seeds.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mrleq
