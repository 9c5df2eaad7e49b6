#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace qneclab {

/// Angle reduced to (-pi, pi].
double wrap_angle(double theta);

/// Shortest decimal text that round-trips the double ("nan"/"inf" verbatim).
std::string format_double(double x);

/// Worker count: QNECLAB_THREADS if set and positive, else hardware
/// concurrency, never below 1.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Exceptions from
/// any index are rethrown (the lowest index wins) after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = worker_count());

/// Seeded generator with a platform-independent uniform mapping, so randomized
/// suites are reproducible bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi);
    int integer(int lo, int hi);   // inclusive
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace qneclab
