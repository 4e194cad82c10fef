#ifndef TSKSTREAM_SYNTH_HPP
#define TSKSTREAM_SYNTH_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tskstream/stream.hpp"

namespace tsk {

/// A scheduled concept change in a generated stream.
struct DriftPoint {
    std::uint64_t index = 0;
    enum class Kind { Abrupt, Gradual } kind = Kind::Abrupt;
    double magnitude = 0.0;
};

/// Configuration of a drifting synthetic stream.
struct DriftStreamConfig {
    std::string generator = "piecewise-linear";  // piecewise-linear | friedman-like
    std::size_t d = 5;
    std::uint64_t n = 10000;
    std::vector<DriftPoint> drifts;  // indices strictly increasing, < n
    double noise = 0.1;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Deterministic stream for the given config; identical seeds replay
/// identical bytes. Abrupt drifts shift the generating function at the
/// drift index, gradual ones ramp the shift in over 1000 instances.
std::unique_ptr<StreamSource> genDriftStream(const DriftStreamConfig& cfg);

/// Generator stand-ins for classic regression benchmark families
/// (2dplanes and fried follow their published generators; kin8nm,
/// bank8fm and puma8nh are simulations of the same flavor of task).
/// Known names: plane2d, fried, kin8nm, bank8fm, puma8nh.
std::unique_ptr<StreamSource> genBenchmark(const std::string& name, std::uint64_t n,
                                           std::uint64_t seed);

/// Parse a compact spec like
///   "fried:n=40769,seed=1"
///   "piecewise-linear:d=5,n=10000,noise=0.5,seed=3,drift=5000:abrupt:10"
/// Multiple drifts are ';'-separated inside the drift value.
std::unique_ptr<StreamSource> openSynthetic(const std::string& spec);

} // namespace tsk

#endif
