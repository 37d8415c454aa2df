#pragma once

#include <cstdint>
#include <random>

namespace wncs {

/// Independent random substreams used by one simulation run. Keeping one
/// stream per physical process means two configurations run with the same
/// seed see the same noise, context flips and link outcomes slot by slot.
enum class StreamId : std::uint64_t {
    ProcessNoise = 1,
    Context = 2,
    Uplink = 3,
    Downlink = 4,
    Scheduler = 5,
};

class RandomStream {
public:
    RandomStream() : RandomStream(0) {}
    explicit RandomStream(std::uint64_t seed);
    RandomStream(std::uint64_t seed, std::uint64_t replication, StreamId stream);

    /// Uniform draw on [0, 1).
    double uniform();
    double standard_normal();

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace wncs
