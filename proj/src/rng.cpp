#include "wncs/rng.hpp"

namespace wncs {

RandomStream::RandomStream(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    engine_.seed(seq);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t replication, StreamId stream) {
    const auto id = static_cast<std::uint64_t>(stream);
    std::seed_seq seq{static_cast<std::uint32_t>(seed),        static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32),
                      static_cast<std::uint32_t>(id),          0x9e3779b9u};
    engine_.seed(seq);
}

double RandomStream::uniform() { return uniform_(engine_); }

double RandomStream::standard_normal() { return normal_(engine_); }

}  // namespace wncs
