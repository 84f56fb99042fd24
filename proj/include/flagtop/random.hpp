// Counter-based random source.
//
// Every draw is a pure function of (master_seed, stream_id, counter), so a
// sample never depends on call order, thread scheduling, or the standard
// library's distribution implementations. The mixer is the SplitMix64
// finalizer (Steele, Lea, Flood 2014):
//
//   key      = mix(master_seed ^ mix(stream_id + kGolden))
//   bits(i)  = mix(key + (i + 1) * kGolden)
//   uniform  = (bits >> 11) * 2^-53          in [0, 1)
//
// Bounded integers use Lemire's multiply-shift with rejection on the same
// counter sequence, so they are also platform independent.

#ifndef FLAGTOP_RANDOM_HPP
#define FLAGTOP_RANDOM_HPP

#include <cstdint>

namespace flagtop {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class RandomSource {
 public:
  constexpr RandomSource(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed),
        stream_id_(stream_id),
        key_(mix64(master_seed ^ mix64(stream_id + kGolden))) {}

  constexpr std::uint64_t master_seed() const { return master_seed_; }
  constexpr std::uint64_t stream_id() const { return stream_id_; }

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGolden);
  }

  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // A derived source for an independent sub-task (e.g. the random matching
  // inside a trial that already used this stream for the graph).
  constexpr RandomSource substream(std::uint64_t tag) const {
    return RandomSource(master_seed_, mix64(stream_id_ ^ mix64(tag + kGolden)));
  }

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
};

// Sequential view over a RandomSource for algorithms that consume an
// unpredictable number of draws (randomized search).
class RandomStream {
 public:
  explicit RandomStream(RandomSource source) : source_(source) {}

  std::uint64_t next() { return source_.bits(counter_++); }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t draws() const { return counter_; }

 private:
  RandomSource source_;
  std::uint64_t counter_ = 0;
};

}  // namespace flagtop

#endif  // FLAGTOP_RANDOM_HPP
