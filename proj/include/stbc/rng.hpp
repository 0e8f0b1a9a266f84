#ifndef STBC_RNG_HPP
#define STBC_RNG_HPP

#include <cstdint>

namespace stbc {

// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
// independent substream; replay of a stream is bit-identical, so work can be
// sharded across threads by stream id without any shared state.
class PhiloxRng {
  public:
    PhiloxRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    double uniform();      // [0, 1)
    double uniform_pos();  // (0, 1]
    double normal();       // standard normal via Box-Muller

    // uniform integer in [0, bound), rejection-sampled (bound >= 1)
    std::uint32_t below(std::uint32_t bound);

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    unsigned pos_ = 4;
    double spare_normal_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace stbc

#endif
