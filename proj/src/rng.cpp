#include "stbc/rng.hpp"

#include <cmath>
#include <numbers>

namespace stbc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], const std::uint32_t key[2]) {
    std::uint64_t p0 = std::uint64_t(kPhiloxM0) * ctr[0];
    std::uint64_t p1 = std::uint64_t(kPhiloxM1) * ctr[2];
    std::uint32_t out0 = std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0];
    std::uint32_t out1 = std::uint32_t(p1);
    std::uint32_t out2 = std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1];
    std::uint32_t out3 = std::uint32_t(p0);
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

}  // namespace

void PhiloxRng::refill() {
    std::uint32_t ctr[4] = {std::uint32_t(counter_), std::uint32_t(counter_ >> 32),
                            std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
    std::uint32_t key[2] = {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
        philox_round(ctr, key);
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    buf_[0] = ctr[0];
    buf_[1] = ctr[1];
    buf_[2] = ctr[2];
    buf_[3] = ctr[3];
    ++counter_;
    pos_ = 0;
}

std::uint32_t PhiloxRng::next_u32() {
    if (pos_ >= 4) refill();
    return buf_[pos_++];
}

std::uint64_t PhiloxRng::next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
}

double PhiloxRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxRng::uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double PhiloxRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_normal_;
    }
    double u1 = uniform_pos();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_normal_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint32_t PhiloxRng::below(std::uint32_t bound) {
    // accept only below the largest multiple of bound
    std::uint32_t limit = std::uint32_t(-1) - std::uint32_t(-1) % bound;
    std::uint32_t x = next_u32();
    while (x >= limit) x = next_u32();
    return x % bound;
}

}  // namespace stbc
