#include "codiv/rng.hpp"

namespace codiv {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

} // namespace

std::array<std::uint32_t, 4>
CounterRng::philox(std::array<std::uint32_t, 4> ctr,
                   std::array<std::uint32_t, 2> key) noexcept {
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream_id) {}

CounterRng::result_type CounterRng::operator()() noexcept {
  if (used_ >= 4) {
    buffer_ = philox({static_cast<std::uint32_t>(block_),
                      static_cast<std::uint32_t>(block_ >> 32),
                      static_cast<std::uint32_t>(stream_),
                      static_cast<std::uint32_t>(stream_ >> 32)},
                     key_);
    ++block_;
    used_ = 0;
  }
  const std::uint64_t out =
      (std::uint64_t{buffer_[used_]} << 32) | buffer_[used_ + 1];
  used_ += 2;
  return out;
}

std::uint64_t CounterRng::uniform_int(std::uint64_t lo,
                                      std::uint64_t hi) noexcept {
  const std::uint64_t range = hi - lo;
  if (range == std::numeric_limits<std::uint64_t>::max())
    return (*this)();
  const std::uint64_t span = range + 1;
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * span;
  auto low = static_cast<std::uint64_t>(m);
  if (low < span) {
    const std::uint64_t threshold = (0 - span) % span;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * span;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return lo + static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform_open0() noexcept {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

} // namespace codiv
