#include "perseus/entropy.hpp"

#include <sys/random.h>

#include <cerrno>
#include <cstring>
#include <string>

#include "perseus/error.hpp"

namespace perseus {

std::uint64_t EntropySource::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(ErrorKind::Precondition, "empty uniform range");
  const std::uint64_t span = hi - lo;
  if (span == max()) return next();
  const std::uint64_t range = span + 1;
  // Largest multiple of range that fits; draws above it are rejected.
  const std::uint64_t limit = max() - (max() % range + 1) % range;
  std::uint64_t v = next();
  while (v > limit) v = next();
  return lo + v % range;
}

std::uint64_t EntropySource::bits(unsigned bits) {
  if (bits >= 64) return next();
  return next() & ((std::uint64_t{1} << bits) - 1);
}

std::uint64_t SystemEntropy::next() {
  std::uint64_t v = 0;
  auto* out = reinterpret_cast<unsigned char*>(&v);
  std::size_t got = 0;
  while (got < sizeof v) {
    const ssize_t r = ::getrandom(out + got, sizeof v - got, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::Io, std::string("getrandom failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
  return v;
}

}  // namespace perseus
