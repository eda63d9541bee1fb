#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "perseus/codegen.hpp"
#include "perseus/error.hpp"
#include "perseus/noise.hpp"
#include "perseus/session.hpp"

namespace perseus::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFormat = 3;
inline constexpr int kExitCorruption = 4;
inline constexpr int kExitIntegrity = 5;
inline constexpr int kExitSequence = 6;
inline constexpr int kExitIo = 7;
inline constexpr int kExitInvalidParams = 8;

int exit_code_for(ErrorKind kind) noexcept;

struct CliConfig {
  GenBounds bounds;
  int proba_lo = kDefaultProbaLo;
  int proba_hi = kDefaultProbaHi;
  std::size_t chunk_bytes = kDefaultChunkBytes;
  PayloadMode payload_mode = PayloadMode::Hex;
  std::string params_path;
  std::string in_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
};

/// Parses "lo..hi" or a single value into a percentage range. Values outside
/// [5, 35] are rejected; anything below 15 is low-entropy mode.
bool parse_proba_range(const std::string& text, int& lo, int& hi, std::string& why);

/// Entry point shared by the executable and the tests. Reports go to `out` as
/// key=value lines, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace perseus::cli
