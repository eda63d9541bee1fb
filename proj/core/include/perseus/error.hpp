#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace perseus {

enum class ErrorKind {
  Precondition,
  MalformedPayload,
  LengthMismatch,
  InvalidBounds,
  GenerationFailure,
  InvalidRange,
  ParamsTooLarge,
  AmbiguousDecode,
  Integrity,
  Format,
  Corruption,
  InvalidParams,
  Sequence,
  EmptyInput,
  HypothesisSpaceTooLarge,
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

// Single exception type for the library. `kind` drives CLI exit codes;
// `chunk` is set when the failure is attributable to one payload frame.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  std::optional<std::size_t> chunk() const noexcept { return chunk_; }
  std::size_t rank_deficit() const noexcept { return rank_deficit_; }

  Error& with_chunk(std::size_t index) {
    chunk_ = index;
    return *this;
  }
  Error& with_rank_deficit(std::size_t deficit) {
    rank_deficit_ = deficit;
    return *this;
  }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> chunk_;
  std::size_t rank_deficit_ = 0;
};

}  // namespace perseus
