#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dri {

/// Failure categories shared by every module. The CLI maps these onto
/// process exit codes, so adding a value here means updating that map.
enum class ErrorCode {
  InvalidInput,
  InvalidRange,
  InvalidParameter,
  InvalidEpochCount,
  DuplicateId,
  MissingScore,
  UnknownId,
  OutOfRangeScore,
  MissingExtraction,
  EmptyCorpus,
  InsufficientBin,
  Syntax,
  UnrepairableResponse,
  ExtractionFailed,
  ReplayMiss,
  Transport,
  Schema,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InsufficientBin : public Error {
 public:
  InsufficientBin(std::size_t bin, std::size_t have, std::size_t need);

  std::size_t bin() const noexcept { return bin_; }
  std::size_t have() const noexcept { return have_; }
  std::size_t need() const noexcept { return need_; }

 private:
  std::size_t bin_;
  std::size_t have_;
  std::size_t need_;
};

}  // namespace dri
