#include "dri/common/error.hpp"

namespace dri {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::InvalidEpochCount: return "InvalidEpochCount";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MissingScore: return "MissingScore";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::OutOfRangeScore: return "OutOfRangeScore";
    case ErrorCode::MissingExtraction: return "MissingExtraction";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::InsufficientBin: return "InsufficientBin";
    case ErrorCode::Syntax: return "SyntaxError";
    case ErrorCode::UnrepairableResponse: return "UnrepairableResponse";
    case ErrorCode::ExtractionFailed: return "ExtractionFailed";
    case ErrorCode::ReplayMiss: return "ReplayMiss";
    case ErrorCode::Transport: return "TransportError";
    case ErrorCode::Schema: return "SchemaError";
  }
  return "Unknown";
}

InsufficientBin::InsufficientBin(std::size_t bin, std::size_t have, std::size_t need)
    : Error(ErrorCode::InsufficientBin,
            "bin " + std::to_string(bin) + " has " + std::to_string(have) +
                " samples, " + std::to_string(need) + " required"),
      bin_(bin),
      have_(have),
      need_(need) {}

}  // namespace dri
