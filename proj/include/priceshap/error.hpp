/*!
 * Copyright (c) 2026 priceshap authors. All rights reserved.
 * Licensed under the Apache License 2.0. See LICENSE file in the project root
 * for license information.
 */
#ifndef PRICESHAP_ERROR_HPP_
#define PRICESHAP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace priceshap {

// Stable error kinds; the kind name is always the first token of what().
enum class ErrorKind {
  kIoError,
  kBadConfig,
  kDuplicateTimestamp,
  kOverlapDetected,
  kMissingColumn,
  kEmptyDataset,
  kTooFewWeeks,
  kZeroVariance,
  kNonFinite,
  kRankDeficient,
  kBadInput,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kBadConfig: return "BadConfig";
    case ErrorKind::kDuplicateTimestamp: return "DuplicateTimestamp";
    case ErrorKind::kOverlapDetected: return "OverlapDetected";
    case ErrorKind::kMissingColumn: return "MissingColumn";
    case ErrorKind::kEmptyDataset: return "EmptyDataset";
    case ErrorKind::kTooFewWeeks: return "TooFewWeeks";
    case ErrorKind::kZeroVariance: return "ZeroVariance";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kBadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace priceshap

#endif  // PRICESHAP_ERROR_HPP_
