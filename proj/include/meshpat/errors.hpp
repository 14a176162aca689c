#pragma once

#include <stdexcept>
#include <string>

namespace meshpat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed pattern or permutation literal. `token` is the offending piece of input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::string token)
      : Error(message + ": '" + token + "'"), token_(std::move(token)) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Requested enumeration depth exceeds the configured limit.
class ResourceGuardError : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class NoFormulaError : public Error {
 public:
  using Error::Error;
};

class SeriesError : public Error {
 public:
  using Error::Error;
};

/// Seed data contradicts itself or the computed classification.
class LedgerError : public Error {
 public:
  using Error::Error;
};

}  // namespace meshpat
