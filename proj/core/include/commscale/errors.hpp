#pragma once

#include <stdexcept>
#include <string>

namespace commscale {

// Root of every exception the library throws on bad input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed document: wrong type, unknown key, bad CSV row. The message starts
// with the offending field path (e.g. "hardware.peak_flops") or line number.
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// Well-formed input that violates a domain invariant (H mod TP != 0, B = 0, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A cost model cannot price the requested operator.
class PricingError : public Error {
 public:
  using Error::Error;
};

}  // namespace commscale
