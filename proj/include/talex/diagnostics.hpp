#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace talex {

// Error taxonomy shared by the parser, the validators and the engine.
// Every error carries a stable short code (used by the CLI and by tests)
// and, where applicable, a human-readable location.
enum class errc {
  parse,       // malformed input document or word
  validation,  // well-formed input violating a semantic invariant
  dimension,   // matrix shape misuse
  domain,      // algebraic precondition (inversion of zero, order mixing, ...)
  engine,      // internal consistency failure or resource guard tripped
};

inline const char* errc_code(errc c) {
  switch (c) {
    case errc::parse: return "E-PARSE";
    case errc::validation: return "E-VALIDATE";
    case errc::dimension: return "E-DIM";
    case errc::domain: return "E-DOMAIN";
    case errc::engine: return "E-ENGINE";
  }
  return "E-UNKNOWN";
}

class error : public std::runtime_error {
 public:
  error(errc code, std::string message, std::string location = {})
      : std::runtime_error(location.empty()
                               ? std::string(errc_code(code)) + ": " + message
                               : std::string(errc_code(code)) + ": " + message +
                                     " [" + location + "]"),
        code_(code),
        location_(std::move(location)) {}

  errc code() const { return code_; }
  const std::string& location() const { return location_; }

 private:
  errc code_;
  std::string location_;
};

inline error parse_error(std::string message, std::string location = {}) {
  return error(errc::parse, std::move(message), std::move(location));
}
inline error validation_error(std::string message, std::string location = {}) {
  return error(errc::validation, std::move(message), std::move(location));
}
inline error dimension_error(std::string message) {
  return error(errc::dimension, std::move(message));
}
inline error domain_error(std::string message) {
  return error(errc::domain, std::move(message));
}
inline error engine_error(std::string message) {
  return error(errc::engine, std::move(message));
}

}  // namespace talex
