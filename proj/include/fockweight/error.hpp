#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockweight {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Invalid graph, weight program or scenario. Carries a location when the
/// problem was found while parsing text.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  ConfigError(SourceLocation where, const std::string& what)
      : std::runtime_error(std::to_string(where.line) + ":" + std::to_string(where.column) + ": " +
                           what),
        where_(where),
        located_(true) {}

  bool located() const { return located_; }
  SourceLocation where() const { return where_; }

 private:
  SourceLocation where_{};
  bool located_ = false;
};

/// A Δtable factor needed an entry past the end of its table.
class TableUnderflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured dimension cap.
class ResourceCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fockweight
