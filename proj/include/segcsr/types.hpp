#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace segcsr {

using VertexId = std::uint32_t;
using EdgeIndex = std::uint64_t;

/// Half-open range of vertex ids (or local indices).
struct VertexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const VertexRange&) const = default;
};

/// Error carrying a short machine-readable kind ("bad-magic",
/// "offset-terminal", ...) next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(kind + ": " + message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

}  // namespace segcsr
