#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace tag {

/// FNV-1a over a canonical byte stream.
class StateHasher {
 public:
  void add_bytes(const void* data, std::size_t n);
  void add(std::int64_t v) { add_bytes(&v, sizeof v); }
  void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
  void add(int v) { add(static_cast<std::int64_t>(v)); }
  void add(bool v) { add(static_cast<std::int64_t>(v)); }
  void add(double v) { add_bytes(&v, sizeof v); }
  void add(std::string_view s);
  template <class T>
  void add_all(std::span<const T> values) {
    add(static_cast<std::int64_t>(values.size()));
    for (const auto& v : values) add(v);
  }

  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace tag
