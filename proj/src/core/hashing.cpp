#include "tag/core/hashing.hpp"

namespace tag {

void StateHasher::add_bytes(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h_ ^= p[i];
    h_ *= 0x100000001b3ULL;
  }
}

void StateHasher::add(std::string_view s) {
  add(static_cast<std::int64_t>(s.size()));
  add_bytes(s.data(), s.size());
}

}  // namespace tag
