#pragma once

#include <cstdint>
#include <string_view>

namespace braidsurf {

// FNV-1a, used for group/move-set fingerprints in result records and caches.
struct Fnv1a {
  std::uint64_t h = 1469598103934665603ull;
  void feed(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  }
  void feed_u64(std::uint64_t v) { feed(&v, sizeof v); }
  void feed_i32(std::int32_t v) { feed(&v, sizeof v); }
  void feed_str(std::string_view s) {
    feed_u64(s.size());
    feed(s.data(), s.size());
  }
};

}  // namespace braidsurf
