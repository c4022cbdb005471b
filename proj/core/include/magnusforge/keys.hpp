#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace magnusforge::keys {

// Canonical byte-serialization helpers used by every canonical_key
// implementation. Integers are encoded with a fixed field order as a sign
// byte followed by the magnitude in little-endian; sequences are
// length-prefixed. Two elements of the same group get equal keys iff they
// are equal, so keys can serve as hash-map keys and as a total order.

inline void append_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

inline void append_i64(std::string& out, std::int64_t v) {
  const std::uint64_t mag =
      v < 0 ? ~static_cast<std::uint64_t>(v) + 1u : static_cast<std::uint64_t>(v);
  out.push_back(v < 0 ? '\x01' : '\x00');
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((mag >> (8 * k)) & 0xff));
}

inline void append_bytes(std::string& out, std::string_view s) {
  append_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

}  // namespace magnusforge::keys
