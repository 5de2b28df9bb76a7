#include "mtsim/prf.hpp"

#include <cstring>

namespace mtsim {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int b) {
  return (x << b) | (x >> (64 - b));
}

inline std::uint64_t load64_le(const std::uint8_t* p) {
  std::uint64_t v;
  std::memcpy(&v, p, 8);
#if defined(__BYTE_ORDER__) && __BYTE_ORDER__ == __ORDER_BIG_ENDIAN__
  v = __builtin_bswap64(v);
#endif
  return v;
}

#define MTSIM_SIPROUND     \
  do {                     \
    v0 += v1;              \
    v1 = rotl(v1, 13);     \
    v1 ^= v0;              \
    v0 = rotl(v0, 32);     \
    v2 += v3;              \
    v3 = rotl(v3, 16);     \
    v3 ^= v2;              \
    v0 += v3;              \
    v3 = rotl(v3, 21);     \
    v3 ^= v0;              \
    v2 += v1;              \
    v1 = rotl(v1, 17);     \
    v1 ^= v2;              \
    v2 = rotl(v2, 32);     \
  } while (0)

}  // namespace

std::uint64_t siphash24(const std::uint8_t key[16], const std::uint8_t* data,
                        std::size_t len) {
  const std::uint64_t k0 = load64_le(key);
  const std::uint64_t k1 = load64_le(key + 8);
  std::uint64_t v0 = 0x736f6d6570736575ULL ^ k0;
  std::uint64_t v1 = 0x646f72616e646f6dULL ^ k1;
  std::uint64_t v2 = 0x6c7967656e657261ULL ^ k0;
  std::uint64_t v3 = 0x7465646279746573ULL ^ k1;

  const std::uint8_t* end = data + (len & ~std::size_t{7});
  for (; data != end; data += 8) {
    const std::uint64_t m = load64_le(data);
    v3 ^= m;
    MTSIM_SIPROUND;
    MTSIM_SIPROUND;
    v0 ^= m;
  }
  std::uint64_t b = static_cast<std::uint64_t>(len) << 56;
  switch (len & 7) {
    case 7: b |= static_cast<std::uint64_t>(data[6]) << 48; [[fallthrough]];
    case 6: b |= static_cast<std::uint64_t>(data[5]) << 40; [[fallthrough]];
    case 5: b |= static_cast<std::uint64_t>(data[4]) << 32; [[fallthrough]];
    case 4: b |= static_cast<std::uint64_t>(data[3]) << 24; [[fallthrough]];
    case 3: b |= static_cast<std::uint64_t>(data[2]) << 16; [[fallthrough]];
    case 2: b |= static_cast<std::uint64_t>(data[1]) << 8; [[fallthrough]];
    case 1: b |= static_cast<std::uint64_t>(data[0]); break;
    case 0: break;
  }
  v3 ^= b;
  MTSIM_SIPROUND;
  MTSIM_SIPROUND;
  v0 ^= b;
  v2 ^= 0xff;
  MTSIM_SIPROUND;
  MTSIM_SIPROUND;
  MTSIM_SIPROUND;
  MTSIM_SIPROUND;
  return v0 ^ v1 ^ v2 ^ v3;
}

Prf::Prf(const Seed256& seed, const char* purpose) {
  // KDF: subkey halves = SipHash(seed[0:16], counter || purpose || seed[16:32])
  // so the whole 256-bit seed and the purpose tag shape the subkey.
  const std::size_t plen = std::strlen(purpose);
  std::vector<std::uint8_t> msg(1 + plen + 16);
  std::memcpy(msg.data() + 1, purpose, plen);
  std::memcpy(msg.data() + 1 + plen, seed.data() + 16, 16);
  for (int half = 0; half < 2; ++half) {
    msg[0] = static_cast<std::uint8_t>(half);
    const std::uint64_t h = siphash24(seed.data(), msg.data(), msg.size());
    std::memcpy(key_ + 8 * half, &h, 8);
  }
}

std::uint64_t Prf::u64(const std::uint8_t* msg, std::size_t len) const {
  return siphash24(key_, msg, len);
}

std::uint64_t Prf::u64_path(std::uint8_t tag, const std::uint32_t* path,
                            std::size_t path_len, std::uint32_t index) const {
  std::uint8_t buf[2 + 8 * 8 + 4];  // up to 8 path components
  if (path_len > 8) throw ContractError("path too deep for PRF encoding");
  buf[0] = tag;
  buf[1] = static_cast<std::uint8_t>(path_len);
  std::size_t off = 2;
  for (std::size_t i = 0; i < path_len; ++i) {
    const std::uint64_t c = path[i];
    for (int b = 7; b >= 0; --b) buf[off++] = static_cast<std::uint8_t>(c >> (8 * b));
  }
  buf[off++] = static_cast<std::uint8_t>(index >> 24);
  buf[off++] = static_cast<std::uint8_t>(index >> 16);
  buf[off++] = static_cast<std::uint8_t>(index >> 8);
  buf[off++] = static_cast<std::uint8_t>(index);
  return siphash24(key_, buf, off);
}

std::string seed_to_hex(const Seed256& s) {
  static const char* digits = "0123456789abcdef";
  std::string out(64, '0');
  for (int i = 0; i < 32; ++i) {
    out[2 * i] = digits[s[i] >> 4];
    out[2 * i + 1] = digits[s[i] & 0xf];
  }
  return out;
}

Seed256 seed_from_hex(const std::string& hex) {
  if (hex.size() != 64) throw ContractError("seed hex must be 64 chars");
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw ContractError("bad hex digit in seed");
  };
  Seed256 s{};
  for (int i = 0; i < 32; ++i)
    s[i] = static_cast<std::uint8_t>((nib(hex[2 * i]) << 4) | nib(hex[2 * i + 1]));
  return s;
}

Seed256 seed_from_u64(std::uint64_t v) {
  Seed256 s{};
  for (int i = 0; i < 8; ++i) s[i] = static_cast<std::uint8_t>(v >> (8 * i));
  return s;
}

}  // namespace mtsim
