#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qhash {

// 4-bit word; only the low nibble is significant.
using Word4 = std::uint8_t;

constexpr Word4 rotl4(Word4 x, int k) {
  k &= 3;
  x &= 0xF;
  return static_cast<Word4>(((x << k) | (x >> ((4 - k) & 3))) & 0xF);
}
constexpr Word4 rotr4(Word4 x, int k) { return rotl4(x, 4 - (k & 3)); }

// 2x2 matrix of words, row-major: v[0], v[1] is the top row (the rate).
// As a 16-bit integer word k occupies bits 4k..4k+3.
struct SpongeState {
  std::array<Word4, 4> v{};

  static SpongeState from_bits(std::uint16_t bits);
  std::uint16_t bits() const;
  friend bool operator==(const SpongeState&, const SpongeState&) = default;
};

std::pair<Word4, Word4> qr_sponge(Word4 a, Word4 b);
SpongeState col_qr(SpongeState s);
SpongeState diag_qr(SpongeState s);
// `rounds` column+diagonal double rounds. Throws std::invalid_argument for
// rounds < 1.
SpongeState chacha_pi(SpongeState s, int rounds = 10);

// Single-block sponge: the message is XORed into the rate of the 16-bit
// initial state, the state is permuted and the rate is the digest.
std::uint8_t sponge_hash(std::uint8_t message, std::uint16_t iv = 0,
                         int rounds = 10);

inline constexpr std::array<Word4, 2> kBlakeIv{0x8, 0xB};

std::pair<Word4, Word4> g_blake(Word4 a, Word4 b, Word4 x, Word4 y);

struct BlakeParams {
  std::uint32_t t = 0;  // block counter
  bool is_last = true;
  int rho = 12;
};

// Message word order for round r: entry i of the result indexes d.
std::array<int, 4> blake_schedule(int round);

// Working vector before the first round.
std::array<Word4, 4> blake_initial_vector(const BlakeParams& params);

// Compression of one 16-bit block (word k is bits 4k..4k+3). The digest is
// v[0] | v[1] << 4 after rho rounds. Throws std::invalid_argument for
// rho < 1.
std::uint8_t blake_compress(std::uint16_t block, const BlakeParams& params = {});

enum class HashKind { Sponge, Blake };

std::string to_string(HashKind kind);
// Throws std::invalid_argument on anything but "sponge" / "blake".
HashKind hash_kind_from_string(const std::string& name);

// A fully parameterised toy hash.
struct HashConfig {
  HashKind kind = HashKind::Sponge;
  std::uint16_t iv = 0;  // sponge initial state
  int rounds = 10;       // sponge double rounds
  BlakeParams blake;

  unsigned message_bits() const { return kind == HashKind::Sponge ? 8 : 16; }
  std::uint8_t operator()(std::uint32_t message) const;
};

// A target digest and every message reaching it.
struct HashInstance {
  HashConfig config;
  std::uint8_t digest = 0;
  std::vector<std::uint32_t> preimages;  // ascending

  std::size_t m() const { return preimages.size(); }
  std::uint64_t search_space() const {
    return std::uint64_t{1} << config.message_bits();
  }
  bool is_preimage(std::uint32_t message) const;
};

inline constexpr unsigned kMaxEnumerationBits = 20;

// Exhaustive search over a message space of `message_bits` bits. Throws
// std::invalid_argument beyond kMaxEnumerationBits.
std::vector<std::uint32_t> enumerate_preimages(
    std::uint8_t digest, unsigned message_bits,
    const std::function<std::uint8_t(std::uint32_t)>& hash);

HashInstance enumerate_preimages(std::uint8_t digest, const HashConfig& config);

// Preimage count of each of the 256 digests.
std::array<std::uint32_t, 256> digest_histogram(const HashConfig& config);

// Smallest digest with exactly m preimages, if any.
std::optional<HashInstance> find_instance(const HashConfig& config,
                                          std::size_t m);

// First sponge initial state of the form base + k * 0x100 (capacity scan,
// k = 0..255) whose digest histogram realises every preimage count in
// `wanted`.
std::optional<std::uint16_t> find_sponge_iv(const std::vector<std::size_t>& wanted,
                                            std::uint16_t base = 0,
                                            int rounds = 10);

}  // namespace qhash
