#include "qhash/hashes.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhash {

namespace {

constexpr Word4 add4(Word4 a, Word4 b) { return static_cast<Word4>((a + b) & 0xF); }

}  // namespace

SpongeState SpongeState::from_bits(std::uint16_t bits) {
  SpongeState s;
  for (int k = 0; k < 4; ++k) s.v[k] = static_cast<Word4>((bits >> (4 * k)) & 0xF);
  return s;
}

std::uint16_t SpongeState::bits() const {
  std::uint16_t out = 0;
  for (int k = 0; k < 4; ++k) out |= static_cast<std::uint16_t>((v[k] & 0xF) << (4 * k));
  return out;
}

std::pair<Word4, Word4> qr_sponge(Word4 a, Word4 b) {
  a = add4(a, b);
  b = rotl4(b ^ a, 2);
  a = add4(a, b);
  b = rotl4(b ^ a, 1);
  return {a, b};
}

SpongeState col_qr(SpongeState s) {
  std::tie(s.v[0], s.v[2]) = qr_sponge(s.v[0], s.v[2]);
  std::tie(s.v[1], s.v[3]) = qr_sponge(s.v[1], s.v[3]);
  return s;
}

SpongeState diag_qr(SpongeState s) {
  std::tie(s.v[0], s.v[3]) = qr_sponge(s.v[0], s.v[3]);
  std::tie(s.v[1], s.v[2]) = qr_sponge(s.v[1], s.v[2]);
  return s;
}

SpongeState chacha_pi(SpongeState s, int rounds) {
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  for (int r = 0; r < rounds; ++r) s = diag_qr(col_qr(s));
  return s;
}

std::uint8_t sponge_hash(std::uint8_t message, std::uint16_t iv, int rounds) {
  const auto out = chacha_pi(SpongeState::from_bits(iv ^ message), rounds);
  return static_cast<std::uint8_t>(out.bits() & 0xFF);
}

std::pair<Word4, Word4> g_blake(Word4 a, Word4 b, Word4 x, Word4 y) {
  a = add4(add4(a, b), x);
  b = rotr4(b ^ a, 2);
  a = add4(add4(a, b), y);
  b = rotr4(b ^ a, 1);
  return {a, b};
}

std::array<int, 4> blake_schedule(int round) {
  std::array<int, 4> s{};
  for (int i = 0; i < 4; ++i) s[i] = (i + round) % 4;
  return s;
}

std::array<Word4, 4> blake_initial_vector(const BlakeParams& params) {
  const Word4 h0 = kBlakeIv[0] ^ 0x2;
  const Word4 h1 = kBlakeIv[1];
  std::array<Word4, 4> v{};
  v[0] = h0 ^ static_cast<Word4>(params.t & 0xF);
  v[1] = h1 ^ static_cast<Word4>((params.t >> 4) & 0xF);
  v[2] = kBlakeIv[0];
  v[3] = kBlakeIv[1];
  if (params.is_last) v[2] = static_cast<Word4>(~v[2] & 0xF);
  return v;
}

std::uint8_t blake_compress(std::uint16_t block, const BlakeParams& params) {
  if (params.rho < 1) throw std::invalid_argument("rho must be >= 1");
  std::array<Word4, 4> d{};
  for (int k = 0; k < 4; ++k) d[k] = static_cast<Word4>((block >> (4 * k)) & 0xF);
  auto v = blake_initial_vector(params);
  for (int r = 0; r < params.rho; ++r) {
    const auto s = blake_schedule(r);
    std::tie(v[0], v[2]) = g_blake(v[0], v[2], d[s[0]], d[s[1]]);
    std::tie(v[1], v[3]) = g_blake(v[1], v[3], d[s[2]], d[s[3]]);
    std::tie(v[0], v[3]) = g_blake(v[0], v[3], d[s[0]], d[s[1]]);
    std::tie(v[1], v[2]) = g_blake(v[1], v[2], d[s[2]], d[s[3]]);
  }
  return static_cast<std::uint8_t>(v[0] | (v[1] << 4));
}

std::string to_string(HashKind kind) {
  return kind == HashKind::Sponge ? "sponge" : "blake";
}

HashKind hash_kind_from_string(const std::string& name) {
  if (name == "sponge") return HashKind::Sponge;
  if (name == "blake") return HashKind::Blake;
  throw std::invalid_argument("unknown hash kind '" + name + "'");
}

std::uint8_t HashConfig::operator()(std::uint32_t message) const {
  if (kind == HashKind::Sponge) {
    return sponge_hash(static_cast<std::uint8_t>(message), iv, rounds);
  }
  return blake_compress(static_cast<std::uint16_t>(message), blake);
}

bool HashInstance::is_preimage(std::uint32_t message) const {
  return std::binary_search(preimages.begin(), preimages.end(), message);
}

std::vector<std::uint32_t> enumerate_preimages(
    std::uint8_t digest, unsigned message_bits,
    const std::function<std::uint8_t(std::uint32_t)>& hash) {
  if (message_bits > kMaxEnumerationBits) {
    throw std::invalid_argument("message space of 2^" +
                                std::to_string(message_bits) +
                                " is too large to enumerate");
  }
  std::vector<std::uint32_t> out;
  const std::uint32_t n = std::uint32_t{1} << message_bits;
  for (std::uint32_t m = 0; m < n; ++m) {
    if (hash(m) == digest) out.push_back(m);
  }
  return out;
}

HashInstance enumerate_preimages(std::uint8_t digest, const HashConfig& config) {
  return {config, digest,
          enumerate_preimages(digest, config.message_bits(),
                              [&](std::uint32_t m) { return config(m); })};
}

std::array<std::uint32_t, 256> digest_histogram(const HashConfig& config) {
  std::array<std::uint32_t, 256> counts{};
  const std::uint32_t n = std::uint32_t{1} << config.message_bits();
  for (std::uint32_t m = 0; m < n; ++m) ++counts[config(m)];
  return counts;
}

std::optional<HashInstance> find_instance(const HashConfig& config,
                                          std::size_t m) {
  const auto counts = digest_histogram(config);
  for (int d = 0; d < 256; ++d) {
    if (counts[d] == m) {
      return enumerate_preimages(static_cast<std::uint8_t>(d), config);
    }
  }
  return std::nullopt;
}

std::optional<std::uint16_t> find_sponge_iv(const std::vector<std::size_t>& wanted,
                                            std::uint16_t base, int rounds) {
  for (unsigned k = 0; k < 256; ++k) {
    HashConfig config;
    config.iv = static_cast<std::uint16_t>((base & 0xFF) | (((base >> 8) + k) & 0xFF) << 8);
    config.rounds = rounds;
    const auto counts = digest_histogram(config);
    const bool all = std::all_of(wanted.begin(), wanted.end(), [&](std::size_t m) {
      return std::find(counts.begin(), counts.end(), m) != counts.end();
    });
    if (all) return config.iv;
  }
  return std::nullopt;
}

}  // namespace qhash
