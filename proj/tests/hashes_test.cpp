#include "qhash/hashes.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <stdexcept>

using namespace qhash;

namespace {

// Independent reference written from the round definitions, word by word
// on plain ints.
int rl(int x, int k) { return ((x << k) | (x >> (4 - k))) & 15; }
int rr(int x, int k) { return ((x >> k) | (x << (4 - k))) & 15; }

void ref_qr(int& a, int& b) {
  a = (a + b) % 16;
  b = rl(b ^ a, 2);
  a = (a + b) % 16;
  b = rl(b ^ a, 1);
}

int ref_sponge(int message, int iv) {
  int v[4];
  for (int k = 0; k < 4; ++k) v[k] = ((iv ^ message) >> (4 * k)) & 15;
  for (int r = 0; r < 10; ++r) {
    ref_qr(v[0], v[2]);
    ref_qr(v[1], v[3]);
    ref_qr(v[0], v[3]);
    ref_qr(v[1], v[2]);
  }
  return v[0] | (v[1] << 4);
}

void ref_g(int& a, int& b, int x, int y) {
  a = (a + b + x) % 16;
  b = rr(b ^ a, 2);
  a = (a + b + y) % 16;
  b = rr(b ^ a, 1);
}

int ref_blake(int block) {
  int d[4];
  for (int k = 0; k < 4; ++k) d[k] = (block >> (4 * k)) & 15;
  int v[4] = {0x8 ^ 0x2, 0xB, 0x8 ^ 0xF, 0xB};  // t = 0, last block
  for (int r = 0; r < 12; ++r) {
    const int s0 = r % 4, s1 = (r + 1) % 4, s2 = (r + 2) % 4, s3 = (r + 3) % 4;
    ref_g(v[0], v[2], d[s0], d[s1]);
    ref_g(v[1], v[3], d[s2], d[s3]);
    ref_g(v[0], v[3], d[s0], d[s1]);
    ref_g(v[1], v[2], d[s2], d[s3]);
  }
  return v[0] | (v[1] << 4);
}

std::map<std::uint32_t, int> multiplicity(const std::array<std::uint32_t, 256>& h) {
  std::map<std::uint32_t, int> out;
  for (auto c : h) {
    if (c > 0) ++out[c];
  }
  return out;
}

}  // namespace

TEST(Rotations, FourBit) {
  EXPECT_EQ(rotl4(0b0001, 1), 0b0010);
  EXPECT_EQ(rotl4(0b1000, 1), 0b0001);
  EXPECT_EQ(rotr4(0b0001, 1), 0b1000);
  EXPECT_EQ(rotl4(0b0110, 2), 0b1001);
  for (int x = 0; x < 16; ++x) EXPECT_EQ(rotr4(rotl4(x, 3), 3), x);
}

TEST(QrSponge, Examples) {
  EXPECT_EQ(qr_sponge(0, 0), std::make_pair(Word4{0}, Word4{0}));
  EXPECT_EQ(qr_sponge(1, 0), std::make_pair(Word4{5}, Word4{2}));
}

TEST(QrSponge, MatchesReferenceAndIsBijective) {
  std::set<int> seen;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      int ra = a, rb = b;
      ref_qr(ra, rb);
      const auto [x, y] = qr_sponge(a, b);
      EXPECT_EQ(x, ra);
      EXPECT_EQ(y, rb);
      seen.insert(x | (y << 4));
    }
  }
  EXPECT_EQ(seen.size(), 256u);
}

TEST(GBlake, ZeroAndBijectiveAndDiffersFromQr) {
  EXPECT_EQ(g_blake(0, 0, 0, 0), std::make_pair(Word4{0}, Word4{0}));
  std::set<int> seen;
  int disagreements = 0;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      int ra = a, rb = b;
      ref_g(ra, rb, 0, 0);
      const auto g = g_blake(a, b, 0, 0);
      EXPECT_EQ(g.first, ra);
      EXPECT_EQ(g.second, rb);
      seen.insert(g.first | (g.second << 4));
      disagreements += g != qr_sponge(a, b);
    }
  }
  EXPECT_EQ(seen.size(), 256u);
  EXPECT_GT(disagreements, 0);
}

TEST(ChachaPi, ZeroFixedPointAndBijection) {
  EXPECT_EQ(chacha_pi(SpongeState{}, 10).bits(), 0u);
  EXPECT_EQ(chacha_pi(SpongeState{}, 3).bits(), 0u);
  std::vector<bool> hit(1 << 16, false);
  for (std::uint32_t x = 0; x < (1u << 16); ++x) {
    const auto y = chacha_pi(SpongeState::from_bits(static_cast<std::uint16_t>(x))).bits();
    ASSERT_FALSE(hit[y]) << x;
    hit[y] = true;
  }
  EXPECT_THROW(chacha_pi(SpongeState{}, 0), std::invalid_argument);
}

TEST(ChachaPi, OneRoundComposesQuarterRounds) {
  SpongeState s;
  s.v = {1, 0, 0, 0};
  int v[4] = {1, 0, 0, 0};
  ref_qr(v[0], v[2]);
  ref_qr(v[1], v[3]);
  ref_qr(v[0], v[3]);
  ref_qr(v[1], v[2]);
  const auto out = chacha_pi(s, 1);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(out.v[k], v[k]);
}

TEST(SpongeHash, MatchesReferenceForSeveralIvs) {
  for (int iv : {0x0000, 0x1200, 0xBEEF}) {
    for (int m = 0; m < 256; ++m) {
      ASSERT_EQ(sponge_hash(static_cast<std::uint8_t>(m),
                            static_cast<std::uint16_t>(iv)),
                ref_sponge(m, iv));
    }
  }
}

TEST(SpongeHash, MessageCancellingRateGivesPermutationOfZero) {
  const std::uint16_t iv = 0x00A7;
  EXPECT_EQ(sponge_hash(0xA7, iv), chacha_pi(SpongeState{}).bits() & 0xFF);
}

TEST(SpongeHash, HistogramAtZeroIv) {
  const auto h = digest_histogram(HashConfig{});
  const auto mult = multiplicity(h);
  EXPECT_EQ(mult, (std::map<std::uint32_t, int>{{1, 93}, {2, 46}, {3, 13}, {4, 8}}));
  std::uint32_t total = 0;
  for (auto c : h) total += c;
  EXPECT_EQ(total, 256u);
}

TEST(SpongeHash, CapacityScanFindsSuiteIv) {
  const auto iv = find_sponge_iv({1, 2, 3, 4, 5, 6});
  ASSERT_TRUE(iv.has_value());
  EXPECT_EQ(*iv, 0x1200);
  HashConfig c;
  c.iv = *iv;
  EXPECT_EQ(multiplicity(digest_histogram(c)),
            (std::map<std::uint32_t, int>{
                {1, 99}, {2, 45}, {3, 13}, {4, 3}, {5, 2}, {6, 1}}));
}

TEST(BlakeCompress, InitialVector) {
  const auto v = blake_initial_vector({});
  EXPECT_EQ(v, (std::array<Word4, 4>{0xA, 0xB, 0x7, 0xB}));
  const auto w = blake_initial_vector({0x35, false, 12});
  EXPECT_EQ(w, (std::array<Word4, 4>{0xA ^ 0x5, 0xB ^ 0x3, 0x8, 0xB}));
}

TEST(BlakeCompress, RandomMessagesMatchReference) {
  std::mt19937_64 rng(2023);
  for (int i = 0; i < 200; ++i) {
    const auto m = static_cast<std::uint16_t>(rng());
    ASSERT_EQ(blake_compress(m), ref_blake(m)) << m;
  }
}

TEST(BlakeCompress, DeterministicAndCompressing) {
  EXPECT_EQ(blake_compress(0x1234), blake_compress(0x1234));
  HashConfig c;
  c.kind = HashKind::Blake;
  const auto h = digest_histogram(c);
  std::uint32_t total = 0, top = 0;
  for (auto x : h) {
    total += x;
    top = std::max(top, x);
  }
  EXPECT_EQ(total, 65536u);
  EXPECT_GT(top, 1u);
  EXPECT_THROW(blake_compress(0, {0, true, 0}), std::invalid_argument);
}

TEST(BlakeSchedule, RotatesPerRound) {
  EXPECT_EQ(blake_schedule(0), (std::array<int, 4>{0, 1, 2, 3}));
  EXPECT_EQ(blake_schedule(1), (std::array<int, 4>{1, 2, 3, 0}));
  EXPECT_EQ(blake_schedule(4), blake_schedule(0));
}

TEST(Preimages, EnumerationPartitionsSpace) {
  HashConfig c;
  std::size_t total = 0;
  for (int d = 0; d < 256; ++d) {
    const auto inst = enumerate_preimages(static_cast<std::uint8_t>(d), c);
    for (auto m : inst.preimages) EXPECT_EQ(sponge_hash(static_cast<std::uint8_t>(m)), d);
    total += inst.m();
  }
  EXPECT_EQ(total, 256u);
}

TEST(Preimages, EmptyInstanceAndLimits) {
  HashConfig c;
  const auto h = digest_histogram(c);
  const auto missing = std::find(h.begin(), h.end(), 0u) - h.begin();
  ASSERT_LT(missing, 256);
  EXPECT_TRUE(enumerate_preimages(static_cast<std::uint8_t>(missing), c).preimages.empty());
  EXPECT_THROW(enumerate_preimages(0, 21, [](std::uint32_t) { return std::uint8_t{0}; }),
               std::invalid_argument);
}

TEST(Preimages, FindInstance) {
  HashConfig c;
  c.iv = 0x1200;
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto inst = find_instance(c, m);
    ASSERT_TRUE(inst.has_value());
    EXPECT_EQ(inst->m(), m);
    for (auto p : inst->preimages) EXPECT_TRUE(inst->is_preimage(p));
  }
  EXPECT_FALSE(find_instance(c, 7).has_value());
}

TEST(HashKind, Names) {
  EXPECT_EQ(hash_kind_from_string("blake"), HashKind::Blake);
  EXPECT_EQ(to_string(HashKind::Sponge), "sponge");
  EXPECT_THROW(hash_kind_from_string("sha"), std::invalid_argument);
}
