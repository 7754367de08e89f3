#pragma once

// Prime fields F_p with arbitrary-precision residues, Miller-Rabin probable
// primes, and the fixed bit-length rule used to size the working prime.

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace octk {

using Rng = std::mt19937_64;

/// Constant factor applied to the asymptotic entry-size bound, and the
/// additive safety margin in bits.
inline constexpr std::uint64_t kEntryBoundFactor = 2;
inline constexpr std::uint64_t kEntryBoundMarginBits = 16;

/// Constant C in the serialized-size bound C * |X|^2 * (|X| + log2(1/eps) + log2 n).
inline constexpr std::uint64_t kSerializedSizeConstant = 512;

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
constexpr std::uint64_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint64_t>(std::bit_width(x - 1));
}

/// Bit length for the working prime (and hence every matrix entry) of a
/// gammoid representation with `sources` rows and `columns` ground-set
/// columns over a digraph with `vertex_count` vertices at error 2^-eps_bits:
///
///   2 * (min(|T|, |S| * ceil(log2 |T|)) + eps_bits + ceil(log2 |V|)) + 16
constexpr std::uint64_t entry_bit_bound(std::uint64_t sources, std::uint64_t columns,
                                        std::uint64_t eps_bits, std::uint64_t vertex_count) {
  std::uint64_t matroid_term = std::min(columns, sources * ceil_log2(columns));
  return kEntryBoundFactor * (matroid_term + eps_bits + ceil_log2(vertex_count)) +
         kEntryBoundMarginBits;
}

inline std::size_t bit_length(const mpz_class& x) {
  return x == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

/// Uniform integer in [0, bound) drawn from `rng`. Uses 64 surplus bits so
/// the modular bias is below 2^-64.
inline mpz_class uniform_below(Rng& rng, const mpz_class& bound) {
  std::size_t words = (bit_length(bound) + 63) / 64 + 1;
  std::vector<std::uint64_t> buf(words);
  for (auto& w : buf) w = rng();
  mpz_class x;
  mpz_import(x.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
  x %= bound;
  return x;
}

/// Miller-Rabin with `rounds` random bases (plus small-prime trial division).
inline bool is_probable_prime(const mpz_class& n, unsigned rounds, Rng& rng) {
  if (n < 2) return false;
  static constexpr unsigned kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned q : kSmall) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  mpz_class d = n - 1;
  std::size_t s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  const mpz_class n_minus_1 = n - 1;
  const mpz_class span = n - 3;  // bases in [2, n-2]
  mpz_class x;
  for (unsigned i = 0; i < rounds; ++i) {
    mpz_class a = uniform_below(rng, span) + 2;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (std::size_t r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

struct Prime {
  mpz_class p;
  std::size_t bits() const { return bit_length(p); }
  friend bool operator==(const Prime& a, const Prime& b) { return a.p == b.p; }
};

struct PrimeSamplerConfig {
  std::size_t bit_length = 64;
  std::optional<std::size_t> max_samples;  // unset: 64 * bit_length draws
  unsigned rounds = 40;
};

inline void validate(const PrimeSamplerConfig& cfg) {
  if (cfg.bit_length < 2) throw std::invalid_argument("prime bit length must be >= 2");
  if (cfg.rounds < 1) throw std::invalid_argument("primality rounds must be >= 1");
}

/// Smallest probable prime >= 3 with exactly `bits` bits. Used when sampling
/// runs out of budget.
inline Prime fallback_prime(std::size_t bits, unsigned rounds = 40) {
  if (bits < 2) throw std::invalid_argument("prime bit length must be >= 2");
  if (bits == 2) return {mpz_class(3)};
  Rng rng(bits);
  mpz_class c = mpz_class(1) << (bits - 1);
  c += 1;
  while (!is_probable_prime(c, rounds, rng)) c += 2;
  return {c};
}

/// Uniformly sampled probable prime of exactly `cfg.bit_length` bits
/// (never 2). Falls back to `fallback_prime` once `max_samples` draws have
/// all been composite.
inline Prime random_prime(const PrimeSamplerConfig& cfg, Rng& rng) {
  validate(cfg);
  if (cfg.bit_length == 2) return {mpz_class(3)};
  const std::size_t budget = cfg.max_samples.value_or(64 * cfg.bit_length);
  const mpz_class low = mpz_class(1) << (cfg.bit_length - 1);
  for (std::size_t i = 0; i < budget; ++i) {
    mpz_class c = low + uniform_below(rng, low);
    c |= 1;
    if (is_probable_prime(c, cfg.rounds, rng)) return {c};
  }
  return fallback_prime(cfg.bit_length, cfg.rounds);
}

namespace fp {

inline void reduce(mpz_class& x, const mpz_class& p) {
  mpz_mod(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
}

inline mpz_class inverse(const mpz_class& x, const mpz_class& p) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("inverse of zero in F_p");
  return r;
}

/// x <- (x - f * y) mod p
inline void sub_mul(mpz_class& x, const mpz_class& f, const mpz_class& y, const mpz_class& p) {
  mpz_submul(x.get_mpz_t(), f.get_mpz_t(), y.get_mpz_t());
  reduce(x, p);
}

inline void mul(mpz_class& x, const mpz_class& f, const mpz_class& p) {
  x *= f;
  reduce(x, p);
}

}  // namespace fp

}  // namespace octk
