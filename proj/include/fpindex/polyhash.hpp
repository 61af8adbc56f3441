#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fpindex/errors.hpp"
#include "fpindex/seqcore.hpp"

namespace fpindex {

// Deterministic Miller-Rabin, valid for any 64-bit input.
bool is_prime_u64(std::uint64_t n);

// (a * b) mod m without overflow; m must stay below 2^62 in library use.
inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Uniformly samples [lo, hi] until a prime shows up. Dense-enough intervals
// (all the bounds used in this library span [m, 2m]) finish in a few dozen
// draws; the budget turns pathological inputs into RetryLimitExceeded.
std::uint64_t find_prime(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng,
                         unsigned budget = 4096);

// Parameters of the polynomial set hash  h(S) = sum over e in S of X^e mod P.
// Exponents are decomposed in base gamma = ceil(sigma^(1/c)) so a power X^e
// costs c lookups in a precomputed c x gamma table.
class HashParams {
  public:
    HashParams() = default;
    HashParams(std::uint64_t P, std::uint64_t X, std::uint32_t sigma, std::uint32_t c = 1);

    std::uint64_t P() const { return P_; }
    std::uint64_t X() const { return X_; }
    std::uint32_t c() const { return c_; }
    std::uint32_t gamma() const { return gamma_; }
    std::uint32_t sigma() const { return sigma_; }

    // X^e mod P for 0 <= e < sigma, via the digit table.
    std::uint64_t power(std::uint32_t e) const;

    std::uint64_t hash_set(std::span<const Rank> ranks) const;
    std::uint64_t hash_set(const Fingerprint& f) const;

    // Digits (d_0, ..., d_{c-1}) of e in base gamma; exposed for tests.
    std::vector<std::uint32_t> digits(std::uint32_t e) const;

  private:
    std::uint64_t P_ = 0;
    std::uint64_t X_ = 0;
    std::uint32_t sigma_ = 0;
    std::uint32_t c_ = 1;
    std::uint32_t gamma_ = 0;
    // table_[j][i] = X^(i * gamma^j) mod P
    std::vector<std::vector<std::uint64_t>> table_;
};

struct InjectiveHash {
    HashParams params;
    unsigned attempts = 0;  // number of X draws used
};

// Draws X until the hash separates every set in the collection. P is sampled
// from [max(2, m^2 sigma), 2 m^2 sigma], which keeps the per-draw collision
// probability at most 1/2. Throws DuplicateSets when two inputs are equal and
// RetryLimitExceeded when the draw budget runs out.
InjectiveHash find_injective(std::span<const Fingerprint> sets, std::uint32_t sigma,
                             std::mt19937_64& rng, std::uint32_t c = 1,
                             unsigned budget = 64);

}  // namespace fpindex
