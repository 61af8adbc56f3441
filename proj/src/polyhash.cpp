#include "fpindex/polyhash.hpp"

#include <algorithm>
#include <cmath>

namespace fpindex {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return r;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set decides primality for every 64-bit integer.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t find_prime(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng,
                         unsigned budget) {
    if (lo > hi) throw IndexOutOfRange("find_prime: empty interval");
    lo = std::max<std::uint64_t>(lo, 2);
    std::uniform_int_distribution<std::uint64_t> pick(lo, hi);
    for (unsigned t = 0; t < budget; ++t) {
        std::uint64_t cand = pick(rng);
        if (is_prime_u64(cand)) return cand;
    }
    throw RetryLimitExceeded("no prime found in [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "] after " + std::to_string(budget) +
                             " draws");
}

HashParams::HashParams(std::uint64_t P, std::uint64_t X, std::uint32_t sigma, std::uint32_t c)
    : P_(P), X_(X % P), sigma_(sigma), c_(c) {
    if (c_ < 1) c_ = 1;
    // Smallest gamma with gamma^c >= sigma.
    gamma_ = 1;
    while (true) {
        std::uint64_t pow = 1;
        bool enough = false;
        for (std::uint32_t j = 0; j < c_; ++j) {
            pow *= gamma_;
            if (pow >= sigma_) {
                enough = true;
                break;
            }
        }
        if (enough || sigma_ <= 1) break;
        ++gamma_;
    }
    table_.assign(c_, std::vector<std::uint64_t>(gamma_, 1 % P_));
    std::uint64_t step = X_ % P_;  // X^(gamma^j) for the current level j
    for (std::uint32_t j = 0; j < c_; ++j) {
        std::uint64_t cur = 1 % P_;
        for (std::uint32_t i = 0; i < gamma_; ++i) {
            table_[j][i] = cur;
            cur = mul_mod(cur, step, P_);
        }
        step = pow_mod(step, gamma_, P_);
    }
}

std::vector<std::uint32_t> HashParams::digits(std::uint32_t e) const {
    std::vector<std::uint32_t> d(c_);
    for (std::uint32_t j = 0; j < c_; ++j) {
        d[j] = e % gamma_;
        e /= gamma_;
    }
    return d;
}

std::uint64_t HashParams::power(std::uint32_t e) const {
    if (e >= sigma_)
        throw RankOutOfRange("power exponent " + std::to_string(e) + " >= sigma " +
                             std::to_string(sigma_));
    std::uint64_t r = 1 % P_;
    for (std::uint32_t j = 0; j < c_; ++j) {
        r = mul_mod(r, table_[j][e % gamma_], P_);
        e /= gamma_;
    }
    return r;
}

std::uint64_t HashParams::hash_set(std::span<const Rank> ranks) const {
    std::uint64_t h = 0;
    for (Rank r : ranks) h = (h + power(r)) % P_;
    return h;
}

std::uint64_t HashParams::hash_set(const Fingerprint& f) const {
    std::uint64_t h = 0;
    for (Rank r = 0; r < f.sigma(); ++r)
        if (f.contains(r)) h = (h + power(r)) % P_;
    return h;
}

InjectiveHash find_injective(std::span<const Fingerprint> sets, std::uint32_t sigma,
                             std::mt19937_64& rng, std::uint32_t c, unsigned budget) {
    // Equal inputs can never be separated; reject them up front.
    {
        std::vector<const Fingerprint*> ptrs;
        ptrs.reserve(sets.size());
        for (const auto& f : sets) ptrs.push_back(&f);
        std::sort(ptrs.begin(), ptrs.end(), [](const Fingerprint* a, const Fingerprint* b) {
            return a->words() < b->words();
        });
        for (std::size_t i = 1; i < ptrs.size(); ++i)
            if (*ptrs[i] == *ptrs[i - 1]) throw DuplicateSets();
    }

    const std::uint64_t m = sets.size();
    std::uint64_t lo = std::max<std::uint64_t>(2, m * m * sigma);
    std::uint64_t hi = std::max<std::uint64_t>(lo + 1, 2 * m * m * sigma);
    std::uint64_t P = find_prime(lo, hi, rng);

    std::uniform_int_distribution<std::uint64_t> pick_x(1, P - 1);
    for (unsigned attempt = 1; attempt <= budget; ++attempt) {
        HashParams params(P, pick_x(rng), sigma, c);
        std::vector<std::uint64_t> values;
        values.reserve(sets.size());
        for (const auto& f : sets) values.push_back(params.hash_set(f));
        std::sort(values.begin(), values.end());
        if (std::adjacent_find(values.begin(), values.end()) == values.end())
            return {params, attempt};
    }
    throw RetryLimitExceeded("no injective hash after " + std::to_string(budget) + " draws");
}

}  // namespace fpindex
