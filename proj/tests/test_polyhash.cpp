#include <doctest.h>

#include <set>

#include "fpindex/oracle.hpp"
#include "fpindex/polyhash.hpp"
#include "helpers.hpp"

using namespace fpindex;

TEST_SUITE_BEGIN("polyhash");

TEST_CASE("primality spot checks") {
    CHECK(!is_prime_u64(0));
    CHECK(!is_prime_u64(1));
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(!is_prime_u64(4));
    CHECK(is_prime_u64(17));
    CHECK(!is_prime_u64(25326001));                 // strong pseudoprime to small bases
    CHECK(is_prime_u64(4611686018427387847ULL));    // just below 2^62
    CHECK(!is_prime_u64(4611686018427387904ULL));   // 2^62
    CHECK(is_prime_u64((1ULL << 61) - 1));          // Mersenne prime
    int primes = 0;
    for (std::uint64_t v = 2; v < 1000; ++v)
        if (is_prime_u64(v)) ++primes;
    CHECK(primes == 168);
}

TEST_CASE("find_prime lands inside the interval") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        std::uint64_t lo = 1000 + rng() % 100000;
        std::uint64_t p = find_prime(lo, 2 * lo, rng);
        CHECK(p >= lo);
        CHECK(p <= 2 * lo);
        CHECK(is_prime_u64(p));
    }
    std::uint64_t tiny = find_prime(2, 4, rng);
    CHECK((tiny == 2 || tiny == 3));
    // An interval with no prime exhausts the budget.
    CHECK_THROWS_AS(find_prime(24, 28, rng, 64), RetryLimitExceeded);
}

TEST_CASE("hash_set micro value") {
    HashParams params(17, 2, 5);
    std::vector<Rank> s{0, 1, 3};
    CHECK(params.hash_set(s) == 11);  // 1 + 2 + 8
}

TEST_CASE("digit decomposition") {
    HashParams params(1000003, 6, 16, 2);
    CHECK(params.gamma() == 4);
    auto d = params.digits(13);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 3);
}

TEST_CASE("power table matches square-and-multiply for every c") {
    std::mt19937_64 rng(9);
    for (std::uint32_t c : {1u, 2u, 3u}) {
        std::uint64_t P = find_prime(1 << 20, 1 << 21, rng);
        std::uint64_t X = 2 + rng() % (P - 2);
        std::uint32_t sigma = 256;
        HashParams params(P, X, sigma, c);
        for (std::uint32_t e = 0; e < sigma; ++e)
            CHECK(params.power(e) == pow_mod(X, e, P));
    }
}

TEST_CASE("power rejects out-of-range exponents") {
    HashParams params(17, 2, 5);
    CHECK_THROWS_AS(params.power(5), RankOutOfRange);
}

TEST_CASE("incremental identity h(S + e) = h(S) + X^e") {
    std::mt19937_64 rng(13);
    std::uint64_t P = find_prime(1 << 16, 1 << 17, rng);
    HashParams params(P, 1234, 32);
    std::vector<Rank> s;
    std::uint64_t h = 0;
    for (Rank r : {3u, 7u, 0u, 31u, 12u}) {
        h = (h + params.power(r)) % P;
        s.push_back(r);
        CHECK(params.hash_set(s) == h);
    }
}

TEST_CASE("find_injective separates the golden fingerprint family") {
    auto [s, a] = normalize("abaceabacd");
    auto gt = oracle_all(s);
    std::mt19937_64 rng(17);
    auto inj = find_injective(gt.fingerprints, s.sigma(), rng);
    std::set<std::uint64_t> values;
    for (const auto& f : gt.fingerprints) values.insert(inj.params.hash_set(f));
    CHECK(values.size() == gt.fingerprint_count());
    std::uint64_t m = gt.fingerprint_count();
    CHECK(inj.params.P() >= m * m * s.sigma());
    CHECK(inj.params.P() <= 2 * m * m * s.sigma());
}

TEST_CASE("find_injective expected attempts stay small") {
    auto [s, a] = normalize("abaceabacd");
    auto gt = oracle_all(s);
    std::mt19937_64 rng(21);
    unsigned long long total = 0;
    const int runs = 60;
    for (int t = 0; t < runs; ++t) total += find_injective(gt.fingerprints, s.sigma(), rng).attempts;
    CHECK(static_cast<double>(total) / runs <= 3.0);
}

TEST_CASE("find_injective rejects duplicate sets") {
    Fingerprint f(4), g(4);
    f.add(1);
    g.add(1);
    std::vector<Fingerprint> sets{f, g};
    std::mt19937_64 rng(3);
    CHECK_THROWS_AS(find_injective(sets, 4, rng), DuplicateSets);
}

TEST_CASE("degenerate collections") {
    std::mt19937_64 rng(31);
    std::vector<Fingerprint> none;
    CHECK_NOTHROW(find_injective(none, 4, rng));
    Fingerprint f(4);
    f.add(2);
    std::vector<Fingerprint> one{f};
    CHECK_NOTHROW(find_injective(one, 4, rng));
}

TEST_SUITE_END();
