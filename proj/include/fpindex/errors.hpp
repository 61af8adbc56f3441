#pragma once

#include <stdexcept>
#include <string>

namespace fpindex {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyInput : Error {
    EmptyInput() : Error("input sequence is empty") {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct RankOutOfRange : Error {
    explicit RankOutOfRange(const std::string& what) : Error(what) {}
};

// A character rank fed twice into one naming list.
struct DuplicateChange : Error {
    explicit DuplicateChange(const std::string& what) : Error(what) {}
};

// Random search (prime sampling, injective hash, distinct backtrack values)
// exhausted its retry budget.
struct RetryLimitExceeded : Error {
    explicit RetryLimitExceeded(const std::string& what) : Error(what) {}
};

// find_injective_hash was given a collection containing two equal sets.
struct DuplicateSets : Error {
    DuplicateSets() : Error("input collection contains two equal sets") {}
    explicit DuplicateSets(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
    LengthMismatch(std::size_t a, std::size_t b)
        : Error("set-equality inputs have different lengths: " + std::to_string(a) +
                " vs " + std::to_string(b)) {}
};

// A string handed to set equality contains a repeated character; the
// comparison functions require strings of distinct characters.
struct DuplicateCharacter : Error {
    explicit DuplicateCharacter(const std::string& what) : Error(what) {}
};

// Fingerprint family handed to the trie builder is missing a one-smaller set.
struct NotPrefixClosed : Error {
    explicit NotPrefixClosed(const std::string& what) : Error(what) {}
};

// report() was asked about a character set that is not a fingerprint.
struct UnknownFingerprint : Error {
    UnknownFingerprint() : Error("character set is not a fingerprint of the sequence") {}
    explicit UnknownFingerprint(const std::string& what) : Error(what) {}
};

// The Monte Carlo builder's modulus bound does not fit below 2^62.
struct ModulusTooLarge : Error {
    explicit ModulusTooLarge(const std::string& what) : Error(what) {}
};

// Brute-force reference asked to handle a sequence above its size cap.
struct CapExceeded : Error {
    explicit CapExceeded(const std::string& what) : Error(what) {}
};

struct KOutOfRange : Error {
    explicit KOutOfRange(const std::string& what) : Error(what) {}
};

// Malformed index file or unsupported version.
struct FormatError : Error {
    explicit FormatError(const std::string& what) : Error(what) {}
};

}  // namespace fpindex
