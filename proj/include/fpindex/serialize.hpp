#pragma once

#include <iosfwd>
#include <string>

#include "fpindex/fingerprint_index.hpp"

namespace fpindex {

// Versioned binary index container. Layout (all integers little-endian,
// fixed width):
//
//   magic "FPIX" | version u32 | report kind u8
//   sigma u32 | alphabet byte per rank
//   n u32 | raw_length u64 | rank u8 per position | run (lo u64, hi u64) each
//   trie: node count u32, then (parent u32, label u8) per node
//   backtrack: P u64, point u64, c u32, count u32, then (hash u64, rank u8)
//   report, by kind:
//     tree paths      -> per non-root node: count u32, (offset u32, support u32)
//     location lists  -> per non-root node: count u32, (i u32, j u32)
//     names only      -> empty
//
// Loading validates every section and throws FormatError on corruption,
// truncation, or an unsupported version.

void save_index(const FingerprintIndex& idx, std::ostream& os);
FingerprintIndex load_index(std::istream& is);

// File wrappers; IO failures surface as FormatError.
void save_index_file(const FingerprintIndex& idx, const std::string& path);
FingerprintIndex load_index_file(const std::string& path);

// Human-readable JSON rendering of the same sections (debugging aid).
std::string index_to_json(const FingerprintIndex& idx);

}  // namespace fpindex
