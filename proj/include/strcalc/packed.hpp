#pragma once

// Bit-packed strings for hot loops: up to 64 positions, up to 8 symbols.
// Symbol indices are stored as three bit planes masked by the domain.

#include <array>
#include <cstdint>

#include "strcalc/strings.hpp"

namespace strcalc {

struct PackedString {
  std::uint64_t domain = 0;
  std::array<std::uint64_t, 3> planes{};

  friend bool operator==(const PackedString&, const PackedString&) = default;
};

inline constexpr int kMaxPackedPositions = 64;
inline constexpr std::size_t kMaxPackedSymbols = 8;

inline bool packable(const Alphabet& alphabet, int max_size) noexcept {
  return alphabet.size() <= kMaxPackedSymbols && max_size <= kMaxPackedPositions;
}

inline PackedString pack(const PartialString& s, const Alphabet& alphabet) {
  if (!packable(alphabet, s.size()))
    throw PreconditionError("string '" + s.render() + "' does not fit the packed layout");
  PackedString p;
  for (auto [pos, sym] : s.entries()) {
    int idx = alphabet.index_of(sym);
    if (idx < 0) throw AlphabetMismatch("symbol outside alphabet in '" + s.render() + "'");
    std::uint64_t bit = std::uint64_t{1} << (pos - 1);
    p.domain |= bit;
    for (int k = 0; k < 3; ++k)
      if (idx & (1 << k)) p.planes[k] |= bit;
  }
  return p;
}

inline PackedString pack(const Word& w, const Alphabet& alphabet) {
  return pack(w.to_string(), alphabet);
}

/// g >= f.
inline bool extends(const PackedString& g, const PackedString& f) noexcept {
  if (f.domain & ~g.domain) return false;
  for (int k = 0; k < 3; ++k)
    if ((f.planes[k] ^ g.planes[k]) & f.domain) return false;
  return true;
}

inline bool compatible(const PackedString& f, const PackedString& g) noexcept {
  std::uint64_t common = f.domain & g.domain;
  for (int k = 0; k < 3; ++k)
    if ((f.planes[k] ^ g.planes[k]) & common) return false;
  return true;
}

/// Join of compatible strings; the caller checks compatibility.
inline PackedString join_compatible(const PackedString& f, const PackedString& g) noexcept {
  PackedString out;
  out.domain = f.domain | g.domain;
  for (int k = 0; k < 3; ++k) out.planes[k] = f.planes[k] | g.planes[k];
  return out;
}

}  // namespace strcalc
