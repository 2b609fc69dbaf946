#pragma once

// Presentations used across the test suites.

#include <string_view>

#include "dgroup/presentation.hpp"

namespace fixtures {

inline constexpr std::string_view commuting = R"(
letters: a b c
rel: ab = ba
rel: ac = ca
rel: bc = cb
)";

inline constexpr std::string_view absorbing = R"(
letters: a b
rel: ab = a
rel: abb = a
)";

inline constexpr std::string_view idempotent_bridge = R"(
letters: a b c p
rel: ap = a
rel: pc = c
rel: bp = b
rel: pb = b
)";

inline constexpr std::string_view p1 = R"(
letters: a c p x
rel: ap = a
rel: pc = c
rel: ax = a
rel: xp = p
)";

inline constexpr std::string_view p2 = R"(
letters: a b p q
rel: ap = a
rel: pb = b
rel: q = p
rel: aqqb = appb
)";

inline constexpr std::string_view p3 = R"(
letters: a x y
rel: ax = a
rel: ay = a
rel: y = x
)";

// An edge (a, p -> q, pa) on "appa" whose hyperplane meets itself.
inline constexpr std::string_view self_crossing = R"(
letters: a p q
rel: ap = a
rel: pa = a
rel: p = q
)";

inline dgroup::Presentation load(std::string_view text) {
  return dgroup::parse_presentation(text);
}

}  // namespace fixtures
