#pragma once

// Hand-rolled generators shared by the unit and acceptance tests.

#include <cstdint>
#include <vector>

#include "shrinklab/formula.hpp"
#include "shrinklab/projection.hpp"
#include "shrinklab/rng.hpp"

namespace shrinklab::testgen {

inline Image random_image(Rng& rng, int m) {
  const std::uint64_t choices = 2 + 2 * static_cast<std::uint64_t>(m);
  const auto c = uniform_below(rng, choices);
  if (c < 2) return Image::constant(c == 1);
  const int var = static_cast<int>((c - 2) / 2) + 1;
  return Image::literal(var, (c - 2) % 2 == 1);
}

inline Projection random_projection(Rng& rng, int n, int m) {
  std::vector<Image> images;
  for (int i = 0; i < n; ++i) images.push_back(random_image(rng, m));
  return Projection(m, std::move(images));
}

// Random formula whose leaves are occasionally constants.
inline Formula random_formula_with_constants(Rng& rng, int leaves, int n) {
  if (leaves == 1) {
    if (uniform_below(rng, 5) == 0) return Formula::constant(coin(rng));
    return Formula::leaf(1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))), coin(rng));
  }
  const int left = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(leaves - 1)));
  const Formula a = random_formula_with_constants(rng, left, n);
  const Formula b = random_formula_with_constants(rng, leaves - left, n);
  return coin(rng) ? Formula::land(a, b) : Formula::lor(a, b);
}

}  // namespace shrinklab::testgen
