#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace dri {

using Rng = std::mt19937_64;

// Uniform integer in [0, bound). Rejection sampling over the raw engine
// output; unlike std::uniform_int_distribution the result sequence is the
// same on every standard library.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform_unit(Rng& rng);

template <typename T>
void fisher_yates(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace dri
