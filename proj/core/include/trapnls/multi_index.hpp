#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace trapnls {

// Hermite mode multi-index n = (n_1, ..., n_d), entries >= 0.
struct MultiIndex {
  std::vector<int> entries;

  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> init) : entries(init) {}
  explicit MultiIndex(std::vector<int> v) : entries(std::move(v)) {}

  int dim() const { return static_cast<int>(entries.size()); }
  int operator[](int i) const { return entries[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return entries[static_cast<std::size_t>(i)]; }
  int degree() const { return std::accumulate(entries.begin(), entries.end(), 0); }
  bool operator==(const MultiIndex&) const = default;
};

// Scaled Hermite basis {Omega_{n,kappa} : 0 <= n_i <= cutoff}. The scale
// kappa > 0 is the trap constant of the co-moving oscillator -Δ + kappa|x|^2.
struct BasisSpec {
  int dim = 1;
  double kappa = 1.0;
  int cutoff = 64;

  int modes_per_axis() const { return cutoff + 1; }
  std::int64_t size() const;
  void validate() const; // throws ConfigError
  bool operator==(const BasisSpec&) const = default;
};

// row-major flattening of the multi-index box (last axis fastest)
std::int64_t flat_index(const BasisSpec&, const MultiIndex&);
MultiIndex unflatten(const BasisSpec&, std::int64_t flat);

} // namespace trapnls
