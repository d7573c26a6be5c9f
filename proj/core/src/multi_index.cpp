#include "trapnls/multi_index.hpp"

#include <string>

#include "trapnls/errors.hpp"

namespace trapnls {

std::int64_t BasisSpec::size() const {
  std::int64_t s = 1;
  for (int i = 0; i < dim; ++i) s *= modes_per_axis();
  return s;
}

void BasisSpec::validate() const {
  if (dim < 1 || dim > 3)
    throw ConfigError("basis_dim_invalid: dimension must be 1..3, got " +
                      std::to_string(dim));
  if (!(kappa > 0.0))
    throw ConfigError("kappa_nonpositive: basis scale must be > 0, got " +
                      std::to_string(kappa));
  if (cutoff < 1)
    throw ConfigError("basis_cutoff_invalid: cutoff must be >= 1, got " +
                      std::to_string(cutoff));
}

std::int64_t flat_index(const BasisSpec& spec, const MultiIndex& n) {
  if (n.dim() != spec.dim)
    throw ConfigError("mode_dim_mismatch: index has dimension " +
                      std::to_string(n.dim()) + ", basis has " +
                      std::to_string(spec.dim));
  std::int64_t idx = 0;
  for (int i = 0; i < spec.dim; ++i) {
    if (n[i] < 0 || n[i] > spec.cutoff)
      throw ConfigError("mode_out_of_range: entry " + std::to_string(n[i]) +
                        " outside 0.." + std::to_string(spec.cutoff));
    idx = idx * spec.modes_per_axis() + n[i];
  }
  return idx;
}

MultiIndex unflatten(const BasisSpec& spec, std::int64_t flat) {
  MultiIndex n;
  n.entries.assign(static_cast<std::size_t>(spec.dim), 0);
  for (int i = spec.dim - 1; i >= 0; --i) {
    n[i] = static_cast<int>(flat % spec.modes_per_axis());
    flat /= spec.modes_per_axis();
  }
  return n;
}

} // namespace trapnls
