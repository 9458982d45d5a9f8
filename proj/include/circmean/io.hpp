#pragma once

#include <string>

#include "circmean/measure.hpp"

namespace circmean {

/// One real angle per line, `#` comments and blank lines allowed; the
/// atoms get equal weights. Malformed lines are reported with their number.
CircularMeasure load_angle_file(const std::string& path, bool degrees = false);

/// Weighted-atom CSV with header `angle,weight`.
CircularMeasure load_weighted_csv(const std::string& path, bool degrees = false);

/// Named density specs: `uniform`, `vonmises:kappa=<K>,mu=<M>`, and
/// `mixture:<spec>@<w>;<spec>@<w>` (weights normalized, default 1).
CircularMeasure parse_density_spec(const std::string& spec, int grid = CircularMeasure::kDefaultGrid);

}  // namespace circmean
