#pragma once

#include "fieldmap/grid.hpp"
#include "fieldmap/harness/config.hpp"

namespace fieldmap::harness {

/// Deterministic in recipe.seed: bump centers uniform over the region,
/// amplitudes and widths uniform in the recipe ranges, values clamped at zero.
FieldGrid generate_field(const FieldRecipe& recipe, const GridSpec& spec);

/// Generated field, or the CSV at source.path checked against spec.
FieldGrid load_field(const FieldSource& source, const GridSpec& spec);

}  // namespace fieldmap::harness
