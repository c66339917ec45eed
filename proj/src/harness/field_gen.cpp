#include "fieldmap/harness/field_gen.hpp"

#include "fieldmap/harness/io.hpp"
#include "fieldmap/rng.hpp"

#include <cmath>

namespace fieldmap::harness {

FieldGrid generate_field(const FieldRecipe& recipe, const GridSpec& spec) {
  Rng rng = make_stream(recipe.seed, 0, Stream::field);
  std::uniform_real_distribution<double> ux(spec.x_min(), spec.x_max());
  std::uniform_real_distribution<double> uy(spec.y_min(), spec.y_max());
  std::uniform_real_distribution<double> ua(recipe.amplitude_min, recipe.amplitude_max);
  std::uniform_real_distribution<double> uw(recipe.width_min, recipe.width_max);

  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(spec.n_x(), spec.n_y());
  for (int b = 0; b < recipe.bumps; ++b) {
    const Point c{ux(rng), uy(rng)};
    const double amplitude = ua(rng);
    const double width = uw(rng);
    for (int ix = 0; ix < spec.n_x(); ++ix)
      for (int iy = 0; iy < spec.n_y(); ++iy) {
        const Point p = spec.anchor({ix, iy});
        const double d2 = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
        values(ix, iy) += amplitude * std::exp(-d2 / (2.0 * width * width));
      }
  }
  return FieldGrid(spec, values.cwiseMax(0.0));
}

FieldGrid load_field(const FieldSource& source, const GridSpec& spec) {
  if (source.path) return read_field_csv(*source.path, spec);
  return generate_field(source.recipe, spec);
}

}  // namespace fieldmap::harness
