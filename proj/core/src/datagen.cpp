#include "unicluster/datagen.hpp"

#include <cmath>
#include <numbers>

namespace unicluster {

Dataset blobs(const MixtureModel& model, std::size_t n, Rng& rng) { return sample_mixture(model, n, rng); }

Dataset blobs(const std::vector<Vector>& means, const std::vector<SymMatrix>& covariances, const Vector& weights,
              std::size_t n, Rng& rng) {
  return blobs(MixtureModel(weights, means, covariances), n, rng);
}

Dataset circles(std::size_t n, double r_inner, double r_outer, double noise, Rng& rng) {
  if (!(r_inner > 0.0 && r_inner < r_outer)) throw InvalidArgument("circles: need 0 < r_inner < r_outer");
  if (!(noise >= 0.0)) throw InvalidArgument("circles: noise must be >= 0");
  if (n < 2) throw InvalidArgument("circles: n must be >= 2");
  RowMatrix points(static_cast<Eigen::Index>(n), 2);
  std::vector<int> labels(n);
  const std::size_t inner = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int ring = i < inner ? 0 : 1;
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    const double radius = (ring == 0 ? r_inner : r_outer) + noise * rng.normal();
    points(static_cast<Eigen::Index>(i), 0) = radius * std::cos(angle);
    points(static_cast<Eigen::Index>(i), 1) = radius * std::sin(angle);
    labels[i] = ring;
  }
  return Dataset(std::move(points), std::move(labels));
}

namespace {

Vector vec2(double x, double y) { return Vector{{x, y}}; }

SymMatrix cov2(double xx, double xy, double yy) {
  Matrix m(2, 2);
  m << xx, xy, xy, yy;
  return SymMatrix(m);
}

MixtureModel three_anisotropic() {
  return MixtureModel(Vector{{0.4, 0.35, 0.25}}, {vec2(0.0, 0.0), vec2(7.0, 1.0), vec2(2.5, 6.5)},
                      {cov2(2.0, 0.8, 0.6), cov2(0.5, -0.3, 1.5), cov2(1.2, 0.0, 0.3)});
}

MixtureModel two_ellipses() {
  return MixtureModel(Vector{{0.5, 0.5}}, {vec2(0.0, 2.0), vec2(0.0, -2.0)},
                      {cov2(25.0, 0.0, 0.25), cov2(25.0, 0.0, 0.25)});
}

MixtureModel three_round() {
  const double s = 0.09;
  return MixtureModel(Vector{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}},
                      {vec2(0.0, 0.0), vec2(10.0, 0.0), vec2(5.0, 8.66)},
                      {cov2(s, 0.0, s), cov2(s, 0.0, s), cov2(s, 0.0, s)});
}

MixtureModel standard_2d() { return MixtureModel(Vector{{1.0}}, {vec2(0.0, 0.0)}, {SymMatrix::identity(2)}); }

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"single", "fig3", "fig5", "ellipses", "blobs3", "circles"};
  return names;
}

std::optional<MixtureModel> preset_mixture(const std::string& name) {
  if (name == "single") return standard_2d();
  if (name == "fig3" || name == "fig5") return three_anisotropic();
  if (name == "ellipses") return two_ellipses();
  if (name == "blobs3") return three_round();
  if (name == "circles") return std::nullopt;
  throw InvalidArgument("unknown preset '" + name + "'");
}

Dataset preset(const std::string& name, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "circles") return circles(300, 1.0, 3.0, 0.05, rng);
  const MixtureModel model = *preset_mixture(name);
  std::size_t n = 0;
  if (name == "single") n = 500;
  if (name == "fig3" || name == "fig5") n = 1500;
  if (name == "ellipses") n = 600;
  if (name == "blobs3") n = 600;
  Dataset data = blobs(model, n, rng);
  if (name == "fig3" || name == "single") return data.without_labels();
  return data;
}

}  // namespace unicluster
