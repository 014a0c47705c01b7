#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unicluster/core.hpp"
#include "unicluster/gmm.hpp"
#include "unicluster/rng.hpp"

namespace unicluster {

/// n draws from the mixture; labels are component indices.
Dataset blobs(const MixtureModel& model, std::size_t n, Rng& rng);
Dataset blobs(const std::vector<Vector>& means, const std::vector<SymMatrix>& covariances, const Vector& weights,
              std::size_t n, Rng& rng);

/// Two concentric rings in the plane: floor(n/2) points on the inner ring
/// (label 0), the rest on the outer ring (label 1). Angles are uniform, radii
/// carry N(0, noise^2) perturbations.
Dataset circles(std::size_t n, double r_inner, double r_outer, double noise, Rng& rng);

/// Named datasets with pinned parameters:
///   single    500 points, one standard Gaussian in 2-D
///   fig3      1500 points from the three-component anisotropic mixture, unlabeled
///   fig5      the same 1500 points with component labels
///   ellipses  600 points, two long parallel ellipses (x-variance 25, y-variance 0.25)
///   blobs3    600 points, three round blobs (std 0.3) 10 apart
///   circles   300 points, radii 1 and 3, noise 0.05
Dataset preset(const std::string& name, std::uint64_t seed);

const std::vector<std::string>& preset_names();

/// Generating mixture for the mixture presets; nullopt for "circles".
std::optional<MixtureModel> preset_mixture(const std::string& name);

}  // namespace unicluster
