#pragma once

#include <memory>

#include "manapprox/geometry.hpp"
#include "manapprox/pl_map.hpp"
#include "manapprox/simplicial.hpp"

namespace manapprox {

/// Triangulated n-disk together with its vertex positions in R^n.
struct DiskMesh {
  std::shared_ptr<const SimplicialManifold> manifold;
  PLMap embedding;
};

/// Mesh of the closed round disk for n ∈ {1, 2, 3}; boundary vertices are
/// placed on the bounding sphere.
///
/// `resolution` counts segments across a diameter:
///  - n = 1: a polyline with resolution + 1 equally spaced vertices;
///  - n = 2: L = ceil(resolution / 2) concentric rings, ring l holding 6l
///    vertices, stitched to the previous ring by angular merging;
///  - n = 3: a Freudenthal triangulation of a cube grid with 2L cells per
///    side, mapped onto the ball by u -> u |u|_inf / |u|_2 so that cube
///    shells become spherical layers.
DiskMesh build_disk_mesh(int n, const Disk& disk, int resolution);

}  // namespace manapprox
