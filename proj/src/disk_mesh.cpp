#include "manapprox/disk_mesh.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

DiskMesh segment_mesh(const Disk& disk, int resolution) {
  const std::size_t count = static_cast<std::size_t>(resolution) + 1;
  const double c = disk.center()[0];
  const double r = disk.radius();
  std::vector<double> pos(count);
  std::vector<VertexId> simplices;
  for (std::size_t v = 0; v < count; ++v) {
    double t = static_cast<double>(v) / static_cast<double>(resolution);
    pos[v] = c - r + 2.0 * r * t;
    if (v + 1 < count) {
      simplices.push_back(static_cast<VertexId>(v));
      simplices.push_back(static_cast<VertexId>(v + 1));
    }
  }
  pos.front() = c - r;
  pos.back() = c + r;
  auto m = std::make_shared<const SimplicialManifold>(1, count, std::move(simplices));
  return {m, PLMap(m, 1, std::move(pos))};
}

DiskMesh ring_mesh(const Disk& disk, int resolution) {
  const std::size_t rings = static_cast<std::size_t>((resolution + 1) / 2);
  auto ring_start = [](std::size_t l) -> VertexId {
    return l == 0 ? 0 : static_cast<VertexId>(1 + 3 * l * (l - 1));
  };
  const std::size_t count = 1 + 3 * rings * (rings + 1);
  std::vector<double> pos(2 * count);
  pos[0] = disk.center()[0];
  pos[1] = disk.center()[1];
  for (std::size_t l = 1; l <= rings; ++l) {
    const std::size_t size = 6 * l;
    const double radius = disk.radius() * static_cast<double>(l) / static_cast<double>(rings);
    for (std::size_t s = 0; s < size; ++s) {
      double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(size);
      VertexId v = ring_start(l) + static_cast<VertexId>(s);
      pos[2 * v] = disk.center()[0] + radius * std::cos(angle);
      pos[2 * v + 1] = disk.center()[1] + radius * std::sin(angle);
    }
  }

  std::vector<VertexId> tris;
  tris.reserve(18 * rings * rings);
  for (std::size_t s = 0; s < 6; ++s) {
    tris.insert(tris.end(), {0, ring_start(1) + static_cast<VertexId>(s),
                             ring_start(1) + static_cast<VertexId>((s + 1) % 6)});
  }
  for (std::size_t l = 2; l <= rings; ++l) {
    const std::size_t a = 6 * (l - 1);
    const std::size_t b = 6 * l;
    auto in = [&](std::size_t i) { return ring_start(l - 1) + static_cast<VertexId>(i % a); };
    auto out = [&](std::size_t j) { return ring_start(l) + static_cast<VertexId>(j % b); };
    std::size_t i = 0;
    std::size_t j = 0;
    // Walk both rings in angular order; each step closes one triangle.
    while (i < a || j < b) {
      bool advance_inner = j == b || (i < a && (i + 1) * b < (j + 1) * a);
      if (advance_inner) {
        tris.insert(tris.end(), {in(i), in(i + 1), out(j)});
        ++i;
      } else {
        tris.insert(tris.end(), {in(i), out(j), out(j + 1)});
        ++j;
      }
    }
  }
  auto m = std::make_shared<const SimplicialManifold>(2, count, std::move(tris));
  return {m, PLMap(m, 2, std::move(pos))};
}

DiskMesh ball_mesh(const Disk& disk, int resolution) {
  const long half = (resolution + 1) / 2;
  const long side = 2 * half + 1;
  const std::size_t count = static_cast<std::size_t>(side * side * side);
  auto id = [&](long x, long y, long z) {
    return static_cast<VertexId>(((x + half) * side + (y + half)) * side + (z + half));
  };

  std::vector<double> pos(3 * count);
  for (long x = -half; x <= half; ++x) {
    for (long y = -half; y <= half; ++y) {
      for (long z = -half; z <= half; ++z) {
        std::array<double, 3> u{static_cast<double>(x) / static_cast<double>(half),
                                static_cast<double>(y) / static_cast<double>(half),
                                static_cast<double>(z) / static_cast<double>(half)};
        double inf_norm = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
        double two_norm = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        double scale = two_norm == 0.0 ? 0.0 : disk.radius() * inf_norm / two_norm;
        VertexId v = id(x, y, z);
        for (int c = 0; c < 3; ++c) pos[3 * v + c] = disk.center()[c] + scale * u[c];
      }
    }
  }

  static constexpr std::array<std::array<int, 3>, 6> kPermutations{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  std::vector<VertexId> tets;
  tets.reserve(static_cast<std::size_t>(6 * 4 * (side - 1) * (side - 1) * (side - 1)));
  for (long x = -half; x < half; ++x) {
    for (long y = -half; y < half; ++y) {
      for (long z = -half; z < half; ++z) {
        for (const auto& perm : kPermutations) {
          std::array<long, 3> corner{x, y, z};
          tets.push_back(id(corner[0], corner[1], corner[2]));
          for (int step = 0; step < 3; ++step) {
            ++corner[perm[step]];
            tets.push_back(id(corner[0], corner[1], corner[2]));
          }
        }
      }
    }
  }
  auto m = std::make_shared<const SimplicialManifold>(3, count, std::move(tets));
  return {m, PLMap(m, 3, std::move(pos))};
}

}  // namespace

DiskMesh build_disk_mesh(int n, const Disk& disk, int resolution) {
  if (n < 1 || n > 3) {
    throw DimensionError("disk meshes support n in {1, 2, 3}, got " + std::to_string(n));
  }
  if (disk.dim() != static_cast<std::size_t>(n)) {
    throw DimensionError("disk dimension does not match n");
  }
  if (resolution < 1) throw std::invalid_argument("mesh resolution must be >= 1");
  switch (n) {
    case 1:
      return segment_mesh(disk, resolution);
    case 2:
      return ring_mesh(disk, resolution);
    default:
      return ball_mesh(disk, resolution);
  }
}

}  // namespace manapprox
