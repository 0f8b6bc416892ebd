#include "manapprox/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "manapprox/errors.hpp"

namespace manapprox {

namespace {

// Sorts fixed-width rows of a flat array lexicographically.
std::vector<VertexId> sort_rows(const std::vector<VertexId>& flat,
                                std::size_t width) {
  if (width == 0 || flat.empty()) return flat;
  std::size_t rows = flat.size() / width;
  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(
        flat.begin() + a * width, flat.begin() + (a + 1) * width,
        flat.begin() + b * width, flat.begin() + (b + 1) * width);
  });
  std::vector<VertexId> out;
  out.reserve(flat.size());
  for (std::size_t r : order) {
    out.insert(out.end(), flat.begin() + r * width,
               flat.begin() + (r + 1) * width);
  }
  return out;
}

bool rows_equal(const std::vector<VertexId>& flat, std::size_t width,
                std::size_t a, std::size_t b) {
  return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                    flat.begin() + b * width);
}

// Every k-face (k+1 vertices) of the given simplices, sorted, with duplicates.
std::vector<VertexId> faces_of(const std::vector<VertexId>& simplices,
                               std::size_t arity, std::size_t face_arity) {
  std::vector<VertexId> faces;
  if (face_arity == 0 || face_arity > arity) return faces;
  std::vector<bool> pick(arity, false);
  std::fill(pick.begin(), pick.begin() + face_arity, true);
  std::vector<std::vector<std::size_t>> patterns;
  do {
    std::vector<std::size_t> p;
    for (std::size_t i = 0; i < arity; ++i) {
      if (pick[i]) p.push_back(i);
    }
    patterns.push_back(std::move(p));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::size_t count = simplices.size() / arity;
  faces.reserve(count * patterns.size() * face_arity);
  for (std::size_t s = 0; s < count; ++s) {
    for (const auto& p : patterns) {
      for (std::size_t i : p) faces.push_back(simplices[s * arity + i]);
    }
  }
  return sort_rows(faces, face_arity);
}

std::vector<VertexId> unique_rows(const std::vector<VertexId>& sorted,
                                  std::size_t width) {
  std::vector<VertexId> out;
  std::size_t rows = sorted.size() / width;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r > 0 && rows_equal(sorted, width, r, r - 1)) continue;
    out.insert(out.end(), sorted.begin() + r * width,
               sorted.begin() + (r + 1) * width);
  }
  return out;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

SimplicialManifold::SimplicialManifold(int dim, std::size_t vertex_count,
                                       std::vector<VertexId> simplices)
    : dim_(dim), vertex_count_(vertex_count), simplices_(std::move(simplices)) {
  if (dim_ < 0 || dim_ > 3) {
    throw DimensionError("simplicial manifold dimension must be in [0, 3], got " +
                         std::to_string(dim_));
  }
  const std::size_t k = arity();
  if (simplices_.size() % k != 0) {
    throw std::invalid_argument("simplex array length is not a multiple of dim+1");
  }
  for (std::size_t s = 0; s < simplex_count(); ++s) {
    auto first = simplices_.begin() + s * k;
    std::sort(first, first + k);
    if (std::adjacent_find(first, first + k) != first + k) {
      throw std::invalid_argument("simplex " + std::to_string(s) +
                                  " has repeated vertices");
    }
    if (*(first + k - 1) >= vertex_count_) {
      throw std::invalid_argument("simplex " + std::to_string(s) +
                                  " references an unknown vertex");
    }
  }
  {
    auto sorted = sort_rows(simplices_, k);
    for (std::size_t r = 1; r < sorted.size() / k; ++r) {
      if (rows_equal(sorted, k, r, r - 1)) {
        throw std::invalid_argument("duplicate simplex");
      }
    }
  }
  if (dim_ == 0) return;

  const std::size_t fk = k - 1;
  auto facets = faces_of(simplices_, k, fk);
  std::size_t rows = facets.size() / fk;
  for (std::size_t r = 0; r < rows;) {
    std::size_t run = 1;
    while (r + run < rows && rows_equal(facets, fk, r, r + run)) ++run;
    if (run > 2) {
      throw std::invalid_argument(
          "not a pseudo-manifold: a facet is shared by more than two simplices");
    }
    if (run == 1) {
      boundary_facets_.insert(boundary_facets_.end(), facets.begin() + r * fk,
                              facets.begin() + (r + 1) * fk);
    }
    r += run;
  }
}

std::size_t SimplicialManifold::boundary_facet_count() const {
  return dim_ == 0 ? 0 : boundary_facets_.size() / static_cast<std::size_t>(dim_);
}

SimplicialManifold SimplicialManifold::boundary() const {
  if (dim_ == 0) return SimplicialManifold(0, vertex_count_, {});
  return SimplicialManifold(dim_ - 1, vertex_count_, boundary_facets_);
}

std::vector<VertexId> SimplicialManifold::used_vertices() const {
  std::vector<VertexId> v = simplices_;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::vector<bool> SimplicialManifold::boundary_vertex_mask() const {
  std::vector<bool> mask(vertex_count_, false);
  for (VertexId v : boundary_facets_) mask[v] = true;
  return mask;
}

std::vector<VertexId> SimplicialManifold::edges() const {
  if (dim_ < 1) return {};
  return unique_rows(faces_of(simplices_, arity(), 2), 2);
}

std::vector<VertexId> SimplicialManifold::boundary_edges() const {
  if (dim_ < 2) return {};
  return unique_rows(faces_of(boundary_facets_, static_cast<std::size_t>(dim_), 2), 2);
}

long SimplicialManifold::euler_characteristic() const {
  long chi = 0;
  long sign = 1;
  for (std::size_t face_arity = 1; face_arity <= arity(); ++face_arity) {
    auto faces = unique_rows(faces_of(simplices_, arity(), face_arity), face_arity);
    chi += sign * static_cast<long>(faces.size() / face_arity);
    sign = -sign;
  }
  return chi;
}

std::size_t SimplicialManifold::component_count() const {
  DisjointSets sets(vertex_count_);
  const std::size_t k = arity();
  for (std::size_t s = 0; s < simplex_count(); ++s) {
    for (std::size_t i = 1; i < k; ++i) {
      sets.unite(simplices_[s * k], simplices_[s * k + i]);
    }
  }
  std::set<std::size_t> roots;
  for (VertexId v : used_vertices()) roots.insert(sets.find(v));
  return roots.size();
}

ManifoldPoint::ManifoldPoint(std::size_t simplex_index, std::vector<double> coords)
    : simplex(simplex_index), barycentric(std::move(coords)) {
  double sum = 0.0;
  for (double b : barycentric) {
    if (!(b >= 0.0)) throw std::invalid_argument("barycentric coordinate is negative");
    sum += b;
  }
  if (barycentric.empty() || std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("barycentric coordinates must sum to 1");
  }
}

}  // namespace manapprox
