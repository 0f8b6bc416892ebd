#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace manapprox {

using VertexId = std::uint32_t;

/// Abstract pure simplicial complex of dimension `dim` over vertex ids
/// [0, vertex_count). Every simplex is stored with sorted vertex ids.
///
/// Construction validates the pseudo-manifold condition: each (dim-1)-face
/// lies in one or two simplices. Faces in exactly one simplex form the
/// boundary. A dim-0 complex is a set of points and has empty boundary.
///
/// Vertex ids that appear in no simplex are allowed; sub-complexes such as
/// boundary() keep the parent's id space so maps over the parent still apply.
class SimplicialManifold {
 public:
  SimplicialManifold(int dim, std::size_t vertex_count,
                     std::vector<VertexId> simplices);

  int dim() const { return dim_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t simplex_count() const { return simplices_.size() / arity(); }
  std::size_t arity() const { return static_cast<std::size_t>(dim_) + 1; }

  std::span<const VertexId> simplex(std::size_t s) const {
    return {simplices_.data() + s * arity(), arity()};
  }
  const std::vector<VertexId>& simplex_data() const { return simplices_; }

  /// (dim-1)-faces contained in exactly one simplex, flattened with `dim`
  /// ids per facet, lexicographically sorted.
  const std::vector<VertexId>& boundary_facets() const { return boundary_facets_; }
  std::size_t boundary_facet_count() const;

  /// The boundary as a (dim-1)-complex over the same vertex id space.
  SimplicialManifold boundary() const;

  /// Sorted ids of vertices that appear in some simplex.
  std::vector<VertexId> used_vertices() const;
  /// mask[v] is true iff v lies on a boundary facet.
  std::vector<bool> boundary_vertex_mask() const;

  /// All distinct edges as sorted pairs, flattened and lexicographically sorted.
  std::vector<VertexId> edges() const;
  /// Edges contained in some boundary facet (empty for dim <= 1).
  std::vector<VertexId> boundary_edges() const;

  /// Alternating count of faces of every dimension over the used vertices.
  long euler_characteristic() const;
  /// Number of connected components of the used vertices.
  std::size_t component_count() const;
  bool is_closed() const { return boundary_facets_.empty(); }
  bool empty() const { return simplices_.empty(); }

 private:
  int dim_;
  std::size_t vertex_count_;
  std::vector<VertexId> simplices_;
  std::vector<VertexId> boundary_facets_;
};

/// Barycentric location on a simplicial manifold.
struct ManifoldPoint {
  std::size_t simplex;
  std::vector<double> barycentric;

  /// Validates nonnegativity and unit sum (within 1e-12).
  ManifoldPoint(std::size_t simplex, std::vector<double> barycentric);
};

}  // namespace manapprox
