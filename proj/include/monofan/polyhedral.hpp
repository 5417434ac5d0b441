#pragma once

#include <string>
#include <vector>

#include "monofan/ints.hpp"

namespace monofan::polyhedral {

/// Rational polyhedral cone given by generating rays, kept in a canonical
/// form: primitive extreme rays of the pointed part plus a +-pair for each
/// member of the canonical lineality basis, sorted. The generating set of
/// the dual cone is carried along, so membership tests are exact pairings.
class Cone {
 public:
  static Cone from_rays(Index ambient_rank, const std::vector<IntVector>& gens);
  static Cone zero_cone(Index ambient_rank);
  static Cone full_space(Index ambient_rank);

  Index ambient_rank() const { return d_; }
  const std::vector<IntVector>& rays() const { return rays_; }
  const std::vector<IntVector>& dual_rays() const { return dual_rays_; }

  bool contains(const IntVector& v) const;
  bool contains_cone(const Cone& other) const;
  Index dim() const;
  std::vector<IntVector> lineality_basis() const;
  bool is_zero() const { return rays_.empty(); }

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.d_ == b.d_ && a.rays_ == b.rays_;
  }
  friend Cone dual_cone(const Cone& c);
  friend Cone cone_intersection(const Cone& a, const Cone& b);

 private:
  Cone() = default;
  Index d_ = 0;
  std::vector<IntVector> rays_;
  std::vector<IntVector> dual_rays_;
};

/// Deterministic total order on cones of equal ambient rank.
bool cone_less(const Cone& a, const Cone& b);

Cone dual_cone(const Cone& c);
Cone cone_intersection(const Cone& a, const Cone& b);

struct Face {
  Cone cone;
  std::vector<Index> ray_set;  // indices of the parent rays lying on the face
};

/// All faces, including the minimal face and the cone itself, sorted by
/// (dimension, ray set).
std::vector<Face> faces(const Cone& c);

bool is_strongly_convex(const Cone& c);

/// Unique minimal generating set of c intersected with the lattice.
/// Throws NotStronglyConvex when c has a nonzero lineality space.
std::vector<IntVector> hilbert_basis(const Cone& c);

/// Generating set of the monoid of lattice points for an arbitrary
/// finitely generated cone: +-basis of the lineality lattice plus lifted
/// Hilbert basis of the pointed quotient.
std::vector<IntVector> lattice_point_generators(const Cone& c);

/// Lattice polytope; the stored vertex list is exactly the extreme points.
class Polytope {
 public:
  static Polytope from_points(Index ambient_rank, const std::vector<IntVector>& points);

  Index ambient_rank() const { return d_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }

  /// Throws DegeneratePolytope when the vertices do not affinely span.
  void require_full_dimensional() const;

 private:
  Polytope() = default;
  Index d_ = 0;
  std::vector<IntVector> vertices_;
};

struct ClassicFan {
  Index lattice_rank = 0;
  std::vector<Cone> cones;  // face-closed, deduplicated, sorted

  static ClassicFan from_maximal(Index lattice_rank, const std::vector<Cone>& maximal);
  std::vector<Index> maximal_indices() const;
  bool operator==(const ClassicFan& other) const {
    return lattice_rank == other.lattice_rank && cones == other.cones;
  }
};

struct FanCheck {
  bool ok = true;
  std::string message;
  Index first = -1;
  Index second = -1;
};

/// Face-closed, pairwise intersections are faces of each, all strongly
/// convex. Reports the first violation found.
FanCheck validate_classic_fan(Index lattice_rank, const std::vector<Cone>& cones);
FanCheck validate_classic_fan(const ClassicFan& fan);

/// Inner normal cone of a vertex: directions minimized at that vertex.
Cone vertex_normal_cone(const Polytope& p, size_t vertex_index);

/// Complete fan of vertex normal cones and their faces.
ClassicFan normal_fan(const Polytope& p);

/// Facet-pairing completeness diagnostic: pure, full-dimensional, and every
/// ridge shared by exactly two maximal cones.
bool is_complete(const ClassicFan& fan);

/// Nonempty faces of the polytope as sorted vertex-index sets, ordered by
/// (size, lex); includes the polytope itself, excludes the empty face.
std::vector<std::vector<Index>> polytope_faces(const Polytope& p);

}  // namespace monofan::polyhedral
