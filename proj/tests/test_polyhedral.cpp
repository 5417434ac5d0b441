#include <doctest.h>

#include <set>

#include "monofan/errors.hpp"
#include "monofan/lattice.hpp"
#include "monofan/polyhedral.hpp"
#include "oracles.hpp"

using namespace monofan;
using namespace monofan::polyhedral;

namespace {

Cone quadrant2() { return Cone::from_rays(2, {make_vector({1, 0}), make_vector({0, 1})}); }

Cone octant3() {
  return Cone::from_rays(
      3, {make_vector({1, 0, 0}), make_vector({0, 1, 0}), make_vector({0, 0, 1})});
}

std::vector<Cone> corpus_cones() {
  return {
      quadrant2(),
      octant3(),
      Cone::zero_cone(2),
      Cone::full_space(2),
      Cone::from_rays(2, {make_vector({1, 0}), make_vector({1, 2})}),
      Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})}),
      Cone::from_rays(2, {make_vector({1, 0})}),
      Cone::from_rays(2, {make_vector({1, 1}), make_vector({1, -1})}),
      Cone::from_rays(3, {make_vector({1, 0, 0}), make_vector({0, 1, 0})}),
      Cone::from_rays(3, {make_vector({1, 0, 1}), make_vector({-1, 0, 1}), make_vector({0, 1, 1}),
                          make_vector({0, -1, 1})}),
  };
}

}  // namespace

TEST_CASE("dual cone on pinned examples") {
  SUBCASE("first quadrant is self dual") {
    Cone d = dual_cone(quadrant2());
    CHECK(d == quadrant2());
  }
  SUBCASE("dual of the zero cone is the whole lattice") {
    Cone d = dual_cone(Cone::zero_cone(2));
    std::vector<IntVector> expect = sorted_unique({make_vector({1, 0}), make_vector({-1, 0}),
                                                   make_vector({0, 1}), make_vector({0, -1})});
    CHECK(d.rays() == expect);
  }
  SUBCASE("dual of cone<(1,0),(1,2)> is cone<(0,1),(2,-1)>") {
    Cone c = Cone::from_rays(2, {make_vector({1, 0}), make_vector({1, 2})});
    Cone d = dual_cone(c);
    std::vector<IntVector> expect = sorted_unique({make_vector({0, 1}), make_vector({2, -1})});
    CHECK(d.rays() == expect);
    // pairing signs: every dual ray is nonnegative on every primal ray
    for (const auto& u : d.rays())
      for (const auto& r : c.rays()) CHECK(u.dot(r) >= 0);
  }
}

TEST_CASE("dual cone is involutive on the corpus") {
  for (const auto& c : corpus_cones()) {
    CHECK(dual_cone(dual_cone(c)) == c);
    // mutual pairing
    for (const auto& u : c.dual_rays())
      for (const auto& r : c.rays()) CHECK(u.dot(r) >= 0);
  }
}

TEST_CASE("canonical form does not depend on the generating set") {
  Cone a = quadrant2();
  Cone b = Cone::from_rays(2, {make_vector({1, 0}), make_vector({0, 1}), make_vector({2, 3})});
  CHECK(a == b);
  CHECK(a.dual_rays() == b.dual_rays());
  Cone hp1 = Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})});
  Cone hp2 = Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({1, 1}),
                                 make_vector({-2, 1})});
  CHECK(hp1 == hp2);
  CHECK(hp1.dual_rays() == hp2.dual_rays());
}

TEST_CASE("faces") {
  SUBCASE("first quadrant has 4 faces") {
    auto fs = faces(quadrant2());
    CHECK(fs.size() == 4);
    CHECK(fs.front().ray_set.empty());                 // the origin
    CHECK(fs.back().ray_set.size() == 2);              // the cone itself
  }
  SUBCASE("zero cone has 1 face") { CHECK(faces(Cone::zero_cone(2)).size() == 1); }
  SUBCASE("3d octant has 8 faces") { CHECK(faces(octant3()).size() == 8); }
  SUBCASE("counts match the supporting-functional oracle") {
    for (const auto& c : corpus_cones()) {
      if (c.ambient_rank() > 3 || c.rays().size() > 5) continue;
      auto sets = oracles::face_ray_sets_by_functionals(c.rays(), c.ambient_rank(), 2);
      auto fs = faces(c);
      CHECK(fs.size() == sets.size());
      for (const auto& f : fs) CHECK(sets.count(f.ray_set) == 1);
    }
  }
  SUBCASE("face partial order is derivable from ray sets") {
    auto fs = faces(octant3());
    for (const auto& f : fs)
      for (const auto& g : fs) {
        bool subset = std::includes(g.ray_set.begin(), g.ray_set.end(), f.ray_set.begin(),
                                    f.ray_set.end());
        CHECK(subset == g.cone.contains_cone(f.cone));
      }
  }
}

TEST_CASE("strong convexity") {
  CHECK(is_strongly_convex(quadrant2()));
  CHECK(!is_strongly_convex(Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0})})));
  CHECK(!is_strongly_convex(
      Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})})));
  CHECK(is_strongly_convex(Cone::zero_cone(3)));
}

TEST_CASE("hilbert basis") {
  SUBCASE("first quadrant") {
    auto hb = hilbert_basis(quadrant2());
    CHECK(sorted_unique(hb) == sorted_unique({make_vector({1, 0}), make_vector({0, 1})}));
  }
  SUBCASE("cone<(1,0),(1,2)>") {
    Cone c = Cone::from_rays(2, {make_vector({1, 0}), make_vector({1, 2})});
    auto hb = hilbert_basis(c);
    auto expect =
        std::vector<IntVector>{make_vector({1, 0}), make_vector({1, 1}), make_vector({1, 2})};
    CHECK(sorted_unique(hb) == sorted_unique(expect));
  }
  SUBCASE("zero cone") { CHECK(hilbert_basis(Cone::zero_cone(2)).empty()); }
  SUBCASE("lineality is rejected") {
    CHECK_THROWS_AS(hilbert_basis(Cone::full_space(2)), NotStronglyConvex);
  }
  SUBCASE("box oracle: irreducibles in [0,4]^2 and spanning") {
    for (auto rays : {std::vector<IntVector>{make_vector({1, 0}), make_vector({1, 2})},
                      std::vector<IntVector>{make_vector({1, 0}), make_vector({1, 3})},
                      std::vector<IntVector>{make_vector({2, 1}), make_vector({1, 2})}}) {
      Cone c = Cone::from_rays(2, rays);
      auto hb = hilbert_basis(c);
      // oracle: lattice points of the cone inside [0,4]^2, reduced by subtraction
      std::vector<IntVector> pts;
      oracles::grid(2, 0, 4, [&](const IntVector& v) {
        if (!is_zero(v) && c.contains(v)) pts.push_back(v);
      });
      std::vector<IntVector> irred;
      for (const auto& v : pts) {
        bool reducible = false;
        for (const auto& a : pts) {
          IntVector b = v - a;
          if (!is_zero(b) && c.contains(b)) reducible = true;
        }
        if (!reducible) irred.push_back(v);
      }
      for (const auto& v : irred) CHECK(contains_vector(hb, v));
      // every box point is an N-combination of the basis
      IntVector grading = IntVector::Zero(2);
      for (const auto& u : c.dual_rays()) grading += u;
      for (const auto& v : pts)
        CHECK(lattice::solve_nonneg(hb, v, grading).has_value());
      // basis elements are themselves irreducible
      for (const auto& h : hb) {
        bool reducible = false;
        for (const auto& a : pts) {
          IntVector b = h - a;
          if (!is_zero(b) && c.contains(b)) reducible = true;
        }
        CHECK(!reducible);
      }
    }
  }
}

TEST_CASE("lattice point generators handle lineality") {
  // dual of a ray: a half plane; its monoid of lattice points is Z x N
  Cone hp = Cone::from_rays(2, {make_vector({1, 0}), make_vector({-1, 0}), make_vector({0, 1})});
  auto gens = lattice_point_generators(hp);
  IntVector grading = make_vector({0, 1});
  for (const auto& v :
       {make_vector({3, 0}), make_vector({-5, 2}), make_vector({0, 1}), make_vector({7, 4})}) {
    bool in = false;
    // membership via direct bounded search over the generators with a unit split
    // (here simply: subtract multiples of (1,0) then solve in the graded part)
    IntVector w = v;
    w(0) = 0;
    in = lattice::solve_nonneg({make_vector({0, 1})}, w, grading).has_value();
    CHECK(in);
    (void)gens;
  }
  // generating set contains a +- pair spanning the lineality
  CHECK(contains_vector(gens, make_vector({1, 0})));
  CHECK(contains_vector(gens, make_vector({-1, 0})));
  CHECK(contains_vector(gens, make_vector({0, 1})));
}

TEST_CASE("polytopes and normal fans") {
  SUBCASE("vertex filtering keeps extreme points only") {
    Polytope p = Polytope::from_points(
        2, {make_vector({0, 0}), make_vector({2, 0}), make_vector({0, 2}), make_vector({1, 0}),
            make_vector({1, 1})});
    CHECK(p.vertices() ==
          std::vector<IntVector>{make_vector({0, 0}), make_vector({0, 2}), make_vector({2, 0})});
  }
  SUBCASE("unit square gives the 9-cone fan of a product of two projective lines") {
    Polytope sq = Polytope::from_points(
        2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1})});
    ClassicFan f = normal_fan(sq);
    CHECK(f.cones.size() == 9);
    CHECK(validate_classic_fan(f).ok);
    CHECK(is_complete(f));
  }
  SUBCASE("standard 2-simplex gives the projective plane fan") {
    Polytope simplex = Polytope::from_points(
        2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})});
    ClassicFan f = normal_fan(simplex);
    CHECK(f.cones.size() == 7);
    CHECK(validate_classic_fan(f).ok);
    CHECK(is_complete(f));
    std::vector<IntVector> rays;
    for (const auto& c : f.cones)
      if (c.rays().size() == 1 && c.dim() == 1) rays.push_back(c.rays()[0]);
    CHECK(sorted_unique(rays) == sorted_unique({make_vector({1, 0}), make_vector({0, 1}),
                                                make_vector({-1, -1})}));
  }
  SUBCASE("segment [0,1] in Z") {
    Polytope seg = Polytope::from_points(1, {make_vector({0}), make_vector({1})});
    ClassicFan f = normal_fan(seg);
    CHECK(f.cones.size() == 3);
    CHECK(is_complete(f));
  }
  SUBCASE("normal cones match the grid oracle") {
    Polytope simplex = Polytope::from_points(
        2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})});
    for (size_t vi = 0; vi < simplex.vertices().size(); ++vi) {
      Cone nc = vertex_normal_cone(simplex, vi);
      oracles::grid(2, -3, 3, [&](const IntVector& w) {
        Int at_v = w.dot(simplex.vertices()[vi]);
        bool minimizes = true;
        for (const auto& u : simplex.vertices())
          if (w.dot(u) < at_v) minimizes = false;
        CHECK(minimizes == nc.contains(w));
      });
    }
  }
  SUBCASE("degenerate polytopes are rejected") {
    Polytope flat = Polytope::from_points(2, {make_vector({0, 0}), make_vector({1, 1})});
    CHECK_THROWS_AS(normal_fan(flat), DegeneratePolytope);
  }
}

TEST_CASE("classic fan validation") {
  SUBCASE("projective plane fan is valid") {
    ClassicFan f = ClassicFan::from_maximal(
        2, {Cone::from_rays(2, {make_vector({1, 0}), make_vector({0, 1})}),
            Cone::from_rays(2, {make_vector({0, 1}), make_vector({-1, -1})}),
            Cone::from_rays(2, {make_vector({-1, -1}), make_vector({1, 0})})});
    CHECK(f.cones.size() == 7);
    CHECK(validate_classic_fan(f).ok);
    CHECK(is_complete(f));
    CHECK(f.maximal_indices().size() == 3);
  }
  SUBCASE("overlapping cones are reported") {
    Cone a = Cone::from_rays(2, {make_vector({1, 0}), make_vector({0, 1})});
    Cone b = Cone::from_rays(2, {make_vector({1, 1}), make_vector({1, -1})});
    std::vector<Cone> cones;
    for (const auto& f : faces(a)) cones.push_back(f.cone);
    for (const auto& f : faces(b)) cones.push_back(f.cone);
    std::sort(cones.begin(), cones.end(), cone_less);
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    FanCheck chk = validate_classic_fan(2, cones);
    CHECK(!chk.ok);
    CHECK(chk.second >= 0);
  }
  SUBCASE("a single cone with its faces is valid") {
    ClassicFan f = ClassicFan::from_maximal(2, {quadrant2()});
    CHECK(validate_classic_fan(f).ok);
    CHECK(!is_complete(f));
  }
}

TEST_CASE("polytope face lattice") {
  Polytope sq = Polytope::from_points(
      2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1}), make_vector({1, 1})});
  auto fs = polytope_faces(sq);
  CHECK(fs.size() == 9);  // 4 vertices + 4 edges + the square
  Polytope simplex =
      Polytope::from_points(2, {make_vector({0, 0}), make_vector({1, 0}), make_vector({0, 1})});
  CHECK(polytope_faces(simplex).size() == 7);
  Polytope seg = Polytope::from_points(1, {make_vector({0}), make_vector({1})});
  CHECK(polytope_faces(seg).size() == 3);
}

TEST_CASE("cone intersection") {
  Cone a = Cone::from_rays(2, {make_vector({1, 0}), make_vector({1, 2})});
  Cone b = Cone::from_rays(2, {make_vector({1, 2}), make_vector({0, 1})});
  Cone w = cone_intersection(a, b);
  CHECK(w.rays() == std::vector<IntVector>{make_vector({1, 2})});
  Cone disjoint = cone_intersection(quadrant2(), Cone::from_rays(2, {make_vector({-1, -1})}));
  CHECK(disjoint.is_zero());
}
