#include <doctest.h>

#include "monofan/errors.hpp"
#include "monofan/lattice.hpp"
#include "oracles.hpp"

using namespace monofan;
namespace lat = monofan::lattice;

namespace {

bool divisibility_chain(const IntMatrix& D) {
  Index k = std::min(D.rows(), D.cols());
  for (Index i = 0; i + 1 < k; ++i) {
    if (D(i, i) == 0) {
      if (D(i + 1, i + 1) != 0) return false;
      continue;
    }
    if (D(i + 1, i + 1) % D(i, i) != 0) return false;
  }
  for (Index i = 0; i < D.rows(); ++i)
    for (Index j = 0; j < D.cols(); ++j)
      if (i != j && D(i, j) != 0) return false;
  for (Index i = 0; i < k; ++i)
    if (D(i, i) < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form on pinned examples") {
  SUBCASE("identity") {
    IntMatrix A = IntMatrix::Identity(2, 2);
    auto s = lat::smith_normal_form(A);
    CHECK(s.D == IntMatrix::Identity(2, 2));
    CHECK(s.U * A * s.V == s.D);
  }
  SUBCASE("zero matrix") {
    IntMatrix A = IntMatrix::Zero(2, 3);
    auto s = lat::smith_normal_form(A);
    CHECK(s.D == IntMatrix::Zero(2, 3));
    CHECK(s.U == IntMatrix::Identity(2, 2));
    CHECK(s.V == IntMatrix::Identity(3, 3));
  }
  SUBCASE("diag(2,3) becomes diag(1,6)") {
    IntMatrix A = make_matrix({{2, 0}, {0, 3}});
    auto s = lat::smith_normal_form(A);
    CHECK(s.D(0, 0) == 1);
    CHECK(s.D(1, 1) == 6);
    CHECK(s.U * A * s.V == s.D);  // multiply-back oracle
    CHECK(oracles::cofactor_det(s.U) * oracles::cofactor_det(s.U) == 1);
    CHECK(oracles::cofactor_det(s.V) * oracles::cofactor_det(s.V) == 1);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  oracles::Rng rng(12345);
  for (int trial = 0; trial < 100; ++trial) {
    Index m = static_cast<Index>(rng.range(1, 4));
    Index n = static_cast<Index>(rng.range(1, 4));
    IntMatrix A(m, n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) A(i, j) = rng.range(-6, 6);
    auto s = lat::smith_normal_form(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(divisibility_chain(s.D));
    Int du = oracles::cofactor_det(s.U);
    Int dv = oracles::cofactor_det(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
  }
}

TEST_CASE("determinant matches cofactor expansion") {
  oracles::Rng rng(777);
  for (int trial = 0; trial < 60; ++trial) {
    Index n = static_cast<Index>(rng.range(1, 5));
    IntMatrix A(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) A(i, j) = rng.range(-8, 8);
    CHECK(lat::determinant(A) == oracles::cofactor_det(A));
  }
}

TEST_CASE("kernel basis") {
  SUBCASE("row [2 3]") {
    IntMatrix A = make_matrix({{2, 3}});
    auto ker = lat::kernel_basis(A);
    REQUIRE(ker.size() == 1);
    // brute-force search over small entries finds (3,-2) up to sign
    auto brute = oracles::bounded_kernel_vectors(A, 5);
    bool seen = false;
    for (const auto& b : brute)
      if (b == ker[0] || b == IntVector(-ker[0])) seen = true;
    CHECK(seen);
    CHECK(is_zero(IntVector(A * ker[0])));
  }
  SUBCASE("identity has trivial kernel") {
    CHECK(lat::kernel_basis(IntMatrix::Identity(3, 3)).empty());
  }
  SUBCASE("row [1 1 1] has rank-2 kernel") {
    IntMatrix A = make_matrix({{1, 1, 1}});
    auto ker = lat::kernel_basis(A);
    REQUIRE(ker.size() == 2);
    for (const auto& k : ker) CHECK(is_zero(IntVector(A * k)));
    CHECK(lat::rank(cols_matrix(3, ker)) == 2);
  }
  SUBCASE("count is n - rank on random matrices") {
    oracles::Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
      Index m = static_cast<Index>(rng.range(1, 3));
      Index n = static_cast<Index>(rng.range(1, 4));
      IntMatrix A(m, n);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) A(i, j) = rng.range(-4, 4);
      auto ker = lat::kernel_basis(A);
      CHECK(static_cast<Index>(ker.size()) == n - lat::rank(A));
      for (const auto& k : ker) CHECK(is_zero(IntVector(A * k)));
    }
  }
}

TEST_CASE("integer solve and lattice membership") {
  IntMatrix B = make_matrix({{2, 0}, {0, 2}});
  CHECK(lat::solve_integer(B, make_vector({4, -6})).has_value());
  CHECK(!lat::solve_integer(B, make_vector({1, 0})).has_value());
  auto y = lat::solve_integer(B, make_vector({4, -6}));
  CHECK(IntVector(B * *y) == make_vector({4, -6}));

  std::vector<IntVector> basis = {make_vector({2, 0}), make_vector({0, 2})};
  CHECK(lat::in_lattice(basis, make_vector({-2, 4})));
  CHECK(!lat::in_lattice(basis, make_vector({1, 1})));
  CHECK(lat::in_lattice({}, make_vector({0, 0})));
  CHECK(!lat::in_lattice({}, make_vector({1, 0})));
}

TEST_CASE("canonical lattice bases") {
  SUBCASE("same lattice from different generators") {
    auto b1 = lat::lattice_basis({make_vector({2, 0}), make_vector({3, 0})}, 2);
    auto b2 = lat::lattice_basis({make_vector({1, 0})}, 2);
    CHECK(b1 == b2);
    auto b3 = lat::lattice_basis({make_vector({2, 4}), make_vector({2, 2})}, 2);
    auto b4 = lat::lattice_basis({make_vector({0, 2}), make_vector({2, 2}), make_vector({2, 4})}, 2);
    CHECK(b3 == b4);
  }
  SUBCASE("saturation") {
    auto sat = lat::saturate_lattice({make_vector({2, 0})}, 2);
    REQUIRE(sat.size() == 1);
    CHECK(sat[0] == make_vector({1, 0}));
  }
  SUBCASE("intersection") {
    auto inter = lat::lattice_intersection({make_vector({2, 0}), make_vector({0, 1})},
                                           {make_vector({3, 0}), make_vector({0, 1})}, 2);
    REQUIRE(inter.size() == 2);
    CHECK(lat::in_lattice(inter, make_vector({6, 0})));
    CHECK(!lat::in_lattice(inter, make_vector({2, 0})));
    CHECK(!lat::in_lattice(inter, make_vector({3, 0})));
    CHECK(lat::in_lattice(inter, make_vector({0, 1})));
  }
  SUBCASE("reduction modulo a lattice is canonical and congruent") {
    std::vector<IntVector> gens = {make_vector({2, 0})};
    IntVector r1 = lat::reduce_mod_lattice(make_vector({5, 3}), gens);
    IntVector r2 = lat::reduce_mod_lattice(make_vector({-3, 3}), gens);
    CHECK(r1 == r2);
    CHECK(lat::in_lattice(gens, IntVector(make_vector({5, 3}) - r1)));
  }
}

TEST_CASE("saturated quotient splits coordinates") {
  std::vector<IntVector> lin = {make_vector({1, 0, 0})};
  lat::SaturatedQuotient q(lin, 3);
  CHECK(q.quot_rank() == 2);
  IntVector v = make_vector({7, 2, -3});
  IntVector red = q.reduce(v);
  CHECK(q.project(red) == q.project(v));
  CHECK(lat::in_lattice(lin, IntVector(v - red)));
  CHECK(q.project(q.section(make_vector({4, 5}))) == make_vector({4, 5}));
}

TEST_CASE("bounded nonnegative solver") {
  std::vector<IntVector> gens = {make_vector({2}), make_vector({3})};
  IntVector grading = make_vector({1});
  SUBCASE("7 = 2*2 + 1*3") {
    auto x = lat::solve_nonneg(gens, make_vector({7}), grading);
    REQUIRE(x.has_value());
    CHECK(*x == make_vector({2, 1}));
    CHECK(oracles::exhaustive_nonneg_solvable(gens, make_vector({7}), 7));
  }
  SUBCASE("1 is not representable") {
    CHECK(!lat::solve_nonneg(gens, make_vector({1}), grading).has_value());
    CHECK(!oracles::exhaustive_nonneg_solvable(gens, make_vector({1}), 7));
  }
  SUBCASE("zero target gives zero vector") {
    auto x = lat::solve_nonneg(gens, make_vector({0}), grading);
    REQUIRE(x.has_value());
    CHECK(*x == make_vector({0, 0}));
  }
  SUBCASE("agreement with exhaustive enumeration at small grading values") {
    std::vector<IntVector> g2 = {make_vector({1, 0}), make_vector({1, 2}), make_vector({0, 1})};
    IntVector w = make_vector({1, 1});
    oracles::grid(2, 0, 6, [&](const IntVector& v) {
      if (w.dot(v) > 12) return;
      bool got = lat::solve_nonneg(g2, v, w).has_value();
      bool want = oracles::exhaustive_nonneg_solvable(g2, v, 12);
      CHECK(got == want);
    });
  }
  SUBCASE("solutions reproduce the target exactly") {
    std::vector<IntVector> g2 = {make_vector({1, 0}), make_vector({1, 2}), make_vector({0, 1})};
    IntVector w = make_vector({1, 1});
    oracles::grid(2, 0, 5, [&](const IntVector& v) {
      auto x = lat::solve_nonneg(g2, v, w);
      if (!x.has_value()) return;
      IntVector sum = IntVector::Zero(2);
      for (size_t i = 0; i < g2.size(); ++i) sum += (*x)(static_cast<Index>(i)) * g2[i];
      CHECK(sum == v);
    });
  }
  SUBCASE("missing positive grading is rejected") {
    std::vector<IntVector> g2 = {make_vector({1}), make_vector({-1})};
    CHECK_THROWS_AS(lat::solve_nonneg(g2, make_vector({0}), grading), NoPositiveGrading);
  }
}
