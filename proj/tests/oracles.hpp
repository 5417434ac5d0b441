#pragma once

// Brute-force reference computations used as independent oracles. Everything
// here is deliberately naive: results are cross-checked against the library,
// never computed with it.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "monofan/ints.hpp"

namespace oracles {

using monofan::Index;
using monofan::Int;
using monofan::IntMatrix;
using monofan::IntVector;

// split-mix style generator, fixed seed per test site
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

inline Int cofactor_det(const IntMatrix& a) {
  const Index n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Int det = 0;
  IntMatrix minor(n - 1, n - 1);
  for (Index j = 0; j < n; ++j) {
    for (Index r = 1; r < n; ++r) {
      Index cc = 0;
      for (Index c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    Int term = a(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : Int(-term);
  }
  return det;
}

// all integer vectors with entries in [lo, hi]
inline void grid(Index dim, long lo, long hi, const std::function<void(const IntVector&)>& fn) {
  IntVector v(dim);
  std::function<void(Index)> rec = [&](Index i) {
    if (i == dim) {
      fn(v);
      return;
    }
    for (long x = lo; x <= hi; ++x) {
      v(i) = x;
      rec(i + 1);
    }
  };
  rec(0);
}

// kernel vectors of A with entries bounded by `bound`
inline std::vector<IntVector> bounded_kernel_vectors(const IntMatrix& A, long bound) {
  std::vector<IntVector> out;
  grid(A.cols(), -bound, bound, [&](const IntVector& x) {
    if (monofan::is_zero(x)) return;
    if (monofan::is_zero(IntVector(A * x))) out.push_back(x);
  });
  return out;
}

// exhaustive nonnegative solve: sum x_i g_i = v with every |x|_1 <= cap
inline bool exhaustive_nonneg_solvable(const std::vector<IntVector>& gens, const IntVector& v,
                                       long cap) {
  const size_t n = gens.size();
  std::function<bool(size_t, IntVector, long)> rec = [&](size_t i, IntVector rem,
                                                         long left) -> bool {
    if (monofan::is_zero(rem)) return true;
    if (i == n || left == 0) return false;
    for (long c = 0; c <= left; ++c) {
      if (rec(i + 1, rem - Int(c) * gens[i], left - c)) return true;
    }
    return false;
  };
  return rec(0, v, cap);
}

// distinct supporting-face ray sets of cone(rays), functionals in a grid box
inline std::set<std::vector<Index>> face_ray_sets_by_functionals(
    const std::vector<IntVector>& rays, Index dim, long box) {
  std::set<std::vector<Index>> out;
  grid(dim, -box, box, [&](const IntVector& w) {
    bool supporting = true;
    for (const auto& r : rays)
      if (w.dot(r) < 0) supporting = false;
    if (!supporting) return;
    std::vector<Index> tight;
    for (size_t i = 0; i < rays.size(); ++i)
      if (w.dot(rays[i]) == 0) tight.push_back(static_cast<Index>(i));
    out.insert(tight);
  });
  return out;
}

}  // namespace oracles
