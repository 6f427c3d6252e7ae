#pragma once

// Orientation bookkeeping for the faces of a poset. Each face gets a
// deterministic ordered basis of its direction space (the RREF kernel basis
// of its zero-set normals), and each cover A1 < A2 gets the incidence sign
// psi from comparing the orientation of (basis(A1), outward vector) with
// basis(A2). These are the matrix elements of the cellular cochain
// differential; over every length-2 interval they anticommute, which is
// what makes all the signed complexes downstream square to zero.

#include <mdiag/face_poset.hpp>

namespace mdiag {

struct OrientationData {
  std::vector<Matrix<Rational>> basis;  // per face: dim(ambient) x dim(face)
  std::vector<int> psi;                 // per cover index: +1 or -1

  int sign(int cover_index) const { return psi[cover_index]; }
};

inline OrientationData build_orientation(const FacePoset& p) {
  const Arrangement& a = p.arrangement();
  OrientationData o;
  o.basis.reserve(p.size());
  for (FaceId f = 0; f < p.size(); ++f)
    o.basis.push_back(kernel_basis(a.normal_matrix(p.face(f).zero_mask)));
  o.psi.reserve(p.covers().size());
  for (const auto& cov : p.covers()) {
    const Face& lo = p.face(cov.lower);
    const Face& hi = p.face(cov.upper);
    int d = hi.dim;
    Matrix<Rational> vecs(a.dim(), d);
    for (int j = 0; j + 1 < d; ++j)
      for (int i = 0; i < a.dim(); ++i) vecs(i, j) = o.basis[cov.lower](i, j);
    for (int i = 0; i < a.dim(); ++i)
      vecs(i, d - 1) = hi.witness[i] - lo.witness[i];  // points off the lower face into the upper
    auto coords = solve(o.basis[cov.upper], vecs);
    if (!coords) throw std::logic_error("cover vectors escape the upper face span");
    Rational det = determinant(*coords);
    if (det == 0) throw std::logic_error("degenerate orientation determinant");
    o.psi.push_back(det > 0 ? 1 : -1);
  }
  return o;
}

struct AnticommutativityViolation {
  int cover_a1_m1, cover_m1_a3, cover_a1_m2, cover_m2_a3;
};

// psi(A1<M)psi(M<A3) must flip sign between the two middles of every
// length-2 interval.
inline std::vector<AnticommutativityViolation> psi_anticommutativity_violations(
    const FacePoset& p, const OrientationData& o) {
  std::vector<AnticommutativityViolation> bad;
  for (FaceId a1 = 0; a1 < p.size(); ++a1) {
    const auto& ups = p.up_covers(a1);
    for (size_t i = 0; i < ups.size(); ++i)
      for (size_t j = i + 1; j < ups.size(); ++j) {
        FaceId m1 = p.covers()[ups[i]].upper, m2 = p.covers()[ups[j]].upper;
        for (int c1 : p.up_covers(m1))
          for (int c2 : p.up_covers(m2)) {
            if (p.covers()[c1].upper != p.covers()[c2].upper) continue;
            if (o.psi[ups[i]] * o.psi[c1] != -o.psi[ups[j]] * o.psi[c2])
              bad.push_back({ups[i], c1, ups[j], c2});
          }
      }
  }
  return bad;
}

}  // namespace mdiag
