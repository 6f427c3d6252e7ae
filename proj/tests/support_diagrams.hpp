#pragma once

// Catalog fixtures over the one-hyperplane line, the boolean plane and the
// two-point affine line, plus a brute-force solver for morphism spaces.
// The solver only uses the commutation constraints, so it is an oracle
// independent of the kernel/cokernel implementations.

#include "support.hpp"

#include <mdiag/matrix_diagram.hpp>

namespace mdiag::testing {

struct LineIndex {
  std::shared_ptr<const CellGeometry> geo;
  FaceId minus, zero, plus;
  size_t cov_zero_minus, cov_zero_plus;  // real cover indices

  static LineIndex make() {
    LineIndex li;
    li.geo = CellGeometry::build(line_arrangement());
    const FacePoset& p = li.geo->real();
    li.minus = *p.find("-");
    li.zero = *p.find("0");
    li.plus = *p.find("+");
    for (size_t c = 0; c < p.covers().size(); ++c) {
      if (p.covers()[c].upper == li.minus) li.cov_zero_minus = c;
      if (p.covers()[c].upper == li.plus) li.cov_zero_plus = c;
    }
    return li;
  }
};

// dims: rim 1, center 2; the centre column kills the vector (1,0), the
// centre row hits it, so the skyscraper sits inside and the quotient is the
// constant diagram. This is the extension by zero from the punctured line.
inline MatrixDiagram<Rational> zero_extension_diagram(const LineIndex& li) {
  const FacePoset& p = li.geo->real();
  std::vector<int> dims(9, 1);
  dims[static_cast<size_t>(li.zero) * p.size() + li.zero] = 2;
  auto d = MatrixDiagram<Rational>::zeros(li.geo, FieldSpec::rationals(), dims);
  for (FaceId a : {li.minus, li.plus}) {
    d.dprime(a, li.cov_zero_minus) = Matrix<Rational>::identity(1);
    d.dprime(a, li.cov_zero_plus) = Matrix<Rational>::identity(1);
  }
  Matrix<Rational> row(1, 2);
  row(0, 1) = 1;  // both centre-column maps are projection to the second coordinate
  d.dprime(li.zero, li.cov_zero_minus) = row;
  d.dprime(li.zero, li.cov_zero_plus) = row;
  Matrix<Rational> dminus(2, 1), dplus(2, 1);
  dminus(0, 0) = 1;
  dminus(1, 0) = 1;
  dplus(1, 0) = 1;
  d.dsecond(li.cov_zero_minus, li.zero) = dminus;  // E_{-,0} -> E_{0,0}
  d.dsecond(li.cov_zero_plus, li.zero) = dplus;    // E_{+,0} -> E_{0,0}
  for (FaceId b : {li.minus, li.plus}) {
    d.dsecond(li.cov_zero_minus, b) = Matrix<Rational>::identity(1);
    d.dsecond(li.cov_zero_plus, b) = Matrix<Rational>::identity(1);
  }
  return d;
}

// dims all 1; the whole A=+ layer maps into the A=0 layer with the factor
// 2, so the local system on the open stratum has nontrivial monodromy.
inline MatrixDiagram<Rational> monodromy_two_diagram(const LineIndex& li) {
  auto d = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  Matrix<Rational> two(1, 1);
  two(0, 0) = 2;
  for (FaceId b : {li.minus, li.zero, li.plus})
    d.dsecond(li.cov_zero_plus, b) = two;  // E_{+,B} -> E_{0,B}
  return d;
}

inline MatrixDiagram<Rational> broken_rim_diagram(const LineIndex& li) {
  auto d = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  d.dprime(li.minus, li.cov_zero_plus) = Matrix<Rational>(1, 1);  // zeroed rim map
  return d;
}

// All solutions of the commutation constraints between two diagrams, found
// by solving one big exact linear system in the component entries.
template <class K>
std::vector<DiagramMorphism<K>> hom_basis(const MatrixDiagram<K>& s, const MatrixDiagram<K>& t) {
  const FacePoset& re = s.geo->real();
  const FacePoset& im = s.geo->imag();
  std::vector<int> offset(s.dims().size(), 0);
  int total = 0;
  for (size_t i = 0; i < s.dims().size(); ++i) {
    offset[i] = total;
    total += s.dims()[i] * t.dims()[i];
  }
  auto var = [&](FaceId a, FaceId b, int i, int j) {
    size_t idx = static_cast<size_t>(a) * s.nr() + b;
    return offset[idx] + i * s.dim(a, b) + j;  // row-major entry of comp(a,b)
  };
  std::vector<std::vector<K>> rows;
  auto add_square = [&](FaceId a_src, FaceId b_src, FaceId a_tgt, FaceId b_tgt,
                        const Matrix<K>& pre, const Matrix<K>& post) {
    // post * comp(a_src,b_src) - comp(a_tgt,b_tgt) * pre = 0
    for (int i = 0; i < post.rows(); ++i)
      for (int j = 0; j < pre.cols(); ++j) {
        std::vector<K> row(total, K(0));
        for (int k = 0; k < post.cols(); ++k)
          row[var(a_src, b_src, k, j)] = row[var(a_src, b_src, k, j)] + post(i, k);
        for (int k = 0; k < pre.rows(); ++k)
          row[var(a_tgt, b_tgt, i, k)] = row[var(a_tgt, b_tgt, i, k)] - pre(k, j);
        rows.push_back(std::move(row));
      }
  };
  for (FaceId a = 0; a < s.ni(); ++a)
    for (size_t cb = 0; cb < re.covers().size(); ++cb) {
      auto [b1, b2] = re.covers()[cb];
      add_square(a, b1, a, b2, s.dprime(a, cb), t.dprime(a, cb));
    }
  for (size_t ca = 0; ca < im.covers().size(); ++ca) {
    auto [a1, a2] = im.covers()[ca];
    for (FaceId b = 0; b < s.nr(); ++b) add_square(a2, b, a1, b, s.dsecond(ca, b), t.dsecond(ca, b));
  }
  Matrix<K> sys(static_cast<int>(rows.size()), total);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < total; ++c) sys(static_cast<int>(r), c) = rows[r][c];
  Matrix<K> null = kernel_basis(sys);
  std::vector<DiagramMorphism<K>> out;
  for (int v = 0; v < null.cols(); ++v) {
    DiagramMorphism<K> m = DiagramMorphism<K>::zero(s, t);
    for (FaceId a = 0; a < s.ni(); ++a)
      for (FaceId b = 0; b < s.nr(); ++b)
        for (int i = 0; i < t.dim(a, b); ++i)
          for (int j = 0; j < s.dim(a, b); ++j) m.at(a, b)(i, j) = null(var(a, b, i, j), v);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace mdiag::testing
