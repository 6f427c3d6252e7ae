#pragma once

// Graded complexes of exact matrices and their cohomology. The grading is a
// finite integer range; differentials raise degree by one.

#include <mdiag/matrix.hpp>

#include <map>
#include <optional>

namespace mdiag {

template <class K>
struct ChainComplex {
  int min_degree = 0;
  std::vector<int> dims;        // dims[i] = dim of term in degree min_degree + i
  std::vector<Matrix<K>> d;     // d[i]: term i -> term i+1, shape dims[i+1] x dims[i]

  int terms() const { return static_cast<int>(dims.size()); }
  int max_degree() const { return min_degree + terms() - 1; }
  int dim_at(int degree) const {
    int i = degree - min_degree;
    return (i >= 0 && i < terms()) ? dims[i] : 0;
  }
  const Matrix<K>* diff_at(int degree) const {
    int i = degree - min_degree;
    return (i >= 0 && i + 1 < terms()) ? &d[i] : nullptr;
  }

  // Degrees at which shapes are broken or d^2 != 0; empty means valid.
  std::vector<int> defects() const {
    std::vector<int> bad;
    for (int i = 0; i + 1 < terms(); ++i)
      if (d[i].rows() != dims[i + 1] || d[i].cols() != dims[i]) bad.push_back(min_degree + i);
    if (!bad.empty()) return bad;
    for (int i = 0; i + 2 < terms(); ++i)
      if (!(d[i + 1] * d[i]).is_zero()) bad.push_back(min_degree + i);
    return bad;
  }

  // dim H^i = dim ker d_i - rank d_{i-1}
  std::map<int, int> cohomology_dims() const {
    std::map<int, int> h;
    for (int i = 0; i < terms(); ++i) {
      int ker = (i + 1 < terms()) ? kernel_dim(d[i]) : dims[i];
      int im = (i > 0) ? rank(d[i - 1]) : 0;
      h[min_degree + i] = ker - im;
    }
    return h;
  }

  int euler_characteristic_terms() const {
    int chi = 0;
    for (int i = 0; i < terms(); ++i) chi += ((min_degree + i) % 2 == 0 ? 1 : -1) * dims[i];
    return chi;
  }
};

inline int euler_characteristic(const std::map<int, int>& h) {
  int chi = 0;
  for (auto& [deg, dim] : h) chi += (((deg % 2) + 2) % 2 == 0 ? 1 : -1) * dim;
  return chi;
}

// A degree-preserving map of complexes, one matrix per common degree.
template <class K>
struct ChainMap {
  int min_degree = 0;
  std::vector<Matrix<K>> f;  // f[i]: src term (min_degree+i) -> tgt term (same degree)

  const Matrix<K>* at(int degree) const {
    int i = degree - min_degree;
    return (i >= 0 && i < static_cast<int>(f.size())) ? &f[i] : nullptr;
  }
};

template <class K>
bool commutes_with_differentials(const ChainComplex<K>& src, const ChainComplex<K>& tgt,
                                 const ChainMap<K>& fm) {
  int lo = std::min(src.min_degree, tgt.min_degree);
  int hi = std::max(src.max_degree(), tgt.max_degree());
  for (int deg = lo; deg < hi; ++deg) {
    Matrix<K> lhs(tgt.dim_at(deg + 1), src.dim_at(deg));
    Matrix<K> rhs(tgt.dim_at(deg + 1), src.dim_at(deg));
    const Matrix<K>* fd = fm.at(deg);
    const Matrix<K>* fd1 = fm.at(deg + 1);
    const Matrix<K>* ds = src.diff_at(deg);
    const Matrix<K>* dt = tgt.diff_at(deg);
    if (dt && fd && dt->cols() == fd->rows()) lhs = (*dt) * (*fd);
    if (fd1 && ds && fd1->cols() == ds->rows()) rhs = (*fd1) * (*ds);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// Representatives of H^i as columns in term i: the subset of kernel-basis
// columns that are independent modulo the image of d_{i-1}.
template <class K>
Matrix<K> cohomology_representatives(const ChainComplex<K>& c, int degree) {
  int i = degree - c.min_degree;
  if (i < 0 || i >= c.terms()) return Matrix<K>(0, 0);
  Matrix<K> z = (i + 1 < c.terms()) ? kernel_basis(c.d[i])
                                    : Matrix<K>::identity(c.dims[i]);
  Matrix<K> b = (i > 0) ? c.d[i - 1] : Matrix<K>(c.dims[i], 0);
  Matrix<K> bz = hstack(b, z);
  Matrix<K> work = bz;
  std::vector<int> pivots = rref_inplace(work);
  std::vector<int> reps;
  for (int p : pivots)
    if (p >= b.cols()) reps.push_back(p - b.cols());
  Matrix<K> r(c.dims[i], static_cast<int>(reps.size()));
  for (size_t k = 0; k < reps.size(); ++k)
    for (int row = 0; row < c.dims[i]; ++row) r(row, static_cast<int>(k)) = z(row, reps[k]);
  return r;
}

// Map induced on H^degree by a chain map. nullopt when the candidate does
// not take cycles to cycles modulo boundaries (possible when the inputs
// fail the square axioms; callers report that as a failure witness).
template <class K>
std::optional<Matrix<K>> induced_cohomology_map(const ChainComplex<K>& src,
                                                const ChainComplex<K>& tgt,
                                                const ChainMap<K>& fm, int degree) {
  Matrix<K> rs = cohomology_representatives(src, degree);
  Matrix<K> rt = cohomology_representatives(tgt, degree);
  const Matrix<K>* dprev = tgt.diff_at(degree - 1);
  Matrix<K> bt = dprev ? *dprev : Matrix<K>(tgt.dim_at(degree), 0);
  const Matrix<K>* f = fm.at(degree);
  Matrix<K> moved(tgt.dim_at(degree), rs.cols());
  if (f && rs.rows() == f->cols()) moved = (*f) * rs;
  else if (rs.cols() > 0 && tgt.dim_at(degree) > 0)
    return std::nullopt;
  if (const Matrix<K>* dt = tgt.diff_at(degree); dt && moved.cols() > 0)
    if (!((*dt) * moved).is_zero()) return std::nullopt;  // images are not cycles
  auto coords = solve(hstack(bt, rt), moved);
  if (!coords) return std::nullopt;
  Matrix<K> result(rt.cols(), rs.cols());
  for (int i = 0; i < rt.cols(); ++i)
    for (int j = 0; j < rs.cols(); ++j) result(i, j) = (*coords)(bt.cols() + i, j);
  return result;
}

}  // namespace mdiag
