#pragma once

// The Cousin side of the checker. A diagram determines, at every product
// cell iD+B, a "stalk complex" summing the spaces E_{A,B} over A >= D,
// graded by codim(A), with differential dsecond dressed by the orientation
// signs. Real-direction covers induce chain maps (the dprime blocks);
// imaginary-direction covers induce quotient maps that forget the summands
// outside the smaller star. Constructibility asks these to be
// quasi-isomorphisms within a stratum; the support conditions compare the
// codimension of a cell's stratum with the degrees where stalk cohomology
// survives. The dual-side support condition runs the mirrored construction
// (transposed dprime over the real star), which in the central case agrees
// with running the primal check on the dualized diagram.

#include <mdiag/matrix_diagram.hpp>
#include <mdiag/chain_complex.hpp>
#include <mdiag/orientation.hpp>
#include <mdiag/parallel.hpp>

#include <map>

namespace mdiag {

template <class K>
struct CousinComplex {
  std::shared_ptr<const CellGeometry> geo;
  std::vector<ChainComplex<K>> stalks;     // per product cell
  std::vector<std::vector<int>> offsets;   // per cell: per imag face, offset in its degree (-1 absent)
  std::vector<std::string> defects;        // d^2 or chain-map commutation failures

  const ChainComplex<K>& stalk(ProductCell c) const { return stalks[geo->cell_index(c)]; }
};

namespace detail {

template <class K>
K sign_scalar(int s) {
  return s > 0 ? K(1) : K(-1);
}

}  // namespace detail

// Orientation data for both index posets, shared by the Cousin builders.
struct CousinSigns {
  OrientationData imag, real;
  static CousinSigns build(const CellGeometry& g) {
    CousinSigns s;
    s.real = build_orientation(g.real());
    s.imag = g.central() ? s.real : build_orientation(g.imag());
    return s;
  }
};

template <class K>
CousinComplex<K> build_cousin(const MatrixDiagram<K>& d, const CousinSigns& signs, int jobs = 1) {
  if (d.dsecond_covariant)
    throw input_error("the Cousin construction needs the contravariant convention");
  const CellGeometry& g = *d.geo;
  const FacePoset& im = g.imag();
  const int n = g.arrangement().dim();
  CousinComplex<K> cx;
  cx.geo = d.geo;
  cx.stalks.resize(g.cell_count());
  cx.offsets.assign(g.cell_count(), std::vector<int>(im.size(), -1));
  std::vector<std::vector<std::string>> defect_slots(g.cell_count());

  parallel_for(g.cell_count(), jobs, [&](size_t idx) {
    ProductCell cell = g.cell_at(idx);
    FaceId dd = cell.imag, b = cell.real;
    ChainComplex<K>& c = cx.stalks[idx];
    c.min_degree = 0;
    c.dims.assign(n - im.dim(dd) + 1, 0);
    for (FaceId a = 0; a < im.size(); ++a) {
      if (!im.leq(dd, a)) continue;
      int p = n - im.dim(a);
      cx.offsets[idx][a] = c.dims[p];
      c.dims[p] += d.dim(a, b);
    }
    for (size_t p = 0; p + 1 < c.dims.size(); ++p)
      c.d.push_back(Matrix<K>(c.dims[p + 1], c.dims[p]));
    for (size_t ca = 0; ca < im.covers().size(); ++ca) {
      auto [lo, hi] = im.covers()[ca];  // lo < hi, map E_{hi,b} -> E_{lo,b}
      if (!im.leq(dd, lo)) continue;
      int p = n - im.dim(hi);
      const Matrix<K>& m = d.dsecond(ca, b);
      K s = detail::sign_scalar<K>(signs.imag.sign(static_cast<int>(ca)));
      for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
          c.d[p](cx.offsets[idx][lo] + i, cx.offsets[idx][hi] + j) = s * m(i, j);
    }
    for (int deg : c.defects())
      defect_slots[idx].push_back("stalk complex at " + g.cell_label(cell) +
                                  " fails d^2 = 0 entering degree " + std::to_string(deg));
  });
  for (auto& v : defect_slots)
    for (auto& s : v) cx.defects.push_back(std::move(s));
  return cx;
}

// Chain map induced on stalk complexes by a real cover at fixed imaginary
// face: block-diagonal dprime.
template <class K>
ChainMap<K> real_cover_chain_map(const MatrixDiagram<K>& d, const CousinComplex<K>& cx,
                                 size_t cover_b, FaceId dd) {
  const CellGeometry& g = *d.geo;
  const FacePoset& im = g.imag();
  auto [b1, b2] = g.real().covers()[cover_b];
  size_t i1 = g.cell_index({dd, b1}), i2 = g.cell_index({dd, b2});
  const ChainComplex<K>& src = cx.stalks[i1];
  const ChainComplex<K>& tgt = cx.stalks[i2];
  ChainMap<K> f;
  f.min_degree = 0;
  for (size_t p = 0; p < src.dims.size(); ++p)
    f.f.push_back(Matrix<K>(tgt.dim_at(static_cast<int>(p)), src.dims[p]));
  for (FaceId a = 0; a < im.size(); ++a) {
    if (!im.leq(dd, a)) continue;
    int p = g.arrangement().dim() - im.dim(a);
    const Matrix<K>& m = d.dprime(a, cover_b);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        f.f[p](cx.offsets[i2][a] + i, cx.offsets[i1][a] + j) = m(i, j);
  }
  return f;
}

// Quotient map induced by an imaginary cover at fixed real face: identity
// on the summands surviving in the smaller star, zero on the rest.
template <class K>
ChainMap<K> imag_cover_chain_map(const MatrixDiagram<K>& d, const CousinComplex<K>& cx,
                                 size_t cover_a, FaceId b) {
  const CellGeometry& g = *d.geo;
  const FacePoset& im = g.imag();
  auto [d1, d2] = im.covers()[cover_a];
  size_t i1 = g.cell_index({d1, b}), i2 = g.cell_index({d2, b});
  const ChainComplex<K>& src = cx.stalks[i1];
  const ChainComplex<K>& tgt = cx.stalks[i2];
  ChainMap<K> f;
  f.min_degree = 0;
  for (size_t p = 0; p < src.dims.size(); ++p)
    f.f.push_back(Matrix<K>(tgt.dim_at(static_cast<int>(p)), src.dims[p]));
  for (FaceId a = 0; a < im.size(); ++a) {
    if (!im.leq(d2, a)) continue;  // summands with A >= D2 survive
    int p = g.arrangement().dim() - im.dim(a);
    for (int i = 0; i < d.dim(a, b); ++i)
      f.f[p](cx.offsets[i2][a] + i, cx.offsets[i1][a] + i) = K(1);
  }
  return f;
}

struct ConstructibilityFailure {
  std::string direction;  // "real" | "imag"
  std::string cell_from, cell_to;
  int degree = 0;
  std::string reason;  // "not_iso" | "not_well_defined" | "not_chain_map"
  auto tie() const { return std::tie(direction, cell_from, cell_to, degree, reason); }
  friend bool operator<(const ConstructibilityFailure& x, const ConstructibilityFailure& y) {
    return x.tie() < y.tie();
  }
  friend bool operator==(const ConstructibilityFailure& x, const ConstructibilityFailure& y) {
    return x.tie() == y.tie();
  }
};

struct ConstructibilityReport {
  std::vector<ConstructibilityFailure> failures;
  bool pass = true;
};

// Within every complex stratum, cover-generated generalization maps must be
// quasi-isomorphisms, in both the real and the imaginary direction.
template <class K>
ConstructibilityReport constructibility_report(const MatrixDiagram<K>& d,
                                               const CousinComplex<K>& cx, int jobs = 1) {
  const CellGeometry& g = *d.geo;
  const FacePoset& re = g.real();
  const FacePoset& im = g.imag();

  struct Task {
    bool real_direction;
    size_t cover;
    FaceId fixed;
  };
  std::vector<Task> tasks;
  for (size_t cb = 0; cb < re.covers().size(); ++cb) {
    auto [b1, b2] = re.covers()[cb];
    for (FaceId dd = 0; dd < im.size(); ++dd)
      if (g.stratum_key({dd, b1}) == g.stratum_key({dd, b2})) tasks.push_back({true, cb, dd});
  }
  for (size_t ca = 0; ca < im.covers().size(); ++ca) {
    auto [d1, d2] = im.covers()[ca];
    for (FaceId b = 0; b < re.size(); ++b)
      if (g.stratum_key({d1, b}) == g.stratum_key({d2, b})) tasks.push_back({false, ca, b});
  }

  std::vector<std::vector<ConstructibilityFailure>> slots(tasks.size());
  parallel_for(tasks.size(), jobs, [&](size_t ti) {
    const Task& t = tasks[ti];
    ProductCell from, to;
    ChainMap<K> f;
    if (t.real_direction) {
      auto [b1, b2] = re.covers()[t.cover];
      from = {t.fixed, b1};
      to = {t.fixed, b2};
      f = real_cover_chain_map(d, cx, t.cover, t.fixed);
    } else {
      auto [d1, d2] = im.covers()[t.cover];
      from = {d1, t.fixed};
      to = {d2, t.fixed};
      f = imag_cover_chain_map(d, cx, t.cover, t.fixed);
    }
    const ChainComplex<K>& src = cx.stalk(from);
    const ChainComplex<K>& tgt = cx.stalk(to);
    std::string dir = t.real_direction ? "real" : "imag";
    if (!commutes_with_differentials(src, tgt, f)) {
      slots[ti].push_back(
          {dir, g.cell_label(from), g.cell_label(to), 0, "not_chain_map"});
      return;
    }
    int hi = std::max(src.max_degree(), tgt.max_degree());
    for (int deg = 0; deg <= hi; ++deg) {
      auto induced = induced_cohomology_map(src, tgt, f, deg);
      if (!induced) {
        slots[ti].push_back({dir, g.cell_label(from), g.cell_label(to), deg, "not_well_defined"});
        continue;
      }
      if (!is_invertible(*induced))
        slots[ti].push_back({dir, g.cell_label(from), g.cell_label(to), deg, "not_iso"});
    }
  });

  ConstructibilityReport rep;
  for (auto& v : slots)
    for (auto& f : v) rep.failures.push_back(std::move(f));
  std::sort(rep.failures.begin(), rep.failures.end());
  rep.pass = rep.failures.empty();
  return rep;
}

// Mirror of the stalk complex for the support condition on the dual: sum
// over B' >= B graded by codim(B'), transposed dprime as differential.
template <class K>
ChainComplex<K> dual_stalk_complex(const MatrixDiagram<K>& d, const CousinSigns& signs,
                                   ProductCell cell) {
  const CellGeometry& g = *d.geo;
  const FacePoset& re = g.real();
  const int n = g.arrangement().dim();
  FaceId dd = cell.imag, b = cell.real;
  ChainComplex<K> c;
  c.min_degree = 0;
  c.dims.assign(n - re.dim(b) + 1, 0);
  std::vector<int> offset(re.size(), -1);
  for (FaceId bp = 0; bp < re.size(); ++bp) {
    if (!re.leq(b, bp)) continue;
    int p = n - re.dim(bp);
    offset[bp] = c.dims[p];
    c.dims[p] += d.dim(dd, bp);
  }
  for (size_t p = 0; p + 1 < c.dims.size(); ++p)
    c.d.push_back(Matrix<K>(c.dims[p + 1], c.dims[p]));
  for (size_t cb = 0; cb < re.covers().size(); ++cb) {
    auto [lo, hi] = re.covers()[cb];
    if (!re.leq(b, lo)) continue;
    int p = n - re.dim(hi);
    Matrix<K> m = d.dprime(dd, cb).transposed();  // (E_{D,hi})* -> (E_{D,lo})*
    K s = detail::sign_scalar<K>(signs.real.sign(static_cast<int>(cb)));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        c.d[p](offset[lo] + i, offset[hi] + j) = s * m(i, j);
  }
  return c;
}

struct SupportEntry {
  std::string cell;
  int degree = 0;
  std::vector<int> stratum;  // hyperplane indices of the cell's key
  int codim = 0;
  auto tie() const { return std::tie(cell, degree, stratum, codim); }
  friend bool operator<(const SupportEntry& x, const SupportEntry& y) { return x.tie() < y.tie(); }
  friend bool operator==(const SupportEntry& x, const SupportEntry& y) { return x.tie() == y.tie(); }
};

struct PerversityReport {
  std::vector<SupportEntry> supports;       // nonzero stalk cohomology
  std::vector<SupportEntry> dual_supports;  // nonzero dual-side stalk cohomology
  std::vector<SupportEntry> lower_violations;  // support in too-small codimension
  std::vector<SupportEntry> upper_violations;  // same check on the dual side
  ConstructibilityReport constructibility;
  std::vector<std::string> defects;
  bool lower = false, upper = false, constructible = false;

  bool perverse() const { return lower && upper && constructible && defects.empty(); }
};

template <class K>
PerversityReport perversity_report(const MatrixDiagram<K>& d, const CousinSigns& signs,
                                   int jobs = 1) {
  const CellGeometry& g = *d.geo;
  CousinComplex<K> cx = build_cousin(d, signs, jobs);
  PerversityReport rep;
  rep.defects = cx.defects;
  rep.constructibility = constructibility_report(d, cx, jobs);
  rep.constructible = rep.constructibility.pass;

  std::vector<std::vector<SupportEntry>> sup(g.cell_count()), dual_sup(g.cell_count());
  std::vector<std::vector<std::string>> dual_defects(g.cell_count());
  parallel_for(g.cell_count(), jobs, [&](size_t idx) {
    ProductCell cell = g.cell_at(idx);
    HpMask key = g.stratum_key(cell);
    int codim = g.key_codim(key);
    for (auto& [deg, dim] : cx.stalks[idx].cohomology_dims())
      if (dim != 0) sup[idx].push_back({g.cell_label(cell), deg, mask_to_indices(key), codim});
    ChainComplex<K> dual = dual_stalk_complex(d, signs, cell);
    for (int bad : dual.defects())
      dual_defects[idx].push_back("dual stalk complex at " + g.cell_label(cell) +
                                  " fails d^2 = 0 entering degree " + std::to_string(bad));
    for (auto& [deg, dim] : dual.cohomology_dims())
      if (dim != 0) dual_sup[idx].push_back({g.cell_label(cell), deg, mask_to_indices(key), codim});
  });
  for (auto& v : sup)
    for (auto& e : v) rep.supports.push_back(std::move(e));
  for (auto& v : dual_sup)
    for (auto& e : v) rep.dual_supports.push_back(std::move(e));
  for (auto& v : dual_defects)
    for (auto& s : v) rep.defects.push_back(std::move(s));
  std::sort(rep.supports.begin(), rep.supports.end());
  std::sort(rep.dual_supports.begin(), rep.dual_supports.end());

  for (const auto& e : rep.supports)
    if (e.codim < e.degree) rep.lower_violations.push_back(e);
  for (const auto& e : rep.dual_supports)
    if (e.codim < e.degree) rep.upper_violations.push_back(e);
  rep.lower = rep.lower_violations.empty();
  rep.upper = rep.upper_violations.empty();
  return rep;
}

// Compactly supported cohomology of the total complex: one summand per
// (A, B', D') with D' <= A, in degree codim(A) + dim(B') + dim(D'). The
// three directions carry the usual alternating sign dressing; the grading
// is pinned by the skyscraper landing in degree 1 on the line.
template <class K>
std::map<int, int> compact_total_cohomology(const MatrixDiagram<K>& d, const CousinSigns& signs) {
  if (d.dsecond_covariant)
    throw input_error("the Cousin construction needs the contravariant convention");
  const CellGeometry& g = *d.geo;
  const FacePoset& re = g.real();
  const FacePoset& im = g.imag();
  const int n = g.arrangement().dim();

  struct Key {
    FaceId a, b, dd;
    auto tie() const { return std::tie(a, b, dd); }
    bool operator<(const Key& o) const { return tie() < o.tie(); }
  };
  std::map<Key, std::pair<int, int>> slot;  // -> (degree, offset)
  int max_degree = 0;
  std::map<int, int> degree_dims;
  for (FaceId a = 0; a < im.size(); ++a)
    for (FaceId b = 0; b < re.size(); ++b) {
      if (d.dim(a, b) == 0) continue;
      for (FaceId dd = 0; dd < im.size(); ++dd) {
        if (!im.leq(dd, a)) continue;
        int deg = (n - im.dim(a)) + re.dim(b) + im.dim(dd);
        slot[{a, b, dd}] = {deg, degree_dims[deg]};
        degree_dims[deg] += d.dim(a, b);
        max_degree = std::max(max_degree, deg);
      }
    }
  ChainComplex<K> total;
  total.min_degree = 0;
  total.dims.assign(max_degree + 1, 0);
  for (auto& [deg, dim] : degree_dims) total.dims[deg] = dim;
  for (int p = 0; p + 1 <= max_degree; ++p)
    total.d.push_back(Matrix<K>(total.dims[p + 1], total.dims[p]));

  auto add_block = [&](int deg, int row_off, int col_off, const Matrix<K>& m, const K& s) {
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        total.d[deg](row_off + i, col_off + j) = total.d[deg](row_off + i, col_off + j) + s * m(i, j);
  };

  for (auto& [key, pos] : slot) {
    auto [a, b, dd] = key;
    auto [deg, off] = pos;
    int codim_a = n - im.dim(a);
    // dsecond direction: A -> A' < A, D' still below A'
    for (int ca : im.down_covers(a)) {
      FaceId lo = im.covers()[ca].lower;
      if (!im.leq(dd, lo)) continue;
      auto it = slot.find({lo, b, dd});
      if (it == slot.end()) continue;
      add_block(deg, it->second.second, off, d.dsecond(ca, b),
                detail::sign_scalar<K>(signs.imag.sign(ca)));
    }
    // dprime direction: B' -> B'' > B'
    for (int cb : re.up_covers(b)) {
      FaceId hi = re.covers()[cb].upper;
      auto it = slot.find({a, hi, dd});
      if (it == slot.end()) continue;
      K s = detail::sign_scalar<K>(signs.real.sign(cb));
      if (codim_a % 2 == 1) s = -s;
      add_block(deg, it->second.second, off, d.dprime(a, cb), s);
    }
    // imaginary support direction: D' -> D'' > D', identity blocks
    for (int cd : im.up_covers(dd)) {
      FaceId hi = im.covers()[cd].upper;
      if (!im.leq(hi, a)) continue;
      auto it = slot.find({a, b, hi});
      if (it == slot.end()) continue;
      K s = detail::sign_scalar<K>(signs.imag.sign(cd));
      if ((codim_a + re.dim(b)) % 2 == 1) s = -s;
      add_block(deg, it->second.second, off, Matrix<K>::identity(d.dim(a, b)), s);
    }
  }
  auto bad = total.defects();
  if (!bad.empty())
    throw std::logic_error("total complex fails d^2 = 0 entering degree " +
                           std::to_string(bad.front()));
  return total.cohomology_dims();
}

// Signed sum of stalk dimensions over all summands; must match the Euler
// characteristic of compact_total_cohomology.
template <class K>
int total_euler_characteristic_terms(const MatrixDiagram<K>& d) {
  const CellGeometry& g = *d.geo;
  const FacePoset& re = g.real();
  const FacePoset& im = g.imag();
  const int n = g.arrangement().dim();
  int chi = 0;
  for (FaceId a = 0; a < im.size(); ++a)
    for (FaceId b = 0; b < re.size(); ++b)
      for (FaceId dd = 0; dd < im.size(); ++dd) {
        if (!im.leq(dd, a)) continue;
        int deg = (n - im.dim(a)) + re.dim(b) + im.dim(dd);
        chi += (deg % 2 == 0 ? 1 : -1) * d.dim(a, b);
      }
  return chi;
}

}  // namespace mdiag
