#pragma once

// The central data structure: vector spaces E_{A,B} indexed by pairs of
// faces, maps dprime covariant in the real index and dsecond contravariant
// in the imaginary index, stored on cover relations only. Well-formedness
// is commutation of all elementary squares; the diagram axioms additionally
// require the maps along same-stratum covers to be isomorphisms. Validation
// is total: every failed square and every failed isomorphism is reported.

#include <mdiag/parallel.hpp>
#include <mdiag/strata.hpp>

namespace mdiag {

// Which cover maps the axioms force to be isomorphisms. Central mode
// decides by the Tits product and cross-checks against stratum-key
// equality (the two conditions must agree); affine mode has no Tits
// product and uses keys directly.
struct IsoTables {
  std::vector<char> dprime_required;   // imag x realCover
  std::vector<char> dsecond_required;  // imagCover x real
  bool conditions_agree = true;

  static IsoTables build(const CellGeometry& g) {
    IsoTables t;
    const FacePoset& re = g.real();
    const FacePoset& im = g.imag();
    t.dprime_required.assign(static_cast<size_t>(im.size()) * re.covers().size(), 0);
    t.dsecond_required.assign(static_cast<size_t>(im.covers().size()) * re.size(), 0);
    for (FaceId a = 0; a < im.size(); ++a)
      for (size_t cb = 0; cb < re.covers().size(); ++cb) {
        auto [b1, b2] = re.covers()[cb];
        bool key_eq = g.stratum_key({a, b1}) == g.stratum_key({a, b2});
        bool required = key_eq;
        if (g.central()) {
          bool tits_eq = re.tits(a, b1) == re.tits(a, b2);  // A o B1 = A o B2
          if (tits_eq != key_eq) t.conditions_agree = false;
          required = tits_eq;
        }
        t.dprime_required[a * re.covers().size() + cb] = required;
      }
    for (size_t ca = 0; ca < im.covers().size(); ++ca)
      for (FaceId b = 0; b < re.size(); ++b) {
        auto [a1, a2] = im.covers()[ca];
        bool key_eq = g.stratum_key({a1, b}) == g.stratum_key({a2, b});
        bool required = key_eq;
        if (g.central()) {
          bool tits_eq = re.tits(b, a1) == re.tits(b, a2);  // B o A1 = B o A2
          if (tits_eq != key_eq) t.conditions_agree = false;
          required = tits_eq;
        }
        t.dsecond_required[ca * re.size() + b] = required;
      }
    return t;
  }
};

template <class K>
class MatrixDiagram {
 public:
  std::shared_ptr<const CellGeometry> geo;
  FieldSpec field;
  // dsecond normally maps E_{A2,B} -> E_{A1,B} for A1 < A2; data following
  // the covariant display can be loaded with this flag set, in which case
  // only validation is available (the Cousin machinery needs the
  // contravariant orientation).
  bool dsecond_covariant = false;

  static MatrixDiagram zeros(std::shared_ptr<const CellGeometry> g, FieldSpec f,
                             std::vector<int> dims) {
    MatrixDiagram d;
    d.geo = std::move(g);
    d.field = f;
    d.dims_ = std::move(dims);
    if (d.dims_.size() != static_cast<size_t>(d.ni()) * d.nr())
      throw input_error("dimension table has wrong size");
    d.reset_maps();
    return d;
  }

  static MatrixDiagram constant(std::shared_ptr<const CellGeometry> g, FieldSpec f, int dim = 1) {
    auto geo = g.get();
    MatrixDiagram d = zeros(std::move(g), f,
                            std::vector<int>(static_cast<size_t>(geo->imag().size()) *
                                                 geo->real().size(),
                                             dim));
    for (auto& m : d.dprime_) m = Matrix<K>::identity(dim);
    for (auto& m : d.dsecond_) m = Matrix<K>::identity(dim);
    return d;
  }

  static MatrixDiagram skyscraper(std::shared_ptr<const CellGeometry> g, FieldSpec f) {
    auto z_imag = g->imag().zero_face();
    auto z_real = g->real().zero_face();
    if (!z_imag || !z_real) throw input_error("skyscraper needs the zero face");
    auto geo = g.get();
    std::vector<int> dims(static_cast<size_t>(geo->imag().size()) * geo->real().size(), 0);
    MatrixDiagram d = zeros(std::move(g), f, dims);
    d.set_dim(*z_imag, *z_real, 1);
    return d;
  }

  int ni() const { return geo->imag().size(); }
  int nr() const { return geo->real().size(); }

  int dim(FaceId a, FaceId b) const { return dims_[static_cast<size_t>(a) * nr() + b]; }
  void set_dim(FaceId a, FaceId b, int v) {
    dims_[static_cast<size_t>(a) * nr() + b] = v;
    reset_maps();
  }
  const std::vector<int>& dims() const { return dims_; }
  void set_dims(std::vector<int> dims) {
    dims_ = std::move(dims);
    reset_maps();
  }

  const Matrix<K>& dprime(FaceId a, size_t cover_b) const {
    return dprime_[static_cast<size_t>(a) * geo->real().covers().size() + cover_b];
  }
  Matrix<K>& dprime(FaceId a, size_t cover_b) {
    return dprime_[static_cast<size_t>(a) * geo->real().covers().size() + cover_b];
  }
  const Matrix<K>& dsecond(size_t cover_a, FaceId b) const {
    return dsecond_[cover_a * nr() + b];
  }
  Matrix<K>& dsecond(size_t cover_a, FaceId b) { return dsecond_[cover_a * nr() + b]; }

  std::pair<int, int> dprime_shape(FaceId a, size_t cb) const {
    auto [b1, b2] = geo->real().covers()[cb];
    return {dim(a, b2), dim(a, b1)};
  }
  std::pair<int, int> dsecond_shape(size_t ca, FaceId b) const {
    auto [a1, a2] = geo->imag().covers()[ca];
    if (dsecond_covariant) return {dim(a2, b), dim(a1, b)};
    return {dim(a1, b), dim(a2, b)};
  }

  void reset_maps() {
    const auto& rc = geo->real().covers();
    const auto& ic = geo->imag().covers();
    dprime_.assign(static_cast<size_t>(ni()) * rc.size(), {});
    dsecond_.assign(ic.size() * static_cast<size_t>(nr()), {});
    for (FaceId a = 0; a < ni(); ++a)
      for (size_t cb = 0; cb < rc.size(); ++cb) {
        auto [r, c] = dprime_shape(a, cb);
        dprime(a, cb) = Matrix<K>(r, c);
      }
    for (size_t ca = 0; ca < ic.size(); ++ca)
      for (FaceId b = 0; b < nr(); ++b) {
        auto [r, c] = dsecond_shape(ca, b);
        dsecond(ca, b) = Matrix<K>(r, c);
      }
  }

  // Composite along a canonical cover chain from b1 up to b2 at fixed a.
  Matrix<K> dprime_composite(FaceId a, FaceId b1, FaceId b2) const {
    const FacePoset& p = geo->real();
    if (!p.leq(b1, b2)) throw input_error("dprime composite needs B1 <= B2");
    Matrix<K> acc = Matrix<K>::identity(dim(a, b1));
    FaceId cur = b1;
    while (cur != b2) {
      int step = -1;
      for (int c : p.up_covers(cur))
        if (p.leq(p.covers()[c].upper, b2)) {
          step = c;
          break;
        }
      if (step < 0) throw std::logic_error("no cover chain found");
      acc = dprime(a, step) * acc;
      cur = p.covers()[step].upper;
    }
    return acc;
  }

  // Composite E_{A2,B} -> E_{A1,B} for A1 <= A2 (contravariant direction).
  Matrix<K> dsecond_composite(FaceId a1, FaceId a2, FaceId b) const {
    if (dsecond_covariant) throw input_error("composites need the contravariant convention");
    const FacePoset& p = geo->imag();
    if (!p.leq(a1, a2)) throw input_error("dsecond composite needs A1 <= A2");
    Matrix<K> acc = Matrix<K>::identity(dim(a2, b));
    FaceId cur = a2;
    while (cur != a1) {
      int step = -1;
      for (int c : p.down_covers(cur))
        if (p.leq(a1, p.covers()[c].lower)) {
          step = c;
          break;
        }
      if (step < 0) throw std::logic_error("no cover chain found");
      acc = dsecond(step, b) * acc;
      cur = p.covers()[step].lower;
    }
    return acc;
  }

 private:
  std::vector<int> dims_;
  std::vector<Matrix<K>> dprime_;
  std::vector<Matrix<K>> dsecond_;
};

struct SquareFailure {
  std::string kind;  // "dprime_square" | "dsecond_square" | "mixed_square"
  std::string a1, a2, b1, b2, via1, via2;
  auto tie() const { return std::tie(kind, a1, a2, b1, b2, via1, via2); }
  friend bool operator<(const SquareFailure& x, const SquareFailure& y) { return x.tie() < y.tie(); }
  friend bool operator==(const SquareFailure& x, const SquareFailure& y) { return x.tie() == y.tie(); }
};

struct IsoFailure {
  std::string axiom;  // "iso_dprime" | "iso_dsecond"
  std::string fixed;  // the face held constant
  std::string from, to;
  std::string witness;  // the common Tits witness (central) or key (affine)
  std::string reason;   // "not_square" | "singular"
  auto tie() const { return std::tie(axiom, fixed, from, to, witness, reason); }
  friend bool operator<(const IsoFailure& x, const IsoFailure& y) { return x.tie() < y.tie(); }
  friend bool operator==(const IsoFailure& x, const IsoFailure& y) { return x.tie() == y.tie(); }
};

struct ValidationReport {
  std::vector<std::string> shape_errors;
  std::vector<SquareFailure> square_failures;
  std::vector<IsoFailure> iso_failures;
  bool iso_conditions_agree = true;

  bool passes() const {
    return shape_errors.empty() && square_failures.empty() && iso_failures.empty();
  }
};

namespace detail {

inline std::string mask_string(HpMask m) {
  std::string s = "{";
  bool first = true;
  for (int h : mask_to_indices(m)) {
    if (!first) s += ",";
    s += std::to_string(h);
    first = false;
  }
  return s + "}";
}

}  // namespace detail

template <class K>
ValidationReport validate(const MatrixDiagram<K>& d, int jobs = 1) {
  const CellGeometry& g = *d.geo;
  const FacePoset& re = g.real();
  const FacePoset& im = g.imag();
  const auto& rcov = re.covers();
  const auto& icov = im.covers();
  ValidationReport rep;

  for (FaceId a = 0; a < im.size(); ++a)
    for (size_t cb = 0; cb < rcov.size(); ++cb) {
      auto [r, c] = d.dprime_shape(a, cb);
      const Matrix<K>& m = d.dprime(a, cb);
      if (m.rows() != r || m.cols() != c)
        rep.shape_errors.push_back("dprime at imag " + im.key(a) + ", cover " +
                                   re.key(rcov[cb].lower) + "->" + re.key(rcov[cb].upper));
    }
  for (size_t ca = 0; ca < icov.size(); ++ca)
    for (FaceId b = 0; b < re.size(); ++b) {
      auto [r, c] = d.dsecond_shape(ca, b);
      const Matrix<K>& m = d.dsecond(ca, b);
      if (m.rows() != r || m.cols() != c)
        rep.shape_errors.push_back("dsecond at real " + re.key(b) + ", cover " +
                                   im.key(icov[ca].lower) + "->" + im.key(icov[ca].upper));
    }
  std::sort(rep.shape_errors.begin(), rep.shape_errors.end());
  if (!rep.shape_errors.empty()) return rep;  // axiom checks would be meaningless

  // Elementary squares. Slot-indexed parallel sweep keeps reports stable.
  std::vector<std::vector<SquareFailure>> sq(im.size());
  parallel_for(im.size(), jobs, [&](size_t ai) {
    FaceId a = static_cast<FaceId>(ai);
    auto& out = sq[ai];
    // two dprime steps around every length-2 interval of the real poset
    for (FaceId b = 0; b < re.size(); ++b) {
      const auto& ups = re.up_covers(b);
      for (size_t i = 0; i < ups.size(); ++i)
        for (size_t j = i + 1; j < ups.size(); ++j) {
          FaceId m1 = rcov[ups[i]].upper, m2 = rcov[ups[j]].upper;
          for (int c1 : re.up_covers(m1))
            for (int c2 : re.up_covers(m2)) {
              if (rcov[c1].upper != rcov[c2].upper) continue;
              if (!(d.dprime(a, c1) * d.dprime(a, ups[i]) ==
                    d.dprime(a, c2) * d.dprime(a, ups[j])))
                out.push_back({"dprime_square", im.key(a), "", re.key(b),
                               re.key(rcov[c1].upper), re.key(m1), re.key(m2)});
            }
        }
    }
    // mixed squares: one dprime step against one dsecond step
    for (size_t ca = 0; ca < icov.size(); ++ca) {
      auto [a1, a2] = icov[ca];
      if (a != a1) continue;  // handle each imaginary cover once, at its lower face
      for (size_t cb = 0; cb < rcov.size(); ++cb) {
        auto [b1, b2] = rcov[cb];
        bool ok;
        if (!d.dsecond_covariant)
          ok = d.dprime(a1, cb) * d.dsecond(ca, b1) == d.dsecond(ca, b2) * d.dprime(a2, cb);
        else
          ok = d.dsecond(ca, b2) * d.dprime(a1, cb) == d.dprime(a2, cb) * d.dsecond(ca, b1);
        if (!ok)
          out.push_back({"mixed_square", im.key(a1), im.key(a2), re.key(b1), re.key(b2), "", ""});
      }
    }
  });
  for (auto& v : sq)
    for (auto& f : v) rep.square_failures.push_back(std::move(f));
  // two dsecond steps around every length-2 interval of the imaginary poset
  for (FaceId b = 0; b < re.size(); ++b) {
    for (FaceId a = 0; a < im.size(); ++a) {
      const auto& ups = im.up_covers(a);
      for (size_t i = 0; i < ups.size(); ++i)
        for (size_t j = i + 1; j < ups.size(); ++j) {
          FaceId m1 = icov[ups[i]].upper, m2 = icov[ups[j]].upper;
          for (int c1 : im.up_covers(m1))
            for (int c2 : im.up_covers(m2)) {
              if (icov[c1].upper != icov[c2].upper) continue;
              bool ok;
              if (!d.dsecond_covariant)
                ok = d.dsecond(ups[i], b) * d.dsecond(c1, b) ==
                     d.dsecond(ups[j], b) * d.dsecond(c2, b);
              else
                ok = d.dsecond(c1, b) * d.dsecond(ups[i], b) ==
                     d.dsecond(c2, b) * d.dsecond(ups[j], b);
              if (!ok)
                rep.square_failures.push_back({"dsecond_square", im.key(a),
                                               im.key(icov[c1].upper), re.key(b), "",
                                               im.key(m1), im.key(m2)});
            }
        }
    }
  }

  IsoTables tables = IsoTables::build(g);
  rep.iso_conditions_agree = tables.conditions_agree;
  for (FaceId a = 0; a < im.size(); ++a)
    for (size_t cb = 0; cb < rcov.size(); ++cb) {
      if (!tables.dprime_required[a * rcov.size() + cb]) continue;
      const Matrix<K>& m = d.dprime(a, cb);
      if (is_invertible(m)) continue;
      auto [b1, b2] = rcov[cb];
      std::string wit = g.central() ? re.key(re.tits(a, b1))
                                    : detail::mask_string(g.stratum_key({a, b1}));
      rep.iso_failures.push_back({"iso_dprime", im.key(a), re.key(b1), re.key(b2), wit,
                                  m.rows() == m.cols() ? "singular" : "not_square"});
    }
  for (size_t ca = 0; ca < icov.size(); ++ca)
    for (FaceId b = 0; b < re.size(); ++b) {
      if (!tables.dsecond_required[ca * re.size() + b]) continue;
      const Matrix<K>& m = d.dsecond(ca, b);
      if (is_invertible(m)) continue;
      auto [a1, a2] = icov[ca];
      std::string wit = g.central() ? re.key(re.tits(b, a1))
                                    : detail::mask_string(g.stratum_key({a1, b}));
      rep.iso_failures.push_back({"iso_dsecond", re.key(b), im.key(a1), im.key(a2), wit,
                                  m.rows() == m.cols() ? "singular" : "not_square"});
    }

  std::sort(rep.square_failures.begin(), rep.square_failures.end());
  std::sort(rep.iso_failures.begin(), rep.iso_failures.end());
  return rep;
}

template <class K>
MatrixDiagram<K> dualize(const MatrixDiagram<K>& d) {
  const CellGeometry& g = *d.geo;
  if (!g.central()) throw input_error("duality is only defined for central arrangements");
  if (d.dsecond_covariant) throw input_error("duality needs the contravariant convention");
  const FacePoset& p = g.real();
  std::vector<int> dims(d.dims().size());
  for (FaceId a = 0; a < p.size(); ++a)
    for (FaceId b = 0; b < p.size(); ++b)
      dims[static_cast<size_t>(a) * p.size() + b] = d.dim(b, a);
  MatrixDiagram<K> e = MatrixDiagram<K>::zeros(d.geo, d.field, std::move(dims));
  for (FaceId a = 0; a < p.size(); ++a)
    for (size_t cb = 0; cb < p.covers().size(); ++cb)
      e.dprime(a, cb) = d.dsecond(cb, a).transposed();
  for (size_t ca = 0; ca < p.covers().size(); ++ca)
    for (FaceId b = 0; b < p.size(); ++b)
      e.dsecond(ca, b) = d.dprime(b, ca).transposed();
  return e;
}

template <class K>
struct DiagramMorphism {
  const MatrixDiagram<K>* src = nullptr;
  const MatrixDiagram<K>* tgt = nullptr;
  std::vector<Matrix<K>> comp;  // imag x real, shape tgt.dim x src.dim

  const Matrix<K>& at(FaceId a, FaceId b) const {
    return comp[static_cast<size_t>(a) * src->nr() + b];
  }
  Matrix<K>& at(FaceId a, FaceId b) { return comp[static_cast<size_t>(a) * src->nr() + b]; }

  static DiagramMorphism zero(const MatrixDiagram<K>& s, const MatrixDiagram<K>& t) {
    DiagramMorphism m;
    m.src = &s;
    m.tgt = &t;
    m.comp.resize(s.dims().size());
    for (FaceId a = 0; a < s.ni(); ++a)
      for (FaceId b = 0; b < s.nr(); ++b) m.at(a, b) = Matrix<K>(t.dim(a, b), s.dim(a, b));
    return m;
  }
  static DiagramMorphism identity(const MatrixDiagram<K>& s) {
    DiagramMorphism m = zero(s, s);
    for (FaceId a = 0; a < s.ni(); ++a)
      for (FaceId b = 0; b < s.nr(); ++b) m.at(a, b) = Matrix<K>::identity(s.dim(a, b));
    return m;
  }
};

template <class K>
bool morphism_commutes(const DiagramMorphism<K>& m) {
  const MatrixDiagram<K>& s = *m.src;
  const MatrixDiagram<K>& t = *m.tgt;
  const FacePoset& re = s.geo->real();
  const FacePoset& im = s.geo->imag();
  for (FaceId a = 0; a < s.ni(); ++a)
    for (size_t cb = 0; cb < re.covers().size(); ++cb) {
      auto [b1, b2] = re.covers()[cb];
      if (!(t.dprime(a, cb) * m.at(a, b1) == m.at(a, b2) * s.dprime(a, cb))) return false;
    }
  for (size_t ca = 0; ca < im.covers().size(); ++ca) {
    auto [a1, a2] = im.covers()[ca];
    for (FaceId b = 0; b < s.nr(); ++b)
      if (!(t.dsecond(ca, b) * m.at(a2, b) == m.at(a1, b) * s.dsecond(ca, b))) return false;
  }
  return true;
}

// Pointwise kernel with its induced maps; the solves are exact and must
// succeed for a commuting morphism between well-formed diagrams.
template <class K>
MatrixDiagram<K> kernel(const DiagramMorphism<K>& m) {
  const MatrixDiagram<K>& s = *m.src;
  const FacePoset& re = s.geo->real();
  const FacePoset& im = s.geo->imag();
  std::vector<Matrix<K>> inc(s.dims().size());
  std::vector<int> dims(s.dims().size());
  for (FaceId a = 0; a < s.ni(); ++a)
    for (FaceId b = 0; b < s.nr(); ++b) {
      inc[static_cast<size_t>(a) * s.nr() + b] = kernel_basis(m.at(a, b));
      dims[static_cast<size_t>(a) * s.nr() + b] =
          inc[static_cast<size_t>(a) * s.nr() + b].cols();
    }
  MatrixDiagram<K> k = MatrixDiagram<K>::zeros(s.geo, s.field, std::move(dims));
  auto solve_into = [&](const Matrix<K>& target_inc, const Matrix<K>& mapped) {
    auto x = solve(target_inc, mapped);
    if (!x) throw std::logic_error("kernel maps are not well defined");
    return *x;
  };
  for (FaceId a = 0; a < s.ni(); ++a)
    for (size_t cb = 0; cb < re.covers().size(); ++cb) {
      auto [b1, b2] = re.covers()[cb];
      k.dprime(a, cb) = solve_into(inc[static_cast<size_t>(a) * s.nr() + b2],
                                   s.dprime(a, cb) * inc[static_cast<size_t>(a) * s.nr() + b1]);
    }
  for (size_t ca = 0; ca < im.covers().size(); ++ca) {
    auto [a1, a2] = im.covers()[ca];
    for (FaceId b = 0; b < s.nr(); ++b)
      k.dsecond(ca, b) = solve_into(inc[static_cast<size_t>(a1) * s.nr() + b],
                                    s.dsecond(ca, b) * inc[static_cast<size_t>(a2) * s.nr() + b]);
  }
  return k;
}

// Pointwise cokernel: split off a complement of the image in each space and
// transport the maps through projection and section.
template <class K>
MatrixDiagram<K> cokernel(const DiagramMorphism<K>& m) {
  const MatrixDiagram<K>& t = *m.tgt;
  const FacePoset& re = t.geo->real();
  const FacePoset& im = t.geo->imag();
  size_t n = t.dims().size();
  std::vector<Matrix<K>> proj(n), section(n);
  std::vector<int> dims(n);
  for (FaceId a = 0; a < t.ni(); ++a)
    for (FaceId b = 0; b < t.nr(); ++b) {
      size_t idx = static_cast<size_t>(a) * t.nr() + b;
      const Matrix<K>& image = m.at(a, b);
      int f = t.dim(a, b);
      Matrix<K> ext = hstack(image, Matrix<K>::identity(f));
      Matrix<K> work = ext;
      std::vector<int> pivots = rref_inplace(work);
      std::vector<int> im_cols, std_cols;
      for (int p : pivots)
        (p < image.cols() ? im_cols : std_cols).push_back(p);
      Matrix<K> basis(f, f);
      int col = 0;
      for (int p : im_cols) {
        for (int i = 0; i < f; ++i) basis(i, col) = image(i, p);
        ++col;
      }
      for (int p : std_cols) {
        for (int i = 0; i < f; ++i) basis(i, col) = ext(i, p);
        ++col;
      }
      auto binv = inverse(basis);
      if (!binv) throw std::logic_error("cokernel basis is singular");
      int cdim = static_cast<int>(std_cols.size());
      proj[idx] = Matrix<K>(cdim, f);
      for (int i = 0; i < cdim; ++i)
        for (int j = 0; j < f; ++j) proj[idx](i, j) = (*binv)(f - cdim + i, j);
      section[idx] = Matrix<K>(f, cdim);
      for (int i = 0; i < f; ++i)
        for (int j = 0; j < cdim; ++j) section[idx](i, j) = basis(i, f - cdim + j);
      dims[idx] = cdim;
    }
  MatrixDiagram<K> c = MatrixDiagram<K>::zeros(t.geo, t.field, std::move(dims));
  auto induced = [&](const Matrix<K>& p2, const Matrix<K>& map, const Matrix<K>& s1,
                     const Matrix<K>& p1, const Matrix<K>& full_map) {
    Matrix<K> cand = p2 * map * s1;
    if (!(cand * p1 == p2 * full_map)) throw std::logic_error("cokernel maps are not well defined");
    return cand;
  };
  for (FaceId a = 0; a < t.ni(); ++a)
    for (size_t cb = 0; cb < re.covers().size(); ++cb) {
      auto [b1, b2] = re.covers()[cb];
      size_t i1 = static_cast<size_t>(a) * t.nr() + b1, i2 = static_cast<size_t>(a) * t.nr() + b2;
      c.dprime(a, cb) = induced(proj[i2], t.dprime(a, cb), section[i1], proj[i1], t.dprime(a, cb));
    }
  for (size_t ca = 0; ca < im.covers().size(); ++ca) {
    auto [a1, a2] = im.covers()[ca];
    for (FaceId b = 0; b < t.nr(); ++b) {
      size_t i1 = static_cast<size_t>(a1) * t.nr() + b, i2 = static_cast<size_t>(a2) * t.nr() + b;
      c.dsecond(ca, b) =
          induced(proj[i1], t.dsecond(ca, b), section[i2], proj[i2], t.dsecond(ca, b));
    }
  }
  return c;
}

template <class K>
MatrixDiagram<K> direct_sum(const MatrixDiagram<K>& x, const MatrixDiagram<K>& y) {
  if (x.geo != y.geo) throw input_error("direct sum needs a shared geometry");
  std::vector<int> dims(x.dims().size());
  for (size_t i = 0; i < dims.size(); ++i) dims[i] = x.dims()[i] + y.dims()[i];
  MatrixDiagram<K> s = MatrixDiagram<K>::zeros(x.geo, x.field, std::move(dims));
  auto block = [](Matrix<K>& out, const Matrix<K>& a, const Matrix<K>& b) {
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  };
  for (FaceId a = 0; a < s.ni(); ++a)
    for (size_t cb = 0; cb < s.geo->real().covers().size(); ++cb)
      block(s.dprime(a, cb), x.dprime(a, cb), y.dprime(a, cb));
  for (size_t ca = 0; ca < s.geo->imag().covers().size(); ++ca)
    for (FaceId b = 0; b < s.nr(); ++b)
      block(s.dsecond(ca, b), x.dsecond(ca, b), y.dsecond(ca, b));
  return s;
}

// The two single-indexed slices through the zero face: the column B ->
// E_{0,B} with its covariant maps and the row A -> E_{A,0} with its
// contravariant maps, plus the dimension law dim E_{A,B} = dim E_{0,BoA}.
// No composition linking the two through the layer monodromy is asserted.
template <class K>
struct SingleIndexedSlices {
  std::vector<int> column_dims;        // per real face
  std::vector<Matrix<K>> column_maps;  // per real cover
  std::vector<int> row_dims;           // per imag face
  std::vector<Matrix<K>> row_maps;     // per imag cover
  std::vector<std::string> dimension_law_violations;
};

template <class K>
SingleIndexedSlices<K> extract_single_indexed(const MatrixDiagram<K>& d) {
  const CellGeometry& g = *d.geo;
  if (!g.central() || !g.arrangement().essential())
    throw input_error("single-indexed extraction needs a central essential arrangement");
  const FacePoset& p = g.real();
  FaceId zero = *p.zero_face();
  SingleIndexedSlices<K> out;
  for (FaceId b = 0; b < p.size(); ++b) out.column_dims.push_back(d.dim(zero, b));
  for (size_t cb = 0; cb < p.covers().size(); ++cb) out.column_maps.push_back(d.dprime(zero, cb));
  for (FaceId a = 0; a < p.size(); ++a) out.row_dims.push_back(d.dim(a, zero));
  for (size_t ca = 0; ca < p.covers().size(); ++ca) out.row_maps.push_back(d.dsecond(ca, zero));
  for (FaceId a = 0; a < p.size(); ++a)
    for (FaceId b = 0; b < p.size(); ++b)
      if (d.dim(a, b) != d.dim(zero, p.tits(b, a)))
        out.dimension_law_violations.push_back("dim(" + p.key(a) + "," + p.key(b) + ") != dim(0," +
                                               p.key(p.tits(b, a)) + ")");
  return out;
}

}  // namespace mdiag
