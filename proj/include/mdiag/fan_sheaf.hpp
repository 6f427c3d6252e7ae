#pragma once

// Cellular sheaves on the real face fan: stalks on faces, generalization
// maps on covers, and the signed complexes computing costalks and compactly
// supported cohomology. Square commutation on covers is the whole
// well-formedness criterion; path independence over longer chains follows.

#include <mdiag/chain_complex.hpp>
#include <mdiag/orientation.hpp>

namespace mdiag {

template <class K>
struct FanSheaf {
  std::vector<int> stalk_dims;        // per face
  std::vector<Matrix<K>> cover_maps;  // per cover index: stalk(lower) -> stalk(upper)
};

template <class K>
FanSheaf<K> constant_sheaf(const FacePoset& p, int dim = 1) {
  FanSheaf<K> g;
  g.stalk_dims.assign(p.size(), dim);
  g.cover_maps.assign(p.covers().size(), Matrix<K>::identity(dim));
  return g;
}

// j_{A*} k: stalk k on every face below A, identity generalization maps.
template <class K>
FanSheaf<K> interval_sheaf(const FacePoset& p, FaceId a) {
  FanSheaf<K> g;
  g.stalk_dims.assign(p.size(), 0);
  for (FaceId b = 0; b < p.size(); ++b)
    if (p.leq(b, a)) g.stalk_dims[b] = 1;
  g.cover_maps.resize(p.covers().size());
  for (size_t c = 0; c < p.covers().size(); ++c) {
    auto [lo, hi] = p.covers()[c];
    g.cover_maps[c] = (g.stalk_dims[lo] && g.stalk_dims[hi])
                          ? Matrix<K>::identity(1)
                          : Matrix<K>(g.stalk_dims[hi], g.stalk_dims[lo]);
  }
  return g;
}

template <class K>
FanSheaf<K> skyscraper_sheaf(const FacePoset& p, FaceId at, int dim = 1) {
  FanSheaf<K> g;
  g.stalk_dims.assign(p.size(), 0);
  g.stalk_dims[at] = dim;
  for (const auto& cov : p.covers())
    g.cover_maps.push_back(Matrix<K>(g.stalk_dims[cov.upper], g.stalk_dims[cov.lower]));
  return g;
}

template <class K>
bool fan_sheaf_squares_commute(const FacePoset& p, const FanSheaf<K>& g) {
  for (FaceId a1 = 0; a1 < p.size(); ++a1) {
    const auto& ups = p.up_covers(a1);
    for (size_t i = 0; i < ups.size(); ++i)
      for (size_t j = i + 1; j < ups.size(); ++j) {
        FaceId m1 = p.covers()[ups[i]].upper, m2 = p.covers()[ups[j]].upper;
        for (int c1 : p.up_covers(m1))
          for (int c2 : p.up_covers(m2)) {
            if (p.covers()[c1].upper != p.covers()[c2].upper) continue;
            if (!(g.cover_maps[c1] * g.cover_maps[ups[i]] ==
                  g.cover_maps[c2] * g.cover_maps[ups[j]]))
              return false;
          }
      }
  }
  return true;
}

namespace detail {

// Signed poset complex over the faces passing a filter: degree
// dim(A) - shift, differential psi * generalization map.
template <class K, class Filter>
ChainComplex<K> signed_face_complex(const FacePoset& p, const OrientationData& o,
                                    const FanSheaf<K>& g, Filter&& keep, int shift) {
  int max_dim = 0;
  for (FaceId f = 0; f < p.size(); ++f)
    if (keep(f)) max_dim = std::max(max_dim, p.dim(f));
  ChainComplex<K> c;
  c.min_degree = 0;
  c.dims.assign(max_dim - shift + 1, 0);
  std::vector<int> offset(p.size(), -1);
  for (FaceId f = 0; f < p.size(); ++f) {
    if (!keep(f)) continue;
    int deg = p.dim(f) - shift;
    offset[f] = c.dims[deg];
    c.dims[deg] += g.stalk_dims[f];
  }
  for (int deg = 0; deg + 1 <= max_dim - shift; ++deg)
    c.d.push_back(Matrix<K>(c.dims[deg + 1], c.dims[deg]));
  for (size_t ci = 0; ci < p.covers().size(); ++ci) {
    auto [lo, hi] = p.covers()[ci];
    if (!keep(lo) || !keep(hi)) continue;
    int deg = p.dim(lo) - shift;
    const Matrix<K>& m = g.cover_maps[ci];
    K s = o.psi[ci] > 0 ? K(1) : K(-1);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        c.d[deg](offset[hi] + i, offset[lo] + j) = s * m(i, j);
  }
  return c;
}

}  // namespace detail

// The !-restriction at a face D: the signed complex over the star of D,
// graded by dim(A) - dim(D).
template <class K>
ChainComplex<K> costalk_complex(const FacePoset& p, const OrientationData& o,
                                const FanSheaf<K>& g, FaceId d) {
  return detail::signed_face_complex(
      p, o, g, [&p, d](FaceId f) { return p.leq(d, f); }, p.dim(d));
}

template <class K>
std::map<int, int> compact_cohomology(const FacePoset& p, const OrientationData& o,
                                      const FanSheaf<K>& g) {
  ChainComplex<K> c =
      detail::signed_face_complex(p, o, g, [](FaceId) { return true; }, 0);
  if (!c.defects().empty()) throw std::logic_error("compactly supported complex fails d^2 = 0");
  return c.cohomology_dims();
}

}  // namespace mdiag
