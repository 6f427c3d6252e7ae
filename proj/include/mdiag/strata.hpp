#pragma once

// Product cells iA+B of the complexified arrangement and the three
// stratifications of C^n. Strata are never materialized as point sets:
// every question is decided on stratum keys (the hyperplanes whose
// complexification contains a cell) and on sign vectors.

#include <mdiag/face_poset.hpp>

#include <functional>
#include <numeric>

namespace mdiag {

// A product cell iA+B: imaginary face A, real face B. In affine mode the
// imaginary face lives in the linearized poset.
struct ProductCell {
  FaceId imag = 0;
  FaceId real = 0;
  friend bool operator==(const ProductCell&, const ProductCell&) = default;
};

// Shared context for everything indexed by product cells: the real poset,
// the imaginary poset (same object when central), stratum keys and their
// complex codimensions.
class CellGeometry {
 public:
  static std::shared_ptr<const CellGeometry> build(std::shared_ptr<const Arrangement> arr,
                                                   size_t max_faces = 1 << 20) {
    auto g = std::make_shared<CellGeometry>();
    g->arr_ = arr;
    g->real_ = FacePoset::enumerate(arr, max_faces);
    if (!arr->central()) {
      auto lin = std::make_shared<Arrangement>(arr->linearization());
      g->imag_ = FacePoset::enumerate(lin, max_faces);
    }
    g->fill_keys();
    return g;
  }

  const Arrangement& arrangement() const { return *arr_; }
  bool central() const { return arr_->central(); }
  const FacePoset& real() const { return real_; }
  const FacePoset& imag() const { return arr_->central() ? real_ : *imag_; }

  // Key of the complex stratum through iA+B. Central: H^A n H^B. Affine:
  // hyperplanes H with B in H and A in the linear part of H. Both come out
  // saturated (closed under hyperplanes containing the intersection flat).
  HpMask stratum_key(ProductCell c) const { return keys_[cell_index(c)]; }

  int key_codim(HpMask key) const { return codim_.at(key); }

  size_t cell_index(ProductCell c) const {
    return static_cast<size_t>(c.imag) * real_.size() + c.real;
  }
  ProductCell cell_at(size_t idx) const {
    return ProductCell{static_cast<FaceId>(idx / real_.size()),
                       static_cast<FaceId>(idx % real_.size())};
  }
  size_t cell_count() const { return keys_.size(); }

  std::string cell_label(ProductCell c) const {
    return real_.key(c.real) + "|" + imag().key(c.imag);
  }

 private:
  void fill_keys() {
    const FacePoset& im = imag();
    keys_.resize(static_cast<size_t>(im.size()) * real_.size());
    for (FaceId a = 0; a < im.size(); ++a)
      for (FaceId b = 0; b < real_.size(); ++b) {
        HpMask key;
        if (arr_->central()) {
          key = im.hyperplanes_containing(a) & real_.hyperplanes_containing(b);
        } else {
          key = 0;
          for (int h = 0; h < arr_->size(); ++h) {
            bool real_in = real_.face(b).signs[h] == 0;
            bool imag_in = im.face(a).signs[arr_->linear_class(h)] == 0;
            if (real_in && imag_in) key |= HpMask(1) << h;
          }
        }
        keys_[cell_index({a, b})] = key;
        if (!codim_.count(key)) codim_[key] = rank(arr_->normal_matrix(key));
      }
  }

  std::shared_ptr<const Arrangement> arr_;
  FacePoset real_;
  std::optional<FacePoset> imag_;
  std::vector<HpMask> keys_;
  std::map<HpMask, int> codim_;
};

inline bool same_complex_stratum(const CellGeometry& g, ProductCell c1, ProductCell c2) {
  return g.stratum_key(c1) == g.stratum_key(c2);
}

// The swap involution (x+iy) -> (y+ix); preserves stratum keys. Only the
// central case has matching real and imaginary posets.
inline ProductCell tau(const CellGeometry& g, ProductCell c) {
  if (!g.central()) throw input_error("tau requires a central arrangement");
  return ProductCell{c.real, c.imag};
}

// Direct membership test for the intermediate stratification: with C <= D,
// the cell x+iC lies in the stratum [C,D] iff x's face agrees with D on
// every hyperplane containing C.
inline bool s1_membership_direct(const FacePoset& p, FaceId c, FaceId d, FaceId x_face) {
  if (!p.leq(c, d)) throw input_error("s1_membership_direct requires C <= D");
  HpMask hc = p.hyperplanes_containing(c);
  for (int h : mask_to_indices(hc))
    if (p.face(x_face).signs[h] != p.face(d).signs[h]) return false;
  return true;
}

// Partition of the real faces B at fixed imaginary face C into the strata
// [C,D] of the intermediate stratification: the equivalence closure of
// "B1 <= B2 and key(B1+iC) = key(B2+iC)". Cover pairs generate the closure
// because keys are monotone along chains. Classes are sorted by their
// smallest member key.
inline std::vector<std::vector<FaceId>> s1_classes(const CellGeometry& g, FaceId c_imag) {
  if (!g.central()) throw input_error("s1_classes requires a central arrangement");
  const FacePoset& p = g.real();
  std::vector<int> parent(p.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& cov : p.covers()) {
    if (g.stratum_key({c_imag, cov.lower}) == g.stratum_key({c_imag, cov.upper}))
      parent[find(cov.lower)] = find(cov.upper);
  }
  std::map<int, std::vector<FaceId>> groups;
  for (FaceId b = 0; b < p.size(); ++b) groups[find(b)].push_back(b);
  std::vector<std::vector<FaceId>> classes;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    classes.push_back(std::move(members));
  }
  std::sort(classes.begin(), classes.end(),
            [&p](const auto& x, const auto& y) { return p.key(x[0]) < p.key(y[0]); });
  return classes;
}

// Canonical label D >= C of the stratum [C,D] containing B+iC.
inline FaceId s1_class_label(const CellGeometry& g, FaceId c_imag, FaceId b_real) {
  return g.real().tits(c_imag, b_real);  // C o B
}

}  // namespace mdiag
