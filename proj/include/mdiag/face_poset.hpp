#pragma once

// Faces of an arrangement as realizable sign vectors, enumerated by
// incremental hyperplane insertion. Each face keeps an exact rational
// witness point; the closure order, cover relations and dimensions are
// derived from the sign vectors. Face identity is the sign string
// (e.g. "+0-") in hyperplane list order.

#include <mdiag/arrangement.hpp>
#include <mdiag/feasibility.hpp>

#include <map>
#include <memory>
#include <string>

namespace mdiag {

using FaceId = int;

using Sign = std::int8_t;  // -1, 0, +1

inline char sign_char(Sign s) { return s < 0 ? '-' : (s > 0 ? '+' : '0'); }

inline Sign sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? Sign(-1) : Sign(0)); }

struct Face {
  std::vector<Sign> signs;
  int dim = 0;
  std::vector<Rational> witness;
  HpMask zero_mask = 0;  // hyperplanes containing the face
  std::string key;       // sign string, the canonical identity

  static std::string key_of(const std::vector<Sign>& signs) {
    std::string k(signs.size(), '0');
    for (size_t i = 0; i < signs.size(); ++i) k[i] = sign_char(signs[i]);
    return k;
  }
};

class FacePoset {
 public:
  // Splits every face of the partial arrangement by each new hyperplane in
  // turn; exact feasibility decides which of the three parts are nonempty
  // and returns their witnesses.
  static FacePoset enumerate(std::shared_ptr<const Arrangement> arr, size_t max_faces = 1 << 20) {
    FacePoset p;
    p.arr_ = std::move(arr);
    const Arrangement& a = *p.arr_;
    std::vector<Face> faces(1);
    faces[0].witness.assign(a.dim(), Rational(0));
    for (int h = 0; h < a.size(); ++h) {
      std::vector<Face> next;
      for (const Face& f : faces) {
        for (Face& g : split(a, f, h)) next.push_back(std::move(g));
        if (next.size() > max_faces)
          throw input_error("face budget exceeded (" + std::to_string(max_faces) + ")");
      }
      faces = std::move(next);
    }
    p.adopt(std::move(faces));
    return p;
  }

  const Arrangement& arrangement() const { return *arr_; }
  std::shared_ptr<const Arrangement> arrangement_ptr() const { return arr_; }
  int size() const { return static_cast<int>(faces_.size()); }
  const Face& face(FaceId f) const { return faces_[f]; }
  const std::string& key(FaceId f) const { return faces_[f].key; }
  int dim(FaceId f) const { return faces_[f].dim; }

  std::optional<FaceId> find(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? std::nullopt : std::optional<FaceId>(it->second);
  }

  // H^C: hyperplanes whose equation vanishes on the face.
  HpMask hyperplanes_containing(FaceId f) const { return faces_[f].zero_mask; }

  bool leq(FaceId a, FaceId b) const {
    const auto& sa = faces_[a].signs;
    const auto& sb = faces_[b].signs;
    for (size_t i = 0; i < sa.size(); ++i)
      if (sa[i] != 0 && sa[i] != sb[i]) return false;
    return true;
  }

  struct Cover {
    FaceId lower, upper;
  };
  const std::vector<Cover>& covers() const { return covers_; }
  const std::vector<int>& up_covers(FaceId f) const { return up_covers_[f]; }
  const std::vector<int>& down_covers(FaceId f) const { return down_covers_[f]; }

  std::optional<FaceId> classify(const std::vector<Rational>& x) const {
    std::vector<Sign> s(arr_->size());
    for (int h = 0; h < arr_->size(); ++h) s[h] = sign_of(arr_->eval(h, x));
    return find(Face::key_of(s));
  }

  // Tits product B o A: first nonzero sign wins, B first. Central only.
  FaceId tits(FaceId b, FaceId a) const {
    if (!arr_->central()) throw input_error("Tits product requires a central arrangement");
    std::vector<Sign> s(arr_->size());
    for (int h = 0; h < arr_->size(); ++h) {
      Sign sb = faces_[b].signs[h];
      s[h] = sb != 0 ? sb : faces_[a].signs[h];
    }
    auto f = find(Face::key_of(s));
    if (!f) throw std::logic_error("Tits product left the face poset: " + Face::key_of(s));
    return *f;
  }

  std::optional<FaceId> zero_face() const { return find(std::string(arr_->size(), '0')); }

  // Faces listed bottom-up would not be canonical; order is by sign string.
  std::vector<FaceId> all() const {
    std::vector<FaceId> v(faces_.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<FaceId>(i);
    return v;
  }

 private:
  static LinearSystem face_system(const Arrangement& a, const std::vector<Sign>& signs, int upto) {
    LinearSystem sys;
    sys.nvars = a.dim();
    for (int h = 0; h < upto; ++h) {
      LinearConstraint c;
      c.a = a.hyperplane(h).normal;
      c.b = a.hyperplane(h).offset;
      if (signs[h] == 0) {
        sys.equalities.push_back(std::move(c));
      } else {
        if (signs[h] < 0) {
          for (auto& x : c.a) x = -x;
          c.b = -c.b;
        }
        sys.stricts.push_back(std::move(c));
      }
    }
    return sys;
  }

  static std::vector<Face> split(const Arrangement& a, const Face& f, int h) {
    const int upto = h;  // f's signs cover hyperplanes 0..h-1
    auto extended = [&](Sign s, std::vector<Rational> wit) {
      Face g;
      g.signs = f.signs;
      g.signs.push_back(s);
      g.witness = std::move(wit);
      return g;
    };
    Rational at_witness = a.eval(h, f.witness);

    // Constant on the face iff the normal is spanned by the zero-set
    // normals (offsets included in affine mode).
    HpMask zmask = 0;
    for (int i = 0; i < upto; ++i)
      if (f.signs[i] == 0) zmask |= HpMask(1) << i;
    Matrix<Rational> zn = a.normal_matrix(zmask);
    Matrix<Rational> hz(1, a.dim());
    for (int j = 0; j < a.dim(); ++j) hz(0, j) = a.hyperplane(h).normal[j];
    bool constant = rank(vstack(zn, hz)) == rank(zn);
    if (constant) {
      std::vector<Face> out;
      out.push_back(extended(sign_of(at_witness), f.witness));
      return out;
    }

    // Nonconstant: the sign takes an open interval of values on the face.
    std::optional<std::vector<Rational>> wit_pos, wit_neg;
    Sign ws = sign_of(at_witness);
    if (ws > 0) wit_pos = f.witness;
    if (ws < 0) wit_neg = f.witness;
    for (Sign s : {Sign(1), Sign(-1)}) {
      auto& slot = s > 0 ? wit_pos : wit_neg;
      if (slot) continue;
      LinearSystem sys = face_system(a, f.signs, upto);
      LinearConstraint c;
      c.a = a.hyperplane(h).normal;
      c.b = a.hyperplane(h).offset;
      if (s < 0) {
        for (auto& x : c.a) x = -x;
        c.b = -c.b;
      }
      sys.stricts.push_back(std::move(c));
      slot = find_strict_solution(sys);
    }

    std::vector<Face> out;
    if (wit_neg) out.push_back(extended(-1, *wit_neg));
    // The zero part is nonempty iff both open sides are; a point on the
    // hyperplane comes from the segment between the two witnesses.
    if (wit_pos && wit_neg) {
      Rational gp = a.eval(h, *wit_pos), gn = a.eval(h, *wit_neg);
      Rational t = -gn / (gp - gn);
      std::vector<Rational> mid(a.dim());
      for (int j = 0; j < a.dim(); ++j)
        mid[j] = (*wit_neg)[j] + t * ((*wit_pos)[j] - (*wit_neg)[j]);
      out.push_back(extended(0, std::move(mid)));
    }
    if (wit_pos) out.push_back(extended(1, *wit_pos));
    return out;
  }

  static Matrix<Rational> vstack(const Matrix<Rational>& a, const Matrix<Rational>& b) {
    Matrix<Rational> m(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
  }

  void adopt(std::vector<Face> faces) {
    const Arrangement& a = *arr_;
    for (Face& f : faces) {
      f.key = Face::key_of(f.signs);
      f.zero_mask = 0;
      for (int h = 0; h < a.size(); ++h)
        if (f.signs[h] == 0) f.zero_mask |= HpMask(1) << h;
      f.dim = a.dim() - rank(a.normal_matrix(f.zero_mask));
      if (a.central()) clear_denominators(f.witness);
    }
    std::sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) { return x.key < y.key; });
    faces_ = std::move(faces);
    for (size_t i = 0; i < faces_.size(); ++i) by_key_[faces_[i].key] = static_cast<FaceId>(i);
    up_covers_.assign(faces_.size(), {});
    down_covers_.assign(faces_.size(), {});
    for (FaceId x = 0; x < size(); ++x)
      for (FaceId y = 0; y < size(); ++y) {
        if (faces_[y].dim != faces_[x].dim + 1 || !leq(x, y)) continue;
        int c = static_cast<int>(covers_.size());
        covers_.push_back({x, y});
        up_covers_[x].push_back(c);
        down_covers_[y].push_back(c);
      }
  }

  // Witnesses of central faces are scaled to integer coordinates; sign
  // vectors are invariant under positive scaling there.
  static void clear_denominators(std::vector<Rational>& w) {
    Integer l = 1;
    for (const Rational& x : w) l = lcm(l, x.get_den());
    for (Rational& x : w) x *= Rational(l);
  }

  std::shared_ptr<const Arrangement> arr_;
  std::vector<Face> faces_;
  std::map<std::string, FaceId> by_key_;
  std::vector<Cover> covers_;
  std::vector<std::vector<int>> up_covers_, down_covers_;
};

struct Flat {
  HpMask members;  // maximal set of hyperplanes containing the flat
  int codim = 0;
};

// All distinct nonempty intersections of hyperplanes, including R^n itself,
// each represented by its saturated member set.
inline std::vector<Flat> flats(const Arrangement& a) {
  auto saturate = [&a](HpMask m) -> std::optional<HpMask> {
    Matrix<Rational> base = a.central() ? a.normal_matrix(m) : a.augmented_matrix(m);
    int base_rank = rank(base);
    if (!a.central() && base_rank != rank(a.normal_matrix(m))) return std::nullopt;  // empty
    HpMask sat = 0;
    for (int h = 0; h < a.size(); ++h) {
      if (m >> h & 1) {
        sat |= HpMask(1) << h;
        continue;
      }
      HpMask ext = m | (HpMask(1) << h);
      Matrix<Rational> mx = a.central() ? a.normal_matrix(ext) : a.augmented_matrix(ext);
      if (rank(mx) == base_rank) sat |= HpMask(1) << h;
    }
    return sat;
  };
  std::vector<Flat> out;
  std::vector<HpMask> seen;
  std::vector<HpMask> frontier{*saturate(0)};
  seen.push_back(frontier[0]);
  while (!frontier.empty()) {
    std::vector<HpMask> next;
    for (HpMask m : frontier) {
      out.push_back({m, rank(a.normal_matrix(m))});
      for (int h = 0; h < a.size(); ++h) {
        if (m >> h & 1) continue;
        auto sat = saturate(m | (HpMask(1) << h));
        if (!sat) continue;
        if (std::find(seen.begin(), seen.end(), *sat) == seen.end()) {
          seen.push_back(*sat);
          next.push_back(*sat);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Flat& x, const Flat& y) {
    return x.codim != y.codim ? x.codim < y.codim : x.members < y.members;
  });
  return out;
}

}  // namespace mdiag
