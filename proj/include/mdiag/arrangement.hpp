#pragma once

// Arrangements of rational hyperplanes in R^n, central (all through the
// origin) or affine. An affine arrangement carries its linearization: the
// central arrangement of the hyperplanes' linear parts with proportional
// normals merged.

#include <mdiag/matrix.hpp>

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace mdiag {

class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Hyperplane {
  std::vector<Rational> normal;
  Rational offset;  // the hyperplane is { x : normal.x = offset }
};

enum class Mode { central, affine };

// Hyperplane subsets are bitmasks, which caps arrangements at 64 hyperplanes.
// Face counts blow up long before that bound matters.
using HpMask = std::uint64_t;

inline HpMask full_mask(int count) {
  return count == 64 ? ~HpMask(0) : (HpMask(1) << count) - 1;
}

inline std::vector<int> mask_to_indices(HpMask m) {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (m >> i & 1) out.push_back(i);
  return out;
}

class Arrangement {
 public:
  static Arrangement make(int dim, Mode mode, std::vector<Hyperplane> hps) {
    Arrangement a;
    a.dim_ = dim;
    a.mode_ = mode;
    if (dim <= 0) throw input_error("ambient dimension must be positive");
    if (hps.size() > 64) throw input_error("at most 64 hyperplanes are supported");
    for (size_t i = 0; i < hps.size(); ++i) {
      auto& h = hps[i];
      if (static_cast<int>(h.normal.size()) != dim)
        throw input_error("hyperplane " + std::to_string(i) + ": normal has wrong length");
      if (std::all_of(h.normal.begin(), h.normal.end(), [](const Rational& x) { return x == 0; }))
        throw input_error("hyperplane " + std::to_string(i) + ": zero normal");
      if (mode == Mode::central && h.offset != 0)
        throw input_error("hyperplane " + std::to_string(i) + ": nonzero offset in central mode");
    }
    // Reject exact duplicates; merge distinct equations of the same
    // hyperplane (proportional normal and matching offset), keeping the
    // first one and recording a warning.
    for (const auto& h : hps) {
      bool merged = false;
      for (size_t j = 0; j < a.hps_.size(); ++j) {
        const auto& g = a.hps_[j];
        auto c = proportionality(h.normal, g.normal);
        if (!c) continue;
        if (h.offset == *c * g.offset) {
          if (h.normal == g.normal && h.offset == g.offset)
            throw input_error("duplicate hyperplane (index " + std::to_string(j) + " listed twice)");
          a.warnings_.push_back("merged proportional equation into hyperplane " + std::to_string(j));
          merged = true;
          break;
        }
      }
      if (!merged) a.hps_.push_back(h);
    }
    if (mode == Mode::affine) a.build_linearization();
    return a;
  }

  int dim() const { return dim_; }
  Mode mode() const { return mode_; }
  bool central() const { return mode_ == Mode::central; }
  int size() const { return static_cast<int>(hps_.size()); }
  const Hyperplane& hyperplane(int i) const { return hps_[i]; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // f_H(x) - offset_H
  Rational eval(int h, const std::vector<Rational>& x) const {
    Rational v = -hps_[h].offset;
    for (int j = 0; j < dim_; ++j) v += hps_[h].normal[j] * x[j];
    return v;
  }

  Matrix<Rational> normal_matrix(HpMask mask) const {
    int count = 0;
    for (int i = 0; i < size(); ++i)
      if (mask >> i & 1) ++count;
    Matrix<Rational> m(count, dim_);
    int r = 0;
    for (int i = 0; i < size(); ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = 0; j < dim_; ++j) m(r, j) = hps_[i].normal[j];
      ++r;
    }
    return m;
  }

  // Rows [normal | offset]; rank comparisons against normal_matrix decide
  // whether an extra affine equation is implied.
  Matrix<Rational> augmented_matrix(HpMask mask) const {
    Matrix<Rational> nm = normal_matrix(mask);
    Matrix<Rational> m(nm.rows(), dim_ + 1);
    int r = 0;
    for (int i = 0; i < size(); ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = 0; j < dim_; ++j) m(r, j) = hps_[i].normal[j];
      m(r, dim_) = hps_[i].offset;
      ++r;
    }
    return m;
  }

  bool essential() const { return central() && rank(normal_matrix(full_mask(size()))) == dim_; }

  // Affine only: the merged central arrangement of linear parts, and the
  // index of each hyperplane's class in it.
  const Arrangement& linearization() const {
    if (!linearized_) throw input_error("linearization is only defined for affine arrangements");
    return *linearized_;
  }
  int linear_class(int h) const { return lin_of_[h]; }

 private:
  static std::optional<Rational> proportionality(const std::vector<Rational>& a,
                                                 const std::vector<Rational>& b) {
    Rational c = 0;
    for (size_t j = 0; j < a.size(); ++j) {
      if ((a[j] == 0) != (b[j] == 0)) return std::nullopt;
      if (b[j] != 0) {
        Rational r = a[j] / b[j];
        if (c == 0)
          c = r;
        else if (r != c)
          return std::nullopt;
      }
    }
    return c == 0 ? std::nullopt : std::optional<Rational>(c);
  }

  void build_linearization() {
    std::vector<Hyperplane> lin;
    lin_of_.assign(hps_.size(), -1);
    for (size_t i = 0; i < hps_.size(); ++i) {
      std::vector<Rational> nrm = hps_[i].normal;
      for (size_t j = 0; j < lin.size(); ++j) {
        if (proportionality(nrm, lin[j].normal)) {
          lin_of_[i] = static_cast<int>(j);
          break;
        }
      }
      if (lin_of_[i] < 0) {
        lin_of_[i] = static_cast<int>(lin.size());
        lin.push_back(Hyperplane{canonical_direction(nrm), Rational(0)});
      }
    }
    linearized_ = std::make_shared<Arrangement>(make(dim_, Mode::central, std::move(lin)));
  }

  // Scale so the first nonzero coefficient is +1; keys of the linearized
  // poset must not depend on input order or scaling.
  static std::vector<Rational> canonical_direction(std::vector<Rational> v) {
    for (const Rational& x : v)
      if (x != 0) {
        Rational lead = x;
        for (Rational& y : v) y /= lead;
        break;
      }
    return v;
  }

  int dim_ = 0;
  Mode mode_ = Mode::central;
  std::vector<Hyperplane> hps_;
  std::vector<int> lin_of_;
  std::shared_ptr<Arrangement> linearized_;
  std::vector<std::string> warnings_;
};

}  // namespace mdiag
