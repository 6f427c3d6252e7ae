#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// must stay independent of the implementation paths they check: the grid
// classifier only evaluates signs of sample points, and the epsilon oracle
// evaluates the segment formula directly.

#include <mdiag/strata.hpp>

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace mdiag::testing {

inline std::shared_ptr<const Arrangement> make_central(int dim,
                                                       std::vector<std::vector<int>> normals) {
  std::vector<Hyperplane> hps;
  for (auto& n : normals) {
    Hyperplane h;
    for (int x : n) h.normal.push_back(Rational(x));
    h.offset = 0;
    hps.push_back(h);
  }
  return std::make_shared<Arrangement>(Arrangement::make(dim, Mode::central, std::move(hps)));
}

inline std::shared_ptr<const Arrangement> line_arrangement() {
  return make_central(1, {{1}});
}

inline std::shared_ptr<const Arrangement> boolean2() {
  return make_central(2, {{1, 0}, {0, 1}});
}

inline std::shared_ptr<const Arrangement> three_lines() {
  return make_central(2, {{1, 0}, {0, 1}, {1, -1}});
}

inline std::shared_ptr<const Arrangement> four_lines() {
  return make_central(2, {{1, 0}, {0, 1}, {1, -1}, {1, -2}});
}

inline std::shared_ptr<const Arrangement> boolean3() {
  return make_central(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

// Two points 0 and 1 on the line, as in the affine example.
inline std::shared_ptr<const Arrangement> affine01() {
  std::vector<Hyperplane> hps(2);
  hps[0].normal = {Rational(1)};
  hps[0].offset = 0;
  hps[1].normal = {Rational(1)};
  hps[1].offset = 1;
  return std::make_shared<Arrangement>(Arrangement::make(1, Mode::affine, std::move(hps)));
}

// Sign vectors reachable by classifying a fine grid of rational points.
// With grid lines through every intersection of test hyperplanes this finds
// every face of the small fixtures.
inline std::set<std::string> grid_sign_vectors(const Arrangement& a, int extent, int denom) {
  std::set<std::string> seen;
  std::vector<int> idx(a.dim(), -extent);
  std::vector<Rational> x(a.dim());
  while (true) {
    for (int j = 0; j < a.dim(); ++j) x[j] = rat(idx[j], denom);
    std::string key(a.size(), '0');
    for (int h = 0; h < a.size(); ++h) key[h] = sign_char(sign_of(a.eval(h, x)));
    seen.insert(key);
    int j = 0;
    for (; j < a.dim(); ++j) {
      if (++idx[j] <= extent) break;
      idx[j] = -extent;
    }
    if (j == a.dim()) break;
  }
  return seen;
}

// Tits product via the segment formula (1-eps) b + eps a, evaluated exactly.
inline std::optional<FaceId> tits_by_sampling(const FacePoset& p, FaceId b, FaceId a,
                                              const Rational& eps) {
  const Arrangement& arr = p.arrangement();
  std::vector<Rational> x(arr.dim());
  for (int j = 0; j < arr.dim(); ++j)
    x[j] = (Rational(1) - eps) * p.face(b).witness[j] + eps * p.face(a).witness[j];
  return p.classify(x);
}

inline std::vector<std::shared_ptr<const Arrangement>> central_fixtures() {
  return {line_arrangement(), boolean2(), three_lines(), boolean3()};
}

}  // namespace mdiag::testing
