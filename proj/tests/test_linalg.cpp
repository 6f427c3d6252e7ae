#include <mdiag/chain_complex.hpp>
#include <mdiag/matrix.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace mdiag;

namespace {

Matrix<Rational> mat(std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  Matrix<Rational> m(r, c);
  int i = 0;
  for (auto& row : rows) {
    int j = 0;
    for (int x : row) m(i, j++) = Rational(x);
    ++i;
  }
  return m;
}

Matrix<Rational> random_matrix(std::mt19937& rng, int r, int c, int denom_bound = 5) {
  Matrix<Rational> m(r, c);
  std::uniform_int_distribution<int> num(-6, 6), den(1, denom_bound);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rat(num(rng), den(rng));
  return m;
}

}  // namespace

TEST(Rational, ParseAndFormat) {
  EXPECT_EQ(parse_rational("3/4"), rat(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), rat(-3, 4));
  EXPECT_EQ(parse_rational("17"), rat(17));
  EXPECT_EQ(to_string(rat(5, 10)), "1/2");
  EXPECT_THROW(parse_rational("1/0"), value_error);
  EXPECT_THROW(parse_rational("0.5"), value_error);
  EXPECT_THROW(parse_rational(""), value_error);
}

TEST(Fp, Arithmetic) {
  Fp a(3, 5), b(4, 5);
  EXPECT_EQ(a + b, Fp(2, 5));
  EXPECT_EQ(a * b, Fp(2, 5));
  EXPECT_EQ(a / b, Fp(3, 5) * Fp(4, 5).inverse());
  EXPECT_EQ(Fp(4, 5).inverse() * Fp(4, 5), Fp(1, 5));
  EXPECT_EQ(a - a, Fp(0));
  // literals bind to the modulus of the other operand
  EXPECT_EQ(a + Fp(0), a);
  EXPECT_EQ(a * Fp(1), a);
  EXPECT_THROW(Fp(1, 5) + Fp(1, 7), value_error);
  EXPECT_THROW(fp_from_rational(rat(1, 5), 5), value_error);
}

TEST(FieldSpec, Parse) {
  EXPECT_EQ(FieldSpec::parse("Q").str(), "Q");
  EXPECT_EQ(FieldSpec::parse("Fp:7").str(), "Fp:7");
  EXPECT_THROW(FieldSpec::parse("Fp:6"), value_error);
  EXPECT_THROW(FieldSpec::parse("R"), value_error);
}

TEST(Matrix, EmptyShapes) {
  Matrix<Rational> zero_by_three(0, 3);
  EXPECT_EQ(rank(zero_by_three), 0);
  EXPECT_EQ(kernel_basis(zero_by_three).cols(), 3);
  Matrix<Rational> empty(0, 0);
  EXPECT_TRUE(is_invertible(empty));  // zero spaces count as isomorphic
  EXPECT_EQ(determinant(empty), Rational(1));
}

TEST(Matrix, RankExamples) {
  EXPECT_EQ(rank(mat({{1, 2}, {2, 4}})), 1);
  Matrix<Fp> m2(2, 2);
  m2(0, 0) = Fp(1, 2);
  m2(0, 1) = Fp(2, 2);
  m2(1, 0) = Fp(2, 2);
  m2(1, 1) = Fp(4, 2);
  EXPECT_EQ(rank(m2), 1);  // row-reduced by hand: [[1,0],[0,0]] over F_2
  Matrix<Fp> m3(2, 2);
  m3(0, 0) = Fp(1, 3);
  m3(0, 1) = Fp(2, 3);
  m3(1, 0) = Fp(2, 3);
  m3(1, 1) = Fp(4, 3);
  EXPECT_EQ(rank(m3), 1);
}

TEST(Matrix, BareissAgreesWithGauss) {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    int r = trial % 5, c = (trial / 5) % 5;
    Matrix<Rational> m = random_matrix(rng, r, c);
    EXPECT_EQ(bareiss_rank(m), rank_gauss(m));
  }
}

TEST(Matrix, RankTransposeAndKernel) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix<Rational> m = random_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 4);
    EXPECT_EQ(rank(m), rank(m.transposed()));
    Matrix<Rational> k = kernel_basis(m);
    EXPECT_EQ(k.cols() + rank(m), m.cols());
    EXPECT_TRUE((m * k).is_zero());
  }
}

TEST(Matrix, RankOverFpNeverExceedsRankOverQ) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> num(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    int r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
    Matrix<Rational> mq(r, c);
    Matrix<Fp> mp(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        int x = num(rng);
        mq(i, j) = Rational(x);
        mp(i, j) = Fp(x, 3);
      }
    EXPECT_GE(rank(mq), rank(mp));
  }
}

TEST(Matrix, SolveAndInverse) {
  Matrix<Rational> a = mat({{2, 1}, {1, 1}});
  auto ainv = inverse(a);
  ASSERT_TRUE(ainv.has_value());
  EXPECT_EQ(a * *ainv, Matrix<Rational>::identity(2));
  EXPECT_FALSE(inverse(mat({{1, 2}, {2, 4}})).has_value());
  auto x = solve(a, mat({{3}, {2}}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a * *x, mat({{3}, {2}}));
  EXPECT_FALSE(solve(mat({{1, 2}, {2, 4}}), mat({{1}, {0}})).has_value());
  EXPECT_THROW(compose(mat({{1, 2}}), mat({{1, 2}})), value_error);
}

TEST(Matrix, DeterminantSigns) {
  EXPECT_EQ(determinant(mat({{0, 1}, {1, 0}})), Rational(-1));
  EXPECT_EQ(determinant(mat({{2, 0}, {0, 3}})), Rational(6));
  Matrix<Rational> q(2, 2);
  q(0, 0) = rat(1, 2);
  q(0, 1) = rat(1, 3);
  q(1, 0) = rat(1, 5);
  q(1, 1) = rat(1, 7);
  EXPECT_EQ(determinant(q), rat(1, 14) - rat(1, 15));
}

TEST(ChainComplex, CohomologyExamples) {
  ChainComplex<Rational> iso{0, {1, 1}, {Matrix<Rational>::identity(1)}};
  EXPECT_TRUE(iso.defects().empty());
  auto h = iso.cohomology_dims();
  EXPECT_EQ(h[0], 0);
  EXPECT_EQ(h[1], 0);

  ChainComplex<Rational> zero{0, {1, 1}, {Matrix<Rational>(1, 1)}};
  h = zero.cohomology_dims();
  EXPECT_EQ(h[0], 1);
  EXPECT_EQ(h[1], 1);

  // k -> k^2 of rank 1 (the fan cochain complex of the line)
  Matrix<Rational> d(2, 1);
  d(0, 0) = Rational(-1);
  d(1, 0) = Rational(1);
  ChainComplex<Rational> fan{0, {1, 2}, {d}};
  h = fan.cohomology_dims();
  EXPECT_EQ(h[0], 0);
  EXPECT_EQ(h[1], 1);
}

TEST(ChainComplex, ReportsD2Defects) {
  ChainComplex<Rational> bad{0, {1, 1, 1},
                             {Matrix<Rational>::identity(1), Matrix<Rational>::identity(1)}};
  auto defects = bad.defects();
  ASSERT_EQ(defects.size(), 1u);
  EXPECT_EQ(defects[0], 0);
}

TEST(ChainComplex, EulerCharacteristic) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    // random two-step complex d1*d0 = 0 via d1 = projection onto coker
    Matrix<Rational> d0 = random_matrix(rng, 3, 2);
    Matrix<Rational> d1 = kernel_basis(d0.transposed()).transposed();
    ChainComplex<Rational> c{-1, {2, 3, d1.rows()}, {d0, d1}};
    ASSERT_TRUE(c.defects().empty());
    EXPECT_EQ(euler_characteristic(c.cohomology_dims()), c.euler_characteristic_terms());
  }
}

TEST(ChainComplex, InducedCohomologyMap) {
  // identity chain map induces identity on cohomology
  Matrix<Rational> d(2, 1);
  d(0, 0) = Rational(-1);
  d(1, 0) = Rational(1);
  ChainComplex<Rational> fan{0, {1, 2}, {d}};
  ChainMap<Rational> id{0, {Matrix<Rational>::identity(1), Matrix<Rational>::identity(2)}};
  ASSERT_TRUE(commutes_with_differentials(fan, fan, id));
  auto h1 = induced_cohomology_map(fan, fan, id, 1);
  ASSERT_TRUE(h1.has_value());
  EXPECT_TRUE(is_invertible(*h1));
  EXPECT_EQ(h1->rows(), 1);
}
