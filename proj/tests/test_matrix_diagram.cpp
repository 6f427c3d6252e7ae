#include "support_diagrams.hpp"

#include <gtest/gtest.h>

using namespace mdiag;
using namespace mdiag::testing;

namespace {

const LineIndex& line_index() {
  static LineIndex li = LineIndex::make();
  return li;
}

}  // namespace

TEST(MatrixDiagram, ConstantValidates) {
  auto d = MatrixDiagram<Rational>::constant(line_index().geo, FieldSpec::rationals());
  ValidationReport r = validate(d);
  EXPECT_TRUE(r.passes());
  EXPECT_TRUE(r.iso_conditions_agree);
}

TEST(MatrixDiagram, SkyscraperValidates) {
  auto d = MatrixDiagram<Rational>::skyscraper(line_index().geo, FieldSpec::rationals());
  EXPECT_TRUE(validate(d).passes());  // rim isomorphisms are 0 -> 0
}

TEST(MatrixDiagram, MissingRimDimensionFailsIsoAxiom) {
  const LineIndex& li = line_index();
  const FacePoset& p = li.geo->real();
  std::vector<int> dims(9, 0);
  dims[static_cast<size_t>(li.plus) * p.size() + li.plus] = 1;  // dims(+,+)=1, dims(0,+)=0
  auto d = MatrixDiagram<Rational>::zeros(li.geo, FieldSpec::rationals(), dims);
  ValidationReport r = validate(d);
  // the report is total: the dsecond failure in column B=+ and the mirror
  // dprime failure in row A=+ are both listed
  ASSERT_EQ(r.iso_failures.size(), 2u);
  const IsoFailure* second = nullptr;
  for (auto& f : r.iso_failures)
    if (f.axiom == "iso_dsecond") second = &f;
  ASSERT_NE(second, nullptr);
  EXPECT_EQ(second->fixed, "+");    // column B=+
  EXPECT_EQ(second->witness, "+");  // + o 0 = + = + o +
  EXPECT_EQ(second->reason, "not_square");
}

TEST(MatrixDiagram, BrokenRimReportsIsoDprime) {
  auto d = broken_rim_diagram(line_index());
  ValidationReport r = validate(d);
  EXPECT_FALSE(r.passes());
  bool found = false;
  for (auto& f : r.iso_failures) found = found || (f.axiom == "iso_dprime" && f.fixed == "-");
  EXPECT_TRUE(found);
  // zeroing a rim map also breaks two mixed squares
  EXPECT_FALSE(r.square_failures.empty());
}

TEST(MatrixDiagram, ZeroExtensionValidates) {
  auto d = zero_extension_diagram(line_index());
  EXPECT_TRUE(validate(d).passes());
}

TEST(MatrixDiagram, MonodromyTwoValidates) {
  auto d = monodromy_two_diagram(line_index());
  EXPECT_TRUE(validate(d).passes());
}

TEST(MatrixDiagram, ValidationIsDeterministicAcrossJobs) {
  auto d = broken_rim_diagram(line_index());
  ValidationReport r1 = validate(d, 1);
  ValidationReport r4 = validate(d, 4);
  EXPECT_EQ(r1.square_failures, r4.square_failures);
  EXPECT_EQ(r1.iso_failures, r4.iso_failures);
}

TEST(MatrixDiagram, DualizeIsABitExactInvolution) {
  for (auto d : {MatrixDiagram<Rational>::constant(line_index().geo, FieldSpec::rationals()),
                 zero_extension_diagram(line_index()), monodromy_two_diagram(line_index())}) {
    MatrixDiagram<Rational> dd = dualize(dualize(d));
    EXPECT_EQ(dd.dims(), d.dims());
    for (FaceId a = 0; a < d.ni(); ++a)
      for (size_t cb = 0; cb < d.geo->real().covers().size(); ++cb)
        EXPECT_TRUE(dd.dprime(a, cb) == d.dprime(a, cb));
    for (size_t ca = 0; ca < d.geo->imag().covers().size(); ++ca)
      for (FaceId b = 0; b < d.nr(); ++b) EXPECT_TRUE(dd.dsecond(ca, b) == d.dsecond(ca, b));
  }
}

TEST(MatrixDiagram, DualizeSwapsIsoFailureFamilies) {
  auto d = broken_rim_diagram(line_index());
  ValidationReport r = validate(d);
  ValidationReport rd = validate(dualize(d));
  EXPECT_EQ(r.passes(), rd.passes());
  size_t prime_in_d = 0, second_in_dual = 0;
  for (auto& f : r.iso_failures) prime_in_d += f.axiom == "iso_dprime";
  for (auto& f : rd.iso_failures) second_in_dual += f.axiom == "iso_dsecond";
  EXPECT_EQ(prime_in_d, second_in_dual);
  EXPECT_EQ(r.iso_failures.size(), rd.iso_failures.size());
}

TEST(MatrixDiagram, DualizeRejectsAffine) {
  auto geo = CellGeometry::build(affine01());
  auto d = MatrixDiagram<Rational>::constant(geo, FieldSpec::rationals());
  EXPECT_THROW(dualize(d), input_error);
}

TEST(MatrixDiagram, ChainCompositesAlongSameStratumAreInvertible) {
  // extension of the cover-level axiom to arbitrary chains
  for (auto d : {MatrixDiagram<Rational>::constant(line_index().geo, FieldSpec::rationals()),
                 zero_extension_diagram(line_index()), monodromy_two_diagram(line_index()),
                 MatrixDiagram<Rational>::skyscraper(line_index().geo, FieldSpec::rationals())}) {
    const FacePoset& p = d.geo->real();
    for (FaceId a = 0; a < p.size(); ++a)
      for (FaceId b1 = 0; b1 < p.size(); ++b1)
        for (FaceId b2 = 0; b2 < p.size(); ++b2) {
          if (!p.leq(b1, b2)) continue;
          if (p.tits(a, b1) == p.tits(a, b2))
            EXPECT_TRUE(is_invertible(d.dprime_composite(a, b1, b2)));
          if (p.tits(b1, a) == p.tits(b2, a))
            EXPECT_TRUE(is_invertible(d.dsecond_composite(b1, b2, a)));
        }
  }
}

TEST(MatrixDiagram, HomSpacesBetweenCatalogEntries) {
  const LineIndex& li = line_index();
  auto constant = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto sky = MatrixDiagram<Rational>::skyscraper(li.geo, FieldSpec::rationals());
  auto jshriek = zero_extension_diagram(li);
  EXPECT_EQ(hom_basis(sky, constant).size(), 0u);
  EXPECT_EQ(hom_basis(constant, sky).size(), 0u);
  EXPECT_EQ(hom_basis(sky, jshriek).size(), 1u);   // the extension by zero has a simple sub
  EXPECT_EQ(hom_basis(jshriek, sky).size(), 0u);   // ... and no skyscraper quotient
  EXPECT_EQ(hom_basis(jshriek, constant).size(), 1u);
  for (auto& m : hom_basis(sky, jshriek)) EXPECT_TRUE(morphism_commutes(m));
}

TEST(MatrixDiagram, KernelAndCokernelBasics) {
  const LineIndex& li = line_index();
  auto constant = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto id = DiagramMorphism<Rational>::identity(constant);
  MatrixDiagram<Rational> k = kernel(id);
  for (int v : k.dims()) EXPECT_EQ(v, 0);
  auto z = DiagramMorphism<Rational>::zero(constant, constant);
  MatrixDiagram<Rational> kz = kernel(z);
  EXPECT_EQ(kz.dims(), constant.dims());
  EXPECT_TRUE(validate(kz).passes());
  MatrixDiagram<Rational> cz = cokernel(z);
  EXPECT_EQ(cz.dims(), constant.dims());
  EXPECT_TRUE(validate(cz).passes());
}

TEST(MatrixDiagram, CokernelOfSkyscraperInsideZeroExtension) {
  const LineIndex& li = line_index();
  auto sky = MatrixDiagram<Rational>::skyscraper(li.geo, FieldSpec::rationals());
  auto jshriek = zero_extension_diagram(li);
  auto incs = hom_basis(sky, jshriek);
  ASSERT_EQ(incs.size(), 1u);
  MatrixDiagram<Rational> q = cokernel(incs[0]);
  // quotient has dims 1 everywhere, including the centre
  for (int v : q.dims()) EXPECT_EQ(v, 1);
  EXPECT_TRUE(validate(q).passes());
  MatrixDiagram<Rational> k = kernel(incs[0]);
  for (int v : k.dims()) EXPECT_EQ(v, 0);
}

TEST(MatrixDiagram, RankNullityAcrossMorphisms) {
  const LineIndex& li = line_index();
  auto jshriek = zero_extension_diagram(li);
  auto constant = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto ms = hom_basis(jshriek, constant);
  ASSERT_EQ(ms.size(), 1u);
  MatrixDiagram<Rational> k = kernel(ms[0]);
  EXPECT_TRUE(validate(k).passes());
  for (FaceId a = 0; a < jshriek.ni(); ++a)
    for (FaceId b = 0; b < jshriek.nr(); ++b)
      EXPECT_EQ(k.dim(a, b) + rank(ms[0].at(a, b)), jshriek.dim(a, b));
}

TEST(MatrixDiagram, DirectSumValidatesAndSplits) {
  const LineIndex& li = line_index();
  auto constant = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto sky = MatrixDiagram<Rational>::skyscraper(li.geo, FieldSpec::rationals());
  MatrixDiagram<Rational> s = direct_sum(constant, sky);
  EXPECT_TRUE(validate(s).passes());
  EXPECT_EQ(s.dim(*li.geo->real().find("0"), *li.geo->real().find("0")), 2);
  // unlike the extension by zero, the split sum has a skyscraper quotient
  EXPECT_EQ(hom_basis(s, sky).size(), 1u);
  EXPECT_EQ(hom_basis(sky, s).size(), 1u);
}

TEST(MatrixDiagram, SingleIndexedSlices) {
  const LineIndex& li = line_index();
  auto constant = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto s = extract_single_indexed(constant);
  EXPECT_EQ(s.column_dims, (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(s.row_dims, (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(s.dimension_law_violations.empty());

  // faces are ordered by sign string: "+", "-", "0"
  auto sky = MatrixDiagram<Rational>::skyscraper(li.geo, FieldSpec::rationals());
  auto ss = extract_single_indexed(sky);
  EXPECT_EQ(ss.column_dims, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(ss.row_dims, (std::vector<int>{0, 0, 1}));
  EXPECT_TRUE(ss.dimension_law_violations.empty());

  // dims(-,+) must equal dims(0, + o -) = dims(0, +)
  auto broken = MatrixDiagram<Rational>::constant(li.geo, FieldSpec::rationals());
  auto dims = broken.dims();
  dims[static_cast<size_t>(li.minus) * 3 + li.plus] = 5;
  broken.set_dims(dims);
  EXPECT_EQ(extract_single_indexed(broken).dimension_law_violations.size(), 1u);
}

TEST(MatrixDiagram, AffineIdentityValidates) {
  auto geo = CellGeometry::build(affine01());
  auto d = MatrixDiagram<Rational>::constant(geo, FieldSpec::rationals());
  EXPECT_TRUE(validate(d).passes());
}

TEST(MatrixDiagram, AffineTwoPointSkyscrapersAreIndependent) {
  // nonzero only over the stratum {x=0}: dims(0_lin, {0}) = 1, rest 0
  auto geo = CellGeometry::build(affine01());
  const FacePoset& re = geo->real();
  const FacePoset& im = geo->imag();
  std::vector<int> dims(static_cast<size_t>(im.size()) * re.size(), 0);
  dims[static_cast<size_t>(*im.find("0")) * re.size() + *re.find("0-")] = 1;
  auto d = MatrixDiagram<Rational>::zeros(geo, FieldSpec::rationals(), dims);
  EXPECT_TRUE(validate(d).passes());
}

TEST(MatrixDiagram, AffineBrokenRimFails) {
  auto geo = CellGeometry::build(affine01());
  auto d = MatrixDiagram<Rational>::constant(geo, FieldSpec::rationals());
  const FacePoset& re = geo->real();
  for (size_t cb = 0; cb < re.covers().size(); ++cb)
    if (re.covers()[cb].lower == *re.find("0-"))  // a required rim cover at imag = +
      d.dprime(*geo->imag().find("+"), cb) = Matrix<Rational>(1, 1);
  ValidationReport r = validate(d);
  EXPECT_FALSE(r.passes());
  bool has_iso = false;
  for (auto& f : r.iso_failures) has_iso = has_iso || f.axiom == "iso_dprime";
  EXPECT_TRUE(has_iso);
}

TEST(MatrixDiagram, CovariantConventionValidates) {
  // the same affine identity diagram with upward dsecond maps
  auto geo = CellGeometry::build(affine01());
  auto d = MatrixDiagram<Rational>::constant(geo, FieldSpec::rationals());
  d.dsecond_covariant = true;
  d.reset_maps();
  for (size_t ca = 0; ca < geo->imag().covers().size(); ++ca)
    for (FaceId b = 0; b < d.nr(); ++b) d.dsecond(ca, b) = Matrix<Rational>::identity(1);
  for (FaceId a = 0; a < d.ni(); ++a)
    for (size_t cb = 0; cb < geo->real().covers().size(); ++cb)
      d.dprime(a, cb) = Matrix<Rational>::identity(1);
  EXPECT_TRUE(validate(d).passes());
  EXPECT_THROW(dualize(d), input_error);
}

TEST(MatrixDiagram, FpDiagramsValidate) {
  auto d = MatrixDiagram<Fp>::constant(line_index().geo, FieldSpec::prime(5));
  EXPECT_TRUE(validate(d).passes());
  d.dprime(line_index().minus, line_index().cov_zero_plus) = Matrix<Fp>(1, 1);
  EXPECT_FALSE(validate(d).passes());
}
