#include <gtest/gtest.h>

#include <random>

#include "spherik/functional.hpp"
#include "spherik/integration.hpp"
#include "support.hpp"

namespace spherik {
namespace {

using testing::load_model;

PLFunction pl(std::initializer_list<std::pair<Rational, Vector>> pieces) {
  PLFunction f;
  for (const auto& [c, v] : pieces) f.pieces.push_back({c, v});
  return f;
}

// Rank one, one root with κ(α, χ + q) = q and κ(α, ϖ) = 1, Δ = [0, 1].
SphericalData single_root_segment() {
  SphericalData d;
  d.ambient_dim = 1;
  d.gram = Matrix::from_rows({Vector{Rational(1, 2)}});
  d.positive_roots = {make_vector({2})};
  d.lattice_basis = Matrix::from_columns({make_vector({1})});
  d.chi = make_vector({0});
  d.polytope = {{make_vector({1}), 1}, {make_vector({-1}), 0}};
  d.valuation_cone = PolyhedralCone(1, {}, {make_vector({1})});
  return d;
}

// A1 × A1 with both roots active and unit κ(α, ϖ), Δ = [0, 1]².
SphericalData two_root_square() {
  SphericalData d;
  d.ambient_dim = 2;
  d.gram = Matrix::from_rows({Vector{Rational(1, 2), 0}, Vector{0, Rational(1, 2)}});
  d.positive_roots = {make_vector({2, 0}), make_vector({0, 2})};
  d.lattice_basis = Matrix::identity(2);
  d.chi = make_vector({0, 0});
  d.polytope = {{make_vector({1, 0}), 1}, {make_vector({-1, 0}), 0},
                {make_vector({0, 1}), 1}, {make_vector({0, -1}), 0}};
  d.valuation_cone = PolyhedralCone::whole_space(2);
  return d;
}

// A1 × A2 in simple-root coordinates, rank 2.
SphericalData a1_a2_model() {
  const RootSystem rs = product({root_system("A1"), root_system("A2")});
  SphericalData d;
  d.ambient_dim = 3;
  d.gram = rs.gram;
  d.positive_roots = rs.positive_roots;
  d.lattice_basis = Matrix::from_columns({make_vector({1, 0, 1}), make_vector({0, 1, 1})});
  d.chi = *solve(rs.gram, make_vector({10, 10, 12}));
  const Matrix et = d.lattice_basis.transpose();
  for (const auto& [w, c] : std::vector<std::pair<Vector, Rational>>{
           {make_vector({1, 0}), 1}, {make_vector({-1, 0}), 2}, {make_vector({0, 1}), 1},
           {make_vector({0, -1}), 1}, {make_vector({1, 1}), Rational(3, 2)}}) {
    const Vector u = *solve(et, w);
    d.polytope.push_back({u, c + dot(u, *d.chi)});
  }
  d.valuation_cone = PolyhedralCone(2, {make_vector({-1, 0}), make_vector({0, -1})});
  return d;
}

// ---------------------------------------------------------------------------

TEST(WeightPolynomials, Toric) {
  const auto [P, Q] = weight_polynomials(load_model("p2_anticanonical"));
  EXPECT_EQ(P, Polynomial::constant(2, 1));
  EXPECT_TRUE(Q.is_zero());
}

TEST(WeightPolynomials, SingleRoot) {
  const auto [P, Q] = weight_polynomials(normalize(single_root_segment()));
  EXPECT_EQ(P, Polynomial::variable(1, 0));
  EXPECT_EQ(Q, Polynomial::constant(1, 1));
}

TEST(WeightPolynomials, TwoRoots) {
  const auto [P, Q] = weight_polynomials(normalize(two_root_square()));
  const Polynomial x = Polynomial::variable(2, 0), y = Polynomial::variable(2, 1);
  EXPECT_EQ(P, x * y);
  EXPECT_EQ(Q, x + y);
}

TEST(WeightPolynomials, NonnegativeOnPolytope) {
  std::mt19937_64 rng(61);
  for (int i = 0; i < 30; ++i) {
    const NormalizedModel m = normalize(testing::random_spherical_data(rng));
    const auto [P, Q] = weight_polynomials(m);
    for (const auto& q : m.polytope.vertices()) {
      EXPECT_GE(P.evaluate(q), 0);
      EXPECT_GE(Q.evaluate(q), 0);
    }
  }
}

TEST(MeanConstant, UnitSquare) { EXPECT_EQ(functional_data(load_model("p1xp1_11")).a, 4); }

TEST(MeanConstant, P2) { EXPECT_EQ(functional_data(load_model("p2_anticanonical")).a, 2); }

TEST(MeanConstant, Segment) { EXPECT_EQ(functional_data(load_model("segment_p1")).a, 1); }

TEST(MeanConstant, RecordedIntegrals) {
  const FunctionalData fd = functional_data(load_model("p2_anticanonical"));
  EXPECT_EQ(fd.vol_P, Rational(9, 2));
  EXPECT_EQ(fd.boundary_P, 9);
  EXPECT_EQ(fd.int_Q, 0);
}

// ---------------------------------------------------------------------------

TEST(Barycenter, P2) {
  const NormalizedModel m = load_model("p2_anticanonical");
  EXPECT_EQ(weighted_barycenter(m, functional_data(m).P), make_vector({0, 0}));
}

TEST(Barycenter, F1Anticanonical) {
  const NormalizedModel m = load_model("f1_toric_anticanonical");
  const Vector b = weighted_barycenter(m, functional_data(m).P);
  // Polygon centroid from the shoelace moments.
  const testing::Polygon poly = testing::polygon_of(m);
  Rational twice = 0;
  Vector moment = zero_vector(2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vector& p = poly[i];
    const Vector& q = poly[(i + 1) % poly.size()];
    const Rational w = p[0] * q[1] - p[1] * q[0];
    twice += w;
    moment = moment + w * (p + q);
  }
  EXPECT_EQ(b, Rational(1, 3) / twice * moment);
  EXPECT_EQ(b[0], b[1]);
  EXPECT_NE(b[0], 0);
  EXPECT_EQ(b, (Vector{Rational(1, 12), Rational(1, 12)}));
}

TEST(Barycenter, SegmentWithLinearWeight) {
  const NormalizedModel m = normalize(single_root_segment());
  EXPECT_EQ(weighted_barycenter(m, functional_data(m).P), (Vector{Rational(2, 3)}));
}

// ---------------------------------------------------------------------------

TEST(LinearityDomains, OnePiece) {
  EXPECT_EQ(linearity_domains(load_model("p1xp1_11"), pl({{0, make_vector({1, 1})}})).nld, 1u);
}

TEST(LinearityDomains, CreaseThroughSquare) {
  const auto dec =
      linearity_domains(load_model("p1xp1_11"), load_pl_function(testing::fixture("crease_half")));
  EXPECT_EQ(dec.nld, 2u);
  EXPECT_TRUE(dec.redundant.empty());
}

TEST(LinearityDomains, RedundantPiece) {
  const PLFunction f = pl({{0, make_vector({0, 0})}, {-2, make_vector({-1, 0})}});
  const auto dec = linearity_domains(load_model("p1xp1_11"), f);
  EXPECT_EQ(dec.nld, 1u);
  EXPECT_EQ(dec.redundant, std::vector<std::size_t>{1});
  EXPECT_EQ(canonicalize(load_model("p1xp1_11"), f).pieces.size(), 1u);
}

TEST(LinearityDomains, RegionsCoverPolytope) {
  std::mt19937_64 rng(67);
  for (int i = 0; i < 20; ++i) {
    const NormalizedModel m = normalize(testing::random_spherical_data(rng));
    const PLFunction f = testing::random_pl_function(rng, m, 3);
    const auto dec = linearity_domains(m, f);
    Rational total = 0;
    for (const auto& reg : dec.regions)
      if (reg.full_dimensional) total += reg.polytope.volume();
    EXPECT_EQ(total, m.polytope.volume());
    EXPECT_GE(dec.nld, 1u);
  }
}

TEST(LinearityDomains, MatchesGridClassification) {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 10; ++i) {
    const NormalizedModel m = normalize(testing::random_toric_surface(rng));
    const PLFunction f = testing::random_pl_function(rng, m, 2 + i % 3);
    EXPECT_EQ(linearity_domains(m, f).nld, testing::grid_nld(m, f, 64));
  }
}

TEST(SlopeCondition, RejectsSlopeOutsideCone) {
  const NormalizedModel m = load_model("p1xp1_diagonal_11");  // 𝒱 = -ℚ≥0
  try {
    check_slopes(m, pl({{0, make_vector({0})}, {0, make_vector({1})}}));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_EQ(e.field(), "pieces[1].v");
  }
  EXPECT_THROW(eval_L(m, functional_data(m), pl({{0, make_vector({1})}})), InputError);
}

// ---------------------------------------------------------------------------

TEST(EvalL, ConstantVanishes) {
  for (const char* name : {"p2_anticanonical", "f1_sl2_rank1", "p1xp1_diagonal_12", "segment_p1"}) {
    const NormalizedModel m = load_model(name);
    EXPECT_EQ(eval_L(m, functional_data(m), constant_function(m.rank, Rational(7, 3))), 0) << name;
  }
}

TEST(EvalL, SquareCrease) {
  const NormalizedModel m = load_model("p1xp1_11");
  EXPECT_EQ(eval_L(m, functional_data(m), load_pl_function(testing::fixture("crease_half"))),
            Rational(1, 4));
}

TEST(EvalL, SegmentOddSlope) {
  const NormalizedModel m = load_model("segment_p1");
  EXPECT_EQ(eval_L(m, functional_data(m), affine_function(0, make_vector({1}))), 0);
}

TEST(EvalL, AdditiveAndHomogeneous) {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 15; ++i) {
    const NormalizedModel m = normalize(testing::random_spherical_data(rng, 2, 4));
    const FunctionalData fd = functional_data(m);
    const PLFunction f = testing::random_pl_function(rng, m, 2);
    const PLFunction g = testing::random_pl_function(rng, m, 2);
    const Rational t = testing::frac(1 + i, 3);
    EXPECT_EQ(eval_L(m, fd, piecewise_sum(f, g)), eval_L(m, fd, f) + eval_L(m, fd, g));
    EXPECT_EQ(eval_L(m, fd, scale(f, t)), t * eval_L(m, fd, f));
  }
}

TEST(EvalL, RedundantPieceChangesNothing) {
  std::mt19937_64 rng(79);
  for (int i = 0; i < 15; ++i) {
    const NormalizedModel m = normalize(testing::random_spherical_data(rng, 2, 4));
    const FunctionalData fd = functional_data(m);
    PLFunction f = testing::random_pl_function(rng, m, 2);
    const Rational before = eval_L(m, fd, f);
    // A piece lying strictly below min f on Δ.
    const Vector v = testing::random_cone_element(rng, m.valuation_cone);
    Rational c = minimum_on_polytope(m, f) - 1;
    Rational worst = 0;
    for (const auto& q : m.polytope.vertices()) worst = std::max(worst, Rational(-dot(v, q)));
    f.pieces.push_back({c - worst, v});
    EXPECT_EQ(eval_L(m, fd, f), before);
    EXPECT_FALSE(linearity_domains(m, f).redundant.empty());
  }
}

TEST(EvalL, ToricOracle) {
  std::mt19937_64 rng(83);
  for (int i = 0; i < 15; ++i) {
    const NormalizedModel m = normalize(testing::random_toric_surface(rng));
    const FunctionalData fd = functional_data(m);
    EXPECT_EQ(fd.P, Polynomial::constant(2, 1));
    EXPECT_TRUE(fd.Q.is_zero());
    const PLFunction f = testing::random_pl_function(rng, m, 1 + i % 4);
    EXPECT_EQ(eval_L(m, fd, f), testing::toric_donaldson_functional(m, f));
  }
}

TEST(EvalL, GramRescalingInvariance) {
  std::mt19937_64 rng(89);
  const SphericalData d = a1_a2_model();
  const NormalizedModel m = normalize(d);
  const FunctionalData fd = functional_data(m);
  const NormalizedModel r = normalize(rescale_gram_factor(rescale_gram_factor(d, {0}, 5), {1, 2}, Rational(1, 3)));
  const FunctionalData fr = functional_data(r);
  EXPECT_EQ(fd.P, fr.P);
  EXPECT_EQ(fd.Q, fr.Q);
  EXPECT_EQ(fd.a, fr.a);
  for (int k = 0; k < 5; ++k) {
    const PLFunction f = testing::random_pl_function(rng, m, 3);
    EXPECT_EQ(eval_L(m, fd, f), eval_L(r, fr, f));
  }
  EXPECT_THROW(rescale_gram_factor(d, {1}, 2), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(ProductFunction, Zero) {
  EXPECT_TRUE(is_product_function(load_model("p1xp1_diagonal_11"), constant_function(1, 0)));
}

TEST(ProductFunction, ToricAffine) {
  EXPECT_TRUE(is_product_function(load_model("p1xp1_12"), affine_function(3, make_vector({2, -1}))));
  EXPECT_FALSE(is_product_function(load_model("p1xp1_12"), load_pl_function(testing::fixture("crease_half"))));
}

TEST(ProductFunction, HalfLineSlope) {
  EXPECT_FALSE(is_product_function(load_model("p1xp1_diagonal_11"), affine_function(0, make_vector({-1}))));
}

// ---------------------------------------------------------------------------

TEST(PLFunctionJson, RoundTripAndErrors) {
  const PLFunction f = pl({{Rational(-1, 2), Vector{Rational(1, 3), 0}}, {2, make_vector({0, -1})}});
  EXPECT_EQ(pl_function_from_json(to_json(f)), f);
  EXPECT_THROW(parse_pl_function(R"({"pieces": []})"), InputError);
  EXPECT_THROW(parse_pl_function(R"({"pieces": [{"c": "1/0", "v": ["0"]}]})"), InputError);
  EXPECT_THROW(parse_pl_function(R"({"pieces": [{"c": "1", "v": ["0"]}, {"c": "0", "v": ["0", "1"]}]})"),
               InputError);
}

TEST(PLFunctionArithmetic, PiecewiseSumAgreesPointwise) {
  const PLFunction f = pl({{0, make_vector({1, 0})}, {1, make_vector({0, 1})}});
  const PLFunction g = pl({{Rational(1, 2), make_vector({-1, -1})}});
  const PLFunction h = piecewise_sum(f, g);
  for (const auto& q : {make_vector({0, 0}), make_vector({3, -2}), Vector{Rational(1, 7), 5}}) {
    EXPECT_EQ(h(q), f(q) + g(q));
  }
}

}  // namespace
}  // namespace spherik
