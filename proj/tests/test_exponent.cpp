#include "exponent.hpp"

#include "doctest.h"
#include "errors.hpp"
#include "testutil.hpp"

using namespace pialg;
using namespace pialg::testutil;

namespace {

/// derivations of the associative block algebra by the embedded sl2:
/// (C, D) -> ([X, C], XD)
DerivationAction block_assoc_sl2_derivations(const FieldData* f) {
  Algebra a = block_assoc_algebra(f, 2);
  // X runs over e12, e21, e11 - e22 placed in the C block
  std::vector<Vec> xs = {
      vec_of(f, {0, 1, 0, 0, 0, 0, 0, 0}),
      vec_of(f, {0, 0, 1, 0, 0, 0, 0, 0}),
      vec_of(f, {1, 0, 0, -1, 0, 0, 0, 0}),
  };
  DerivationAction d;
  for (const Vec& x : xs)
    d.generators.push_back(a.left_mult(x) - a.right_mult(x));
  return d;
}

/// derivations of the block Lie algebra by the embedded sl2
DerivationAction block_lie_sl2_derivations(const FieldData* f) {
  Algebra l = block_lie_algebra(f, 2);
  DerivationAction d;
  for (std::size_t i = 0; i < 3; ++i) d.generators.push_back(l.ad(l.unit_vec(i)));
  return d;
}

}  // namespace

TEST_CASE("product-chain exponent of associative algebras") {
  const FieldData* f = field(1);

  SUBCASE("full matrix algebra") {
    Algebra a = matrix_algebra(f, 2);
    ExponentReport r = associative_exponent(a, TrivialStructure{});
    CHECK(r.d == 4);
    CHECK(r.witness == std::vector<int>{0});
    CHECK(r.certified);
  }

  SUBCASE("upper triangular: two blocks linked through the radical") {
    Algebra a = ut2_algebra(f);
    ExponentReport r = associative_exponent(a, TrivialStructure{});
    CHECK(r.d == 2);
    CHECK(r.witness.size() == 2);
    CHECK(r.witness_dims == std::vector<int>{1, 1});
  }

  SUBCASE("direct sum law: unlinked blocks do not add") {
    Algebra a = direct_sum(matrix_algebra(f, 2), matrix_algebra(f, 2));
    ExponentReport r = associative_exponent(a, TrivialStructure{});
    CHECK(r.d == 4);
    CHECK(r.witness.size() == 1);

    Algebra b = direct_sum(ut2_algebra(f), matrix_algebra(f, 2));
    ExponentReport rb = associative_exponent(b, TrivialStructure{});
    CHECK(rb.d == 4);
  }

  SUBCASE("nilpotent algebra has exponent zero") {
    // span{x} with x^2 = 0
    Algebra a = algebra_from(f, AlgebraKind::Associative, {"x"},
                             [&](std::size_t, std::size_t) {
                               return vec_of(f, {0});
                             });
    ExponentReport r = associative_exponent(a, TrivialStructure{});
    CHECK(r.d == 0);
    CHECK(r.witness.empty());
  }

  SUBCASE("block algebra: the radical does not count, the block does") {
    Algebra a = block_assoc_algebra(f, 2);
    ExponentReport r = associative_exponent(a, TrivialStructure{});
    CHECK(r.d == 4);
  }

  SUBCASE("graded matrix algebra") {
    Algebra a = matrix_algebra(f, 2);
    Structure s = m2_z2_grading(f);
    REQUIRE(validate_structure(a, s).ok);
    ExponentReport r = associative_exponent(a, s);
    CHECK(r.d == 4);
  }

  SUBCASE("block algebra under the embedded sl2 derivations") {
    Algebra a = block_assoc_algebra(f, 2);
    Structure s = block_assoc_sl2_derivations(f);
    REQUIRE(validate_structure(a, s).ok);
    ExponentReport r = associative_exponent(a, s);
    CHECK(r.d == 4);
  }

  SUBCASE("Lie input is rejected") {
    Algebra l = sl2_algebra(f);
    CHECK_THROWS_AS(associative_exponent(l, TrivialStructure{}),
                    ValidationError);
  }
}

TEST_CASE("chain exponent of Lie algebras") {
  const FieldData* f = field(1);

  SUBCASE("simple sl2 via the default chain") {
    Algebra l = sl2_algebra(f);
    LieExponentReport r = lie_exponent_from_chains(l, TrivialStructure{}, {});
    CHECK(r.report.d == 3);
    REQUIRE(r.best_chain == 0);
    CHECK(r.chains[0].verified);
    CHECK(r.chains[0].value == 3);
    CHECK(r.chains[0].depths == std::vector<int>{0});
  }

  SUBCASE("block Lie algebra: annihilator of L/R is R") {
    Algebra l = block_lie_algebra(f, 2);
    LieExponentReport r = lie_exponent_from_chains(l, TrivialStructure{}, {});
    CHECK(r.report.d == 3);
    REQUIRE(r.best_chain >= 0);
    const LieChain& c = r.chains[std::size_t(r.best_chain)];
    CHECK(c.complements.size() == 1);
    CHECK(c.complements[0].dim() == 3);
  }

  SUBCASE("block Lie algebra under the embedded sl2 derivations") {
    Algebra l = block_lie_algebra(f, 2);
    Structure s = block_lie_sl2_derivations(f);
    REQUIRE(validate_structure(l, s).ok);
    LieExponentReport r = lie_exponent_from_chains(l, s, {});
    CHECK(r.report.d == 3);
  }

  SUBCASE("one-dimensional abelian algebra") {
    Algebra l = abelian_lie(f, 1);
    LieChain c;
    c.upper = {l.full_space()};
    c.lower = {Subspace::zero(f, 1)};
    LieExponentReport r = lie_exponent_from_chains(l, TrivialStructure{}, {c});
    CHECK(r.report.d == 0);
    CHECK(r.chains[0].verified);
    CHECK(r.chains[0].value == 0);
  }

  SUBCASE("two copies of sl2: cross brackets kill the two-pair chain") {
    Algebra l = direct_sum(sl2_algebra(f), sl2_algebra(f));
    Subspace b1 = span_of_units(f, 6, {0, 1, 2});
    Subspace b2 = span_of_units(f, 6, {3, 4, 5});
    Subspace zero = Subspace::zero(f, 6);

    LieChain two;
    two.upper = {b1, b2};
    two.lower = {zero, zero};
    LieChain one;
    one.upper = {b1};
    one.lower = {zero};
    LieExponentReport r =
        lie_exponent_from_chains(l, TrivialStructure{}, {two, one});
    CHECK_FALSE(r.chains[0].verified);  // condition 2 fails
    CHECK(r.chains[1].verified);
    CHECK(r.chains[1].value == 3);
    CHECK_FALSE(r.chains[2].verified);  // default (L, 0): L is reducible
    CHECK(r.report.d == 3);
  }

  SUBCASE("solvable algebra via a derived-series chain") {
    Algebra l = solvable2_lie(f);
    LieChain c;
    c.upper = {Subspace::span(f, 2, {vec_of(f, {0, 1})})};
    c.lower = {Subspace::zero(f, 2)};
    LieExponentReport r = lie_exponent_from_chains(l, TrivialStructure{}, {c});
    CHECK(r.chains[0].verified);
    CHECK(r.report.d == 1);
  }

  SUBCASE("malformed chains are rejected") {
    Algebra l = sl2_algebra(f);
    LieChain bad;
    bad.upper = {Subspace::span(f, 3, {vec_of(f, {1, 0, 0})})};  // not an ideal
    bad.lower = {Subspace::zero(f, 3)};
    CHECK_THROWS_AS(lie_exponent_from_chains(l, TrivialStructure{}, {bad}),
                    ValidationError);
  }
}

TEST_CASE("invariant simplicity") {
  const FieldData* f = field(1);

  SUBCASE("matrix algebra is absolutely simple") {
    Algebra a = matrix_algebra(f, 2);
    SimplicityReport r = is_invariant_simple(a, TrivialStructure{});
    CHECK(r.simple);
    CHECK(r.absolutely);
  }

  SUBCASE("upper triangular is not, with certificate") {
    Algebra a = ut2_algebra(f);
    SimplicityReport r = is_invariant_simple(a, TrivialStructure{});
    CHECK_FALSE(r.simple);
    CHECK(r.conclusive);
    CHECK(r.certificate.dim() > 0);
    CHECK(r.certificate.dim() < 3);
  }

  SUBCASE("the swap action makes a square of blocks simple") {
    Algebra a = direct_sum(matrix_algebra(f, 2), matrix_algebra(f, 2));
    CHECK_FALSE(is_invariant_simple(a, TrivialStructure{}).simple);
    Matrix swap(f, 8, 8);
    for (int i = 0; i < 4; ++i) {
      swap.at(i, i + 4) = Scalar::one(f);
      swap.at(i + 4, i) = Scalar::one(f);
    }
    GroupAction act;
    act.generators = {GroupElem{swap, false, "swap"}};
    Structure s = act;
    REQUIRE(validate_structure(a, s).ok);
    CHECK(is_invariant_simple(a, s).simple);
  }

  SUBCASE("simple over the base field only") {
    // basis {1, r} with r^2 = -1
    Algebra a = algebra_from(f, AlgebraKind::Associative, {"1", "r"},
                             [&](std::size_t i, std::size_t j) {
                               if (i == 1 && j == 1) return vec_of(f, {-1, 0});
                               if (i != j) return vec_of(f, {0, 1});
                               return vec_of(f, {i == 0 ? 1 : -1, 0});
                             });
    REQUIRE(validate_algebra(a).ok);
    SimplicityReport r = is_invariant_simple(a, TrivialStructure{});
    CHECK(r.simple);
    CHECK_FALSE(r.absolutely);
  }

  SUBCASE("zero multiplication is never simple") {
    Algebra l = abelian_lie(f, 1);
    SimplicityReport r = is_invariant_simple(l, TrivialStructure{});
    CHECK_FALSE(r.simple);
  }
}

TEST_CASE("criterion report cross-validates without internal errors") {
  const FieldData* f = field(1);

  SUBCASE("matrix algebra, trivial") {
    Algebra a = matrix_algebra(f, 2);
    CriterionReport r = simplicity_criterion_report(a, TrivialStructure{});
    CHECK(r.exponent.d == 4);
    CHECK(r.simplicity.simple);
  }

  SUBCASE("upper triangular, trivial") {
    Algebra a = ut2_algebra(f);
    CriterionReport r = simplicity_criterion_report(a, TrivialStructure{});
    CHECK(r.exponent.d == 2);
    CHECK_FALSE(r.simplicity.simple);
  }

  SUBCASE("matrix algebra with the adjoint sl2 derivations") {
    Algebra a = matrix_algebra(f, 2);
    Structure s = m2_sl2_derivations(f);
    REQUIRE(validate_structure(a, s).ok);
    CriterionReport r = simplicity_criterion_report(a, s);
    CHECK(r.exponent.d == 4);
    CHECK(r.simplicity.simple);
    REQUIRE(r.trivial_exponent.has_value());
    CHECK(r.trivial_exponent->d == 4);
  }

  SUBCASE("graded matrix algebra") {
    Algebra a = matrix_algebra(f, 2);
    Structure s = m2_z2_grading(f);
    REQUIRE(validate_structure(a, s).ok);
    CriterionReport r = simplicity_criterion_report(a, s);
    CHECK(r.exponent.d == 4);
    CHECK(r.simplicity.simple);
  }

  SUBCASE("two blocks, with and without the swap") {
    Algebra a = direct_sum(matrix_algebra(f, 2), matrix_algebra(f, 2));
    CriterionReport r = simplicity_criterion_report(a, TrivialStructure{});
    CHECK(r.exponent.d == 4);
    CHECK_FALSE(r.simplicity.simple);

    // with the swap the algebra becomes invariant-simple and d = dim A
    Matrix swap(f, 8, 8);
    for (int i = 0; i < 4; ++i) {
      swap.at(i, i + 4) = Scalar::one(f);
      swap.at(i + 4, i) = Scalar::one(f);
    }
    GroupAction act;
    act.generators = {GroupElem{swap, false, "swap"}};
    Structure s = act;
    REQUIRE(validate_structure(a, s).ok);
    CriterionReport rs = simplicity_criterion_report(a, s);
    CHECK(rs.exponent.d == 8);
    CHECK(rs.simplicity.simple);
  }

  SUBCASE("block algebra with derivations matches its ordinary exponent") {
    Algebra a = block_assoc_algebra(f, 2);
    Structure s = block_assoc_sl2_derivations(f);
    REQUIRE(validate_structure(a, s).ok);
    CriterionReport r = simplicity_criterion_report(a, s);
    CHECK(r.exponent.d == 4);
    REQUIRE(r.trivial_exponent.has_value());
    CHECK(r.trivial_exponent->d == 4);
    CHECK_FALSE(r.simplicity.simple);
  }
}
