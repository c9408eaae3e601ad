#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "fixtures_worked_example.hpp"
#include "kron/completion.hpp"
#include "kron/criteria.hpp"
#include "kron/errors.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"
#include "kron/pencil.hpp"
#include "test_util.hpp"

using namespace kron;

namespace {

template <field F>
Pencil<F> fixture_pencil(const F& fld, std::size_t rows, std::size_t cols,
                         const std::vector<fixtures::Entry>& a,
                         const std::vector<fixtures::Entry>& b) {
  return Pencil<F>(fixtures::materialize(fld, rows, cols, a),
                   fixtures::materialize(fld, rows, cols, b));
}

template <field F>
void check_worked_example_completion(const F& fld, std::uint64_t seed) {
  const Pencil<F> sub = fixture_pencil(fld, fixtures::sub_rows,
                                       fixtures::sub_cols, fixtures::sub_A,
                                       fixtures::sub_B);
  const Pencil<F> sup = fixture_pencil(fld, fixtures::sup_rows,
                                       fixtures::sup_cols, fixtures::sup_A,
                                       fixtures::sup_B);
  const auto witness = is_subpencil_cm(sub, sup);
  REQUIRE(witness.has_value());
  CHECK(witness->linking == PreinjInvariants(fixtures::link_mult));
  CHECK(witness->b_seq == std::vector<long long>{2, 1, 2, 1, 0, 0});
  CHECK(witness->alpha == 2);
  CHECK(witness->beta == 2);
  const CompletionResult<F> r = complete(sub, sup, seed);
  CHECK(r.linking.linking == PreinjInvariants(fixtures::link_mult));
  CHECK(r.A12.rows() == 8);
  CHECK(r.A12.cols() == 2);
  CHECK(r.A21.rows() == 2);
  CHECK(r.A21.cols() == 12);
  CHECK(r.A22.rows() == 2);
  CHECK(r.A22.cols() == 2);
  CHECK(verify_completion(sub, sup, r));
}

}  // namespace

TEST_CASE("worked example: frozen factorization identities hold") {
  const RationalField fld;
  const auto mat = [&](std::size_t rows, std::size_t cols,
                       const std::vector<fixtures::Entry>& e) {
    return fixtures::materialize(fld, rows, cols, e);
  };
  const auto f1 = mat(14, 12, fixtures::F1);
  const auto f2 = mat(8, 8, fixtures::F2);
  const auto g1 = mat(14, 14, fixtures::G1);
  const auto g2 = mat(8, 10, fixtures::G2);
  const auto c1 = mat(14, 14, fixtures::C1);
  const auto c2 = mat(12, 12, fixtures::C2);
  const auto d1 = mat(8, 8, fixtures::D1);
  const auto d2 = mat(10, 10, fixtures::D2);
  const auto cprime = mat(14, 14, fixtures::Cprime);

  // The vertex-2 composite factors through the tall normal form ...
  Matrix<RationalField> tall(fld, 14, 12);
  tall.paste(0, 0, Matrix<RationalField>::identity(fld, 12));
  CHECK(g1.invert() * f1 == c1 * tall * c2);
  // ... and the vertex-1 composite through the wide one.
  Matrix<RationalField> wide(fld, 8, 10);
  wide.paste(0, 0, Matrix<RationalField>::identity(fld, 8));
  CHECK(f2.invert() * g2 == d1 * wide * d2);
  CHECK(d1 == Matrix<RationalField>::identity(fld, 8));
  // The combined column transform is the padded factor product.
  CHECK(cprime == c1 * Matrix<RationalField>::diag_sum(
                           c2, Matrix<RationalField>::identity(fld, 2)));

  // Transforming the large pencil by (d2, cprime) assembles the small
  // pencil in the corner with the frozen completion blocks around it.
  const Pencil<RationalField> sup = fixture_pencil(
      fld, fixtures::sup_rows, fixtures::sup_cols, fixtures::sup_A,
      fixtures::sup_B);
  const CompletionResult<RationalField> frozen{
      mat(8, 2, fixtures::A12),  mat(8, 2, fixtures::B12),
      mat(2, 12, fixtures::A21), mat(2, 12, fixtures::B21),
      mat(2, 2, fixtures::A22),  mat(2, 2, fixtures::B22),
      d2,
      cprime,
      subfactor_check(PreinjInvariants(fixtures::sub_mult),
                      PreinjInvariants(fixtures::sup_mult))
          .value()};
  const Pencil<RationalField> sub = fixture_pencil(
      fld, fixtures::sub_rows, fixtures::sub_cols, fixtures::sub_A,
      fixtures::sub_B);
  CHECK(verify_completion(sub, sup, frozen));
}

TEST_CASE("worked example: constructed completion verifies over Q and GF(5)") {
  check_worked_example_completion(RationalField(), 0);
  check_worked_example_completion(RationalField(), 7);
  check_worked_example_completion(PrimeField(5), 0);
  check_worked_example_completion(PrimeField(5), 3);
}

TEST_CASE("completing a pencil inside itself is the trivial border") {
  const RationalField fld;
  for (const auto& mult : {std::vector<long long>{2, 1},
                           std::vector<long long>{0, 1, 1},
                           std::vector<long long>{3}}) {
    const PreinjInvariants inv(mult);
    const Pencil<RationalField> p = pencil_of_module(inv, fld);
    const CompletionResult<RationalField> r = complete(p, p, 11);
    CHECK(r.linking.linking == inv);
    CHECK(r.linking.alpha == 0);
    CHECK(r.linking.beta == 0);
    CHECK(r.A12.cols() == 0);
    CHECK(r.A21.rows() == 0);
    CHECK(verify_completion(p, p, r));
  }
}

TEST_CASE("degenerate corners: zero-row and zero-size subpencils") {
  const RationalField fld;
  // One zero column (0x1) inside the 1x2 pencil: border fills one row
  // and one column.
  const Pencil<RationalField> tiny =
      pencil_of_module(PreinjInvariants({1}), fld);
  const Pencil<RationalField> host =
      pencil_of_module(PreinjInvariants({0, 1}), fld);
  REQUIRE(tiny.rows() == 0);
  REQUIRE(tiny.cols() == 1);
  const auto r = complete(tiny, host, 0);
  CHECK(verify_completion(tiny, host, r));
  CHECK(r.A21.rows() == 1);
  CHECK(r.A21.cols() == 1);
  CHECK(r.A22.cols() == 1);
  // The empty 0x0 pencil sits inside anything.
  const Pencil<RationalField> empty(Matrix<RationalField>(fld, 0, 0),
                                    Matrix<RationalField>(fld, 0, 0));
  const auto r2 = complete(empty, host, 0);
  CHECK(verify_completion(empty, host, r2));
  CHECK(is_subpencil_cm(empty, empty).has_value());
  const auto r3 = complete(empty, empty, 0);
  CHECK(verify_completion(empty, empty, r3));
}

TEST_CASE("non-subpencil pairs are rejected with NotSubpencil") {
  const RationalField fld;
  // 2I2 against I3+I1: both 4x6, decision is negative.
  const Pencil<RationalField> sub =
      pencil_of_module(PreinjInvariants({0, 0, 2}), fld);
  const Pencil<RationalField> sup =
      pencil_of_module(PreinjInvariants({0, 1, 0, 1}), fld);
  CHECK_FALSE(is_subpencil_cm(sub, sup).has_value());
  CHECK_THROWS_AS(complete(sub, sup, 0), NotSubpencil);
  // A larger corner than the ambient pencil cannot fit.
  CHECK_FALSE(is_subpencil_cm(sup, pencil_of_module(PreinjInvariants({0, 1}),
                                                    fld))
                  .has_value());
}

TEST_CASE("verification rejects tampered completions") {
  const RationalField fld;
  const Pencil<RationalField> sub =
      pencil_of_module(PreinjInvariants({0, 1}), fld);
  const Pencil<RationalField> sup =
      pencil_of_module(PreinjInvariants({1, 0, 1}), fld);
  const auto good = complete(sub, sup, 0);
  CHECK(verify_completion(sub, sup, good));

  auto bad = good;
  bad.A22.set(0, 0, fld.add(bad.A22.at(0, 0), fld.one()));
  CHECK_FALSE(verify_completion(sub, sup, bad));

  auto bad_left = good;
  for (std::size_t j = 0; j < bad_left.left.cols(); ++j) {
    bad_left.left.set(0, j, fld.zero());
  }
  CHECK_FALSE(verify_completion(sub, sup, bad_left));

  auto bad_shape = good;
  bad_shape.A12 = Matrix<RationalField>(fld, 0, 0);
  CHECK_THROWS_AS(verify_completion(sub, sup, bad_shape), ShapeMismatch);
}

TEST_CASE("scrambled inputs complete and verify over Q and GF(5)") {
  const std::vector<std::pair<std::vector<long long>, std::vector<long long>>>
      pairs = {{{1, 1}, {0, 0, 1, 1}},
               {{0, 1}, {0, 0, 1}},
               {{0, 0, 1}, {0, 2}},
               {{2}, {0, 2}},
               {{1, 0, 1}, {0, 1, 0, 1}}};
  const RationalField fq;
  const PrimeField f5(5);
  for (const auto& [a, c] : pairs) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      {
        const auto sub = scramble(pencil_of_module(PreinjInvariants(a), fq),
                                  seed);
        const auto sup = scramble(pencil_of_module(PreinjInvariants(c), fq),
                                  seed + 100);
        REQUIRE(is_subpencil_cm(sub, sup).has_value());
        CHECK(verify_completion(sub, sup, complete(sub, sup, seed)));
      }
      {
        const auto sub = scramble(pencil_of_module(PreinjInvariants(a), f5),
                                  seed);
        const auto sup = scramble(pencil_of_module(PreinjInvariants(c), f5),
                                  seed + 100);
        REQUIRE(is_subpencil_cm(sub, sup).has_value());
        CHECK(verify_completion(sub, sup, complete(sub, sup, seed)));
      }
    }
  }
}

TEST_CASE("row-minimal decision matches the transposed column decision") {
  const RationalField fld;
  const auto sub_cm = pencil_of_module(PreinjInvariants({0, 1}), fld);
  const auto sup_cm = pencil_of_module(PreinjInvariants({1, 0, 1}), fld);
  const Pencil<RationalField> sub_rm(sub_cm.A.transpose(),
                                     sub_cm.B.transpose());
  const Pencil<RationalField> sup_rm(sup_cm.A.transpose(),
                                     sup_cm.B.transpose());
  const auto wrm = is_subpencil_rm(sub_rm, sup_rm);
  const auto wcm = is_subpencil_cm(sub_cm, sup_cm);
  REQUIRE(wrm.has_value());
  REQUIRE(wcm.has_value());
  CHECK(wrm->b_seq == wcm->b_seq);
  CHECK(wrm->linking == wcm->linking);
  // A wide pencil has column indices, not row indices.
  CHECK_THROWS_AS(is_subpencil_rm(sub_cm, sup_cm), NotRowMinimalOnly);
  // Negative case transported through transposition.
  const auto a = pencil_of_module(PreinjInvariants({0, 0, 2}), fld);
  const auto c = pencil_of_module(PreinjInvariants({0, 1, 0, 1}), fld);
  CHECK_FALSE(is_subpencil_rm(Pencil<RationalField>(a.A.transpose(),
                                                    a.B.transpose()),
                              Pencil<RationalField>(c.A.transpose(),
                                                    c.B.transpose()))
                  .has_value());
}

TEST_CASE("mismatched fields are rejected") {
  const RationalField fq;
  const PrimeField f5(5);
  const auto pq = pencil_of_module(PreinjInvariants({0, 1}), fq);
  const auto p5 = pencil_of_module(PreinjInvariants({0, 1}), f5);
  (void)pq;
  (void)p5;
  // Different field types cannot even be mixed at compile time; the runtime
  // check guards same-type different-modulus mixes.
  const PrimeField f7(7);
  const auto p7 = pencil_of_module(PreinjInvariants({0, 0, 1}), f7);
  const auto p5big = pencil_of_module(PreinjInvariants({0, 0, 1}), f5);
  CHECK_THROWS_AS(is_subpencil_cm(p5, p7), ShapeMismatch);
  CHECK_THROWS_AS(complete(p5, p7, 0), ShapeMismatch);
  (void)p5big;
}

TEST_CASE("every small pair agrees between decision and construction") {
  // For every ordered pair of invariants with indices below 3 and
  // multiplicity at most 2: when the decision says yes, a completion must
  // construct and verify; when it says no, complete must throw.
  const PrimeField f5(5);
  const auto modules = kron::testutil::all_invariants(3, 2);
  for (const auto& a : modules) {
    for (const auto& c : modules) {
      const PreinjInvariants ia(a);
      const PreinjInvariants ic(c);
      const auto sub = pencil_of_module(ia, f5);
      const auto sup = pencil_of_module(ic, f5);
      CAPTURE(pretty(ia));
      CAPTURE(pretty(ic));
      if (subfactor_check(ia, ic).has_value()) {
        const auto r = complete(sub, sup, 2);
        CHECK(verify_completion(sub, sup, r));
      } else {
        CHECK_THROWS_AS(complete(sub, sup, 2), NotSubpencil);
      }
    }
  }
}
