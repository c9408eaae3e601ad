#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "fixtures_worked_example.hpp"
#include "kron/pencil.hpp"
#include "test_util.hpp"

namespace {

const kron::RationalField QQ;
const kron::PrimeField F5(5);

template <kron::field F>
kron::Pencil<F> fixture_pencil(const F& fld, std::size_t rows,
                               std::size_t cols,
                               const std::vector<fixtures::Entry>& a,
                               const std::vector<fixtures::Entry>& b) {
  return kron::Pencil<F>(fixtures::materialize(fld, rows, cols, a),
                         fixtures::materialize(fld, rows, cols, b));
}

kron::PreinjInvariants inv(std::vector<long long> mult) {
  return kron::PreinjInvariants(std::move(mult));
}

}  // namespace

TEST_CASE("pencil construction: frozen shapes and entries") {
  // Ascending block order: one index-1 block, then three index-3 blocks.
  const kron::Pencil<kron::RationalField> p =
      kron::pencil_of_module(inv({0, 1, 0, 3}), QQ);
  CHECK(p.rows() == 10);
  CHECK(p.cols() == 14);
  CHECK(p.B.at(0, 0) == QQ.one());
  CHECK(p.A.at(0, 1) == QQ.one());
  CHECK(p.B.at(1, 2) == QQ.one());
  CHECK(p.A.at(1, 3) == QQ.one());
  CHECK(p.B.at(3, 4) == QQ.one());
  CHECK(p.A.at(3, 5) == QQ.one());
  std::size_t a_ones = 0;
  std::size_t b_ones = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (!QQ.is_zero(p.A.at(i, j))) ++a_ones;
      if (!QQ.is_zero(p.B.at(i, j))) ++b_ones;
    }
  }
  CHECK(a_ones == 10);
  CHECK(b_ones == 10);

  // The normal-form (descending) order reproduces the frozen matrices.
  const auto sup = fixture_pencil(QQ, fixtures::sup_rows, fixtures::sup_cols,
                                  fixtures::sup_A, fixtures::sup_B);
  const auto sub = fixture_pencil(QQ, fixtures::sub_rows, fixtures::sub_cols,
                                  fixtures::sub_A, fixtures::sub_B);
  const auto link = fixture_pencil(QQ, fixtures::link_rows,
                                   fixtures::link_cols, fixtures::link_A,
                                   fixtures::link_B);
  CHECK(kron::canonical_pencil(inv(fixtures::sup_mult), QQ) == sup);
  CHECK(kron::canonical_pencil(inv(fixtures::sub_mult), QQ) == sub);
  CHECK(kron::canonical_pencil(inv(fixtures::link_mult), QQ) == link);

  // Ascending and descending orders are strictly equivalent.
  CHECK(kron::strictly_equivalent_cm(p, sup));

  // Degenerate modules.
  const auto zero = kron::pencil_of_module(inv({}), QQ);
  CHECK(zero.rows() == 0);
  CHECK(zero.cols() == 0);
  const auto two_zero_cols = kron::pencil_of_module(inv({2}), QQ);
  CHECK(two_zero_cols.rows() == 0);
  CHECK(two_zero_cols.cols() == 2);
  CHECK(two_zero_cols.A.is_zero());
}

TEST_CASE("minimal_column_indices: frozen extractions and rejections") {
  const auto sup = fixture_pencil(QQ, fixtures::sup_rows, fixtures::sup_cols,
                                  fixtures::sup_A, fixtures::sup_B);
  const auto sub = fixture_pencil(QQ, fixtures::sub_rows, fixtures::sub_cols,
                                  fixtures::sub_A, fixtures::sub_B);
  const auto link = fixture_pencil(QQ, fixtures::link_rows,
                                   fixtures::link_cols, fixtures::link_A,
                                   fixtures::link_B);
  CHECK(kron::minimal_column_indices(sup) == inv(fixtures::sup_mult));
  CHECK(kron::minimal_column_indices(sub) == inv(fixtures::sub_mult));
  CHECK(kron::minimal_column_indices(link) == inv(fixtures::link_mult));
  CHECK(kron::minimal_column_indices(sup).epsilon_list() ==
        std::vector<long long>{3, 3, 3, 1});
  CHECK(kron::minimal_column_indices(sub).epsilon_list() ==
        std::vector<long long>{5, 2, 1, 0});

  const auto sup5 = fixture_pencil(F5, fixtures::sup_rows, fixtures::sup_cols,
                                   fixtures::sup_A, fixtures::sup_B);
  CHECK(kron::minimal_column_indices(sup5) == inv(fixtures::sup_mult));

  // Zero-row pencils consist purely of index-0 columns.
  CHECK(kron::minimal_column_indices(kron::pencil_of_module(inv({3}), QQ)) ==
        inv({3}));
  CHECK(kron::minimal_column_indices(kron::pencil_of_module(inv({}), QQ)) ==
        inv({}));

  // The 1×1 pencil (λ) carries an elementary divisor: out of scope.
  const kron::Pencil<kron::RationalField> lam(
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{0}}),
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{1}}));
  CHECK_THROWS_AS((void)kron::minimal_column_indices(lam),
                  kron::NotColumnMinimalOnly);

  // The 1×1 pencil (1): an elementary divisor at infinity, also rejected.
  const kron::Pencil<kron::RationalField> one(
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{1}}),
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{0}}));
  CHECK_THROWS_AS((void)kron::minimal_column_indices(one),
                  kron::NotColumnMinimalOnly);

  // A 2×1 pencil (λ; 1): a row minimal index, rejected.
  const kron::Pencil<kron::RationalField> row_idx(
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{0}, {1}}),
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{1}, {0}}));
  CHECK_THROWS_AS((void)kron::minimal_column_indices(row_idx),
                  kron::NotColumnMinimalOnly);

  // Mixed column block and row block: rejected.
  const kron::Pencil<kron::RationalField> mixed(
      kron::Matrix<kron::RationalField>::from_rows(
          QQ, {{0, 1, 0}, {0, 0, 0}, {0, 0, 1}}),
      kron::Matrix<kron::RationalField>::from_rows(
          QQ, {{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK_THROWS_AS((void)kron::minimal_column_indices(mixed),
                  kron::NotColumnMinimalOnly);

  // Zero columns but positive rows: row indices only.
  const kron::Pencil<kron::RationalField> tall(
      kron::Matrix<kron::RationalField>(QQ, 2, 0),
      kron::Matrix<kron::RationalField>(QQ, 2, 0));
  CHECK_THROWS_AS((void)kron::minimal_column_indices(tall),
                  kron::NotColumnMinimalOnly);
}

TEST_CASE("minimal_column_indices: round trip through both block orders") {
  std::size_t count = 0;
  for (const kron::PreinjInvariants& x : kron::testutil::all_invariants(5, 2)) {
    const auto p = kron::pencil_of_module(x, QQ);
    CHECK(kron::minimal_column_indices(p) == x);
    if (count % 7 == 0) {
      CHECK(kron::minimal_column_indices(kron::canonical_pencil(x, QQ)) == x);
    }
    ++count;
  }
  CHECK(count == 243);
}

TEST_CASE("nullity sequence stabilizes with increment cols - rows") {
  for (const std::vector<long long>& mult :
       {std::vector<long long>{0, 1, 0, 3}, std::vector<long long>{2, 1, 2, 1},
        std::vector<long long>{3}, std::vector<long long>{0, 0, 2}}) {
    const kron::PreinjInvariants x = inv(mult);
    const auto p = kron::pencil_of_module(x, QQ);
    const auto top = static_cast<std::size_t>(x.size());
    const long long gap =
        static_cast<long long>(p.cols()) - static_cast<long long>(p.rows());
    for (std::size_t k = top; k < top + 3; ++k) {
      CHECK(kron::detail::toeplitz_nullity(p, k + 1) -
                kron::detail::toeplitz_nullity(p, k) ==
            gap);
    }
  }
}

TEST_CASE("scramble: deterministic and invariant-preserving") {
  const auto sup = fixture_pencil(QQ, fixtures::sup_rows, fixtures::sup_cols,
                                  fixtures::sup_A, fixtures::sup_B);
  CHECK(kron::scramble(sup, 7) == kron::scramble(sup, 7));
  CHECK(kron::scramble(sup, 7) != kron::scramble(sup, 8));

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK(kron::minimal_column_indices(kron::scramble(sup, seed)) ==
          inv(fixtures::sup_mult));
  }
  const auto sub5 = fixture_pencil(F5, fixtures::sub_rows, fixtures::sub_cols,
                                   fixtures::sub_A, fixtures::sub_B);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CHECK(kron::minimal_column_indices(kron::scramble(sub5, seed)) ==
          inv(fixtures::sub_mult));
  }

  CHECK(kron::strictly_equivalent_cm(sup, kron::scramble(sup, 3)));
  const auto sub = fixture_pencil(QQ, fixtures::sub_rows, fixtures::sub_cols,
                                  fixtures::sub_A, fixtures::sub_B);
  CHECK(!kron::strictly_equivalent_cm(sup, sub));
  // Same 2×4 shape, different index multisets {1,1} vs {2,0-with-a-zero-col}.
  CHECK(!kron::strictly_equivalent_cm(
      kron::pencil_of_module(inv({0, 2}), QQ),
      kron::pencil_of_module(inv({1, 0, 1}), QQ)));
}

TEST_CASE("canonicalize_cm: exact transforms onto the normal form") {
  // A pencil already in normal form still reduces to itself.
  const auto sup = fixture_pencil(QQ, fixtures::sup_rows, fixtures::sup_cols,
                                  fixtures::sup_A, fixtures::sup_B);
  const auto can = kron::canonicalize_cm(sup);
  CHECK(can.inv == inv(fixtures::sup_mult));
  CHECK(can.left.is_invertible());
  CHECK(can.right.is_invertible());
  CHECK(can.left * sup.A * can.right ==
        kron::canonical_pencil(can.inv, QQ).A);
  CHECK(can.left * sup.B * can.right ==
        kron::canonical_pencil(can.inv, QQ).B);

  // The ascending block order is a nontrivial permutation of the normal form.
  const auto asc = kron::pencil_of_module(inv(fixtures::sup_mult), QQ);
  const auto can_asc = kron::canonicalize_cm(asc);
  CHECK(can_asc.inv == inv(fixtures::sup_mult));
  CHECK(can_asc.left * asc.A * can_asc.right ==
        kron::canonical_pencil(can_asc.inv, QQ).A);

  // Scrambled pencils over both fields reduce to the same normal form.
  const std::vector<std::vector<long long>> mults = {
      {0, 1, 0, 3}, {1, 1, 1, 0, 0, 1}, {2, 1, 2, 1}, {3},
      {1, 2},       {0, 0, 2},          {}};
  for (const auto& mult : mults) {
    const kron::PreinjInvariants x = inv(mult);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      {
        const auto scr = kron::scramble(kron::pencil_of_module(x, QQ), seed);
        const auto c = kron::canonicalize_cm(scr);
        CHECK(c.inv == x);
        CHECK(c.left * scr.A * c.right == kron::canonical_pencil(x, QQ).A);
        CHECK(c.left * scr.B * c.right == kron::canonical_pencil(x, QQ).B);
      }
      {
        const auto scr = kron::scramble(kron::pencil_of_module(x, F5), seed);
        const auto c = kron::canonicalize_cm(scr);
        CHECK(c.inv == x);
        CHECK(c.left * scr.A * c.right == kron::canonical_pencil(x, F5).A);
        CHECK(c.left * scr.B * c.right == kron::canonical_pencil(x, F5).B);
      }
    }
  }

  // Out-of-scope pencils are rejected up front.
  const kron::Pencil<kron::RationalField> lam(
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{0}}),
      kron::Matrix<kron::RationalField>::from_rows(QQ, {{1}}));
  CHECK_THROWS_AS((void)kron::canonicalize_cm(lam),
                  kron::NotColumnMinimalOnly);
}
