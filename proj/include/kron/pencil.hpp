#pragma once
// Matrix pencils A + λB whose Kronecker structure consists of column minimal
// indices only: construction from preinjective invariants, index extraction
// through block-Toeplitz nullities, seeded scrambling, strict-equivalence
// testing, and exact reduction to the block-diagonal normal form together
// with the reducing transforms.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kron/errors.hpp"
#include "kron/field.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"
#include "kron/representation.hpp"

namespace kron {

/// A matrix pencil A + λB: two equally shaped matrices over one field.
template <field F>
struct Pencil {
  Matrix<F> A;  ///< constant coefficient
  Matrix<F> B;  ///< λ coefficient

  Pencil(Matrix<F> a, Matrix<F> b) : A(std::move(a)), B(std::move(b)) {
    if (A.rows() != B.rows() || A.cols() != B.cols()) {
      throw ShapeMismatch("pencil coefficients of shapes " +
                          A.shape_string() + " and " + B.shape_string());
    }
    if (!(A.field() == B.field())) {
      throw ShapeMismatch("pencil coefficients over different fields");
    }
  }

  std::size_t rows() const { return A.rows(); }
  std::size_t cols() const { return A.cols(); }
  const F& field() const { return A.field(); }

  bool operator==(const Pencil& o) const { return A == o.A && B == o.B; }
  bool operator!=(const Pencil& o) const { return !(*this == o); }
};

/// Block-diagonal pencil of the module ⊕ a_e I_e with blocks ordered by
/// ascending index.  An index-0 summand contributes one zero column; an
/// index-e summand contributes an e×(e+1) block with λ on the diagonal and
/// 1 on the superdiagonal.  Total shape (Σ e·a_e) × (Σ (e+1)·a_e).
template <field F>
Pencil<F> pencil_of_module(const PreinjInvariants& inv, const F& fld) {
  const DimVector d = dim_of(inv);
  Matrix<F> a(fld, static_cast<std::size_t>(d.d1),
              static_cast<std::size_t>(d.d2));
  Matrix<F> b = a;
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (std::size_t e = 0; e < inv.size(); ++e) {
    for (long long k = 0; k < inv.at(e); ++k) {
      for (std::size_t r = 0; r < e; ++r) {
        b.set(r0 + r, c0 + r, fld.one());
        a.set(r0 + r, c0 + r + 1, fld.one());
      }
      r0 += e;
      c0 += e + 1;
    }
  }
  return Pencil<F>(std::move(a), std::move(b));
}

/// The same blocks in the coordinate order used by canonical_representation
/// (zero columns first, positive indices descending).  This is the normal
/// form that canonicalize_cm reduces to, so that pencil coordinates and
/// representation coordinates agree.
template <field F>
Pencil<F> canonical_pencil(const PreinjInvariants& inv, const F& fld) {
  Representation<F> rep = canonical_representation(inv, fld);
  return Pencil<F>(std::move(rep.Aprime), std::move(rep.A));
}

namespace detail {

/// Block-Toeplitz matrix T_k of a pencil, with k block columns: A on the
/// block diagonal and B on the block subdiagonal, (k+1)·m rows by k·n
/// columns.  Its right kernel is the space of polynomial solutions x(λ) of
/// (A + λB)·x(λ) = 0 with deg x < k, stacked as (x_0; …; x_{k-1}).
template <field F>
Matrix<F> toeplitz(const Pencil<F>& p, std::size_t k) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  Matrix<F> t(p.field(), (k + 1) * m, k * n);
  for (std::size_t j = 0; j < k; ++j) {
    t.paste(j * m, j * n, p.A);
    t.paste((j + 1) * m, j * n, p.B);
  }
  return t;
}

/// ν_k := k·n − rank(T_k), the dimension of the degree-<k polynomial
/// solution space.  For every pencil ν_k = Σ_i max(0, k − ε_i) over the
/// column minimal indices ε_i.
template <field F>
long long toeplitz_nullity(const Pencil<F>& p, std::size_t k) {
  return static_cast<long long>(k * p.cols()) -
         static_cast<long long>(toeplitz(p, k).rank());
}

}  // namespace detail

/// Extracts the multiset of column minimal indices of a pencil, as a
/// multiplicity vector.  The nullity sequence ν_k of the block-Toeplitz
/// matrices satisfies ν_k = Σ_i max(0, k − ε_i), so the second difference
/// a_e = ν_{e+1} − 2ν_e + ν_{e−1} (with ν_0 = ν_{−1} = 0) counts the indices
/// equal to e.  The candidate multiset is accepted as soon as it accounts
/// for the whole shape — Σ_e a_e = cols − rows and Σ_e e·a_e = rows — which
/// certifies that the pencil carries no other Kronecker data (row indices or
/// elementary divisors contribute rows or columns the two equalities would
/// miss).  A column minimal index is at most the row count, so if no
/// k ≤ rows+1 passes the certificate the pencil is out of scope and
/// NotColumnMinimalOnly is thrown.
template <field F>
PreinjInvariants minimal_column_indices(const Pencil<F>& p) {
  const long long m = static_cast<long long>(p.rows());
  const long long n = static_cast<long long>(p.cols());
  std::vector<long long> nu = {0};  // nu[k] = ν_k
  for (std::size_t k = 1; k <= static_cast<std::size_t>(m) + 1; ++k) {
    nu.push_back(detail::toeplitz_nullity(p, k));
    std::vector<long long> a(k);
    bool nonnegative = true;
    long long count = 0;
    long long weighted = 0;
    for (std::size_t e = 0; e < k; ++e) {
      const long long below = e == 0 ? 0 : nu[e - 1];
      a[e] = nu[e + 1] - 2 * nu[e] + below;
      nonnegative = nonnegative && a[e] >= 0;
      count += a[e];
      weighted += static_cast<long long>(e) * a[e];
    }
    if (nonnegative && count == n - m && weighted == m) {
      return PreinjInvariants(std::move(a));
    }
  }
  throw NotColumnMinimalOnly(
      "pencil of shape " + p.A.shape_string() +
      " carries Kronecker data other than column minimal indices");
}

namespace detail {

/// Seeded random invertible square matrix; entries are drawn by
/// random_scalar (small integers over ℚ, uniform residues over GF(p)) and
/// redrawn until the determinant is nonzero.
template <field F>
Matrix<F> random_invertible(const F& fld, std::size_t n,
                            std::mt19937_64& rng) {
  for (;;) {
    Matrix<F> m(fld, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m.set(i, j, random_scalar(fld, rng));
      }
    }
    if (m.is_invertible()) return m;
  }
}

}  // namespace detail

/// Conjugates a pencil by seeded random invertible matrices on both sides.
/// The result is strictly equivalent to the input by construction.
template <field F>
Pencil<F> scramble(const Pencil<F>& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix<F> l = detail::random_invertible(p.field(), p.rows(), rng);
  const Matrix<F> r = detail::random_invertible(p.field(), p.cols(), rng);
  return Pencil<F>(l * p.A * r, l * p.B * r);
}

/// Decides strict equivalence of two column-minimal pencils.  Kronecker data
/// classifies pencils up to strict equivalence, and within the
/// column-minimal-only class the data is the index multiset (which also
/// determines the shape), so the decision reduces to extracting and
/// comparing the multisets.  Throws NotColumnMinimalOnly if either pencil is
/// out of scope.
template <field F>
bool strictly_equivalent_cm(const Pencil<F>& p1, const Pencil<F>& p2) {
  if (!(p1.field() == p2.field())) {
    throw ShapeMismatch("pencils over different fields");
  }
  return minimal_column_indices(p1) == minimal_column_indices(p2);
}

/// An exact reduction of a column-minimal pencil to block-diagonal normal
/// form: invertible transforms with left·P·right equal to
/// canonical_pencil(inv) entry for entry.
template <field F>
struct Canonicalization {
  PreinjInvariants inv;
  Matrix<F> left;
  Matrix<F> right;
};

namespace detail {

/// One selected polynomial kernel chain: the alternating-sign coefficient
/// columns w_j = (−1)^j x_j, j = 0..deg, of a degree-deg solution x(λ).
template <field F>
struct KernelChain {
  long long deg = 0;
  std::vector<Matrix<F>> w;  // deg+1 columns of height n
};

}  // namespace detail

/// Reduces a pencil with only column minimal indices exactly to the normal
/// form canonical_pencil(inv).  Polynomial kernel chains are selected degree
/// by degree: at degree d, a_d kernel vectors of T_{d+1} are chosen that are
/// independent modulo the λ-shifts of the chains already selected.  The
/// alternating-sign coefficients of the chains give the column transform and
/// their images under the λ coefficient give the row transform; both are
/// verified exactly against the normal form, and any internal failure throws
/// VerificationFailed.  Throws NotColumnMinimalOnly for out-of-scope pencils.
template <field F>
Canonicalization<F> canonicalize_cm(const Pencil<F>& p) {
  const F& fld = p.field();
  const PreinjInvariants inv = minimal_column_indices(p);
  const std::size_t n = p.cols();

  std::vector<detail::KernelChain<F>> chains;
  for (std::size_t d = 0; d < inv.size(); ++d) {
    if (inv.at(d) == 0) continue;
    const std::size_t width = (d + 1) * n;
    detail::RowEliminator<F> elim(fld, width);
    for (const auto& chain : chains) {
      // All λ^s-shifts of an earlier chain that fit in degree ≤ d.
      const auto deg = static_cast<std::size_t>(chain.deg);
      for (std::size_t s = 0; s + deg <= d; ++s) {
        std::vector<typename F::value_type> v(width, fld.zero());
        for (std::size_t j = 0; j <= deg; ++j) {
          for (std::size_t t = 0; t < n; ++t) {
            const auto x = (j % 2 == 0) ? chain.w[j].at(t, 0)
                                        : fld.neg(chain.w[j].at(t, 0));
            v[(s + j) * n + t] = x;
          }
        }
        elim.insert(std::move(v));
      }
    }
    const Matrix<F> kernel = detail::toeplitz(p, d + 1).solve_right_kernel();
    long long picked = 0;
    for (std::size_t col = 0; col < kernel.cols() && picked < inv.at(d);
         ++col) {
      std::vector<typename F::value_type> v(width, fld.zero());
      for (std::size_t t = 0; t < width; ++t) v[t] = kernel.at(t, col);
      if (!elim.insert(std::move(v))) continue;
      detail::KernelChain<F> chain;
      chain.deg = static_cast<long long>(d);
      for (std::size_t j = 0; j <= d; ++j) {
        Matrix<F> w(fld, n, 1);
        for (std::size_t t = 0; t < n; ++t) {
          const auto x = kernel.at(j * n + t, col);
          w.set(t, 0, (j % 2 == 0) ? x : fld.neg(x));
        }
        chain.w.push_back(std::move(w));
      }
      chains.push_back(std::move(chain));
      ++picked;
    }
    if (picked < inv.at(d)) {
      throw VerificationFailed(
          "kernel chain selection found too few chains at degree " +
          std::to_string(d));
    }
  }

  // Assemble the module isomorphism (f1, f2) from normal-form coordinates:
  // zero-index chains fill the leading columns at vertex 2, then each
  // positive block (indices descending) takes the coefficient columns of one
  // chain of its degree, with vertex-1 columns the images under the λ part.
  const detail::CanonicalLayout lay = detail::layout_of(inv);
  Matrix<F> f1(fld, p.rows(), p.rows());
  Matrix<F> f2(fld, n, n);
  std::vector<std::size_t> next_of_degree(inv.size(), 0);
  std::vector<std::vector<std::size_t>> by_degree(inv.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    by_degree[static_cast<std::size_t>(chains[i].deg)].push_back(i);
  }
  std::size_t zcol = 0;
  if (!by_degree.empty()) {
    for (std::size_t i : by_degree[0]) {
      f2.paste(0, zcol, chains[i].w[0]);
      ++zcol;
    }
  }
  for (std::size_t blk = 0; blk < lay.eps.size(); ++blk) {
    const auto e = static_cast<std::size_t>(lay.eps[blk]);
    const std::size_t which = next_of_degree[e]++;
    const detail::KernelChain<F>& chain = chains[by_degree[e][which]];
    for (std::size_t j = 0; j <= e; ++j) {
      f2.paste(0, lay.v2_off[blk] + j, chain.w[j]);
      if (j < e) f1.paste(0, lay.v1_off[blk] + j, p.B * chain.w[j]);
    }
  }

  if (!f1.is_invertible() || !f2.is_invertible()) {
    throw VerificationFailed(
        "kernel chain coefficients did not span the pencil's spaces");
  }
  Canonicalization<F> result{inv, f1.invert(), f2};
  const Pencil<F> normal = canonical_pencil(inv, fld);
  if (result.left * p.A * result.right != normal.A ||
      result.left * p.B * result.right != normal.B) {
    throw VerificationFailed("normal-form reduction failed verification");
  }
  return result;
}

}  // namespace kron
