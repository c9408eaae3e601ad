#pragma once

// Deciding and realizing the subpencil relation for pencils whose Kronecker
// form has only minimal column indices.  `is_subpencil_cm` answers the
// yes/no question from the index multisets alone; `complete` produces an
// explicit witness: invertible row and column transforms of the larger
// pencil under which the smaller pencil appears verbatim as the upper-left
// corner, together with the completion blocks filling the remaining border.
// The construction routes both pencils through a common linking module: the
// smaller pencil's module embeds into it, the larger one surjects onto it,
// and composing the two gives transforms whose full-rank normalizations cut
// out the corner embedding.  `verify_completion` re-checks a result from
// scratch.  Row-minimal pencils are handled by transposing.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "kron/criteria.hpp"
#include "kron/errors.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"
#include "kron/pencil.hpp"
#include "kron/representation.hpp"

namespace kron {

/// Explicit completion of a subpencil inclusion: writing m' x n' for the
/// small pencil and m x n for the large one, `left` (m x m) and `right`
/// (n x n) are invertible and left * large * right equals the block pencil
///   [ small  blk12 ]
///   [ blk21  blk22 ]
/// entry for entry, in both the constant and leading coefficient.
/// `linking` is the witness for the underlying module relation, whose
/// linking invariants name the module the construction routed through.
template <field F>
struct CompletionResult {
  Matrix<F> A12, B12;  // m' x (n - n')
  Matrix<F> A21, B21;  // (m - m') x n'
  Matrix<F> A22, B22;  // (m - m') x (n - n')
  Matrix<F> left;      // m x m, invertible
  Matrix<F> right;     // n x n, invertible
  SubfactorWitness linking;
};

/// Decides whether `sub` appears as the upper-left corner of `sup` after
/// invertible row and column transforms of `sup`, returning the witness
/// (b-sequence, linking module, border multiplicities alpha and beta) when
/// it does.  Both pencils must have only minimal column indices in their
/// Kronecker forms (otherwise NotColumnMinimalOnly) and live over the same
/// field (otherwise ShapeMismatch).
template <field F>
std::optional<SubfactorWitness> is_subpencil_cm(const Pencil<F>& sub,
                                                const Pencil<F>& sup) {
  if (!(sub.field() == sup.field())) {
    throw ShapeMismatch("pencils over different fields");
  }
  const PreinjInvariants a = minimal_column_indices(sub);
  const PreinjInvariants c = minimal_column_indices(sup);
  return subfactor_check(a, c);
}

template <field F>
bool verify_completion(const Pencil<F>& sub, const Pencil<F>& sup,
                       const CompletionResult<F>& r);

/// Constructs an explicit completion witnessing that `sub` is a subpencil
/// of `sup`.  Throws NotSubpencil when the relation does not hold,
/// NotColumnMinimalOnly / ShapeMismatch as in `is_subpencil_cm`.  The
/// result is re-verified before being returned; `seed` varies the
/// free coefficients of the intermediate morphisms, never the validity.
template <field F>
CompletionResult<F> complete(const Pencil<F>& sub, const Pencil<F>& sup,
                             std::uint64_t seed = 0) {
  if (!(sub.field() == sup.field())) {
    throw ShapeMismatch("pencils over different fields");
  }
  const F& fld = sub.field();
  const Canonicalization<F> subc = canonicalize_cm(sub);
  const Canonicalization<F> supc = canonicalize_cm(sup);
  const auto witness = subfactor_check(subc.inv, supc.inv);
  if (!witness) {
    throw NotSubpencil(pretty(subc.inv) + " is not a subpencil of " +
                       pretty(supc.inv));
  }
  const std::size_t m1 = sub.rows(), n1 = sub.cols();
  const std::size_t m = sup.rows(), n = sup.cols();
  const DimVector dl = dim_of(witness->linking);
  if (dl.d1 != static_cast<long long>(m1) ||
      dl.d2 != static_cast<long long>(n)) {
    throw VerificationFailed("linking module has dimension " +
                             std::to_string(dl.d1) + "," +
                             std::to_string(dl.d2) + ", expected " +
                             std::to_string(m1) + "," + std::to_string(n));
  }

  // Morphisms through the linking module, in canonical coordinates.  The
  // embedding's vertex-1 component and the surjection's vertex-2 component
  // are square, hence invertible.
  const MorphismPair<F> mono =
      construct_monomorphism(subc.inv, witness->linking, fld, seed);
  const MorphismPair<F> epi =
      construct_epimorphism_P0_kernel(supc.inv, witness->linking, fld, seed);

  // Composites relating the two canonical pencils: with K the canonical
  // form of sup and K' of sub,  W * K * T = K'  where W has full row rank
  // and T full column rank.
  const Matrix<F> w = mono.f1.invert() * epi.f1;  // m' x m
  const Matrix<F> t = epi.f2.invert() * mono.f2;  // n x n'
  const auto [c1, c2] = full_rank_factor_tall(t);
  const auto [d1, d2] = full_rank_factor_wide(w);

  // Padding the factor normalizations to full size puts K' in the corner of
  // transformed K; conjugating by the canonicalizations transports that
  // statement back to the original pencils.
  const Matrix<F> pad_r = Matrix<F>::identity(fld, m - m1);
  const Matrix<F> pad_c = Matrix<F>::identity(fld, n - n1);
  const Matrix<F> left = Matrix<F>::diag_sum(subc.left.invert(), pad_r) *
                         Matrix<F>::diag_sum(d1, pad_r) * d2 * supc.left;
  const Matrix<F> right = supc.right * c1 *
                          Matrix<F>::diag_sum(c2, pad_c) *
                          Matrix<F>::diag_sum(subc.right.invert(), pad_c);

  const Matrix<F> ta = left * sup.A * right;
  const Matrix<F> tb = left * sup.B * right;
  CompletionResult<F> out{
      ta.block(0, n1, m1, n - n1),      tb.block(0, n1, m1, n - n1),
      ta.block(m1, 0, m - m1, n1),      tb.block(m1, 0, m - m1, n1),
      ta.block(m1, n1, m - m1, n - n1), tb.block(m1, n1, m - m1, n - n1),
      left,
      right,
      *witness};
  if (!verify_completion(sub, sup, out)) {
    throw VerificationFailed("completion failed its own re-verification");
  }
  return out;
}

/// Re-checks a completion from scratch: block shapes are consistent
/// (ShapeMismatch otherwise), `left` and `right` are invertible,
/// left * sup * right reproduces `sub` in the upper-left corner and the
/// stored blocks elsewhere, and the assembled pencil is strictly
/// equivalent to `sup`.
template <field F>
bool verify_completion(const Pencil<F>& sub, const Pencil<F>& sup,
                       const CompletionResult<F>& r) {
  if (!(sub.field() == sup.field())) {
    throw ShapeMismatch("pencils over different fields");
  }
  const std::size_t m1 = sub.rows(), n1 = sub.cols();
  const std::size_t m = sup.rows(), n = sup.cols();
  if (m1 > m || n1 > n) {
    throw ShapeMismatch("corner " + sub.A.shape_string() +
                        " exceeds the ambient " + sup.A.shape_string());
  }
  const auto shape_ok = [](const Matrix<F>& x, std::size_t rr,
                           std::size_t cc) {
    return x.rows() == rr && x.cols() == cc;
  };
  if (!shape_ok(r.A12, m1, n - n1) || !shape_ok(r.B12, m1, n - n1) ||
      !shape_ok(r.A21, m - m1, n1) || !shape_ok(r.B21, m - m1, n1) ||
      !shape_ok(r.A22, m - m1, n - n1) || !shape_ok(r.B22, m - m1, n - n1) ||
      !shape_ok(r.left, m, m) || !shape_ok(r.right, n, n)) {
    throw ShapeMismatch("completion blocks do not tile " +
                        sup.A.shape_string());
  }
  if (!r.left.is_invertible() || !r.right.is_invertible()) return false;

  Matrix<F> asm_a(sub.field(), m, n);
  Matrix<F> asm_b(sub.field(), m, n);
  asm_a.paste(0, 0, sub.A);
  asm_b.paste(0, 0, sub.B);
  asm_a.paste(0, n1, r.A12);
  asm_b.paste(0, n1, r.B12);
  asm_a.paste(m1, 0, r.A21);
  asm_b.paste(m1, 0, r.B21);
  asm_a.paste(m1, n1, r.A22);
  asm_b.paste(m1, n1, r.B22);
  if (r.left * sup.A * r.right != asm_a) return false;
  if (r.left * sup.B * r.right != asm_b) return false;
  return strictly_equivalent_cm(Pencil<F>(asm_a, asm_b), sup);
}

/// The subpencil decision for pencils with only minimal row indices,
/// obtained by transposing both pencils (which swaps row and column
/// indices) and deciding the column-minimal question; the witness's
/// linking vector is to be read as a preprojective module.  Throws
/// NotRowMinimalOnly when a transposed input is out of scope.
template <field F>
std::optional<SubfactorWitness> is_subpencil_rm(const Pencil<F>& sub,
                                                const Pencil<F>& sup) {
  try {
    return is_subpencil_cm(
        Pencil<F>(sub.A.transpose(), sub.B.transpose()),
        Pencil<F>(sup.A.transpose(), sup.B.transpose()));
  } catch (const NotColumnMinimalOnly& e) {
    throw NotRowMinimalOnly(
        std::string("transposed check rejected the input: ") + e.what());
  }
}

}  // namespace kron
