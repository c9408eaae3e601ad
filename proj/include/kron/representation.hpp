#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kron/criteria.hpp"
#include "kron/errors.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"

namespace kron {

/// A Kronecker representation in the canonical basis: two structure maps
/// from the vertex-2 space to the vertex-1 space.  `A` holds the
/// (I_e 0)-shaped blocks, `Aprime` the (0 I_e)-shaped blocks.  In pencil
/// coordinates, `A` is the coefficient of lambda and `Aprime` the constant
/// coefficient.
template <field F>
struct Representation {
  Matrix<F> A;
  Matrix<F> Aprime;

  std::size_t dim1() const { return A.rows(); }
  std::size_t dim2() const { return A.cols(); }
};

/// A morphism between representations: `f1` maps the vertex-1 space of the
/// source to the vertex-1 space of the target, `f2` the vertex-2 spaces.
template <field F>
struct MorphismPair {
  Matrix<F> f1;
  Matrix<F> f2;
};

/// Result of checking a candidate morphism: whether both structure-map
/// squares commute, the ranks of the two components, and the dimension
/// vector of the kernel subrepresentation.
struct MorphismReport {
  bool commutes = false;
  std::size_t f1_rank = 0;
  std::size_t f2_rank = 0;
  DimVector kernel_dim;
};

namespace detail {

/// Coordinate layout of a canonical preinjective representation: the index-0
/// summands contribute `zero_mult` leading zero columns at vertex 2, then
/// one block per positive index, indices descending.
struct CanonicalLayout {
  std::vector<long long> eps;        // positive indices, descending
  long long zero_mult = 0;           // multiplicity of index 0
  std::size_t dim1 = 0;
  std::size_t dim2 = 0;
  std::vector<std::size_t> v1_off;   // vertex-1 offset of each positive block
  std::vector<std::size_t> v2_off;   // vertex-2 offset of each positive block
};

inline CanonicalLayout layout_of(const PreinjInvariants& inv) {
  CanonicalLayout lay;
  lay.zero_mult = inv.at(0);
  for (std::size_t i = inv.size(); i-- > 1;) {
    for (long long k = 0; k < inv.at(i); ++k) {
      lay.eps.push_back(static_cast<long long>(i));
    }
  }
  std::size_t v1 = 0;
  std::size_t v2 = static_cast<std::size_t>(lay.zero_mult);
  for (long long e : lay.eps) {
    lay.v1_off.push_back(v1);
    lay.v2_off.push_back(v2);
    v1 += static_cast<std::size_t>(e);
    v2 += static_cast<std::size_t>(e) + 1;
  }
  lay.dim1 = v1;
  lay.dim2 = v2;
  return lay;
}

/// Per-block diagonal coefficients for a morphism between two canonical
/// representations.  gam[i][j] is non-empty only when target block i can
/// receive source block j (src index >= tgt index); it then holds one
/// coefficient per admissible diagonal offset 0 .. src - tgt.
template <field F>
struct Bands {
  std::vector<std::vector<std::vector<typename F::value_type>>> gam;

  Bands(const F& fld, const CanonicalLayout& tgt, const CanonicalLayout& src) {
    gam.resize(tgt.eps.size());
    for (std::size_t i = 0; i < tgt.eps.size(); ++i) {
      gam[i].resize(src.eps.size());
      for (std::size_t j = 0; j < src.eps.size(); ++j) {
        if (src.eps[j] >= tgt.eps[i]) {
          gam[i][j].assign(
              static_cast<std::size_t>(src.eps[j] - tgt.eps[i]) + 1,
              fld.zero());
        }
      }
    }
  }
};

/// Materialize the pair (f1, f2) determined by band coefficients; the free
/// rows of f2 (the target's index-0 rows) are left zero for the caller.
template <field F>
MorphismPair<F> materialize_bands(const F& fld, const CanonicalLayout& src,
                                  const CanonicalLayout& tgt,
                                  const Bands<F>& bands) {
  Matrix<F> f1(fld, tgt.dim1, src.dim1);
  Matrix<F> f2(fld, tgt.dim2, src.dim2);
  for (std::size_t i = 0; i < tgt.eps.size(); ++i) {
    const auto c = static_cast<std::size_t>(tgt.eps[i]);
    for (std::size_t j = 0; j < src.eps.size(); ++j) {
      const auto& g = bands.gam[i][j];
      if (g.empty()) continue;
      for (std::size_t t = 0; t < g.size(); ++t) {
        if (fld.is_zero(g[t])) continue;
        for (std::size_t r = 0; r < c; ++r) {
          f1.set(tgt.v1_off[i] + r, src.v1_off[j] + r + t, g[t]);
        }
        for (std::size_t r = 0; r <= c; ++r) {
          f2.set(tgt.v2_off[i] + r, src.v2_off[j] + r + t, g[t]);
        }
      }
    }
  }
  return {std::move(f1), std::move(f2)};
}

/// Random band coefficient: small integers over the rationals, uniform
/// residues over a prime field.
template <field F>
typename F::value_type random_scalar(const F& fld, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> dist(-2, 2);
  return fld.from_int(dist(rng));
}

inline PrimeField::value_type random_scalar(const PrimeField& fld,
                                            std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, fld.modulus() - 1);
  return dist(rng);
}

template <field F>
void fill_random_bands(const F& fld, Bands<F>& bands, std::mt19937_64& rng) {
  for (auto& row : bands.gam) {
    for (auto& g : row) {
      for (auto& v : g) v = random_scalar(fld, rng);
    }
  }
}

/// Deterministic band assignment for an embedding: walk the source blocks
/// (widest first) and cover each one with so-far-unused target blocks of
/// width at most the source's, placing a unit diagonal at the first offset
/// that extends the covered column range.  Succeeds only if every source
/// block gets fully covered; each target block is used at most once, so the
/// resulting f1 is a full-column-rank partial permutation.
template <field F>
bool greedy_cover_bands(const F& fld, const CanonicalLayout& src,
                        const CanonicalLayout& tgt, Bands<F>& bands) {
  std::vector<bool> used(tgt.eps.size(), false);
  for (std::size_t j = 0; j < src.eps.size(); ++j) {
    const long long d = src.eps[j];
    long long covered = 0;
    while (covered < d) {
      std::size_t pick = tgt.eps.size();
      for (std::size_t i = 0; i < tgt.eps.size(); ++i) {
        if (!used[i] && tgt.eps[i] <= d) {
          pick = i;  // eps is descending: first unused fit is the widest
          break;
        }
      }
      if (pick == tgt.eps.size()) return false;
      const long long c = tgt.eps[pick];
      const long long offset = std::min(covered, d - c);
      bands.gam[pick][j][static_cast<std::size_t>(offset)] = fld.one();
      used[pick] = true;
      covered = offset + c;
    }
  }
  return true;
}

/// Deterministic band assignment for a projection: pack each target block
/// (widest first) into the first source block that still has a contiguous
/// run of target-width + 1 free columns, placing a unit diagonal there.
/// The positive rows of f2 then form a partial permutation of full row
/// rank, and distinct target blocks never share source columns.
template <field F>
bool slot_pack_bands(const F& fld, const CanonicalLayout& src,
                     const CanonicalLayout& tgt, Bands<F>& bands) {
  std::vector<long long> used(src.eps.size(), 0);
  for (std::size_t i = 0; i < tgt.eps.size(); ++i) {
    const long long c = tgt.eps[i];
    bool placed = false;
    for (std::size_t j = 0; j < src.eps.size(); ++j) {
      if (src.eps[j] < c) continue;
      if (used[j] + c + 1 > src.eps[j] + 1) continue;
      bands.gam[i][j][static_cast<std::size_t>(used[j])] = fld.one();
      used[j] += c + 1;
      placed = true;
      break;
    }
    if (!placed) return false;
  }
  return true;
}

}  // namespace detail

/// Block-diagonal structure maps of ⊕ a_i I_i in the canonical basis:
/// a_0 leading zero columns, then an e x (e+1) block per positive index e
/// in descending order, with `A` carrying (I_e 0) and `Aprime` (0 I_e).
template <field F>
Representation<F> canonical_representation(const PreinjInvariants& inv,
                                           const F& fld) {
  const detail::CanonicalLayout lay = detail::layout_of(inv);
  Matrix<F> A(fld, lay.dim1, lay.dim2);
  Matrix<F> Ap(fld, lay.dim1, lay.dim2);
  for (std::size_t b = 0; b < lay.eps.size(); ++b) {
    for (std::size_t r = 0; r < static_cast<std::size_t>(lay.eps[b]); ++r) {
      A.set(lay.v1_off[b] + r, lay.v2_off[b] + r, fld.one());
      Ap.set(lay.v1_off[b] + r, lay.v2_off[b] + r + 1, fld.one());
    }
  }
  return {std::move(A), std::move(Ap)};
}

/// Check a candidate morphism (f1, f2): src -> dst.  Commutation means
/// dst.A f2 = f1 src.A and dst.Aprime f2 = f1 src.Aprime.  The kernel of a
/// commuting pair is a subrepresentation; its dimension vector is reported
/// as (corank of f1, corank of f2) relative to the source dimensions.
template <field F>
MorphismReport verify_morphism(const Representation<F>& src,
                               const Representation<F>& dst,
                               const MorphismPair<F>& m) {
  if (m.f1.rows() != dst.dim1() || m.f1.cols() != src.dim1() ||
      m.f2.rows() != dst.dim2() || m.f2.cols() != src.dim2()) {
    throw ShapeMismatch("morphism components " + m.f1.shape_string() + ", " +
                        m.f2.shape_string() + " do not map " +
                        src.A.shape_string() + " into " +
                        dst.A.shape_string());
  }
  MorphismReport rep;
  rep.commutes = (dst.A * m.f2 == m.f1 * src.A) &&
                 (dst.Aprime * m.f2 == m.f1 * src.Aprime);
  rep.f1_rank = m.f1.rank();
  rep.f2_rank = m.f2.rank();
  rep.kernel_dim = {static_cast<long long>(src.dim1()) -
                        static_cast<long long>(rep.f1_rank),
                    static_cast<long long>(src.dim2()) -
                        static_cast<long long>(rep.f2_rank)};
  return rep;
}

/// Explicit embedding of ⊕ a_i I_i into ⊕ c_i I_i: returns (f1, f2) with
/// both components of full column rank and exact commutation.  The blocks
/// follow the diagonal band law; the block embedding the source's index-0
/// part into the target's index-0 part is an identity atop zeros, and the
/// remaining free blocks are zero.  Tries a deterministic cover first, then
/// seeded random band coefficients, and verifies every candidate before
/// returning it.
///
/// Throws NoMonomorphism when no embedding exists at all, and
/// ConstructionFailed if the retry budget is exhausted (which would
/// indicate a defect in the search, not a mathematical obstruction).
template <field F>
MorphismPair<F> construct_monomorphism(const PreinjInvariants& sub,
                                       const PreinjInvariants& sup,
                                       const F& fld, std::uint64_t seed = 0) {
  if (!mono_exists(sub, sup)) {
    throw NoMonomorphism("no embedding of " + pretty(sub) + " into " +
                         pretty(sup));
  }
  const detail::CanonicalLayout src = detail::layout_of(sub);
  const detail::CanonicalLayout tgt = detail::layout_of(sup);
  const Representation<F> srep = canonical_representation(sub, fld);
  const Representation<F> trep = canonical_representation(sup, fld);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);

  constexpr int kRetryBudget = 64;
  for (int attempt = 0; attempt <= kRetryBudget; ++attempt) {
    detail::Bands<F> bands(fld, tgt, src);
    if (attempt == 0) {
      if (!detail::greedy_cover_bands(fld, src, tgt, bands)) continue;
    } else {
      detail::fill_random_bands(fld, bands, rng);
    }
    MorphismPair<F> m = detail::materialize_bands(fld, src, tgt, bands);
    for (long long k = 0; k < src.zero_mult; ++k) {
      m.f2.set(static_cast<std::size_t>(k), static_cast<std::size_t>(k),
               fld.one());
    }
    const MorphismReport rep = verify_morphism(srep, trep, m);
    if (rep.commutes && rep.f1_rank == src.dim1 && rep.f2_rank == src.dim2) {
      return m;
    }
  }
  throw ConstructionFailed("embedding search exhausted its retry budget for " +
                           pretty(sub) + " into " + pretty(sup));
}

/// Explicit projection of ⊕ c_i I_i onto ⊕ b_i I_i whose kernel is a direct
/// sum of alpha copies of P_0: returns (f1, f2) with f2 invertible, f1 of
/// full row rank, and kernel dimension vector (alpha, 0).  Band blocks are
/// slot-packed (or randomized on retry); the target's index-0 rows are then
/// filled with unit vectors on the columns left without a pivot, making f2
/// square invertible.  Every candidate is verified before being returned.
template <field F>
MorphismPair<F> construct_epimorphism_P0_kernel(const PreinjInvariants& big,
                                                const PreinjInvariants& quot,
                                                const F& fld,
                                                std::uint64_t seed = 0) {
  bool feasible = false;
  try {
    feasible = epi_with_P0_kernel(big, quot);
  } catch (const InvalidShape&) {
    feasible = false;  // defect bookkeeping already rules the kernel out
  }
  if (!feasible) {
    throw NoEpimorphism("no projection of " + pretty(big) + " onto " +
                        pretty(quot) + " with index-0 preprojective kernel");
  }
  const detail::CanonicalLayout src = detail::layout_of(big);
  const detail::CanonicalLayout tgt = detail::layout_of(quot);
  if (src.dim2 != tgt.dim2) {
    throw ConstructionFailed("projection with index-0 preprojective kernel "
                             "requires equal vertex-2 dimensions");
  }
  const Representation<F> srep = canonical_representation(big, fld);
  const Representation<F> trep = canonical_representation(quot, fld);
  const long long alpha = static_cast<long long>(src.dim1) -
                          static_cast<long long>(tgt.dim1);
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);

  constexpr int kRetryBudget = 64;
  for (int attempt = 0; attempt <= kRetryBudget; ++attempt) {
    detail::Bands<F> bands(fld, tgt, src);
    if (attempt == 0) {
      if (!detail::slot_pack_bands(fld, src, tgt, bands)) continue;
    } else {
      detail::fill_random_bands(fld, bands, rng);
    }
    MorphismPair<F> m = detail::materialize_bands(fld, src, tgt, bands);

    // The band rows must already be independent; their pivot columns tell
    // us which columns the free rows have to pick up.
    const std::size_t zero_rows = static_cast<std::size_t>(tgt.zero_mult);
    const std::size_t band_rows = tgt.dim2 - zero_rows;
    std::vector<std::size_t> pivots;
    if (band_rows > 0) {
      Matrix<F> r = m.f2.block(zero_rows, 0, band_rows, src.dim2);
      r.rref(&pivots);
      if (pivots.size() < band_rows) continue;
    }
    std::vector<bool> is_pivot(src.dim2, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::size_t free_row = 0;
    for (std::size_t c = 0; c < src.dim2 && free_row < zero_rows; ++c) {
      if (!is_pivot[c]) m.f2.set(free_row++, c, fld.one());
    }

    const MorphismReport rep = verify_morphism(srep, trep, m);
    if (rep.commutes && rep.f2_rank == tgt.dim2 && rep.f1_rank == tgt.dim1 &&
        rep.kernel_dim == DimVector{alpha, 0}) {
      return m;
    }
  }
  throw ConstructionFailed(
      "projection search exhausted its retry budget for " + pretty(big) +
      " onto " + pretty(quot));
}

}  // namespace kron
