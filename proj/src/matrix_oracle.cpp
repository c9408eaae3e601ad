// Matrix-level brute-force searches over GF(p): ground truth for the
// invariant-level criteria, used by property tests and hidden audit commands.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kron/errors.hpp"
#include "kron/field.hpp"
#include "kron/invariants.hpp"
#include "kron/matrix.hpp"
#include "kron/oracle.hpp"
#include "kron/representation.hpp"

namespace kron {
namespace {

using Mat = Matrix<PrimeField>;
using Elim = detail::RowEliminator<PrimeField>;
using Value = PrimeField::value_type;

PreinjInvariants single_index(long long e) {
  std::vector<long long> mult(static_cast<std::size_t>(e) + 1, 0);
  mult.back() = 1;
  return PreinjInvariants(std::move(mult));
}

/// One basis element of the morphism space from a single source summand:
/// the vertex-1 block of columns and the vertex-2 block of columns.
struct HomElement {
  Mat g;
  Mat h;
};

/// Transposed-dual representation: swaps the two vertices and transposes
/// both structure maps.  Sends the module I_n to P_n and vice versa, and
/// exchanges injective and surjective morphisms.
Representation<PrimeField> dual_rep(const Representation<PrimeField>& r) {
  return {r.A.transpose(), r.Aprime.transpose()};
}

/// Basis of morphisms src → tgt, obtained by solving the two commutation
/// equations
///   tgt.A·h = g·src.A   and   tgt.Aprime·h = g·src.Aprime
/// as one linear system in the entries of (g, h).
std::vector<HomElement> hom_basis(const PrimeField& fld,
                                  const Representation<PrimeField>& src,
                                  const Representation<PrimeField>& tgt) {
  const std::size_t sd1 = src.dim1();
  const std::size_t sd2 = src.dim2();
  const std::size_t td1 = tgt.dim1();
  const std::size_t td2 = tgt.dim2();
  const std::size_t ng = td1 * sd1;
  const std::size_t nh = td2 * sd2;
  Mat sys(fld, 2 * td1 * sd2, ng + nh);
  std::size_t row = 0;
  for (int m = 0; m < 2; ++m) {
    const Mat& tm = m == 0 ? tgt.A : tgt.Aprime;
    const Mat& sm = m == 0 ? src.A : src.Aprime;
    for (std::size_t i = 0; i < td1; ++i) {
      for (std::size_t j = 0; j < sd2; ++j) {
        for (std::size_t k = 0; k < td2; ++k) {
          sys.set(row, ng + k * sd2 + j, tm.at(i, k));
        }
        for (std::size_t k = 0; k < sd1; ++k) {
          sys.set(row, i * sd1 + k, fld.neg(sm.at(k, j)));
        }
        ++row;
      }
    }
  }
  const Mat ker = sys.solve_right_kernel();
  std::vector<HomElement> basis;
  basis.reserve(ker.cols());
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    Mat g(fld, td1, sd1);
    Mat h(fld, td2, sd2);
    for (std::size_t i = 0; i < td1; ++i) {
      for (std::size_t k = 0; k < sd1; ++k) {
        g.set(i, k, ker.at(i * sd1 + k, c));
      }
    }
    for (std::size_t k = 0; k < td2; ++k) {
      for (std::size_t j = 0; j < sd2; ++j) {
        h.set(k, j, ker.at(ng + k * sd2 + j, c));
      }
    }
    basis.push_back({std::move(g), std::move(h)});
  }
  return basis;
}

/// Search for an injective morphism from a direct sum of indecomposable
/// summands into a target representation.  Surjectivity questions are
/// answered by the same search through duality: transposing both structure
/// maps exchanges the two vertices, carries I_n to P_n, and turns
/// surjections big → quot into injections D(quot) → D(big), so the
/// surjectivity caller passes `dualize = true` and asks for an injection
/// with the roles of the two modules swapped.
///
/// Enumeration is canonicalized up to automorphisms of the source.  Each
/// maximal run of equal source summands ("block") can be recombined by an
/// invertible change of basis over the summand's scalar endomorphisms, and
/// composing a candidate with such an automorphism preserves injectivity.
/// Moreover an injective candidate restricted to a block must have
/// independent coefficient rows — a dependent combination would kill a
/// diagonal copy of the summand — so within a block exactly the
/// reduced-echelon coefficient tuples are tried: pivots strictly
/// decreasing across the block's slots, pivot coefficient 1, zeros before
/// the pivot and at the other pivots.  That visits exactly one
/// representative per coefficient subspace instead of every tuple — the
/// collapse that makes many equal summands (e.g. kI₀, or kP₀ on the dual
/// side) searchable.
class Search {
 public:
  Search(const PrimeField& fld, const PreinjInvariants& src,
         const PreinjInvariants& tgt, long long budget, bool dualize)
      : fld_(fld), budget_(budget) {
    Representation<PrimeField> trep = canonical_representation(tgt, fld);
    if (dualize) trep = dual_rep(trep);
    td1_ = trep.dim1();
    td2_ = trep.dim2();
    // One block per distinct source index (the summand order of a direct
    // sum is arbitrary, so blocks may be searched in any order).
    struct Block {
      long long eps;
      std::size_t count;
      std::size_t sd1;
      std::size_t sd2;
      std::vector<HomElement> basis;
    };
    std::vector<Block> blocks;
    for (long long e : src.epsilon_list()) {
      if (!blocks.empty() && blocks.back().eps == e) {
        ++blocks.back().count;
        continue;
      }
      Representation<PrimeField> srep =
          canonical_representation(single_index(e), fld);
      if (dualize) srep = dual_rep(srep);
      blocks.push_back(
          {e, 1, srep.dim1(), srep.dim2(), hom_basis(fld, srep, trep)});
    }
    // Most constrained block first: blocks with the fewest echelon
    // candidates (count(dim - count) smallest, negative when the block
    // cannot even fit independently) hit dead ends earliest, which keeps
    // exhaustion of negative instances cheap.
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& a, const Block& b) {
                       const auto cost = [](const Block& x) {
                         const long long k = static_cast<long long>(x.count);
                         const long long d =
                             static_cast<long long>(x.basis.size());
                         return k * (d - k);
                       };
                       return cost(a) < cost(b);
                     });
    for (const Block& blk : blocks) {
      for (std::size_t i = 0; i < blk.count; ++i) {
        slots_.push_back({blk.sd1, blk.sd2, i, blk.basis});
      }
    }
  }

  bool run_mono() {
    Elim v1(fld_, td1_);
    Elim v2(fld_, td2_);
    std::vector<std::size_t> pivots;
    return mono_dfs(0, v1, v2, pivots);
  }

 private:
  struct Slot {
    std::size_t sd1;
    std::size_t sd2;
    std::size_t block_pos;  ///< position within its run of equal summands
    std::vector<HomElement> basis;
  };

  void tick() {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("matrix oracle exceeded its node budget of " +
                           std::to_string(budget_));
    }
  }

  /// Column `col` of the candidate vertex-v block for coefficient vector c.
  std::vector<Value> combine_column(const Slot& slot,
                                    const std::vector<Value>& c, bool vertex1,
                                    std::size_t col) const {
    const std::size_t height = vertex1 ? td1_ : td2_;
    std::vector<Value> out(height, fld_.zero());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (fld_.is_zero(c[i])) continue;
      const Mat& b = vertex1 ? slot.basis[i].g : slot.basis[i].h;
      for (std::size_t r = 0; r < height; ++r) {
        out[r] = fld_.add(out[r], fld_.mul(c[i], b.at(r, col)));
      }
    }
    return out;
  }

  /// Advances the base-p odometer restricted to the given positions;
  /// returns false once it wraps back to all zeros.
  bool advance_at(std::vector<Value>& c,
                  const std::vector<std::size_t>& pos) const {
    for (std::size_t i : pos) {
      if (++c[i] < fld_.modulus()) return true;
      c[i] = 0;
    }
    return false;
  }

  /// Positions strictly after `pivot` that are not already block pivots:
  /// the free coefficients of an echelon row with that pivot.
  std::vector<std::size_t> free_positions(
      std::size_t pivot, std::size_t d,
      const std::vector<std::size_t>& pivots) const {
    std::vector<std::size_t> free;
    for (std::size_t j = pivot + 1; j < d; ++j) {
      if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) {
        free.push_back(j);
      }
    }
    return free;
  }

  bool mono_dfs(std::size_t level, const Elim& v1, const Elim& v2,
                std::vector<std::size_t>& pivots) {
    if (level == slots_.size()) return true;
    if (slots_[level].block_pos == 0) {
      std::vector<std::size_t> fresh;
      return mono_slot(level, v1, v2, fresh);
    }
    return mono_slot(level, v1, v2, pivots);
  }

  bool mono_slot(std::size_t level, const Elim& v1, const Elim& v2,
                 std::vector<std::size_t>& pivots) {
    const Slot& slot = slots_[level];
    const std::size_t d = slot.basis.size();
    const std::size_t hi = pivots.empty() ? d : pivots.back();
    std::vector<Value> c(d, 0);
    for (std::size_t p = hi; p-- > 0;) {
      const std::vector<std::size_t> free = free_positions(p, d, pivots);
      std::fill(c.begin(), c.end(), 0);
      c[p] = 1;
      do {
        tick();
        Elim nv1 = v1;
        Elim nv2 = v2;
        bool ok = true;
        for (std::size_t col = 0; ok && col < slot.sd1; ++col) {
          ok = nv1.insert(combine_column(slot, c, true, col));
        }
        for (std::size_t col = 0; ok && col < slot.sd2; ++col) {
          ok = nv2.insert(combine_column(slot, c, false, col));
        }
        if (ok) {
          pivots.push_back(p);
          const bool found = mono_dfs(level + 1, nv1, nv2, pivots);
          pivots.pop_back();
          if (found) return true;
        }
      } while (advance_at(c, free));
    }
    return false;
  }

  PrimeField fld_;
  long long budget_;
  long long nodes_ = 0;
  std::size_t td1_ = 0;
  std::size_t td2_ = 0;
  std::vector<Slot> slots_;
};

OracleCache::Key cache_key(const PreinjInvariants& src,
                           const PreinjInvariants& tgt, std::uint64_t p) {
  return {src.mult(), tgt.mult(), p};
}

}  // namespace

bool mono_exists_bruteforce(const PreinjInvariants& sub,
                            const PreinjInvariants& sup, std::uint64_t p,
                            long long node_budget, OracleCache* cache) {
  const OracleCache::Key key = cache_key(sub, sup, p);
  if (cache) {
    const auto it = cache->mono.find(key);
    if (it != cache->mono.end()) return it->second;
  }
  bool answer = false;
  const DimVector ds = dim_of(sub);
  const DimVector dt = dim_of(sup);
  if (ds.d1 <= dt.d1 && ds.d2 <= dt.d2) {
    const PrimeField fld(p);
    answer = Search(fld, sub, sup, node_budget, /*dualize=*/false).run_mono();
  }
  if (cache) cache->mono.emplace(key, answer);
  return answer;
}

bool epi_exists_bruteforce(const PreinjInvariants& big,
                           const PreinjInvariants& quot, std::uint64_t p,
                           long long node_budget, OracleCache* cache) {
  const OracleCache::Key key = cache_key(big, quot, p);
  if (cache) {
    const auto it = cache->epi.find(key);
    if (it != cache->epi.end()) return it->second;
  }
  bool answer = false;
  const DimVector db = dim_of(big);
  const DimVector dq = dim_of(quot);
  if (db.d1 >= dq.d1 && db.d2 >= dq.d2) {
    // A surjection big → quot exists iff an injection D(quot) → D(big)
    // exists between the transposed duals, so run the injectivity search
    // with dualized representations and the two modules swapped.
    const PrimeField fld(p);
    answer = Search(fld, quot, big, node_budget, /*dualize=*/true).run_mono();
  }
  if (cache) cache->epi.emplace(key, answer);
  return answer;
}

std::vector<PreinjInvariants> preinjectives_with_dim2_at_most(long long bound) {
  std::vector<PreinjInvariants> out;
  std::vector<long long> mult;
  // Depth-first over indices ascending; `used` tracks Σ (e+1)·a_e so far.
  // A state is recorded only when its last entry is nonzero (or it is the
  // empty vector), so each normalized multiplicity vector appears once.
  const auto rec = [&](const auto& self, long long used) -> void {
    if (mult.empty() || mult.back() != 0) out.emplace_back(mult);
    const long long e = static_cast<long long>(mult.size());
    if (used + e + 1 > bound) return;
    mult.push_back(0);
    for (long long k = 0; used + k * (e + 1) <= bound; ++k) {
      mult.back() = k;
      self(self, used + k * (e + 1));
    }
    mult.pop_back();
  };
  rec(rec, 0);
  // Ascending vertex-2 dimension, then lexicographic on the vectors.
  std::sort(out.begin(), out.end(),
            [](const PreinjInvariants& a, const PreinjInvariants& b) {
              const DimVector da = dim_of(a);
              const DimVector db = dim_of(b);
              if (da.d2 != db.d2) return da.d2 < db.d2;
              return a.mult() < b.mult();
            });
  return out;
}

bool subfactor_bruteforce_matrix(const PreinjInvariants& sub,
                                 const PreinjInvariants& sup, std::uint64_t p,
                                 long long node_budget, OracleCache* cache) {
  const DimVector ds = dim_of(sub);
  const DimVector dt = dim_of(sup);
  if (ds.d1 > dt.d1 || ds.d2 > dt.d2) return false;
  for (const PreinjInvariants& linking :
       preinjectives_with_dim2_at_most(dt.d2)) {
    const DimVector dl = dim_of(linking);
    if (dl.d1 < ds.d1 || dl.d2 < ds.d2 || dl.d1 > dt.d1 || dl.d2 > dt.d2) {
      continue;
    }
    if (mono_exists_bruteforce(sub, linking, p, node_budget, cache) &&
        epi_exists_bruteforce(sup, linking, p, node_budget, cache)) {
      return true;
    }
  }
  return false;
}

}  // namespace kron
