#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "kron/invariants.hpp"

namespace kron {

/// Independent ground truth for subfactor_check: exhaustive search for a
/// nonnegative integer vector (u_0, ..., u_n) satisfying the coupled system
///   u_0 >= a_0
///   Σ_{i=l..n} i·u_i     <= Σ_{i=l..n} i·a_i        for l = 2..n
///   Σ_{i=1..n} i·u_i      = Σ_{i=1..n} i·a_i
///   Σ_{i=0..n} (i+1)·u_i  = Σ_{i=0..n} (i+1)·c_i
///   Σ_{i=l..n} (i+1)·u_i <= Σ_{i=l..n} (i+1)·c_i    for l = 1..n
/// where a = sub, c = sup, padded to common top index n.  The search
/// enumerates (u_2, ..., u_n) inside per-coordinate box bounds implied by
/// the suffix inequalities; u_1 and u_0 are forced by the equalities.
///
/// Caps: n <= 8 and multiplicities <= 6; beyond that throws BudgetExceeded.
bool linking_system_feasible(const PreinjInvariants& sub,
                             const PreinjInvariants& sup);

/// Optional caller-owned memoization for the matrix-level oracles.  The
/// oracles themselves keep no state; sweeps that repeat (source, target,
/// prime) queries can pass one cache to answer each query once.
struct OracleCache {
  using Key =
      std::tuple<std::vector<long long>, std::vector<long long>, std::uint64_t>;
  std::map<Key, bool> mono;
  std::map<Key, bool> epi;
};

/// Default cap on the number of candidate morphisms a matrix-level search
/// may evaluate before throwing BudgetExceeded.
inline constexpr long long kOracleNodeBudget = 1LL << 26;

/// Matrix-level ground truth for mono_exists: builds the canonical
/// representations over GF(p), solves the two commutation equations for
/// morphisms out of each source summand as one linear system, and
/// exhaustively searches coefficient combinations of the solution bases
/// (depth-first across source summands, keeping partial column spaces
/// independent at both vertices, pruning branches whose partial map is
/// already non-injective).  Candidates are enumerated up to automorphisms
/// of the source: within each run of equal summands only reduced-echelon
/// coefficient tuples are visited, which preserves existence and collapses
/// the blow-up on sources with many equal summands.  Returns true iff a
/// morphism with both components of full column rank exists over GF(p).
bool mono_exists_bruteforce(const PreinjInvariants& sub,
                            const PreinjInvariants& sup, std::uint64_t p,
                            long long node_budget = kOracleNodeBudget,
                            OracleCache* cache = nullptr);

/// Matrix-level search for a surjective morphism big → quot over GF(p).
/// Decided through duality: transposing both structure maps exchanges the
/// two vertices and turns surjections big → quot into injections
/// D(quot) → D(big), so this runs the injectivity search of
/// mono_exists_bruteforce on the dualized representations — which also
/// collapses quotients with many equal summands (e.g. kI₀) to echelon
/// representatives on the dual source side.
bool epi_exists_bruteforce(const PreinjInvariants& big,
                           const PreinjInvariants& quot, std::uint64_t p,
                           long long node_budget = kOracleNodeBudget,
                           OracleCache* cache = nullptr);

/// All preinjective invariant vectors with Σ (e+1)·a_e ≤ bound, in a
/// deterministic order (ascending vertex-2 dimension, then lexicographic).
std::vector<PreinjInvariants> preinjectives_with_dim2_at_most(long long bound);

/// Matrix-level ground truth for subfactor_check over GF(p): enumerates
/// every candidate module L in the dimension sandwich dim(sub) ≤ dim(L) ≤
/// dim(sup) and reports whether some L admits both a monomorphism sub → L
/// and an epimorphism sup → L at matrix level.  Candidates range over
/// preinjectives only: any matrix-level witness is a quotient of sup, and
/// quotients of preinjectives are preinjective.
bool subfactor_bruteforce_matrix(const PreinjInvariants& sub,
                                 const PreinjInvariants& sup, std::uint64_t p,
                                 long long node_budget = kOracleNodeBudget,
                                 OracleCache* cache = nullptr);

}  // namespace kron
