#pragma once

#include <optional>
#include <vector>

#include "kron/invariants.hpp"

namespace kron {

/// Decision procedures on multiplicity vectors.  Everything here is pure
/// integer arithmetic; the questions they answer are field-independent, and
/// the matrix-level constructions (morphisms, completion) rely on them as
/// preconditions.
///
/// Notation used throughout: `sub` has multiplicities a = (a_0, ..., a_n)
/// and the other module b = (b_0, ..., b_n) after zero-padding to a common
/// top index n.

/// True iff an injective morphism ⊕a_iI_i ↪ ⊕b_iI_i exists.  Criterion:
///   a_0 <= b_0   and, for every l >= 1,
///   a_1 + 2a_2 + ... + l*a_l  <=  b_1 + 2b_2 + ... + l*b_l .
bool mono_exists(const PreinjInvariants& sub, const PreinjInvariants& sup);

/// True iff a short exact sequence 0 → sub → mid → βI_0 → 0 exists for some
/// β >= 0.  Same system as mono_exists but with the top inequality an
/// equality:  Σ i·a_i = Σ i·b_i.  β is then forced to the defect difference.
bool ses_with_I0_cokernel(const PreinjInvariants& sub,
                          const PreinjInvariants& mid);

/// True iff a surjection big ↠ quot with kernel αP_0 exists (α >= 0 forced
/// by defects).  Decided by shifting every index up by one on both sides and
/// delegating to ses_with_I0_cokernel(shift(big), shift(quot)).
/// Throws InvalidShape when the defect bookkeeping would make α negative.
bool epi_with_P0_kernel(const PreinjInvariants& big,
                        const PreinjInvariants& quot);

/// The index-shift transform that removes preprojective summands from a
/// short-exact-sequence existence question: given descending target indices
/// d = (d_1,...,d_q), descending middle indices c (length q - n) and
/// ascending preprojective kernel indices a = (a_1,...,a_n), returns the
/// equivalent question about preinjectives only, with every c and d index
/// raised by a_n + 1 and cokernel indices (a_n - a_1, ..., a_n - a_{n-1}, 0).
/// Does not decide existence.  Throws InvalidShape on inconsistent lengths,
/// orderings, or negative entries.
struct SesShiftTriple {
  std::vector<long long> sub;    // shifted middle indices (descending)
  std::vector<long long> mid;    // shifted target indices (descending)
  std::vector<long long> coker;  // cokernel indices (ends with 0)
};
SesShiftTriple ses_shift_out_preprojectives(const std::vector<long long>& d,
                                            const std::vector<long long>& c,
                                            const std::vector<long long>& a);

/// The greedy linking sequence (b_0, ..., b_n) for the pair (a := sub,
/// c := sup), both zero-padded to common top index n.  Recursion, computed
/// downward:
///   b_n = min(a_n, c_n)                                  (only when n >= 2)
///   b_t = floor(min( (Σ_{i>=t} i·a_i - Σ_{i>t} i·b_i) / t,
///                    (Σ_{i>=t} (i+1)·c_i - Σ_{i>t} (i+1)·b_i) / (t+1) ))
///                                                        (2 <= t < n)
///   b_1 = Σ_{i>=1} i·a_i - Σ_{i>=2} i·b_i                (always)
///   b_0 = Σ_{i>=0} (i+1)·c_i - Σ_{i>=1} (i+1)·b_i        (always)
/// The equality formulas for b_1 and b_0 take precedence over the generic
/// branches for small n.  b_1 and b_0 may come out negative; callers
/// interpret.  Entries b_t for t >= 2 are always >= 0.
std::vector<long long> compute_b_sequence(const PreinjInvariants& sub,
                                          const PreinjInvariants& sup);

/// Witness that `sub` is a subfactor of `sup`: the linking module L with
/// sub ↪ L and sup ↠ L, where the embedding has cokernel βI_0 and the
/// projection has kernel αP_0.
struct SubfactorWitness {
  PreinjInvariants linking;       // ⊕ b_i I_i
  std::vector<long long> b_seq;   // raw (b_0, ..., b_n), padded length
  long long alpha = 0;            // defect_of(linking) - defect_of(sup) = multiplicity of P_0
  long long beta = 0;             // defect_of(linking) - defect_of(sub) = multiplicity of I_0
};

/// Decides whether sub is a subfactor of sup (both preinjective).  Computes
/// the b-sequence and accepts iff
///   2·b_1 <= Σ_{i>=1} (i+1)·c_i - Σ_{i>=2} (i+1)·b_i,   b_0 >= a_0,
/// and b_1, b_0 >= 0.  On success the returned witness satisfies
///   dim(linking) = dim(sub) + (0, beta),  dim(sup) = dim(linking) + (alpha, 0).
std::optional<SubfactorWitness> subfactor_check(const PreinjInvariants& sub,
                                                const PreinjInvariants& sup);

/// Preprojective version: identical arithmetic on the multiplicity vectors;
/// the witness's linking vector is to be read as ⊕ b_i P_i.
std::optional<SubfactorWitness> subfactor_check_preproj(
    const PreprojInvariants& sub, const PreprojInvariants& sup);

/// Multiplicity vector of ⊕ a_i I_{i+1} given that of ⊕ a_i I_i.
std::vector<long long> shift_indices_up(const std::vector<long long>& mult);

}  // namespace kron
