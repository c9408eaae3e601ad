#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kron/errors.hpp"

namespace kron {

/// Dimension vector of a Kronecker module: dimensions at vertex 1 and
/// vertex 2.  The indecomposable preinjective I_n has dimension (n, n+1);
/// the indecomposable preprojective P_n has (n+1, n).
struct DimVector {
  long long d1 = 0;
  long long d2 = 0;
  bool operator==(const DimVector&) const = default;
};

/// Multiplicity vector (a_0, ..., a_n) of a preinjective Kronecker module
/// ⊕ a_i I_i.  Canonical form: trailing zeros trimmed, so the zero module is
/// the empty vector and size() - 1 is the top occurring index otherwise.
class PreinjInvariants {
 public:
  PreinjInvariants() = default;

  explicit PreinjInvariants(std::vector<long long> mult) : mult_(std::move(mult)) {
    for (long long v : mult_) {
      if (v < 0) throw InvalidShape("negative multiplicity in invariant vector");
    }
    while (!mult_.empty() && mult_.back() == 0) mult_.pop_back();
  }

  /// a_i := number of occurrences of i in the index multiset.
  static PreinjInvariants from_epsilon_list(const std::vector<long long>& eps);

  const std::vector<long long>& mult() const { return mult_; }

  /// Multiplicity of I_i; zero beyond the stored length.
  long long at(std::size_t i) const {
    return i < mult_.size() ? mult_[i] : 0;
  }

  /// Stored length (top index + 1); zero for the zero module.
  std::size_t size() const { return mult_.size(); }

  bool is_zero() const { return mult_.empty(); }

  /// Expansion into the index multiset, sorted descending.
  std::vector<long long> epsilon_list() const;

  bool operator==(const PreinjInvariants&) const = default;

 private:
  std::vector<long long> mult_;
};

/// Multiplicity vector of a preprojective module ⊕ a_i P_i.  Same data
/// layout as the preinjective case; all decision arithmetic is shared by
/// reinterpreting the vector (see subfactor_check_preproj), and every
/// pencil-level question about preprojectives is answered on transposes.
class PreprojInvariants {
 public:
  PreprojInvariants() = default;
  explicit PreprojInvariants(std::vector<long long> mult)
      : data_(std::move(mult)) {}

  const std::vector<long long>& mult() const { return data_.mult(); }
  long long at(std::size_t i) const { return data_.at(i); }
  std::size_t size() const { return data_.size(); }
  bool is_zero() const { return data_.is_zero(); }

  /// The same multiplicities read as preinjective data (for shared
  /// arithmetic).
  const PreinjInvariants& as_preinjective_data() const { return data_; }

  bool operator==(const PreprojInvariants&) const = default;

 private:
  PreinjInvariants data_;
};

/// (Σ i·a_i, Σ (i+1)·a_i): dimension vector of ⊕ a_i I_i.
DimVector dim_of(const PreinjInvariants& m);
/// (Σ (i+1)·a_i, Σ i·a_i): dimension vector of ⊕ a_i P_i.
DimVector dim_of(const PreprojInvariants& m);

/// Defect (dim at vertex 2 minus dim at vertex 1).  Each I_i contributes +1,
/// so this is Σ a_i for preinjectives; each P_i contributes -1.
long long defect_of(const PreinjInvariants& m);
long long defect_of(const PreprojInvariants& m);

/// Human-readable direct-sum notation, e.g. "I3 ⊕ 2I2 ⊕ I1 ⊕ 2I0" (summands
/// descending).  The zero module prints as "0".  `letter` selects the
/// summand family symbol ('I' or 'P').
std::string pretty(const std::vector<long long>& mult, char letter = 'I');
std::string pretty(const PreinjInvariants& m);
std::string pretty(const PreprojInvariants& m);

/// Renders (a_0, ..., a_n) as "(a0,a1,...)".
std::string mult_string(const std::vector<long long>& mult);

}  // namespace kron
