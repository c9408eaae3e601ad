#include "kron/invariants.hpp"

#include <algorithm>
#include <sstream>

namespace kron {

PreinjInvariants PreinjInvariants::from_epsilon_list(
    const std::vector<long long>& eps) {
  long long top = -1;
  for (long long e : eps) {
    if (e < 0) throw InvalidShape("negative index in epsilon list");
    top = std::max(top, e);
  }
  std::vector<long long> mult(static_cast<std::size_t>(top + 1), 0);
  for (long long e : eps) ++mult[static_cast<std::size_t>(e)];
  return PreinjInvariants(std::move(mult));
}

std::vector<long long> PreinjInvariants::epsilon_list() const {
  std::vector<long long> eps;
  for (std::size_t i = mult_.size(); i-- > 0;) {
    for (long long k = 0; k < mult_[i]; ++k) eps.push_back(static_cast<long long>(i));
  }
  return eps;
}

DimVector dim_of(const PreinjInvariants& m) {
  DimVector d;
  const auto& a = m.mult();
  for (std::size_t i = 0; i < a.size(); ++i) {
    d.d1 += static_cast<long long>(i) * a[i];
    d.d2 += static_cast<long long>(i + 1) * a[i];
  }
  return d;
}

DimVector dim_of(const PreprojInvariants& m) {
  const DimVector d = dim_of(m.as_preinjective_data());
  return DimVector{d.d2, d.d1};
}

long long defect_of(const PreinjInvariants& m) {
  long long s = 0;
  for (long long v : m.mult()) s += v;
  return s;
}

long long defect_of(const PreprojInvariants& m) {
  return -defect_of(m.as_preinjective_data());
}

std::string pretty(const std::vector<long long>& mult, char letter) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = mult.size(); i-- > 0;) {
    if (mult[i] == 0) continue;
    if (!first) os << " ⊕ ";
    if (mult[i] != 1) os << mult[i];
    os << letter << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

std::string pretty(const PreinjInvariants& m) { return pretty(m.mult(), 'I'); }
std::string pretty(const PreprojInvariants& m) { return pretty(m.mult(), 'P'); }

std::string mult_string(const std::vector<long long>& mult) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < mult.size(); ++i) {
    if (i) os << ",";
    os << mult[i];
  }
  os << ")";
  return os.str();
}

}  // namespace kron
