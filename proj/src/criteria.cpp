#include "kron/criteria.hpp"

#include <algorithm>

namespace kron {

namespace {

long long floor_div(long long num, long long den) {
  // den > 0 everywhere in this file.
  long long q = num / den;
  if ((num % den != 0) && (num < 0)) --q;
  return q;
}

std::size_t padded_len(const PreinjInvariants& x, const PreinjInvariants& y) {
  return std::max(x.size(), y.size());
}

}  // namespace

std::vector<long long> shift_indices_up(const std::vector<long long>& mult) {
  std::vector<long long> r;
  r.reserve(mult.size() + 1);
  r.push_back(0);
  r.insert(r.end(), mult.begin(), mult.end());
  return r;
}

bool mono_exists(const PreinjInvariants& sub, const PreinjInvariants& sup) {
  if (sub.at(0) > sup.at(0)) return false;
  const std::size_t len = padded_len(sub, sup);
  long long wa = 0, wb = 0;
  for (std::size_t l = 1; l < len; ++l) {
    wa += static_cast<long long>(l) * sub.at(l);
    wb += static_cast<long long>(l) * sup.at(l);
    if (wa > wb) return false;
  }
  return true;
}

bool ses_with_I0_cokernel(const PreinjInvariants& sub,
                          const PreinjInvariants& mid) {
  if (sub.at(0) > mid.at(0)) return false;
  const std::size_t len = padded_len(sub, mid);
  long long wa = 0, wb = 0;
  for (std::size_t l = 1; l < len; ++l) {
    wa += static_cast<long long>(l) * sub.at(l);
    wb += static_cast<long long>(l) * mid.at(l);
    if (wa > wb) return false;
  }
  return wa == wb;
}

bool epi_with_P0_kernel(const PreinjInvariants& big,
                        const PreinjInvariants& quot) {
  const long long alpha = defect_of(quot) - defect_of(big);
  if (alpha < 0) {
    throw InvalidShape(
        "quotient would need kernel multiplicity " + std::to_string(alpha) +
        " (quotient has fewer summands than the source)");
  }
  return ses_with_I0_cokernel(PreinjInvariants(shift_indices_up(big.mult())),
                              PreinjInvariants(shift_indices_up(quot.mult())));
}

SesShiftTriple ses_shift_out_preprojectives(const std::vector<long long>& d,
                                            const std::vector<long long>& c,
                                            const std::vector<long long>& a) {
  const std::size_t q = d.size();
  const std::size_t n = a.size();
  if (n == 0) throw InvalidShape("empty preprojective kernel index list");
  if (q < n || c.size() != q - n) {
    throw InvalidShape("index list lengths: need len(c) = len(d) - len(a), got " +
                       std::to_string(c.size()) + " vs " + std::to_string(q) +
                       " - " + std::to_string(n));
  }
  auto check_nonneg = [](const std::vector<long long>& v, const char* who) {
    for (long long x : v) {
      if (x < 0) throw InvalidShape(std::string("negative index in ") + who);
    }
  };
  check_nonneg(d, "target list");
  check_nonneg(c, "middle list");
  check_nonneg(a, "kernel list");
  if (!std::is_sorted(d.rbegin(), d.rend()) ||
      !std::is_sorted(c.rbegin(), c.rend())) {
    throw InvalidShape("target and middle index lists must be descending");
  }
  if (!std::is_sorted(a.begin(), a.end())) {
    throw InvalidShape("kernel index list must be ascending");
  }
  const long long shift = a.back() + 1;
  SesShiftTriple out;
  out.sub.reserve(c.size());
  for (long long x : c) out.sub.push_back(x + shift);
  out.mid.reserve(d.size());
  for (long long x : d) out.mid.push_back(x + shift);
  out.coker.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) out.coker.push_back(a.back() - a[i]);
  out.coker.push_back(0);
  return out;
}

std::vector<long long> compute_b_sequence(const PreinjInvariants& sub,
                                          const PreinjInvariants& sup) {
  const std::size_t len = padded_len(sub, sup);
  if (len == 0) return {};
  const long long n = static_cast<long long>(len) - 1;
  auto a = [&](long long i) { return sub.at(static_cast<std::size_t>(i)); };
  auto c = [&](long long i) { return sup.at(static_cast<std::size_t>(i)); };
  std::vector<long long> b(len, 0);

  if (n >= 2) {
    b[static_cast<std::size_t>(n)] = std::min(a(n), c(n));
    for (long long t = n - 1; t >= 2; --t) {
      long long sa = 0, sc = 0;
      for (long long i = t; i <= n; ++i) {
        sa += i * a(i);
        sc += (i + 1) * c(i);
      }
      for (long long i = t + 1; i <= n; ++i) {
        sa -= i * b[static_cast<std::size_t>(i)];
        sc -= (i + 1) * b[static_cast<std::size_t>(i)];
      }
      b[static_cast<std::size_t>(t)] =
          std::min(floor_div(sa, t), floor_div(sc, t + 1));
    }
  }
  if (n >= 1) {
    long long s = 0;
    for (long long i = 1; i <= n; ++i) s += i * a(i);
    for (long long i = 2; i <= n; ++i) s -= i * b[static_cast<std::size_t>(i)];
    b[1] = s;
  }
  {
    long long s = 0;
    for (long long i = 0; i <= n; ++i) s += (i + 1) * c(i);
    for (long long i = 1; i <= n; ++i) s -= (i + 1) * b[static_cast<std::size_t>(i)];
    b[0] = s;
  }
  return b;
}

std::optional<SubfactorWitness> subfactor_check(const PreinjInvariants& sub,
                                                const PreinjInvariants& sup) {
  std::vector<long long> b = compute_b_sequence(sub, sup);
  const long long n = static_cast<long long>(b.size()) - 1;
  const long long b0 = n >= 0 ? b[0] : 0;
  const long long b1 = n >= 1 ? b[1] : 0;

  long long rhs = 0;  // Σ_{i>=1} (i+1)·c_i - Σ_{i>=2} (i+1)·b_i
  for (long long i = 1; i <= n; ++i) {
    rhs += (i + 1) * sup.at(static_cast<std::size_t>(i));
  }
  for (long long i = 2; i <= n; ++i) {
    rhs -= (i + 1) * b[static_cast<std::size_t>(i)];
  }

  if (b0 < 0 || b1 < 0 || 2 * b1 > rhs || b0 < sub.at(0)) return std::nullopt;

  SubfactorWitness w;
  w.linking = PreinjInvariants(b);
  w.b_seq = std::move(b);
  w.alpha = defect_of(w.linking) - defect_of(sup);
  w.beta = defect_of(w.linking) - defect_of(sub);
  return w;
}

std::optional<SubfactorWitness> subfactor_check_preproj(
    const PreprojInvariants& sub, const PreprojInvariants& sup) {
  return subfactor_check(sub.as_preinjective_data(),
                         sup.as_preinjective_data());
}

}  // namespace kron
