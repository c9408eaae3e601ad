#include "kron/oracle.hpp"

#include <algorithm>

#include "kron/errors.hpp"

namespace kron {

namespace {

/// Checks the full coupled system for a complete candidate u.
bool satisfies_system(const std::vector<long long>& u,
                      const std::vector<long long>& a,
                      const std::vector<long long>& c) {
  const long long n = static_cast<long long>(u.size()) - 1;
  if (u[0] < a[0]) return false;
  // Suffix inequalities with weight i on the a-side, l = 2..n, and the
  // l = 1 equality.
  long long su = 0, sa = 0;
  for (long long l = n; l >= 2; --l) {
    su += l * u[static_cast<std::size_t>(l)];
    sa += l * a[static_cast<std::size_t>(l)];
    if (su > sa) return false;
  }
  if (n >= 1) {
    su += u[1];
    sa += a[1];
  }
  if (su != sa) return false;
  // Suffix inequalities with weight i+1 on the c-side, l = 1..n, and the
  // l = 0 equality.
  long long tu = 0, tc = 0;
  for (long long l = n; l >= 1; --l) {
    tu += (l + 1) * u[static_cast<std::size_t>(l)];
    tc += (l + 1) * c[static_cast<std::size_t>(l)];
    if (tu > tc) return false;
  }
  tu += u[0];
  tc += c[0];
  return tu == tc;
}

bool search(std::vector<long long>& u, long long t,
            const std::vector<long long>& a, const std::vector<long long>& c,
            const std::vector<long long>& box) {
  const long long n = static_cast<long long>(u.size()) - 1;
  if (t == 1) {
    // u_1 forced by the weight-i equality, u_0 by the weight-(i+1) equality.
    long long s = 0;
    for (long long i = 1; i <= n; ++i) s += i * a[static_cast<std::size_t>(i)];
    for (long long i = 2; i <= n; ++i) s -= i * u[static_cast<std::size_t>(i)];
    if (s < 0) return false;
    u[1] = s;
    long long z = 0;
    for (long long i = 0; i <= n; ++i) z += (i + 1) * c[static_cast<std::size_t>(i)];
    for (long long i = 1; i <= n; ++i) z -= (i + 1) * u[static_cast<std::size_t>(i)];
    if (z < 0) return false;
    u[0] = z;
    return satisfies_system(u, a, c);
  }
  for (long long v = 0; v <= box[static_cast<std::size_t>(t)]; ++v) {
    u[static_cast<std::size_t>(t)] = v;
    if (search(u, t - 1, a, c, box)) return true;
  }
  u[static_cast<std::size_t>(t)] = 0;
  return false;
}

}  // namespace

bool linking_system_feasible(const PreinjInvariants& sub,
                             const PreinjInvariants& sup) {
  const std::size_t len = std::max(sub.size(), sup.size());
  if (len > 9) {
    throw BudgetExceeded("linking system search capped at top index 8, got " +
                         std::to_string(len - 1));
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (sub.at(i) > 6 || sup.at(i) > 6) {
      throw BudgetExceeded("linking system search capped at multiplicity 6");
    }
  }
  if (len == 0) return true;  // zero module is a subfactor of itself
  const long long n = static_cast<long long>(len) - 1;
  std::vector<long long> a(len, 0), c(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = sub.at(i);
    c[i] = sup.at(i);
  }
  if (n == 0) {
    // Single forced value u_0 = c_0; system reduces to u_0 >= a_0.
    return c[0] >= a[0];
  }
  // Per-coordinate box bounds from the l = t suffix inequalities with all
  // other u's at zero: t·u_t <= Σ_{i>=t} i·a_i and
  // (t+1)·u_t <= Σ_{i>=t} (i+1)·c_i.
  std::vector<long long> box(len, 0);
  for (long long t = 2; t <= n; ++t) {
    long long sa = 0, sc = 0;
    for (long long i = t; i <= n; ++i) {
      sa += i * a[static_cast<std::size_t>(i)];
      sc += (i + 1) * c[static_cast<std::size_t>(i)];
    }
    box[static_cast<std::size_t>(t)] = std::min(sa / t, sc / (t + 1));
  }
  std::vector<long long> u(len, 0);
  return search(u, n, a, c, box);
}

}  // namespace kron
