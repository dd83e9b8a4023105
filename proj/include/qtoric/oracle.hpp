#pragma once

// Combinatorial cross-checks that share no code with the quotient engine.
// Class-derived data enters only through the row callbacks passed in.

#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qtoric::oracle {

/// Number of ones in the binary representation of n.
inline int alpha(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("alpha: n must be positive");
  return std::popcount(n);
}

/// Parity of C(a, b): odd exactly when the bits of b are a subset of those of a.
inline int binom_parity(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) {
    throw std::invalid_argument("binom_parity: need 0 <= b <= a, got a=" + std::to_string(a) +
                                " b=" + std::to_string(b));
  }
  return (static_cast<std::uint64_t>(b) & ~static_cast<std::uint64_t>(a)) == 0 ? 1 : 0;
}

/// Parity of C(a, b) by accumulating Pascal's triangle mod 2.
inline int binom_parity_bruteforce(int a, int b) {
  if (a < 0 || a > 64 || b < 0 || b > a) {
    throw std::invalid_argument("binom_parity_bruteforce: need 0 <= b <= a <= 64");
  }
  std::vector<int> row{1};
  for (int r = 1; r <= a; ++r) {
    std::vector<int> next(static_cast<std::size_t>(r + 1), 1);
    for (int k = 1; k < r; ++k) next[k] = (row[k - 1] + row[k]) % 2;
    row = std::move(next);
  }
  return row[static_cast<std::size_t>(b)];
}

struct ParityWitness {
  int n = 0;
  int k = 0;
  int recurrence_value = 0;
  int lucas_value = 0;
  /// -1 when n is beyond the class-computation cap.
  int bruteforce_value = -1;

  bool agrees() const {
    return recurrence_value == lucas_value &&
           (bruteforce_value < 0 || bruteforce_value == recurrence_value);
  }
};

/// Row n of a sigma table: entries for k = 0..n-1.
using SigmaRowSource = std::function<std::vector<int>(int n)>;

struct SigmaCrossCheck {
  std::vector<ParityWitness> witnesses;
  std::vector<ParityWitness> disagreements;
  bool passed() const { return disagreements.empty(); }
};

/// Compares, for every n <= n_max and k < n, the recurrence row, the
/// parity of C(n+k, k), and (for n <= class_cap) the class-derived row.
inline SigmaCrossCheck cross_check_sigma(int n_max, const SigmaRowSource& recurrence,
                                         const SigmaRowSource& from_class, int class_cap) {
  if (n_max < 1) throw std::invalid_argument("cross_check_sigma: n_max must be positive");
  SigmaCrossCheck result;
  for (int n = 1; n <= n_max; ++n) {
    const auto rec = recurrence(n);
    std::vector<int> cls;
    if (from_class && n <= class_cap) cls = from_class(n);
    if (static_cast<int>(rec.size()) != n ||
        (!cls.empty() && static_cast<int>(cls.size()) != n)) {
      throw std::logic_error("cross_check_sigma: row " + std::to_string(n) + " has wrong length");
    }
    for (int k = 0; k < n; ++k) {
      ParityWitness w{n, k, rec[k], binom_parity(n + k, k), cls.empty() ? -1 : cls[k]};
      if (!w.agrees()) result.disagreements.push_back(w);
      result.witnesses.push_back(w);
    }
  }
  return result;
}

}  // namespace qtoric::oracle
