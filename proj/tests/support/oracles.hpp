#pragma once

// Test-side oracles. Each recomputes a quantity by brute force, without the
// library routine it is compared against.

#include <cstdint>
#include <functional>
#include <vector>

#include "pdloop/series.hpp"

namespace oracle {

using pdloop::BigInt;
using pdloop::PoincareSeries;

/// Number of words of each degree <= N over letters of the given degrees,
/// by walking every word.
inline PoincareSeries count_words(const std::vector<int>& letterDegrees, int N) {
  std::vector<BigInt> c(static_cast<std::size_t>(N) + 1);
  std::function<void(int)> walk = [&](int degree) {
    c[static_cast<std::size_t>(degree)] += 1;
    for (int d : letterDegrees) {
      if (degree + d <= N) walk(degree + d);
    }
  };
  walk(0);
  return PoincareSeries(N, std::move(c));
}

/// Monomials x^i y^j with i|x| + j|y| = d, counted per degree by solving
/// for i.
inline PoincareSeries count_monomials(int degX, int degY, int N) {
  std::vector<BigInt> c(static_cast<std::size_t>(N) + 1);
  for (int d = 0; d <= N; ++d) {
    for (int j = 0; j * degY <= d; ++j) {
      if ((d - j * degY) % degX == 0) c[static_cast<std::size_t>(d)] += 1;
    }
  }
  return PoincareSeries(N, std::move(c));
}

inline int moebius(int n) {
  int mu = 1;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0) continue;
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Aperiodic necklaces of length n over k letters.
inline BigInt necklace(int k, int n) {
  BigInt sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    BigInt power = 1;
    for (int i = 0; i < n / d; ++i) power *= k;
    sum += moebius(d) * power;
  }
  return sum / n;
}

/// Every word of length <= maxLength over k letters that is strictly
/// smaller than all of its proper rotations.
inline std::vector<std::vector<int>> brute_lyndon(int k, int maxLength) {
  std::vector<std::vector<int>> out;
  std::vector<int> w;
  std::function<void()> walk = [&] {
    if (!w.empty()) {
      bool ok = true;
      for (std::size_t i = 1; i < w.size() && ok; ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) {
          const int a = w[j], b = w[(i + j) % w.size()];
          if (a != b) {
            ok = a < b;
            break;
          }
          if (j + 1 == w.size()) ok = false;  // periodic
        }
      }
      if (ok) out.push_back(w);
    }
    if (static_cast<int>(w.size()) == maxLength) return;
    for (int l = 0; l < k; ++l) {
      w.push_back(l);
      walk();
      w.pop_back();
    }
  };
  walk();
  return out;
}

/// numer / denom by long division with machine integers; denom[0] = 1.
inline std::vector<std::int64_t> divide(const std::vector<std::int64_t>& numer, const std::vector<std::int64_t>& denom,
                                        int N) {
  std::vector<std::int64_t> q(static_cast<std::size_t>(N) + 1, 0);
  std::vector<std::int64_t> rem(static_cast<std::size_t>(N) + 1, 0);
  for (std::size_t i = 0; i < numer.size() && i < rem.size(); ++i) rem[i] = numer[i];
  for (std::size_t d = 0; d < q.size(); ++d) {
    q[d] = rem[d];
    for (std::size_t j = 0; j < denom.size() && d + j < rem.size(); ++j) rem[d + j] -= q[d] * denom[j];
  }
  return q;
}

inline PoincareSeries series_of(const std::vector<std::int64_t>& c, int N) {
  std::vector<BigInt> b;
  for (auto v : c) b.emplace_back(v);
  return PoincareSeries(N, std::move(b));
}

}  // namespace oracle
