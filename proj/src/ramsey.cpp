#include "vmc/ramsey.hpp"

#include <climits>
#include <string>

#include "vmc/graph.hpp"

namespace vmc {

namespace {

long long binomial(int top, int bottom) {
  if (bottom < 0 || bottom > top) return 0;
  bottom = std::min(bottom, top - bottom);
  unsigned __int128 r = 1;
  for (int i = 1; i <= bottom; ++i) {
    r = r * static_cast<unsigned>(top - bottom + i) / static_cast<unsigned>(i);
    if (r > static_cast<unsigned __int128>(LLONG_MAX))
      throw Error("ramsey: upper bound overflows");
  }
  return static_cast<long long>(r);
}

}  // namespace

RamseyValue ramsey(int n, int m) {
  if (n < 1 || m < 1)
    throw Error("ramsey: arguments must be positive, got (" + std::to_string(n) +
                "," + std::to_string(m) + ")");
  if (n == 1 || m == 1) return {1, true};
  if (n == 2) return {m, true};
  if (m == 2) return {n, true};
  if (n <= 4 && m <= 4) {
    if (n == 3 && m == 3) return {6, true};
    if (n == 4 && m == 4) return {18, true};
    return {9, true};  // (3,4) and (4,3)
  }
  return {binomial(n + m - 2, n - 1), false};
}

}  // namespace vmc
