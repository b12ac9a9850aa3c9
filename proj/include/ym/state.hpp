#ifndef YM_STATE_HPP_
#define YM_STATE_HPP_

#include <array>
#include <cmath>
#include <cstddef>

namespace ym {

// Conserved state with up to two components; the active count lives in the
// ProblemDef. Unused slots are kept at zero.
using State = std::array<double, 2>;

// 2x2 matrix, row major.
using Mat2 = std::array<std::array<double, 2>, 2>;

inline State add(const State& a, const State& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline State sub(const State& a, const State& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline State scale(double s, const State& a) { return {s * a[0], s * a[1]}; }

inline State axpy(double s, const State& a, const State& b) {
  return {s * a[0] + b[0], s * a[1] + b[1]};
}

inline State matvec(const Mat2& m, const State& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

inline Mat2 matmul(const Mat2& a, const Mat2& b) {
  Mat2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline bool finite(const State& a, int n) {
  for (int k = 0; k < n; ++k)
    if (!std::isfinite(a[k])) return false;
  return true;
}

}  // namespace ym

#endif  // YM_STATE_HPP_
