#include "divint/polymatrix.hpp"

#include <cstdint>
#include <unordered_map>

namespace divint {

PolyMatrix PolyMatrix::identity(RingPtr r, size_t n) {
  PolyMatrix m(r, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = GradedPoly::constant(r, 1);
  return m;
}

namespace {

bool all_constant(const PolyMatrix& m, const std::vector<size_t>& rows,
                  const std::vector<size_t>& cols) {
  for (size_t i : rows)
    for (size_t j : cols)
      if (!m.at(i, j).is_constant()) return false;
  return true;
}

// Exact fraction elimination; fine for constant desk-scale matrices.
mpq_class const_det(const PolyMatrix& m, const std::vector<size_t>& rows,
                    const std::vector<size_t>& cols) {
  size_t n = rows.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = m.at(rows[i], cols[j]).constant_value();
  mpq_class d = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      d = -d;
    }
    d *= a[col][col];
    mpq_class inv = mpq_class(1) / a[col][col];
    for (size_t i = col + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      mpq_class f = a[i][col] * inv;
      for (size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  return d;
}

// Cofactor expansion with sub-minors memoized on global (row, column) masks;
// one cache serves every minor of the same matrix.
struct MinorCache {
  const PolyMatrix& m;
  std::unordered_map<uint64_t, GradedPoly> memo;

  explicit MinorCache(const PolyMatrix& mat) : m(mat) {
    if (m.rows > 32 || m.cols > 32)
      throw structural_error("determinant beyond desk scale (dimension > 32)");
  }

  GradedPoly det_masked(uint32_t rmask, uint32_t cmask) {
    if (rmask == 0) return GradedPoly::constant(m.ring, 1);
    uint64_t key = (static_cast<uint64_t>(rmask) << 32) | cmask;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int r0 = __builtin_ctz(rmask);  // expand along the first remaining row
    uint32_t rrest = rmask & (rmask - 1);
    GradedPoly acc = GradedPoly::zero(m.ring);
    int sign = 1;
    for (uint32_t cm = cmask; cm;) {
      int cj = __builtin_ctz(cm);
      cm &= cm - 1;
      const GradedPoly& e = m.at(static_cast<size_t>(r0), static_cast<size_t>(cj));
      if (!e.is_zero()) {
        GradedPoly sub = det_masked(rrest, cmask & ~(1u << cj));
        if (!sub.is_zero()) {
          GradedPoly term = e * sub;
          acc = sign > 0 ? acc + term : acc - term;
        }
      }
      sign = -sign;
    }
    memo.emplace(key, acc);
    return acc;
  }

  GradedPoly det_on(const std::vector<size_t>& rows, const std::vector<size_t>& cols) {
    if (rows.size() != cols.size()) throw structural_error("determinant of non-square selection");
    if (rows.empty()) return GradedPoly::constant(m.ring, 1);
    if (all_constant(m, rows, cols))
      return GradedPoly::constant(m.ring, m.ring->field().normalize(const_det(m, rows, cols)));
    uint32_t rmask = 0, cmask = 0;
    for (size_t i : rows) rmask |= 1u << i;
    for (size_t j : cols) cmask |= 1u << j;
    return det_masked(rmask, cmask);
  }
};

bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] < n - (k - i)) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

GradedPoly det(const PolyMatrix& m) {
  if (m.rows != m.cols) throw structural_error("det: matrix not square");
  std::vector<size_t> idx(m.rows);
  for (size_t i = 0; i < m.rows; ++i) idx[i] = i;
  MinorCache cache(m);
  return cache.det_on(idx, idx);
}

GradedPoly minor_det(const PolyMatrix& m, const std::vector<size_t>& rows,
                     const std::vector<size_t>& cols) {
  MinorCache cache(m);
  return cache.det_on(rows, cols);
}

std::vector<GradedPoly> matrix_minors(const PolyMatrix& m, size_t k) {
  std::vector<GradedPoly> out;
  if (k == 0) {
    out.push_back(GradedPoly::constant(m.ring, 1));
    return out;
  }
  if (k > m.rows || k > m.cols) return out;
  MinorCache cache(m);
  std::vector<size_t> r(k);
  for (size_t i = 0; i < k; ++i) r[i] = i;
  do {
    std::vector<size_t> c(k);
    for (size_t i = 0; i < k; ++i) c[i] = i;
    do {
      out.push_back(cache.det_on(r, c));
    } while (next_combination(c, m.cols));
  } while (next_combination(r, m.rows));
  return out;
}

}  // namespace divint
