#include "divint/zlin.hpp"

#include <algorithm>
#include <stdexcept>

namespace divint {

namespace {

size_t ncols_of(const ZMat& a) { return a.empty() ? 0 : a[0].size(); }

// Row echelon over Z by gcd pivoting on column `col`, rows [row, end).
// Applies the same operations to `u` when non-null.  Returns the pivot row
// index or nullopt if the column is zero below `row`.
std::optional<size_t> pivot_column(ZMat& a, ZMat* u, size_t row, size_t col) {
  for (;;) {
    size_t best = a.size();
    for (size_t i = row; i < a.size(); ++i)
      if (a[i][col] != 0 && (best == a.size() || cmp(abs(a[i][col]), abs(a[best][col])) < 0))
        best = i;
    if (best == a.size()) return std::nullopt;
    if (best != row) {
      std::swap(a[best], a[row]);
      if (u) std::swap((*u)[best], (*u)[row]);
    }
    bool clean = true;
    for (size_t i = row + 1; i < a.size(); ++i) {
      if (a[i][col] == 0) continue;
      mpz_class q = a[i][col] / a[row][col];  // truncated division is fine here
      if (q != 0) {
        for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= q * a[row][j];
        if (u)
          for (size_t j = 0; j < (*u)[i].size(); ++j) (*u)[i][j] -= q * (*u)[row][j];
      }
      if (a[i][col] != 0) clean = false;
    }
    if (clean) {
      if (a[row][col] < 0) {
        for (auto& x : a[row]) x = -x;
        if (u)
          for (auto& x : (*u)[row]) x = -x;
      }
      return row;
    }
  }
}

void reduce_above(ZMat& a, ZMat* u, size_t prow, size_t pcol) {
  for (size_t i = 0; i < prow; ++i) {
    if (a[i][pcol] == 0) continue;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), a[i][pcol].get_mpz_t(), a[prow][pcol].get_mpz_t());
    if (q == 0) continue;
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= q * a[prow][j];
    if (u)
      for (size_t j = 0; j < (*u)[i].size(); ++j) (*u)[i][j] -= q * (*u)[prow][j];
  }
}

void hnf_in_place(ZMat& a, ZMat* u, std::vector<size_t>& pivots) {
  size_t row = 0;
  size_t cols = ncols_of(a);
  for (size_t col = 0; col < cols && row < a.size(); ++col) {
    auto p = pivot_column(a, u, row, col);
    if (!p) continue;
    reduce_above(a, u, row, col);
    pivots.push_back(col);
    ++row;
  }
}

}  // namespace

ZMat hnf(ZMat a) {
  std::vector<size_t> pivots;
  hnf_in_place(a, nullptr, pivots);
  a.resize(pivots.size());
  return a;
}

HnfTransform hnf_with_transform(ZMat a) {
  HnfTransform t;
  t.u.assign(a.size(), ZRow(a.size(), 0));
  for (size_t i = 0; i < a.size(); ++i) t.u[i][i] = 1;
  hnf_in_place(a, &t.u, t.pivot_cols);
  t.rank = t.pivot_cols.size();
  t.h = std::move(a);
  return t;
}

std::vector<mpz_class> snf_invariant_factors(ZMat a) {
  if (a.empty() || ncols_of(a) == 0) return {};
  size_t rows = a.size(), cols = ncols_of(a);
  std::vector<mpz_class> diag;
  size_t top = 0, left = 0;
  while (top < rows && left < cols) {
    // find a nonzero entry of minimal absolute value in the working block
    size_t pi = rows, pj = cols;
    for (size_t i = top; i < rows; ++i)
      for (size_t j = left; j < cols; ++j)
        if (a[i][j] != 0 && (pi == rows || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
          pi = i;
          pj = j;
        }
    if (pi == rows) break;  // block is zero
    std::swap(a[top], a[pi]);
    for (size_t i = top; i < rows; ++i) std::swap(a[i][left], a[i][pj]);
    for (;;) {
      bool dirty = false;
      for (size_t i = top + 1; i < rows; ++i) {
        if (a[i][left] == 0) continue;
        mpz_class q = a[i][left] / a[top][left];
        for (size_t j = left; j < cols; ++j) a[i][j] -= q * a[top][j];
        if (a[i][left] != 0) {
          std::swap(a[top], a[i]);
          dirty = true;
        }
      }
      for (size_t j = left + 1; j < cols; ++j) {
        if (a[top][j] == 0) continue;
        mpz_class q = a[top][j] / a[top][left];
        for (size_t i = top; i < rows; ++i) a[i][j] -= q * a[i][left];
        if (a[top][j] != 0) {
          for (size_t i = top; i < rows; ++i) std::swap(a[i][left], a[i][j]);
          dirty = true;
        }
      }
      if (!dirty) break;
    }
    diag.push_back(abs(a[top][left]));
    ++top;
    ++left;
  }
  // enforce the divisibility chain
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j)
      if (diag[j] % diag[i] != 0) {
        mpz_class g, l;
        mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
        l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
  std::sort(diag.begin(), diag.end());
  return diag;
}

size_t rank_q(ZMat a) {
  std::vector<size_t> pivots;
  hnf_in_place(a, nullptr, pivots);  // integer echelon rank == rational rank
  return pivots.size();
}

size_t rank_mod_p(ZMat a, unsigned long p) {
  mpz_class pz(p);
  size_t rows = a.size(), cols = ncols_of(a);
  for (auto& r : a)
    for (auto& x : r) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t());
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && a[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), a[rank][col].get_mpz_t(), pz.get_mpz_t());
    for (size_t j = col; j < cols; ++j) {
      a[rank][j] = a[rank][j] * inv;
      mpz_mod(a[rank][j].get_mpz_t(), a[rank][j].get_mpz_t(), pz.get_mpz_t());
    }
    for (size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col] == 0) continue;
      mpz_class f = a[i][col];
      for (size_t j = col; j < cols; ++j) {
        a[i][j] -= f * a[rank][j];
        mpz_mod(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), pz.get_mpz_t());
      }
    }
    ++rank;
  }
  return rank;
}

ZMat left_kernel(const ZMat& a, size_t nrows) {
  if (a.size() != nrows) throw std::logic_error("left_kernel: row count mismatch");
  if (nrows == 0) return {};
  HnfTransform t = hnf_with_transform(a);
  ZMat out;
  for (size_t i = t.rank; i < nrows; ++i) out.push_back(t.u[i]);
  return out;
}

std::optional<ZRow> solve_left(const ZMat& a, const ZRow& b) {
  if (a.empty()) {
    for (const auto& x : b)
      if (x != 0) return std::nullopt;
    return ZRow{};
  }
  HnfTransform t = hnf_with_transform(a);
  ZRow resid = b;
  ZRow y(a.size(), 0);
  for (size_t r = 0; r < t.rank; ++r) {
    size_t c = t.pivot_cols[r];
    if (resid[c] == 0) continue;
    mpz_class q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), resid[c].get_mpz_t(), t.h[r][c].get_mpz_t());
    if (rem != 0) return std::nullopt;
    y[r] = q;
    for (size_t j = 0; j < resid.size(); ++j) resid[j] -= q * t.h[r][j];
  }
  for (const auto& x : resid)
    if (x != 0) return std::nullopt;
  // x = y * U
  ZRow x(a.size(), 0);
  for (size_t r = 0; r < a.size(); ++r) {
    if (y[r] == 0) continue;
    for (size_t j = 0; j < a.size(); ++j) x[j] += y[r] * t.u[r][j];
  }
  return x;
}

bool lattice_equal(const ZMat& a, const ZMat& b) { return hnf(a) == hnf(b); }

bool lattice_contains(const ZMat& a, const ZRow& b) {
  ZMat h = hnf(a);
  ZRow resid = b;
  size_t r = 0;
  for (size_t col = 0; col < resid.size() && r < h.size(); ++col) {
    // pivot of row r sits at its first nonzero column
    size_t pc = 0;
    while (pc < h[r].size() && h[r][pc] == 0) ++pc;
    if (pc != col) continue;
    if (resid[col] != 0) {
      mpz_class q, rem;
      mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), resid[col].get_mpz_t(), h[r][col].get_mpz_t());
      if (rem != 0) return false;
      for (size_t j = 0; j < resid.size(); ++j) resid[j] -= q * h[r][j];
    }
    ++r;
  }
  for (const auto& x : resid)
    if (x != 0) return false;
  return true;
}

ZMat lattice_intersection(const ZMat& a, const ZMat& b, size_t ncols) {
  // Rows (u, w) with u*a = w*b give intersection elements u*a.
  ZMat stacked;
  stacked.reserve(a.size() + b.size());
  for (const auto& r : a) stacked.push_back(r);
  for (const auto& r : b) {
    ZRow neg(r.size());
    for (size_t j = 0; j < r.size(); ++j) neg[j] = -r[j];
    stacked.push_back(std::move(neg));
  }
  ZMat ker = left_kernel(stacked, stacked.size());
  ZMat out;
  for (const auto& k : ker) {
    ZRow v(ncols, 0);
    for (size_t i = 0; i < a.size(); ++i)
      if (k[i] != 0)
        for (size_t j = 0; j < ncols; ++j) v[j] += k[i] * a[i][j];
    out.push_back(std::move(v));
  }
  return hnf(out);
}

size_t right_kernel_dim(const ZMat& a, size_t ncols, unsigned long p) {
  size_t r = p == 0 ? rank_q(a) : rank_mod_p(a, p);
  return ncols - r;
}

}  // namespace divint
