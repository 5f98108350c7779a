#pragma once
// Exact integer-matrix linear algebra: Hermite and Smith normal forms,
// integer solvability, kernel lattices, minimal multipliers, and lattice
// membership.
//
// Everything is dense arbitrary-precision; SNF intermediate swell is real
// even for 15x15 tensor matrices.  Two independent decision routes exist on
// purpose: the SNF route (solve_z / minimal_multiplier) and a self-contained
// column-reduction membership test (lattice_contains) used as an oracle
// against the first.  Do not "simplify" one into the other.

#include <knutson/common.hpp>

#include <algorithm>
#include <sstream>
#include <utility>

namespace knutson {

struct IntMatrix {
  long rows = 0;
  long cols = 0;
  std::vector<Int> a;  // row-major, rows*cols entries

  IntMatrix() = default;
  IntMatrix(long r, long c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
    if (r < 0 || c < 0) throw StructuralError("negative matrix dimension");
  }

  static IntMatrix identity(long n) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(long r, long c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Int& at(long r, long c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (long r = 0; r < rows; ++r) {
      os << (r ? ",[" : "[");
      for (long c = 0; c < cols; ++c) os << (c ? "," : "") << at(r, c).get_str();
      os << ']';
    }
    os << ']';
    return os.str();
  }
};

inline IntMatrix mat_mul(const IntMatrix& x, const IntMatrix& y) {
  if (x.cols != y.rows) throw StructuralError("matrix product shape mismatch");
  IntMatrix z(x.rows, y.cols);
  for (long i = 0; i < x.rows; ++i)
    for (long k = 0; k < x.cols; ++k) {
      const Int& v = x.at(i, k);
      if (v == 0) continue;
      for (long j = 0; j < y.cols; ++j)
        if (y.at(k, j) != 0) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

inline std::vector<Int> mat_vec(const IntMatrix& m, const std::vector<Int>& v) {
  if (m.cols != static_cast<long>(v.size())) throw StructuralError("matrix-vector shape mismatch");
  std::vector<Int> out(m.rows);
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < m.cols; ++j)
      if (m.at(i, j) != 0 && v[j] != 0) out[i] += m.at(i, j) * v[j];
  return out;
}

inline IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols, m.rows);
  for (long i = 0; i < m.rows; ++i)
    for (long j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
  return t;
}

struct HermiteDecomposition {
  IntMatrix H;  // row-style HNF: pivots positive, entries above pivots in [0, pivot)
  IntMatrix U;  // unimodular, U * M = H
  long rank = 0;
};

// Row-style Hermite normal form via xgcd row operations; deterministic.
inline HermiteDecomposition hnf(const IntMatrix& m) {
  HermiteDecomposition d;
  d.H = m;
  d.U = IntMatrix::identity(m.rows);
  IntMatrix& H = d.H;
  IntMatrix& U = d.U;
  auto row_combine = [&](long r1, long r2, const Int& s, const Int& t, const Int& u, const Int& v) {
    // (row r1, row r2) <- (s*r1 + t*r2, u*r1 + v*r2); caller ensures sv - tu = +-1.
    for (IntMatrix* M : {&H, &U}) {
      for (long j = 0; j < M->cols; ++j) {
        Int a = M->at(r1, j), b = M->at(r2, j);
        M->at(r1, j) = s * a + t * b;
        M->at(r2, j) = u * a + v * b;
      }
    }
  };
  long r = 0;
  for (long c = 0; c < H.cols && r < H.rows; ++c) {
    // Find a nonzero entry at or below row r in column c.
    long piv = -1;
    for (long i = r; i < H.rows; ++i)
      if (H.at(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) row_combine(r, piv, 0, 1, 1, 0);  // swap
    for (long i = r + 1; i < H.rows; ++i) {
      if (H.at(i, c) == 0) continue;
      if (H.at(i, c) % H.at(r, c) == 0) {
        // Pivot divides the entry: plain subtraction, pivot row untouched.
        row_combine(r, i, 1, 0, -(H.at(i, c) / H.at(r, c)), 1);
      } else {
        Int s, t;
        Int g = xgcd(H.at(r, c), H.at(i, c), s, t);
        row_combine(r, i, s, t, -H.at(i, c) / g, H.at(r, c) / g);
      }
    }
    if (H.at(r, c) < 0) {
      for (long j = 0; j < H.cols; ++j) H.at(r, j) = -H.at(r, j);
      for (long j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
    }
    const Int& p = H.at(r, c);
    for (long i = 0; i < r; ++i) {
      // Reduce entries above the pivot into [0, p).
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      for (long j = 0; j < H.cols; ++j) H.at(i, j) -= q * H.at(r, j);
      for (long j = 0; j < U.cols; ++j) U.at(i, j) -= q * U.at(r, j);
    }
    ++r;
  }
  d.rank = r;
  return d;
}

struct SmithDecomposition {
  IntMatrix D;  // diagonal, d_1 | d_2 | ... | d_r, zeros afterwards
  IntMatrix U;  // unimodular rows x rows
  IntMatrix V;  // unimodular cols x cols; U * M * V = D
  long rank = 0;
};

// Smith normal form with divisibility chain; U*M*V = D is re-verified before
// returning (a failed verification is a bug, not a data problem).
inline SmithDecomposition snf(const IntMatrix& m) {
  SmithDecomposition d;
  d.D = m;
  d.U = IntMatrix::identity(m.rows);
  d.V = IntMatrix::identity(m.cols);
  IntMatrix& D = d.D;
  IntMatrix& U = d.U;
  IntMatrix& V = d.V;

  auto row_op = [&](long r1, long r2, const Int& s, const Int& t, const Int& u, const Int& v) {
    for (IntMatrix* M : {&D, &U})
      for (long j = 0; j < M->cols; ++j) {
        Int a = M->at(r1, j), b = M->at(r2, j);
        M->at(r1, j) = s * a + t * b;
        M->at(r2, j) = u * a + v * b;
      }
  };
  auto col_op = [&](long c1, long c2, const Int& s, const Int& t, const Int& u, const Int& v) {
    for (IntMatrix* M : {&D, &V})
      for (long i = 0; i < M->rows; ++i) {
        Int a = M->at(i, c1), b = M->at(i, c2);
        M->at(i, c1) = s * a + t * b;
        M->at(i, c2) = u * a + v * b;
      }
  };

  const long nmin = std::min(m.rows, m.cols);
  long k = 0;
  while (k < nmin) {
    // Locate a pivot: smallest nonzero magnitude in the trailing submatrix.
    long pr = -1, pc = -1;
    for (long i = k; i < D.rows; ++i)
      for (long j = k; j < D.cols; ++j) {
        if (D.at(i, j) == 0) continue;
        if (pr < 0 || mpz_cmpabs(D.at(i, j).get_mpz_t(), D.at(pr, pc).get_mpz_t()) < 0) {
          pr = i;
          pc = j;
        }
      }
    if (pr < 0) break;  // all zero: done
    if (pr != k) row_op(k, pr, 0, 1, 1, 0);
    if (pc != k) col_op(k, pc, 0, 1, 1, 0);

    // When the pivot divides the entry, a plain quotient subtraction leaves
    // the pivot line untouched; the xgcd combine is reserved for the case
    // where the pivot genuinely shrinks.  (gcdext may return s = 0 when the
    // entry divides the pivot, which would swap the lines and reintroduce
    // cleared entries -- the alternation below would then never terminate.)
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (long i = k + 1; i < D.rows; ++i) {
        if (D.at(i, k) == 0) continue;
        if (D.at(i, k) % D.at(k, k) == 0) {
          row_op(k, i, 1, 0, -(D.at(i, k) / D.at(k, k)), 1);
        } else {
          Int s, t;
          Int g = xgcd(D.at(k, k), D.at(i, k), s, t);
          row_op(k, i, s, t, -D.at(i, k) / g, D.at(k, k) / g);
          dirty = true;
        }
      }
      for (long j = k + 1; j < D.cols; ++j) {
        if (D.at(k, j) == 0) continue;
        if (D.at(k, j) % D.at(k, k) == 0) {
          col_op(k, j, 1, 0, -(D.at(k, j) / D.at(k, k)), 1);
        } else {
          Int s, t;
          Int g = xgcd(D.at(k, k), D.at(k, j), s, t);
          col_op(k, j, s, t, -D.at(k, j) / g, D.at(k, k) / g);
          dirty = true;
        }
      }
    }
    // Enforce the divisibility chain: fold any non-multiple into the pivot.
    bool restart = false;
    for (long i = k + 1; i < D.rows && !restart; ++i)
      for (long j = k + 1; j < D.cols && !restart; ++j)
        if (D.at(i, j) % D.at(k, k) != 0) {
          row_op(k, i, 1, 1, 0, 1);  // row k += row i, reintroduces column entries
          restart = true;
        }
    if (restart) continue;
    if (D.at(k, k) < 0) {
      for (long j = 0; j < D.cols; ++j) D.at(k, j) = -D.at(k, j);
      for (long j = 0; j < U.cols; ++j) U.at(k, j) = -U.at(k, j);
    }
    ++k;
  }
  d.rank = k;

  IntMatrix check = mat_mul(mat_mul(d.U, m), d.V);
  if (!(check == d.D)) throw InternalInconsistencyError("SNF factors do not re-multiply");
  for (long i = 1; i < d.rank; ++i)
    if (d.D.at(i, i) % d.D.at(i - 1, i - 1) != 0)
      throw InternalInconsistencyError("SNF divisibility chain broken");
  return d;
}

// Some integer solution of M x = b, or nullopt when none exists.
inline std::optional<std::vector<Int>> solve_z(const IntMatrix& m, const std::vector<Int>& b) {
  if (m.rows != static_cast<long>(b.size())) throw StructuralError("solve_z shape mismatch");
  SmithDecomposition s = snf(m);
  std::vector<Int> c = mat_vec(s.U, b);
  std::vector<Int> y(m.cols);
  for (long i = 0; i < m.rows; ++i) {
    if (i < s.rank) {
      const Int& d = s.D.at(i, i);
      if (c[i] % d != 0) return std::nullopt;
      y[i] = c[i] / d;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(s.V, y);
}

// The least n >= 1 such that M x = n b has an integer solution; nullopt means
// no rational solution exists at all (no n works).  With c = U b: any zero
// diagonal row with c_i != 0 kills solvability for every n; otherwise row i
// needs d_i | n c_i, i.e. (d_i / gcd(d_i, c_i)) | n, so n is the lcm of those
// cofactors.
inline std::optional<Int> minimal_multiplier(const IntMatrix& m, const std::vector<Int>& b) {
  if (m.rows != static_cast<long>(b.size())) throw StructuralError("minimal_multiplier shape mismatch");
  SmithDecomposition s = snf(m);
  std::vector<Int> c = mat_vec(s.U, b);
  for (long i = s.rank; i < m.rows; ++i)
    if (c[i] != 0) return std::nullopt;
  Int n = 1;
  for (long i = 0; i < s.rank; ++i) {
    const Int& d = s.D.at(i, i);
    n = int_lcm(n, d / int_gcd(d, c[i]));
  }
  return n;
}

// Columns form a basis of the integer kernel lattice {x : M x = 0}.
inline IntMatrix kernel(const IntMatrix& m) {
  SmithDecomposition s = snf(m);
  IntMatrix k(m.cols, m.cols - s.rank);
  for (long j = s.rank; j < m.cols; ++j)
    for (long i = 0; i < m.cols; ++i) k.at(i, j - s.rank) = s.V.at(i, j);
  return k;
}

// Nonnegative generator of {f . x : x in column lattice of basis}; 0 for the
// empty or annihilated lattice.
inline Int functional_gcd(const IntMatrix& basis, const std::vector<Int>& f) {
  if (basis.rows != static_cast<long>(f.size())) throw StructuralError("functional_gcd shape mismatch");
  Int g = 0;
  for (long j = 0; j < basis.cols; ++j) {
    Int dot = 0;
    for (long i = 0; i < basis.rows; ++i) dot += f[i] * basis.at(i, j);
    g = int_gcd(g, dot);
  }
  return g;
}

struct FunctionalGcdWitness {
  Int g;                   // nonnegative generator
  std::vector<Int> x;      // lattice element with f . x = g (zero vector when g = 0)
};

// functional_gcd plus an explicit lattice element achieving the generator,
// built by chaining extended gcds across the basis columns.
inline FunctionalGcdWitness functional_gcd_witness(const IntMatrix& basis, const std::vector<Int>& f) {
  if (basis.rows != static_cast<long>(f.size()))
    throw StructuralError("functional_gcd_witness shape mismatch");
  FunctionalGcdWitness w;
  w.g = 0;
  w.x.assign(basis.rows, Int(0));
  for (long j = 0; j < basis.cols; ++j) {
    Int dot = 0;
    for (long i = 0; i < basis.rows; ++i) dot += f[i] * basis.at(i, j);
    if (dot == 0) continue;
    if (w.g == 0) {
      // First contributing column: take it directly (sign-corrected).
      int sign = dot < 0 ? -1 : 1;
      for (long i = 0; i < basis.rows; ++i) w.x[i] = sign * basis.at(i, j);
      w.g = sign * dot;
      continue;
    }
    Int s, t;
    Int g2 = xgcd(w.g, dot, s, t);
    if (g2 == w.g) continue;  // column adds nothing new
    for (long i = 0; i < basis.rows; ++i) w.x[i] = s * w.x[i] + t * basis.at(i, j);
    w.g = g2;
  }
  return w;
}

// Membership of v in the column lattice of B, decided by an independent
// column-style fraction-free elimination (no SNF, no HNF struct reuse).
// This is the oracle route for minimal_multiplier cross-checks.
inline bool lattice_contains(const IntMatrix& b, const std::vector<Int>& v) {
  if (b.rows != static_cast<long>(v.size())) throw StructuralError("lattice_contains shape mismatch");
  // Work on a copy of the columns plus the target vector.
  std::vector<std::vector<Int>> cols(b.cols, std::vector<Int>(b.rows));
  for (long j = 0; j < b.cols; ++j)
    for (long i = 0; i < b.rows; ++i) cols[j][i] = b.at(i, j);
  std::vector<Int> target = v;

  long next_col = 0;
  for (long r = 0; r < b.rows; ++r) {
    // gcd-combine all columns with a nonzero entry in row r into one pivot column.
    long piv = -1;
    for (long j = next_col; j < static_cast<long>(cols.size()); ++j) {
      if (cols[j][r] == 0) continue;
      if (piv < 0) {
        piv = j;
        continue;
      }
      Int s, t, g;
      if (cols[j][r] % cols[piv][r] == 0) {
        g = cols[piv][r] < 0 ? Int(-cols[piv][r]) : cols[piv][r];
        s = cols[piv][r] < 0 ? -1 : 1;
        t = 0;
      } else {
        g = xgcd(cols[piv][r], cols[j][r], s, t);
      }
      Int u = -cols[j][r] / g, w2 = cols[piv][r] / g;
      for (long i = 0; i < b.rows; ++i) {
        Int x = cols[piv][i], y = cols[j][i];
        cols[piv][i] = s * x + t * y;
        cols[j][i] = u * x + w2 * y;
      }
    }
    if (piv < 0) {
      if (target[r] != 0) return false;  // no lattice vector reaches this row
      continue;
    }
    std::swap(cols[piv], cols[next_col]);
    const Int& p = cols[next_col][r];
    if (target[r] % p != 0) return false;
    Int q = target[r] / p;
    if (q != 0)
      for (long i = 0; i < b.rows; ++i) target[i] -= q * cols[next_col][i];
    ++next_col;
  }
  for (const Int& x : target)
    if (x != 0) return false;
  return true;
}

}  // namespace knutson
