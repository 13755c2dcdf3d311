#pragma once

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "tamedist/fq2.hpp"
#include "tamedist/rng.hpp"
#include "tamedist/weyl.hpp"

namespace tamedist {

// A verification failure in the constructive reduction machinery. These are
// the "should not happen if the theory holds" conditions; preconditions on
// caller input throw invalid_argument instead.
struct ReductionAnomaly : std::runtime_error {
  explicit ReductionAnomaly(const std::string& what) : std::runtime_error(what) {}
};

inline FiniteMatrix s_map(const Fq2& F, const FiniteMatrix& g) {
  return mat_mul(F, mat_sigma(F, g), mat_inverse(F, g));
}

// The twisted conjugation that moves elements within a coset:
// act(g, s) = g * s * sigma(g)^{-1}. Taking g over the upper Borel gives the
// same orbits as the b^sigma * s * b^{-1} form (reparametrize b = sigma(g)).
inline FiniteMatrix twisted_act(const Fq2& F, const FiniteMatrix& g, const FiniteMatrix& s) {
  return mat_mul(F, mat_mul(F, g, s), mat_inverse(F, mat_sigma(F, g)));
}

inline bool in_S(const Fq2& F, const FiniteMatrix& m) {
  for (int k = 0; k < m.n * m.n; ++k)
    if (m.e[k].a >= F.q() || m.e[k].b >= F.q() || m.e[k].a < 0 || m.e[k].b < 0) return false;
  if (!mat_is_invertible(F, m)) return false;
  return mat_mul(F, m, mat_sigma(F, m)) == mat_identity(F, m.n);
}

// |S| = prod_{k=0}^{n-1} (q^n + q^k), which equals |GL_n(q^2)| / |GL_n(q)|.
inline unsigned long long s_cardinality_formula(int n, int q) {
  unsigned __int128 prod = 1;
  unsigned __int128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<unsigned>(q);
  unsigned __int128 qk = 1;
  for (int k = 0; k < n; ++k) {
    prod *= (qn + qk);
    qk *= static_cast<unsigned>(q);
    if (prod > (static_cast<unsigned __int128>(1) << 63))
      throw std::overflow_error("s_cardinality_formula: result exceeds 2^63");
  }
  return static_cast<unsigned long long>(prod);
}

inline unsigned long long gl_cardinality(int n, long long Q) {
  unsigned __int128 prod = 1;
  unsigned __int128 Qn = 1;
  for (int i = 0; i < n; ++i) Qn *= static_cast<unsigned long long>(Q);
  unsigned __int128 Qk = 1;
  for (int k = 0; k < n; ++k) {
    prod *= (Qn - Qk);
    Qk *= static_cast<unsigned long long>(Q);
    if (prod > (static_cast<unsigned __int128>(1) << 63))
      throw std::overflow_error("gl_cardinality: result exceeds 2^63");
  }
  return static_cast<unsigned long long>(prod);
}

inline int enumeration_thread_count() {
  if (const char* env = std::getenv("TAMEDIST_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1 && v <= 64) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw < 1) hw = 1;
  if (hw > 16) hw = 16;
  return static_cast<int>(hw);
}

namespace detail {

// Plain mod-q integer matrices used only inside the S enumeration, where the
// delta-coordinates of candidates are handled separately.
struct IntMat {
  int n = 0;
  std::array<int, kMaxMatDim * kMaxMatDim> e{};
  int& at(int i, int j) { return e[i * n + j]; }
  int at(int i, int j) const { return e[i * n + j]; }
};

inline IntMat int_mul(int q, const IntMat& x, const IntMat& y) {
  IntMat r;
  r.n = x.n;
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      int xik = x.at(i, k);
      if (!xik) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) = (r.at(i, j) + xik * y.at(k, j)) % q;
    }
  return r;
}

// Basis of {X : AX = XA} as n^2-vectors, by Gaussian elimination on the
// commutator system.
inline std::vector<std::array<int, kMaxMatDim * kMaxMatDim>> commutant_basis(int q, const IntMat& A) {
  int n = A.n, m = n * n;
  // rows: equations indexed by result entry (i,j); cols: unknowns X[k][l]
  std::vector<std::array<int, kMaxMatDim * kMaxMatDim>> rows(m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& row = rows[i * n + j];
      row.fill(0);
      // (AX)[i][j] = sum_k A[i][k] X[k][j]; (XA)[i][j] = sum_l X[i][l] A[l][j]
      for (int k = 0; k < n; ++k) row[k * n + j] = (row[k * n + j] + A.at(i, k)) % q;
      for (int l = 0; l < n; ++l) row[i * n + l] = ((row[i * n + l] - A.at(l, j)) % q + q) % q;
    }
  // row reduce
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < m && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (rows[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    // scale to 1
    int inv = 1, b = rows[r][c];
    for (int e = q - 2; e > 0; e >>= 1) {
      if (e & 1) inv = (inv * b) % q;
      b = (b * b) % q;
    }
    for (int j = c; j < m; ++j) rows[r][j] = (rows[r][j] * inv) % q;
    for (int i = 0; i < m; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      int f = rows[i][c];
      for (int j = c; j < m; ++j) rows[i][j] = ((rows[i][j] - f * rows[r][j]) % q + q) % q;
    }
    pivot_col.push_back(c);
    ++r;
  }
  // free columns give the nullspace basis
  std::vector<bool> is_pivot(m, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::array<int, kMaxMatDim * kMaxMatDim>> basis;
  for (int c = 0; c < m; ++c) {
    if (is_pivot[c]) continue;
    std::array<int, kMaxMatDim * kMaxMatDim> v{};
    v[c] = 1;
    for (size_t pr = 0; pr < pivot_col.size(); ++pr) v[pivot_col[pr]] = (q - rows[pr][c]) % q;
    basis.push_back(v);
  }
  return basis;
}

inline void enumerate_chunk(const Fq2& F, int n, unsigned long long a_lo, unsigned long long a_hi,
                            std::vector<MatKey>& out) {
  int q = F.q(), d = F.d(), m = n * n;
  for (unsigned long long code = a_lo; code < a_hi; ++code) {
    IntMat A;
    A.n = n;
    unsigned long long c = code;
    for (int k = 0; k < m; ++k) {
      A.e[k] = static_cast<int>(c % q);
      c /= q;
    }
    // target: d * B^2 == A^2 - I with B in the commutant of A
    IntMat target = int_mul(q, A, A);
    for (int i = 0; i < n; ++i) target.at(i, i) = ((target.at(i, i) - 1) % q + q) % q;
    auto basis = commutant_basis(q, A);
    int dim = static_cast<int>(basis.size());
    // walk all F_q-combinations with an odometer, updating B incrementally
    IntMat B;
    B.n = n;
    std::vector<int> digits(dim, 0);
    while (true) {
      IntMat B2 = int_mul(q, B, B);
      bool ok = true;
      for (int k = 0; k < m && ok; ++k) ok = (d * B2.e[k]) % q == target.e[k];
      if (ok) {
        FiniteMatrix M = mat_zero(n);
        for (int k = 0; k < m; ++k) M.e[k] = F.make(A.e[k], B.e[k]);
        out.push_back(mat_key(F, M));
      }
      // increment
      int pos = 0;
      while (pos < dim) {
        ++digits[pos];
        for (int k = 0; k < m; ++k) B.e[k] = (B.e[k] + basis[pos][k]) % q;
        if (digits[pos] < q) break;
        digits[pos] = 0;
        ++pos;
      }
      if (pos == dim) break;
    }
  }
}

}  // namespace detail

// Every M over F_{q^2} with M * sigma(M) = I, as sorted packed keys. Writing
// M = A + delta*B with A, B over F_q, the defining equation splits into
// AB = BA and A^2 - d B^2 = I, so candidates are scanned as (A, commutant
// combination) pairs rather than entry by entry. Work is split across
// threads by A-ranges; the final sort makes the output independent of the
// thread count.
inline std::vector<MatKey> enumerate_S(const Fq2& F, int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("enumerate_S supports 1 <= n <= 3");
  unsigned long long expected = s_cardinality_formula(n, F.q());
  if (expected > 3000000ULL)
    throw std::invalid_argument("enumerate_S: size budget exceeded for n=" + std::to_string(n) +
                                ", q=" + std::to_string(F.q()));
  unsigned long long a_count = 1;
  for (int k = 0; k < n * n; ++k) a_count *= static_cast<unsigned>(F.q());

  int threads = enumeration_thread_count();
  std::vector<std::vector<MatKey>> parts(threads);
  if (threads == 1 || a_count < 4096) {
    detail::enumerate_chunk(F, n, 0, a_count, parts[0]);
  } else {
    std::vector<std::thread> pool;
    unsigned long long step = (a_count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      unsigned long long lo = step * t, hi = std::min(a_count, lo + step);
      if (lo >= hi) break;
      pool.emplace_back([&F, n, lo, hi, &parts, t] { detail::enumerate_chunk(F, n, lo, hi, parts[t]); });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<MatKey> keys;
  keys.reserve(expected);
  for (auto& p : parts) keys.insert(keys.end(), p.begin(), p.end());
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
    throw ReductionAnomaly("enumerate_S produced a duplicate element");
  if (keys.size() != expected)
    throw ReductionAnomaly("enumerate_S found " + std::to_string(keys.size()) + " elements, expected " +
                           std::to_string(expected));
  for (size_t i = 0; i < keys.size(); i += std::max<size_t>(1, keys.size() / 64)) {
    if (!in_S(F, mat_from_key(F, n, keys[i])))
      throw ReductionAnomaly("enumerate_S sample element fails the defining equation");
  }
  return keys;
}

struct Orbit {
  Perm w;                        // the involution labeling this orbit
  FiniteMatrix representative;   // its permutation matrix, an element of S
  std::vector<MatKey> elements;  // sorted
};

struct OrbitDecomposition {
  int n = 0;
  std::vector<Orbit> orbits;  // sorted by w in one-line notation
  std::map<MatKey, int> orbit_of;
  unsigned long long total = 0;
};

// Generators of the upper Borel: one-parameter torus entries (the field
// generator in a single slot) and elementary matrices E_{ij}(xi) above the
// diagonal with xi in {1, delta}. Forward closure under generators is enough
// for orbits since the group is finite.
inline std::vector<FiniteMatrix> borel_generators(const Fq2& F, int n) {
  std::vector<FiniteMatrix> gens;
  for (int i = 0; i < n; ++i) {
    FiniteMatrix t = mat_identity(F, n);
    t.at(i, i) = F.generator();
    gens.push_back(t);
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      FiniteMatrix e1 = mat_identity(F, n);
      e1.at(i, j) = F.one();
      gens.push_back(e1);
      FiniteMatrix ed = mat_identity(F, n);
      ed.at(i, j) = F.delta();
      gens.push_back(ed);
    }
  return gens;
}

inline bool is_involution_matrix(const Fq2& F, const FiniteMatrix& m, Perm* w_out = nullptr) {
  Perm w(m.n, -1);
  for (int j = 0; j < m.n; ++j) {
    int hits = 0;
    for (int i = 0; i < m.n; ++i) {
      const F2El& x = m.at(i, j);
      if (x == F.zero()) continue;
      if (!(x == F.one())) return false;
      w[j] = i;
      ++hits;
    }
    if (hits != 1) return false;
  }
  if (!perm_is_involution(w)) return false;
  if (w_out) *w_out = w;
  return true;
}

inline OrbitDecomposition orbit_decomposition(const Fq2& F, int n) {
  OrbitDecomposition dec;
  dec.n = n;
  auto keys = enumerate_S(F, n);
  dec.total = keys.size();
  auto gens = borel_generators(F, n);
  std::vector<FiniteMatrix> gen_sigma_inv;
  for (const auto& g : gens) gen_sigma_inv.push_back(mat_inverse(F, mat_sigma(F, g)));

  for (MatKey start : keys) {
    if (dec.orbit_of.count(start)) continue;
    // breadth-first closure under the twisted Borel action
    std::set<MatKey> seen = {start};
    std::deque<FiniteMatrix> queue = {mat_from_key(F, n, start)};
    while (!queue.empty()) {
      FiniteMatrix s = queue.front();
      queue.pop_front();
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        FiniteMatrix img = mat_mul(F, mat_mul(F, gens[gi], s), gen_sigma_inv[gi]);
        MatKey k = mat_key(F, img);
        if (seen.insert(k).second) queue.push_back(img);
      }
    }
    Orbit orb;
    orb.elements.assign(seen.begin(), seen.end());
    // exactly one involution permutation matrix per orbit
    int found = 0;
    for (MatKey k : orb.elements) {
      Perm w;
      if (is_involution_matrix(F, mat_from_key(F, n, k), &w)) {
        ++found;
        orb.w = w;
        orb.representative = mat_from_key(F, n, k);
      }
    }
    if (found != 1) {
      std::string dump = "orbit with " + std::to_string(orb.elements.size()) + " elements holds " +
                         std::to_string(found) + " involution matrices, expected exactly 1; elements:";
      int shown = 0;
      for (MatKey k : orb.elements) {
        dump += " " + mat_str(F, mat_from_key(F, n, k));
        if (++shown >= 12) {
          dump += " ...";
          break;
        }
      }
      throw ReductionAnomaly(dump);
    }
    int idx = static_cast<int>(dec.orbits.size());
    for (MatKey k : orb.elements) dec.orbit_of[k] = idx;
    dec.orbits.push_back(std::move(orb));
  }

  // order the table by the labeling involution
  std::vector<int> order(dec.orbits.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&dec](int x, int y) { return dec.orbits[x].w < dec.orbits[y].w; });
  std::vector<Orbit> sorted;
  std::vector<int> new_index(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    new_index[order[i]] = static_cast<int>(i);
    sorted.push_back(std::move(dec.orbits[order[i]]));
  }
  dec.orbits = std::move(sorted);
  for (auto& kv : dec.orbit_of) kv.second = new_index[kv.second];

  unsigned long long covered = 0;
  for (const auto& o : dec.orbits) covered += o.elements.size();
  if (covered != dec.total)
    throw ReductionAnomaly("orbit sizes sum to " + std::to_string(covered) + ", expected " +
                           std::to_string(dec.total));
  return dec;
}

// g = n1 * diag(a) * W * n2 with n1, n2 upper unipotent, a invertible
// diagonal (indexed by row) and W the permutation matrix of w. The pivot of
// each column, scanning left to right, is its bottom-most nonzero entry;
// rows above a pivot and entries to its right are cleared with unipotent
// row and column operations, which never disturb earlier pivots.
struct BruhatParts {
  FiniteMatrix n1;
  std::vector<F2El> a;
  Perm w;
  FiniteMatrix n2;
};

inline FiniteMatrix bruhat_recompose(const Fq2& F, const BruhatParts& parts) {
  FiniteMatrix aw = mat_mul(F, mat_diag(F, parts.a), permutation_matrix(F, parts.w));
  return mat_mul(F, mat_mul(F, parts.n1, aw), parts.n2);
}

inline BruhatParts bruhat_decompose(const Fq2& F, const FiniteMatrix& g) {
  int n = g.n;
  if (!mat_is_invertible(F, g)) throw std::invalid_argument("bruhat_decompose: singular matrix");
  FiniteMatrix M = g;
  FiniteMatrix left = mat_identity(F, n);   // accumulated row operations
  FiniteMatrix right = mat_identity(F, n);  // accumulated column operations
  Perm w(n, -1);
  for (int j = 0; j < n; ++j) {
    int piv = -1;
    for (int i = n - 1; i >= 0; --i)
      if (!(M.at(i, j) == F.zero())) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("bruhat_decompose: singular matrix");
    w[j] = piv;
    F2El inv_p = F.inv(M.at(piv, j));
    // clear the pivot row to the right (column operations, col_l += c*col_j)
    for (int l = j + 1; l < n; ++l) {
      F2El c = F.neg(F.mul(M.at(piv, l), inv_p));
      if (c == F.zero()) continue;
      for (int i = 0; i < n; ++i) M.at(i, l) = F.add(M.at(i, l), F.mul(c, M.at(i, j)));
      for (int i = 0; i < n; ++i) right.at(i, l) = F.add(right.at(i, l), F.mul(c, right.at(i, j)));
    }
    // clear the column above the pivot (row operations, row_u += c*row_piv)
    for (int u = 0; u < piv; ++u) {
      F2El c = F.neg(F.mul(M.at(u, j), inv_p));
      if (c == F.zero()) continue;
      for (int l = 0; l < n; ++l) M.at(u, l) = F.add(M.at(u, l), F.mul(c, M.at(piv, l)));
      for (int l = 0; l < n; ++l) left.at(u, l) = F.add(left.at(u, l), F.mul(c, left.at(piv, l)));
    }
  }
  // left * g * right = M = diag(a) * W, so g = left^{-1} * (aW) * right^{-1}
  BruhatParts parts;
  parts.w = w;
  parts.a.assign(n, F.zero());
  for (int j = 0; j < n; ++j) parts.a[w[j]] = M.at(w[j], j);
  parts.n1 = mat_inverse(F, left);
  parts.n2 = mat_inverse(F, right);
  if (!mat_is_upper_unipotent(F, parts.n1) || !mat_is_upper_unipotent(F, parts.n2))
    throw ReductionAnomaly("bruhat_decompose: accumulated operations are not unipotent");
  if (!(bruhat_recompose(F, parts) == g))
    throw ReductionAnomaly("bruhat_decompose: recomposition mismatch");
  return parts;
}

// Lemma-style torus solver: given diagonal t (by row) and involution w with
// t_j * sigma(t_{w(j)}) = 1, find diagonal y with t_j = y_j * sigma(y_{w(j)})^{-1}.
// Fixed points reduce to a norm-one discrete-log congruence; 2-cycles are
// solved directly by (t_j, 1).
inline std::vector<F2El> solve_torus_h90(const Fq2& F, const std::vector<F2El>& t, const Perm& w) {
  int n = static_cast<int>(t.size());
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("solve_torus_h90: size mismatch");
  if (!perm_is_involution(w)) throw std::invalid_argument("solve_torus_h90: w is not an involution");
  for (int j = 0; j < n; ++j) {
    if (t[j] == F.zero()) throw std::invalid_argument("solve_torus_h90: t_" + std::to_string(j) + " is zero");
    if (!(F.mul(t[j], F.sigma(t[w[j]])) == F.one()))
      throw std::invalid_argument("solve_torus_h90: precondition fails at j=" + std::to_string(j) +
                                  ": t_j * sigma(t_{w(j)}) != 1");
  }
  std::vector<F2El> y(n, F.one());
  long units = F.units();
  for (int j = 0; j < n; ++j) {
    if (w[j] == j) {
      // y_j * sigma(y_j)^{-1} = t_j, i.e. (1-q)*x = dlog(t_j) mod q^2-1
      long target = F.dlog(t[j]);
      long coeff = ((1 - static_cast<long>(F.q())) % units + units) % units;
      bool found = false;
      for (long x = 0; x < units; ++x)
        if ((coeff * x) % units == target) {
          y[j] = F.pow(F.generator(), x);
          found = true;
          break;
        }
      if (!found)
        throw ReductionAnomaly("solve_torus_h90: no solution at fixed point j=" + std::to_string(j));
    } else if (j < w[j]) {
      y[j] = t[j];
      y[w[j]] = F.one();
    }
  }
  for (int j = 0; j < n; ++j)
    if (!(F.mul(y[j], F.inv(F.sigma(y[w[j]]))) == t[j]))
      throw ReductionAnomaly("solve_torus_h90: verification fails at j=" + std::to_string(j));
  return y;
}

// Unipotent solver: given upper unipotent m and an involutive automorphism
// theta of the group it generates with m * theta(m) = I, return u with
// m = theta(u)^{-1} * u. Unipotent elements in odd characteristic have odd
// order, so u = m^{(ord+1)/2} works inside the cyclic group <m>:
// theta(u)^{-1} = u there, and u^2 = m.
inline FiniteMatrix solve_unipotent_h90(const Fq2& F, const FiniteMatrix& m,
                                        const std::function<FiniteMatrix(const FiniteMatrix&)>& theta) {
  if (!mat_is_upper_unipotent(F, m)) throw std::invalid_argument("solve_unipotent_h90: not upper unipotent");
  FiniteMatrix id = mat_identity(F, m.n);
  if (!(mat_mul(F, m, theta(m)) == id))
    throw std::invalid_argument("solve_unipotent_h90: precondition m * theta(m) != I");
  long ord = 1;
  FiniteMatrix acc = m;
  while (!(acc == id)) {
    acc = mat_mul(F, acc, m);
    ++ord;
    if (ord > (1L << 20)) throw ReductionAnomaly("solve_unipotent_h90: order runaway");
  }
  if (ord % 2 == 0) throw ReductionAnomaly("solve_unipotent_h90: even order in odd characteristic");
  FiniteMatrix u = id;
  for (long k = 0; k < (ord + 1) / 2; ++k) u = mat_mul(F, u, m);
  if (!(mat_mul(F, mat_inverse(F, theta(u)), u) == m))
    throw ReductionAnomaly("solve_unipotent_h90: verification failed");
  return u;
}

// The constructive reduction: writes s in S as y * W * sigma(y)^{-1} with w
// an involution, following the cell of s. Steps: Bruhat-decompose, push the
// unipotent mass to one side, split it off with the unipotent solver, then
// absorb the torus part with the diagonal solver.
struct ReductionResult {
  Perm w;
  FiniteMatrix y;
  BruhatParts parts;
};

inline ReductionResult reduce_to_involution(const Fq2& F, const FiniteMatrix& s) {
  if (!in_S(F, s)) throw std::invalid_argument("reduce_to_involution: input is not in S");
  int n = s.n;
  BruhatParts parts = bruhat_decompose(F, s);
  const Perm& w = parts.w;
  if (!perm_is_involution(w))
    throw ReductionAnomaly("reduce_to_involution: cell permutation is not an involution");
  for (int j = 0; j < n; ++j)
    if (!(F.mul(parts.a[j], F.sigma(parts.a[w[j]])) == F.one()))
      throw ReductionAnomaly("reduce_to_involution: torus part fails a_j * sigma(a_{w(j)}) = 1 at j=" +
                             std::to_string(j));

  FiniteMatrix W = permutation_matrix(F, w);
  FiniteMatrix t_mat = mat_mul(F, mat_diag(F, parts.a), W);
  // act(n1^{-1}, s) = (aW) * m with m = n2 * sigma(n1) upper unipotent
  FiniteMatrix m = mat_mul(F, parts.n2, mat_sigma(F, parts.n1));
  if (!mat_is_upper_unipotent(F, m))
    throw ReductionAnomaly("reduce_to_involution: residual unipotent part is not upper unipotent");
  FiniteMatrix t_inv = mat_inverse(F, t_mat);
  auto xi = [&](const FiniteMatrix& x) { return mat_mul(F, mat_mul(F, t_inv, mat_sigma(F, x)), t_mat); };
  FiniteMatrix u = solve_unipotent_h90(F, m, xi);
  // act(sigma(u), (aW) m) = aW, so the unipotent mass is gone
  FiniteMatrix v = mat_sigma(F, u);
  std::vector<F2El> yt = solve_torus_h90(F, parts.a, w);
  // assemble: s = act(n1, (aW) m), aW = act(yt, W)
  FiniteMatrix y = mat_mul(F, mat_mul(F, parts.n1, mat_inverse(F, v)), mat_diag(F, yt));
  if (!(twisted_act(F, y, W) == s))
    throw ReductionAnomaly("reduce_to_involution: final identity s = y W sigma(y)^{-1} failed");
  ReductionResult res;
  res.w = w;
  res.y = y;
  res.parts = std::move(parts);
  return res;
}

// The explicit 2x2 block whose s_map is the transposition matrix.
inline FiniteMatrix block_u(const Fq2& F) {
  FiniteMatrix u = mat_zero(2);
  u.at(0, 0) = F.one();
  u.at(0, 1) = F.neg(F.delta());
  u.at(1, 0) = F.one();
  u.at(1, 1) = F.delta();
  return u;
}

// Representative W^{-1} * blockdiag(u, ..., u, I) * W with r copies of the
// 2x2 block. Its s_map is the permutation matrix of the involution
// w^{-1} tau_r w, so these representatives meet every orbit as (r, w) vary.
inline FiniteMatrix u_r_w_representative(const Fq2& F, int n, int r, const Perm& w) {
  if (2 * r > n || r < 0) throw std::invalid_argument("u_r_w_representative: need 0 <= 2r <= n");
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("u_r_w_representative: size mismatch");
  FiniteMatrix Ur = mat_identity(F, n);
  FiniteMatrix u = block_u(F);
  for (int b = 0; b < r; ++b)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) Ur.at(2 * b + i, 2 * b + j) = u.at(i, j);
  FiniteMatrix W = permutation_matrix(F, w);
  return mat_mul(F, mat_mul(F, mat_inverse(F, W), Ur), W);
}

struct UrwRepresentative {
  int r = 0;
  Perm w;           // conjugating permutation
  Perm involution;  // w^{-1} tau_r w, the orbit label hit by this representative
  FiniteMatrix g;
};

// One representative per involution of S_n: for each involution (sorted by
// one-line notation) the first conjugator w in lexicographic order is kept.
inline std::vector<UrwRepresentative> u_r_w_representatives(const Fq2& F, int n) {
  std::vector<UrwRepresentative> reps;
  for (const auto& tau : involutions(n)) {
    int r = 0;
    for (int i = 0; i < n; ++i)
      if (tau[i] > i) ++r;
    Perm tau_r = perm_identity(n);
    for (int b = 0; b < r; ++b) std::swap(tau_r[2 * b], tau_r[2 * b + 1]);
    bool placed = false;
    for (const auto& w : all_permutations(n)) {
      if (perm_compose(perm_inverse(w), perm_compose(tau_r, w)) != tau) continue;
      UrwRepresentative rep;
      rep.r = r;
      rep.w = w;
      rep.involution = tau;
      rep.g = u_r_w_representative(F, n, r, w);
      reps.push_back(std::move(rep));
      placed = true;
      break;
    }
    if (!placed) throw ReductionAnomaly("u_r_w_representatives: no conjugator found");
  }
  return reps;
}

inline FiniteMatrix random_invertible(const Fq2& F, int n, Rng& rng) {
  int span = F.q() * F.q();
  while (true) {
    FiniteMatrix g = mat_zero(n);
    for (int k = 0; k < n * n; ++k) g.e[k] = F.decode(static_cast<int>(rng.below(span)));
    if (mat_is_invertible(F, g)) return g;
  }
}

}  // namespace tamedist
