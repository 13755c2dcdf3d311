#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "tamedist/finite_field.hpp"
#include "tamedist/weyl.hpp"

namespace tamedist {

// The quadratic extension F_{q^2} = F_q(delta), delta^2 = d with d the least
// nonsquare mod q, q an odd prime. Elements are written a + b*delta and the
// conjugation sends delta to -delta, which matches the q-power Frobenius.
// This concrete presentation keeps matrix arithmetic over the extension as
// plain int work mod q.
struct F2El {
  int a = 0;
  int b = 0;
  bool operator==(const F2El& o) const { return a == o.a && b == o.b; }
  bool operator!=(const F2El& o) const { return !(*this == o); }
};

class Fq2 {
 public:
  explicit Fq2(int q) : q_(q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q))
      throw std::invalid_argument("Fq2 needs an odd prime q, got " + std::to_string(q));
    d_ = 0;
    for (int c = 2; c < q; ++c)
      if (!is_square_modq(c)) {
        d_ = c;
        break;
      }
    build_log_tables();
  }

  int q() const { return q_; }
  int d() const { return d_; }
  long units() const { return static_cast<long>(q_) * q_ - 1; }

  F2El zero() const { return {0, 0}; }
  F2El one() const { return {1, 0}; }
  F2El delta() const { return {0, 1}; }
  F2El make(int a, int b) const { return {mod(a), mod(b)}; }
  F2El from_base(int a) const { return {mod(a), 0}; }

  bool in_base_field(const F2El& x) const { return x.b == 0; }

  F2El add(const F2El& x, const F2El& y) const { return {mod(x.a + y.a), mod(x.b + y.b)}; }
  F2El sub(const F2El& x, const F2El& y) const { return {mod(x.a - y.a), mod(x.b - y.b)}; }
  F2El neg(const F2El& x) const { return {mod(-x.a), mod(-x.b)}; }

  F2El mul(const F2El& x, const F2El& y) const {
    // (a + b delta)(c + e delta) = (ac + d be) + (ae + bc) delta
    return {mod(x.a * y.a + d_ * x.b * y.b), mod(x.a * y.b + x.b * y.a)};
  }

  // conjugation a + b delta -> a - b delta (the q-power map)
  F2El sigma(const F2El& x) const { return {x.a, mod(-x.b)}; }

  // norm down to F_q: x * sigma(x) = a^2 - d b^2
  int norm(const F2El& x) const { return mod(x.a * x.a - d_ * x.b * x.b); }

  F2El inv(const F2El& x) const {
    int nrm = norm(x);
    if (nrm == 0) throw std::invalid_argument("Fq2: inverting zero");
    int ninv = inv_modq(nrm);
    return {mod(x.a * ninv), mod(-x.b * ninv)};
  }

  F2El pow(F2El x, long e) const {
    long u = units();
    e %= u;
    if (e < 0) e += u;
    F2El acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, x);
      x = mul(x, x);
      e >>= 1;
    }
    return acc;
  }

  int encode(const F2El& x) const { return x.a + q_ * x.b; }
  F2El decode(int code) const { return {code % q_, code / q_}; }

  F2El generator() const { return gen_; }

  // discrete log base the fixed generator, for nonzero x
  long dlog(const F2El& x) const {
    auto it = dlog_.find(encode(x));
    if (it == dlog_.end()) throw std::invalid_argument("Fq2: dlog of zero");
    return it->second;
  }

  int mod(int v) const {
    v %= q_;
    return v < 0 ? v + q_ : v;
  }

  int inv_modq(int v) const {
    v = mod(v);
    if (v == 0) throw std::invalid_argument("Fq2: inverting zero mod q");
    int r = 1, b = v;
    for (int e = q_ - 2; e > 0; e >>= 1) {
      if (e & 1) r = (r * b) % q_;
      b = (b * b) % q_;
    }
    return r;
  }

  std::string str(const F2El& x) const {
    if (x.b == 0) return std::to_string(x.a);
    std::string s = std::to_string(x.a) + "+" + std::to_string(x.b) + "D";
    return s;
  }

 private:
  bool is_square_modq(int c) const {
    for (int t = 1; t < q_; ++t)
      if ((t * t) % q_ == c) return true;
    return false;
  }

  void build_log_tables() {
    long u = units();
    for (int code = 1; code < q_ * q_; ++code) {
      F2El g = decode(code);
      F2El acc = one();
      long ord = 0;
      do {
        acc = mul(acc, g);
        ++ord;
      } while (!(acc == one()));
      if (ord == u) {
        gen_ = g;
        break;
      }
    }
    F2El acc = one();
    for (long k = 0; k < u; ++k) {
      dlog_[encode(acc)] = k;
      acc = mul(acc, gen_);
    }
  }

  int q_;
  int d_;
  F2El gen_;
  std::unordered_map<int, long> dlog_;
};

// Square matrices over F_{q^2}, fixed small bound so everything lives on the
// stack during enumeration.
constexpr int kMaxMatDim = 6;

struct FiniteMatrix {
  int n = 0;
  std::array<F2El, kMaxMatDim * kMaxMatDim> e{};

  F2El& at(int i, int j) { return e[i * n + j]; }
  const F2El& at(int i, int j) const { return e[i * n + j]; }

  bool operator==(const FiniteMatrix& o) const {
    if (n != o.n) return false;
    for (int k = 0; k < n * n; ++k)
      if (!(e[k] == o.e[k])) return false;
    return true;
  }
};

inline FiniteMatrix mat_zero(int n) {
  if (n < 1 || n > kMaxMatDim) throw std::invalid_argument("matrix dimension out of range");
  FiniteMatrix m;
  m.n = n;
  return m;
}

inline FiniteMatrix mat_identity(const Fq2& F, int n) {
  FiniteMatrix m = mat_zero(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = F.one();
  return m;
}

inline FiniteMatrix mat_mul(const Fq2& F, const FiniteMatrix& x, const FiniteMatrix& y) {
  if (x.n != y.n) throw std::invalid_argument("mat_mul: dimension mismatch");
  FiniteMatrix r = mat_zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      F2El xik = x.at(i, k);
      if (xik == F.zero()) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) = F.add(r.at(i, j), F.mul(xik, y.at(k, j)));
    }
  return r;
}

inline FiniteMatrix mat_sigma(const Fq2& F, const FiniteMatrix& x) {
  FiniteMatrix r = x;
  for (int k = 0; k < x.n * x.n; ++k) r.e[k] = F.sigma(r.e[k]);
  return r;
}

// Gauss-Jordan inverse; throws on singular input.
inline FiniteMatrix mat_inverse(const Fq2& F, const FiniteMatrix& x) {
  int n = x.n;
  FiniteMatrix a = x, r = mat_identity(F, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!(a.at(i, col) == F.zero())) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("mat_inverse: singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(r.at(piv, j), r.at(col, j));
      }
    F2El s = F.inv(a.at(col, col));
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = F.mul(s, a.at(col, j));
      r.at(col, j) = F.mul(s, r.at(col, j));
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      F2El f = a.at(i, col);
      if (f == F.zero()) continue;
      for (int j = 0; j < n; ++j) {
        a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(col, j)));
        r.at(i, j) = F.sub(r.at(i, j), F.mul(f, r.at(col, j)));
      }
    }
  }
  return r;
}

inline bool mat_is_invertible(const Fq2& F, const FiniteMatrix& x) {
  // row echelon without the back substitution
  FiniteMatrix a = x;
  int n = x.n;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!(a.at(i, col) == F.zero())) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    if (piv != col)
      for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
    F2El s = F.inv(a.at(col, col));
    for (int i = col + 1; i < n; ++i) {
      F2El f = F.mul(a.at(i, col), s);
      if (f == F.zero()) continue;
      for (int j = col; j < n; ++j) a.at(i, j) = F.sub(a.at(i, j), F.mul(f, a.at(col, j)));
    }
  }
  return true;
}

// P e_j = e_{w(j)}, so permutation_matrix(a) * permutation_matrix(b) is the
// matrix of perm_compose(a, b).
inline FiniteMatrix permutation_matrix(const Fq2& F, const Perm& w) {
  FiniteMatrix m = mat_zero(static_cast<int>(w.size()));
  for (size_t j = 0; j < w.size(); ++j) m.at(w[j], static_cast<int>(j)) = F.one();
  return m;
}

inline FiniteMatrix mat_diag(const Fq2&, const std::vector<F2El>& d) {
  FiniteMatrix m = mat_zero(static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

inline bool mat_is_upper_unipotent(const Fq2& F, const FiniteMatrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      if (i == j && !(x.at(i, j) == F.one())) return false;
      if (i > j && !(x.at(i, j) == F.zero())) return false;
    }
  return true;
}

inline bool mat_is_diagonal(const Fq2& F, const FiniteMatrix& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && !(x.at(i, j) == F.zero())) return false;
  return true;
}

// Is x monomial, i.e. a permutation matrix with invertible entries?
inline bool mat_is_monomial(const Fq2& F, const FiniteMatrix& x) {
  for (int i = 0; i < x.n; ++i) {
    int cnt = 0;
    for (int j = 0; j < x.n; ++j)
      if (!(x.at(i, j) == F.zero())) ++cnt;
    if (cnt != 1) return false;
  }
  for (int j = 0; j < x.n; ++j) {
    int cnt = 0;
    for (int i = 0; i < x.n; ++i)
      if (!(x.at(i, j) == F.zero())) ++cnt;
    if (cnt != 1) return false;
  }
  return true;
}

// Packed key for set membership and ordering. Row-major entries, each packed
// into ceil(log2(q^2)) bits. Only sized for the enumeration regimes (n <= 3
// and small q); larger shapes would not fit and are rejected.
using MatKey = unsigned __int128;

inline int mat_key_bits_per_entry(const Fq2& F) {
  int span = F.q() * F.q();
  int bits = 0;
  while ((1 << bits) < span) ++bits;
  return bits;
}

inline MatKey mat_key(const Fq2& F, const FiniteMatrix& x) {
  int bits = mat_key_bits_per_entry(F);
  if (x.n * x.n * bits > 128) throw std::invalid_argument("mat_key: matrix too large to pack");
  MatKey k = 0;
  for (int idx = 0; idx < x.n * x.n; ++idx) {
    k <<= bits;
    k |= static_cast<unsigned>(F.encode(x.e[idx]));
  }
  return k;
}

inline FiniteMatrix mat_from_key(const Fq2& F, int n, MatKey k) {
  int bits = mat_key_bits_per_entry(F);
  FiniteMatrix m = mat_zero(n);
  MatKey mask = (MatKey(1) << bits) - 1;
  for (int idx = n * n - 1; idx >= 0; --idx) {
    m.e[idx] = F.decode(static_cast<int>(k & mask));
    k >>= bits;
  }
  return m;
}

inline std::string mat_str(const Fq2& F, const FiniteMatrix& x) {
  std::string s = "[";
  for (int i = 0; i < x.n; ++i) {
    if (i) s += "; ";
    for (int j = 0; j < x.n; ++j) {
      if (j) s += " ";
      s += F.str(x.at(i, j));
    }
  }
  s += "]";
  return s;
}

}  // namespace tamedist
