#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamedist {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Explicit model of F_{p^m}. Elements are encoded as integers in [0, q):
// the base-p digits of the encoding are the coefficients of the element in
// the polynomial basis 1, x, ..., x^{m-1} (constant term = least digit),
// reduced modulo the lexicographically least monic irreducible of degree m
// ("least" = smallest base-p value of the nonleading coefficients).
//
// Multiplication runs off discrete-log tables built once at construction,
// so the field must stay small; that is all the residue computations here
// need.
class Fq {
 public:
  Fq(int p, int m) : p_(p), m_(m) {
    if (!is_prime(p)) throw std::invalid_argument("Fq: p must be prime");
    if (m < 1) throw std::invalid_argument("Fq: m must be >= 1");
    q_ = 1;
    for (int i = 0; i < m; ++i) {
      q_ *= p;
      if (q_ > (1L << 20)) throw std::invalid_argument("Fq: field too large");
    }
    find_modulus();
    find_generator();
    build_tables();
  }

  int p() const { return p_; }
  int m() const { return m_; }
  long q() const { return q_; }
  long generator() const { return g_; }

  long add(long a, long b) const {
    long r = 0, mul = 1;
    for (int i = 0; i < m_; ++i) {
      long da = (a / mul) % p_, db = (b / mul) % p_;
      r += ((da + db) % p_) * mul;
      mul *= p_;
    }
    return r;
  }

  long neg(long a) const {
    long r = 0, mul = 1;
    for (int i = 0; i < m_; ++i) {
      long da = (a / mul) % p_;
      r += ((p_ - da) % p_) * mul;
      mul *= p_;
    }
    return r;
  }

  long sub(long a, long b) const { return add(a, neg(b)); }

  long mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  long inv(long a) const {
    if (a == 0) throw std::invalid_argument("Fq: inverse of zero");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  // a^e for any integer e (negative allowed when a != 0).
  long pow(long a, long e) const {
    if (a == 0) {
      if (e > 0) return 0;
      if (e == 0) return 1;
      throw std::invalid_argument("Fq: zero to a negative power");
    }
    long o = q_ - 1;
    long k = ((log_[a] * (e % o)) % o + o) % o;
    return exp_[k];
  }

  long dlog(long a) const {
    if (a == 0) throw std::invalid_argument("Fq: dlog of zero");
    return log_[a];
  }

  long from_dlog(long k) const {
    long o = q_ - 1;
    return exp_[((k % o) + o) % o];
  }

  long frobenius_p(long a) const { return pow(a, p_); }

  // Trace to the prime field, returned as an integer in [0, p).
  int trace(long a) const {
    long s = a, t = a;
    for (int i = 1; i < m_; ++i) {
      t = frobenius_p(t);
      s = add(s, t);
    }
    if (s >= p_) throw std::logic_error("Fq: trace left the prime field");
    return static_cast<int>(s);
  }

  long element_order(long a) const {
    if (a == 0) throw std::invalid_argument("Fq: order of zero");
    long ord = 1, t = a;
    while (t != 1) {
      t = mul(t, a);
      ++ord;
    }
    return ord;
  }

 private:
  int p_, m_;
  long q_ = 0;
  long g_ = 0;
  std::vector<int> red_;    // coefficients of x^m reduced mod the modulus
  std::vector<long> exp_, log_;

  using Poly = std::vector<int>;  // coefficients mod p, constant first

  static void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  }

  // Remainder of f by monic g, both over F_p.
  Poly poly_rem(Poly f, const Poly& g) const {
    trim(f);
    while (f.size() >= g.size()) {
      int c = f.back();
      size_t shift = f.size() - g.size();
      for (size_t i = 0; i < g.size(); ++i) {
        int v = f[shift + i] - c * g[i] % p_;
        f[shift + i] = ((v % p_) + p_) % p_;
      }
      trim(f);
    }
    return f;
  }

  void find_modulus() {
    if (m_ == 1) {
      red_ = {0};
      return;
    }
    // Enumerate candidates x^m + (base-p digits of v) and trial-divide by
    // every monic polynomial of degree 1..m/2.
    for (long v = 0; v < q_; ++v) {
      Poly h(m_ + 1, 0);
      h[m_] = 1;
      long t = v;
      for (int i = 0; i < m_; ++i) {
        h[i] = static_cast<int>(t % p_);
        t /= p_;
      }
      bool irreducible = true;
      for (int d = 1; irreducible && 2 * d <= m_; ++d) {
        long nd = 1;
        for (int i = 0; i < d; ++i) nd *= p_;
        for (long u = 0; u < nd; ++u) {
          Poly g(d + 1, 0);
          g[d] = 1;
          long s = u;
          for (int i = 0; i < d; ++i) {
            g[i] = static_cast<int>(s % p_);
            s /= p_;
          }
          if (poly_rem(h, g).empty()) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) {
        red_.assign(m_, 0);
        for (int i = 0; i < m_; ++i) red_[i] = ((-h[i]) % p_ + p_) % p_;
        return;
      }
    }
    throw std::logic_error("Fq: no irreducible modulus found");
  }

  // Table-free product, used only while bootstrapping the dlog tables.
  long raw_mul(long a, long b) const {
    std::vector<int> buf(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i) {
      int da = static_cast<int>((a / ipow(p_, i)) % p_);
      if (da == 0) continue;
      for (int j = 0; j < m_; ++j) {
        int db = static_cast<int>((b / ipow(p_, j)) % p_);
        buf[i + j] = (buf[i + j] + da * db) % p_;
      }
    }
    for (int k = 2 * m_ - 2; k >= m_; --k) {
      int c = buf[k];
      if (c == 0) continue;
      buf[k] = 0;
      for (int j = 0; j < m_; ++j) buf[k - m_ + j] = (buf[k - m_ + j] + c * red_[j]) % p_;
    }
    long r = 0;
    for (int i = m_ - 1; i >= 0; --i) r = r * p_ + buf[i];
    return r;
  }

  static long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
  }

  long raw_pow(long a, long e) const {
    long r = 1, t = a;
    while (e > 0) {
      if (e & 1) r = raw_mul(r, t);
      t = raw_mul(t, t);
      e >>= 1;
    }
    return r;
  }

  void find_generator() {
    auto primes = prime_factors(q_ - 1);
    for (long a = 1; a < q_; ++a) {
      bool ok = true;
      for (long ell : primes) {
        if (raw_pow(a, (q_ - 1) / ell) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) {
        g_ = a;
        return;
      }
    }
    throw std::logic_error("Fq: no generator found");
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, -1);
    long t = 1;
    for (long k = 0; k < q_ - 1; ++k) {
      exp_[k] = t;
      if (log_[t] != -1) throw std::logic_error("Fq: generator order too small");
      log_[t] = k;
      t = raw_mul(t, g_);
    }
    if (t != 1) throw std::logic_error("Fq: generator order mismatch");
  }
};

}  // namespace tamedist
