#pragma once

// Independent reference computations used by the tests. Nothing here calls
// the enumeration or cohomology code under test; only plain face lists of a
// nerve and multiplication tables are read.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<long long>>;  // rows x cols

/// Nonzero invariant factors of an integer matrix, by elimination over Z.
inline std::vector<long long> smith_invariants(Matrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<long long> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest nonzero absolute value in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const long long q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          clean = false;
          std::swap(a[t], a[i]);
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const long long q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          clean = false;
          for (auto& row : a) std::swap(row[t], row[j]);
        }
      }
      if (clean) {
        // the pivot must divide the rest of the block
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols && clean; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
              clean = false;
            }
      }
    }
    diag.push_back(std::llabs(a[t][t]));
    ++t;
  }
  return diag;
}

inline double ipow(long long n, std::size_t e) {
  double r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= static_cast<double>(n);
  return r;
}

/// |ker(D (x) Z/n)| for D: Z^cols -> Z^rows.
inline double kernel_size_mod(const Matrix& d, std::size_t cols, long long n) {
  const auto s = smith_invariants(d);
  double k = ipow(n, cols - s.size());
  for (long long v : s) k *= static_cast<double>(std::gcd(v, n));
  return k;
}

/// |image(D (x) Z/n)|.
inline double image_size_mod(const Matrix& d, std::size_t cols, long long n) {
  return ipow(n, cols) / kernel_size_mod(d, cols, n);
}

/// Simplicial coboundary C^k -> C^{k+1} for the given face lists, where
/// faces_k are the k-simplices (k + 1 vertices, increasing). Entry
/// [tau][sigma] is (-1)^i when sigma is tau with vertex i removed.
inline Matrix coboundary_matrix(const std::vector<std::vector<int>>& faces_k,
                                const std::vector<std::vector<int>>& faces_k1) {
  Matrix m(faces_k1.size(), std::vector<long long>(faces_k.size(), 0));
  for (std::size_t r = 0; r < faces_k1.size(); ++r)
    for (std::size_t i = 0; i < faces_k1[r].size(); ++i) {
      std::vector<int> sub = faces_k1[r];
      sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
      const auto it = std::find(faces_k.begin(), faces_k.end(), sub);
      if (it != faces_k.end()) m[r][static_cast<std::size_t>(it - faces_k.begin())] += (i % 2 ? -1 : 1);
    }
  return m;
}

/// |H^k(nerve; Z/n)| from the face lists by_size[s] (faces with s vertices).
inline double cohomology_size(const std::vector<std::vector<std::vector<int>>>& by_size, std::size_t k, long long n) {
  auto faces = [&](std::size_t s) { return s < by_size.size() ? by_size[s] : std::vector<std::vector<int>>{}; };
  const auto ck = faces(k + 1);
  const Matrix dk = coboundary_matrix(ck, faces(k + 2));
  const double ker = kernel_size_mod(dk, ck.size(), n);
  if (k == 0) return ker;
  const auto cprev = faces(k);
  const Matrix dprev = coboundary_matrix(cprev, ck);
  return ker / image_size_mod(dprev, cprev.size(), n);
}

/// Applies the coboundary matrix to a cochain mod n.
inline std::vector<int> apply_mod(const Matrix& d, const std::vector<int>& x, int n) {
  std::vector<int> y(d.size(), 0);
  for (std::size_t r = 0; r < d.size(); ++r) {
    long long s = 0;
    for (std::size_t c = 0; c < x.size(); ++c) s += d[r][c] * x[c];
    y[r] = static_cast<int>(((s % n) + n) % n);
  }
  return y;
}

/// All automorphisms of a multiplication table by trying every permutation.
inline std::vector<std::vector<int>> brute_automorphisms(const std::vector<std::vector<int>>& mul) {
  const int n = static_cast<int>(mul.size());
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool hom = true;
    for (int a = 0; a < n && hom; ++a)
      for (int b = 0; b < n && hom; ++b) hom = f[mul[a][b]] == mul[f[a]][f[b]];
    if (hom) out.push_back(f);
  } while (std::next_permutation(f.begin(), f.end()));
  return out;
}

/// Whether two multiplication tables are isomorphic, by trying every permutation.
inline bool brute_isomorphic(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
  if (a.size() != b.size()) return false;
  const int n = static_cast<int>(a.size());
  std::vector<int> f(n);
  std::iota(f.begin(), f.end(), 0);
  do {
    bool hom = true;
    for (int x = 0; x < n && hom; ++x)
      for (int y = 0; y < n && hom; ++y) hom = f[a[x][y]] == b[f[x]][f[y]];
    if (hom) return true;
  } while (std::next_permutation(f.begin(), f.end()));
  return false;
}

}  // namespace oracle
