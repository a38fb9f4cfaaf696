#pragma once

// Brute-force reimplementations used as independent oracles. They read the
// library's quantale tables and element decoding, but none of its relational
// algebra: every composite below is a plain nested loop.

#include "tvcat/algkm.hpp"

#include <string>
#include <vector>

namespace oracle {

using tvcat::FinSet;
using tvcat::Quantale;
using tvcat::SetRef;
using tvcat::Value;
using Table = std::vector<std::vector<Value>>;

inline Table table(const tvcat::VRel& r) {
  Table t(r.rows(), std::vector<Value>(r.cols()));
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j)
      t[i][j] = r.at(i, j);
  return t;
}

inline Table transpose(const Table& r, std::size_t cols) {
  Table t(cols, std::vector<Value>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      t[j][i] = r[i][j];
  return t;
}

/// r first, then s.
inline Table compose(const Quantale& q, const Table& r, const Table& s, std::size_t cols) {
  Table out(r.size(), std::vector<Value>(cols, q.bottom()));
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t z = 0; z < cols; ++z)
      for (std::size_t y = 0; y < s.size(); ++y)
        out[x][z] = q.join(out[x][z], q.tensor(r[x][y], s[y][z]));
  return out;
}

/// Lukasiewicz tensor on {0..n-1}: max(0, a + b - (n - 1)).
inline unsigned lukasiewicz_tensor(unsigned n, unsigned a, unsigned b) {
  return a + b >= n - 1 ? a + b - (n - 1) : 0;
}

/// One entry of the extension of r: X -|-> Y, by monad name. tx, ty are the
/// library's TX, TY; only their element decoding is used.
inline Value extend(const std::string& monad, const Quantale& q, const Table& r, const FinSet& tx, std::size_t a,
                    const FinSet& ty, std::size_t b) {
  if (monad == "identity")
    return r[a][b];
  const auto as = tx.items(a);
  const auto bs = ty.items(b);
  if (monad == "powerset") {
    // Every member of A relates to some member of B, and conversely.
    Value forward = q.top(), backward = q.top();
    for (auto i : as) {
      Value best = q.bottom();
      for (auto j : bs)
        best = q.join(best, r[i][j]);
      forward = q.meet(forward, best);
    }
    for (auto j : bs) {
      Value best = q.bottom();
      for (auto i : as)
        best = q.join(best, r[i][j]);
      backward = q.meet(backward, best);
    }
    return q.meet(forward, backward);
  }
  // Lists: same length, entrywise tensor.
  if (as.size() != bs.size())
    return q.bottom();
  Value v = q.unit();
  for (std::size_t k = 0; k < as.size(); ++k)
    v = q.tensor(v, r[as[k]][bs[k]]);
  return v;
}

inline Table extend_all(const std::string& monad, const Quantale& q, const Table& r, const FinSet& tx,
                        const FinSet& ty) {
  Table out(tx.size(), std::vector<Value>(ty.size()));
  for (std::size_t a = 0; a < tx.size(); ++a)
    for (std::size_t b = 0; b < ty.size(); ++b)
      out[a][b] = extend(monad, q, r, tx, a, ty, b);
  return out;
}

constexpr std::size_t undefined = static_cast<std::size_t>(-1);

/// Index of a list over an n-element base in length-then-lexicographic order.
inline std::size_t list_index(const std::vector<std::size_t>& xs, std::size_t n) {
  std::size_t offset = 0, power = 1;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    offset += power;
    power *= n;
  }
  std::size_t rank = 0;
  for (auto x : xs)
    rank = rank * n + x;
  return offset + rank;
}

/// m_X on element w of TTX: union of subsets, concatenation of lists
/// (undefined past the budget).
inline std::size_t mult(const std::string& monad, const FinSet& tx, const FinSet& ttx, std::size_t w) {
  if (monad == "identity")
    return w;
  if (monad == "powerset") {
    std::size_t mask = 0;
    for (auto member : ttx.items(w))
      mask |= member; // subset index = membership bitmask
    return mask;
  }
  std::vector<std::size_t> flat;
  for (auto inner : ttx.items(w))
    for (auto x : tx.items(inner))
      flat.push_back(x);
  if (flat.size() > tx.max_length())
    return undefined;
  return list_index(flat, tx.base()->size());
}

inline std::size_t unit(const std::string& monad, std::size_t x) {
  if (monad == "identity")
    return x;
  if (monad == "powerset")
    return std::size_t{1} << x;
  return 1 + x; // one-element lists follow the empty list
}

inline std::string monad_kind(const tvcat::LaxMonad& m) {
  const std::string n = m.name();
  return n.rfind("list", 0) == 0 ? "list" : n;
}

/// Structure of the induced monad on TX: (W, x') -> join { Ta(X, x') : m X = m W },
/// bottom where m W is undefined.
inline Table induced(const tvcat::TVStructure& s) {
  const auto& q = *s.quantale;
  const std::string kind = monad_kind(*s.monad);
  const SetRef& tx = s.tcarrier();
  const SetRef ttx = s.monad->apply(tx);
  const Table ta = extend_all(kind, q, table(s.rel), *ttx, *tx);
  Table out(ttx->size(), std::vector<Value>(tx->size(), q.bottom()));
  for (std::size_t w = 0; w < ttx->size(); ++w) {
    const std::size_t mw = mult(kind, *tx, *ttx, w);
    if (mw == undefined)
      continue;
    for (std::size_t big = 0; big < ttx->size(); ++big)
      if (mult(kind, *tx, *ttx, big) == mw)
        for (std::size_t t = 0; t < tx->size(); ++t)
          out[w][t] = q.join(out[w][t], ta[big][t]);
  }
  return out;
}

/// Dual structure on TX: (W, x') -> join { T(a^o)(m W, Y) : m Y = x' }.
inline Table dual(const tvcat::TVStructure& s) {
  const auto& q = *s.quantale;
  const std::string kind = monad_kind(*s.monad);
  const SetRef& x = s.carrier;
  const SetRef& tx = s.tcarrier();
  const SetRef ttx = s.monad->apply(tx);
  const Table at = transpose(table(s.rel), x->size());
  Table out(ttx->size(), std::vector<Value>(tx->size(), q.bottom()));
  for (std::size_t w = 0; w < ttx->size(); ++w) {
    const std::size_t mw = mult(kind, *tx, *ttx, w);
    if (mw == undefined)
      continue;
    for (std::size_t y = 0; y < ttx->size(); ++y) {
      const std::size_t my = mult(kind, *tx, *ttx, y);
      if (my == undefined)
        continue;
      out[w][my] = q.join(out[w][my], extend(kind, q, at, *tx, mw, *ttx, y));
    }
  }
  return out;
}

/// Reflexive and transitive boolean tables on n points.
inline std::vector<std::vector<bool>> preorders(std::size_t n) {
  std::vector<std::vector<bool>> out;
  const std::size_t cells = n * n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
    std::vector<bool> le(cells);
    for (std::size_t c = 0; c < cells; ++c)
      le[c] = (mask >> c) & 1;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      ok = le[i * n + i];
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = 0; j < n && ok; ++j)
        for (std::size_t k = 0; k < n && ok; ++k)
          if (le[i * n + j] && le[j * n + k] && !le[i * n + k])
            ok = false;
    if (ok)
      out.push_back(std::move(le));
  }
  return out;
}

} // namespace oracle
