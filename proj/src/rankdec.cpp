#include "sbarc/rankdec.hpp"

#include <algorithm>

namespace sbarc {

namespace {

constexpr int64_t kPrimes[] = {2147483647, 2147483629, 2147483587};

/// Solves the integer system A x = b (A 0/1) by elimination modulo a large
/// prime, lifting residues to signed integers. The caller certifies the
/// lifted solution exactly; a singular or unlucky prime is retried.
std::optional<std::vector<long>> solve_lifted(
    const std::vector<std::vector<int8_t>>& a, const std::vector<long>& b,
    int64_t q) {
  int rows = int(a.size());
  int cols = rows ? int(a[0].size()) : 0;
  std::vector<std::vector<int64_t>> m(rows, std::vector<int64_t>(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m[i][j] = a[i][j];
    m[i][cols] = ((b[i] % q) + q) % q;
  }
  auto inv = [&](int64_t v) {
    int64_t base = ((v % q) + q) % q, r = 1;
    for (int64_t e = q - 2; e; e >>= 1) {
      if (e & 1) r = (__int128)r * base % q;
      base = (__int128)base * base % q;
    }
    return r;
  };
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % q != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(m[pr], m[r]);
    int64_t f = inv(m[r][c]);
    for (int j = c; j <= cols; ++j) m[r][j] = (__int128)m[r][j] * f % q;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] % q == 0) continue;
      int64_t g = m[i][c] % q;
      for (int j = c; j <= cols; ++j)
        m[i][j] = ((m[i][j] - (__int128)g * m[r][j]) % q + q) % q;
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (int i = r; i < rows; ++i)
    if (m[i][cols] % q != 0) return std::nullopt;  // inconsistent mod q
  std::vector<long> x(cols, 0);  // free unknowns pinned to zero
  for (int i = 0; i < r; ++i) {
    int64_t v = m[i][cols] % q;
    if (v > q / 2) v -= q;
    x[pivot_col[i]] = long(v);
  }
  return x;
}

SignedBarcode barcode_of_multiplicities(const std::vector<Bar>& bars,
                                        const std::vector<long>& mult,
                                        BarShape shape, int n, uint32_t p) {
  SignedBarcode sb;
  sb.n = n;
  sb.p = p;
  sb.shape = shape;
  for (size_t u = 0; u < bars.size(); ++u) {
    for (long k = 0; k < mult[u]; ++k) sb.positive.push_back(bars[u]);
    for (long k = 0; k < -mult[u]; ++k) sb.negative.push_back(bars[u]);
  }
  return sb;
}

}  // namespace

SignedBarcode mrd_hooks(const PersistenceModule& m) {
  const auto& grid = *m.grid();
  if (!grid.has_top())
    throw std::invalid_argument("mrd_hooks: grid must carry a top element");
  auto rk = rank_invariant(m);
  std::vector<Bar> bars;
  for (int i = 0; i < grid.num_points(); ++i)
    for (int j = 0; j < grid.num_elements(); ++j) {
      if (i == j || !grid.leq(i, j)) continue;
      Bar bar;
      bar.i = grid.grades_of(i);
      if (grid.is_top(j))
        bar.j.assign(grid.n(), kInf);
      else
        bar.j = grid.grades_of(j);
      bars.push_back(std::move(bar));
    }
  std::vector<std::vector<int8_t>> a;
  std::vector<long> b;
  a.reserve(rk.table.size());
  for (auto& [key, rank] : rk.table) {
    auto ga = grid.grades_of(key.first);
    auto gb = grid.grades_of(key.second);
    std::vector<int8_t> row(bars.size());
    for (size_t u = 0; u < bars.size(); ++u)
      row[u] = int8_t(bar_rank(bars[u], BarShape::Hook, ga, gb));
    a.push_back(std::move(row));
    b.push_back(rank);
  }
  for (int64_t q : kPrimes) {
    auto sol = solve_lifted(a, b, q);
    if (!sol) continue;
    auto sb = barcode_of_multiplicities(bars, *sol, BarShape::Hook, grid.n(), m.p());
    if (verify_rank_decomposition(sb, rk).ok) return sb;
  }
  throw std::runtime_error(
      "mrd_hooks: no certified integer solution (internal-consistency failure)");
}

ExtendedModule sentinel_extension(const PersistenceModule& m) {
  const auto& grid = *m.grid();
  std::vector<std::vector<double>> axes(grid.n());
  for (int k = 0; k < grid.n(); ++k) {
    axes[k] = grid.axis(k);
    axes[k].push_back(axes[k].back() + 1.0);
  }
  ExtendedModule out;
  out.grid = build_grid(std::move(axes), false);
  out.module = extend_to_grid(m, out.grid);
  return out;
}

namespace {

/// Multiplicities of right-open rectangles from the rank invariant on the
/// sentinel-extended grid, by alternating differencing: the cumulative
/// sum of multiplicities over {i' <= i, j' >= j} equals the rank at
/// (i, pred(j)), which is unitriangular in the product order.
SignedBarcode rectangles_from_extended_rank(const RankInvariant& rk_ext,
                                            const GridPoset& orig,
                                            uint32_t p) {
  const auto& ext = *rk_ext.grid;
  int n = orig.n();
  auto rank_at = [&](const std::vector<int>& a, const std::vector<int>& b) {
    return long(rk_ext.at(ext.id_of(a), ext.id_of(b)));
  };
  // Right ends are encoded by the extended-grid index of their predecessor:
  // pred in {i_k .. m_k-2} for a finite end coords[pred+1], pred == m_k
  // (the sentinel) for a per-axis infinite end.
  std::vector<Bar> bars;
  std::vector<long> mult;
  std::vector<int> i_idx(n, 0);
  while (true) {
    // Enumerate predecessor choices for this left corner.
    std::vector<std::vector<int>> chain(n);
    for (int k = 0; k < n; ++k) {
      for (int t = i_idx[k]; t <= orig.shape()[k] - 2; ++t) chain[k].push_back(t);
      chain[k].push_back(orig.shape()[k]);
    }
    std::vector<int> pick(n, 0);
    while (true) {
      std::vector<int> b_idx(n);
      for (int k = 0; k < n; ++k) b_idx[k] = chain[k][pick[k]];
      long value = 0;
      for (uint32_t smask = 0; smask < (1u << n); ++smask) {
        std::vector<int> a = i_idx;
        bool drop = false;
        for (int k = 0; k < n && !drop; ++k)
          if (smask & (1u << k)) {
            if (--a[k] < 0) drop = true;
          }
        if (drop) continue;
        for (uint32_t tmask = 0; tmask < (1u << n); ++tmask) {
          std::vector<int> bb = b_idx;
          bool drop2 = false;
          for (int k = 0; k < n && !drop2; ++k)
            if (tmask & (1u << k)) {
              if (bb[k] == orig.shape()[k])
                drop2 = true;  // beyond infinity
              else if (bb[k] == orig.shape()[k] - 2)
                bb[k] = orig.shape()[k];  // next chain value skips the sentinel-1
              else
                ++bb[k];
            }
          if (drop2) continue;
          int sign = (__builtin_popcount(smask) + __builtin_popcount(tmask)) % 2;
          long term = rank_at(a, bb);
          value += sign ? -term : term;
        }
      }
      if (value != 0) {
        Bar bar;
        bar.i.resize(n);
        bar.j.resize(n);
        for (int k = 0; k < n; ++k) {
          bar.i[k] = orig.axis(k)[i_idx[k]];
          bar.j[k] = (b_idx[k] == orig.shape()[k]) ? kInf
                                                   : orig.axis(k)[b_idx[k] + 1];
        }
        bars.push_back(std::move(bar));
        mult.push_back(value);
      }
      int k = n - 1;
      while (k >= 0 && ++pick[k] == int(chain[k].size())) pick[k--] = 0;
      if (k < 0) break;
    }
    int k = n - 1;
    while (k >= 0 && ++i_idx[k] == orig.shape()[k]) i_idx[k--] = 0;
    if (k < 0) break;
  }
  auto sb = barcode_of_multiplicities(bars, mult, BarShape::Rectangle, n, p);
  auto check = verify_rank_decomposition(sb, rk_ext);
  if (!check.ok)
    throw std::runtime_error(
        "mrd_rectangles: decomposition failed certification at pair (" +
        std::to_string(check.failing_pair.first) + "," +
        std::to_string(check.failing_pair.second) + "): expected " +
        std::to_string(check.expected) + " got " + std::to_string(check.got));
  return sb;
}

}  // namespace

SignedBarcode mrd_rectangles(const PersistenceModule& m) {
  auto ext = sentinel_extension(m);
  auto rk = rank_invariant(*ext.module);
  return rectangles_from_extended_rank(rk, *m.grid(), m.p());
}

RankInvariant rank_invariant_of_intervals(
    GridPtr grid, const std::vector<std::set<int>>& supports) {
  RankInvariant out;
  out.grid = grid;
  for (int a = 0; a < grid->num_points(); ++a)
    for (int b = 0; b < grid->num_points(); ++b) {
      if (!grid->leq(a, b)) continue;
      int r = 0;
      for (const auto& s : supports)
        if (s.count(a) && s.count(b)) ++r;
      out.table[{a, b}] = r;
    }
  return out;
}

SignedBarcode mrd_rectangles(const IntervalSumModule& m) {
  const auto& grid = *m.grid;
  std::vector<std::vector<double>> axes(grid.n());
  for (int k = 0; k < grid.n(); ++k) {
    axes[k] = grid.axis(k);
    axes[k].push_back(axes[k].back() + 1.0);
  }
  auto ext = build_grid(std::move(axes), false);
  // Boundary-value extension of each support: an extended point belongs to
  // the support exactly when its clamp to the original grid does.
  std::vector<std::set<int>> ext_supports(m.supports.size());
  for (int x = 0; x < ext->num_points(); ++x) {
    auto idx = ext->index_of(x);
    std::vector<int> clamped(grid.n());
    for (int k = 0; k < grid.n(); ++k)
      clamped[k] = std::min(idx[k], grid.shape()[k] - 1);
    int cid = grid.id_of(clamped);
    for (size_t s = 0; s < m.supports.size(); ++s)
      if (m.supports[s].count(cid)) ext_supports[s].insert(x);
  }
  auto rk = rank_invariant_of_intervals(ext, ext_supports);
  return rectangles_from_extended_rank(rk, grid, m.p);
}

SignedBarcode mrd_rect_of_hook(const std::vector<double>& i,
                               const std::vector<double>& j) {
  int n = int(i.size());
  if (int(j.size()) != n) throw std::invalid_argument("hook: arity mismatch");
  bool strict = false;
  for (int k = 0; k < n; ++k) {
    if (!(i[k] <= j[k])) throw std::invalid_argument("hook: need i < j");
    if (i[k] < j[k]) strict = true;
  }
  if (!strict) throw std::invalid_argument("hook: need i < j");
  SignedBarcode sb;
  sb.n = n;
  sb.shape = BarShape::Rectangle;
  bool some_inf = false;
  for (int k = 0; k < n; ++k)
    if (j[k] == kInf) some_inf = true;
  if (some_inf) {
    // Support is the full upset of i.
    Bar bar;
    bar.i = i;
    bar.j.assign(n, kInf);
    sb.positive.push_back(std::move(bar));
    return sb;
  }
  std::vector<int> axes;
  for (int k = 0; k < n; ++k)
    if (j[k] > i[k]) axes.push_back(k);
  for (uint32_t mask = 1; mask < (1u << axes.size()); ++mask) {
    Bar bar;
    bar.i = i;
    bar.j.assign(n, kInf);
    for (size_t t = 0; t < axes.size(); ++t)
      if (mask & (1u << t)) bar.j[axes[t]] = j[axes[t]];
    if (__builtin_popcount(mask) % 2 == 1)
      sb.positive.push_back(std::move(bar));
    else
      sb.negative.push_back(std::move(bar));
  }
  return sb;
}

VerifyResult verify_rank_decomposition(const SignedBarcode& sb,
                                       const RankInvariant& rk) {
  const auto& grid = *rk.grid;
  for (auto& [key, rank] : rk.table) {
    long got = signed_rank_sum(sb, grid.grades_of(key.first),
                               grid.grades_of(key.second));
    if (got != rank) {
      VerifyResult out;
      out.ok = false;
      out.failing_pair = key;
      out.expected = rank;
      out.got = got;
      return out;
    }
  }
  return {};
}

}  // namespace sbarc
