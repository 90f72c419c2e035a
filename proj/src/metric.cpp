#include "sbarc/metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace sbarc {

namespace {

constexpr double kTol = 1e-9;

// |x - y| with the extended conventions |inf - inf| = 0, |x - inf| = inf.
double ext_absdiff(double x, double y) {
  if (x == kInf && y == kInf) return 0.0;
  if (x == kInf || y == kInf) return kInf;
  return std::fabs(x - y);
}

double sup_diff(const std::vector<double>& x, const std::vector<double>& y) {
  double m = 0.0;
  for (size_t k = 0; k < x.size(); ++k) m = std::max(m, ext_absdiff(x[k], y[k]));
  return m;
}

}  // namespace

double hook_to_zero(const Bar& bar) {
  double m = 0.0;
  for (size_t k = 0; k < bar.i.size(); ++k)
    m = std::max(m, ext_absdiff(bar.j[k], bar.i[k]));
  return m / 2.0;
}

double rect_to_zero(const Bar& bar) {
  double m = kInf;
  for (size_t k = 0; k < bar.i.size(); ++k)
    m = std::min(m, ext_absdiff(bar.j[k], bar.i[k]));
  return m / 2.0;
}

double bar_to_zero(const Bar& bar, BarShape shape) {
  return shape == BarShape::Hook ? hook_to_zero(bar) : rect_to_zero(bar);
}

double hook_distance(const Bar& a, const Bar& b) {
  double endpoints = std::max(sup_diff(a.i, b.i), sup_diff(a.j, b.j));
  double trivial = std::max(hook_to_zero(a), hook_to_zero(b));
  return std::min(endpoints, trivial);
}

double rect_distance(const Bar& a, const Bar& b) {
  double endpoints = std::max(sup_diff(a.i, b.i), sup_diff(a.j, b.j));
  double trivial = std::max(rect_to_zero(a), rect_to_zero(b));
  return std::min(endpoints, trivial);
}

double bar_distance(const Bar& a, const Bar& b, BarShape shape) {
  return shape == BarShape::Hook ? hook_distance(a, b) : rect_distance(a, b);
}

namespace {

/// Hopcroft-Karp maximum matching; left vertices 0..nl-1, adj into right.
struct HopcroftKarp {
  int nl, nr;
  std::vector<std::vector<int>> adj;
  std::vector<int> match_l, match_r, dist;

  HopcroftKarp(int nl_, int nr_) : nl(nl_), nr(nr_), adj(nl_) {}
  void add_edge(int l, int r) { adj[l].push_back(r); }

  bool bfs() {
    std::queue<int> q;
    dist.assign(nl, -1);
    for (int l = 0; l < nl; ++l)
      if (match_l[l] < 0) {
        dist[l] = 0;
        q.push(l);
      }
    bool found = false;
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (int r : adj[l]) {
        int l2 = match_r[r];
        if (l2 < 0)
          found = true;
        else if (dist[l2] < 0) {
          dist[l2] = dist[l] + 1;
          q.push(l2);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (int r : adj[l]) {
      int l2 = match_r[r];
      if (l2 < 0 || (dist[l2] == dist[l] + 1 && dfs(l2))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    dist[l] = -1;
    return false;
  }

  int run() {
    match_l.assign(nl, -1);
    match_r.assign(nr, -1);
    int size = 0;
    while (bfs())
      for (int l = 0; l < nl; ++l)
        if (match_l[l] < 0 && dfs(l)) ++size;
    return size;
  }
};

}  // namespace

std::optional<MatchingResult> epsilon_matching(const std::vector<Bar>& left,
                                               const std::vector<Bar>& right,
                                               BarShape shape, double eps) {
  int nl = int(left.size()), nr = int(right.size());
  // Augmented graph: each side padded with one zero-proxy per bar of the
  // other side; a perfect matching of the padded graph is exactly an
  // eps-matching.
  HopcroftKarp hk(nl + nr, nr + nl);
  auto allowed = [eps](double d) { return d <= eps + kTol; };
  for (int l = 0; l < nl; ++l)
    for (int r = 0; r < nr; ++r)
      if (allowed(bar_distance(left[l], right[r], shape))) hk.add_edge(l, r);
  for (int l = 0; l < nl; ++l)
    if (allowed(bar_to_zero(left[l], shape))) hk.add_edge(l, nr + l);
  for (int r = 0; r < nr; ++r)
    if (allowed(bar_to_zero(right[r], shape))) hk.add_edge(nl + r, r);
  for (int r = 0; r < nr; ++r)
    for (int l = 0; l < nl; ++l) hk.add_edge(nl + r, nr + l);
  if (hk.run() != nl + nr) return std::nullopt;
  MatchingResult out;
  out.epsilon = eps;
  for (int l = 0; l < nl; ++l) {
    int r = hk.match_l[l];
    if (r < nr)
      out.pairs.push_back({l, r, bar_distance(left[l], right[r], shape)});
    else
      out.unmatched_left.push_back({l, bar_to_zero(left[l], shape)});
  }
  for (int r = 0; r < nr; ++r)
    if (hk.match_r[r] >= nl)
      out.unmatched_right.push_back({r, bar_to_zero(right[r], shape)});
  return out;
}

std::pair<double, MatchingResult> bottleneck(const std::vector<Bar>& left,
                                             const std::vector<Bar>& right,
                                             BarShape shape) {
  std::vector<double> candidates{0.0};
  for (const auto& a : left) {
    double d = bar_to_zero(a, shape);
    if (d < kInf) candidates.push_back(d);
  }
  for (const auto& b : right) {
    double d = bar_to_zero(b, shape);
    if (d < kInf) candidates.push_back(d);
  }
  for (const auto& a : left)
    for (const auto& b : right) {
      double d = bar_distance(a, b, shape);
      if (d < kInf) candidates.push_back(d);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](double x, double y) { return y - x <= kTol; }),
                   candidates.end());
  int lo = 0, hi = int(candidates.size()) - 1, best = -1;
  // Feasibility is monotone in the threshold.
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (epsilon_matching(left, right, shape, candidates[mid])) {
      best = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  if (best < 0) {
    MatchingResult inf_match;
    inf_match.epsilon = kInf;
    for (int l = 0; l < int(left.size()); ++l)
      inf_match.unmatched_left.push_back({l, bar_to_zero(left[l], shape)});
    for (int r = 0; r < int(right.size()); ++r)
      inf_match.unmatched_right.push_back({r, bar_to_zero(right[r], shape)});
    return {kInf, inf_match};
  }
  auto m = epsilon_matching(left, right, shape, candidates[best]);
  return {candidates[best], *m};
}

SignedMatching signed_bottleneck(const SignedBarcode& a, const SignedBarcode& b) {
  if (a.shape != b.shape)
    throw std::invalid_argument("signed_bottleneck: shape mismatch");
  SignedMatching out;
  for (size_t i = 0; i < a.positive.size(); ++i)
    out.left.push_back({a.positive[i], 'A', '+', int(i)});
  for (size_t i = 0; i < b.negative.size(); ++i)
    out.left.push_back({b.negative[i], 'B', '-', int(i)});
  for (size_t i = 0; i < b.positive.size(); ++i)
    out.right.push_back({b.positive[i], 'B', '+', int(i)});
  for (size_t i = 0; i < a.negative.size(); ++i)
    out.right.push_back({a.negative[i], 'A', '-', int(i)});
  std::vector<Bar> lbars, rbars;
  for (auto& t : out.left) lbars.push_back(t.bar);
  for (auto& t : out.right) rbars.push_back(t.bar);
  auto [eps, match] = bottleneck(lbars, rbars, a.shape);
  out.epsilon = eps;
  out.matching = std::move(match);
  return out;
}

}  // namespace sbarc
