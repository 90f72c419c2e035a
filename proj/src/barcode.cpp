#include "sbarc/barcode.hpp"

#include <algorithm>

#include "json.hpp"

namespace sbarc {

using ordered_json = nlohmann::ordered_json;

bool SignedBarcode::multiset_equal(const SignedBarcode& other) const {
  auto pos1 = positive, pos2 = other.positive;
  auto neg1 = negative, neg2 = other.negative;
  std::sort(pos1.begin(), pos1.end());
  std::sort(pos2.begin(), pos2.end());
  std::sort(neg1.begin(), neg1.end());
  std::sort(neg2.begin(), neg2.end());
  return pos1 == pos2 && neg1 == neg2;
}

SignedBarcode to_signed_barcode(const RankExactResolution& rk) {
  SignedBarcode sb;
  sb.n = rk.grid->n();
  sb.shape = BarShape::Hook;
  auto bar_of = [&](int pair_id) {
    auto [lo, hi] = rk.pairs->pair_of(pair_id);
    Bar bar;
    bar.i = rk.grid->grades_of(lo);
    if (rk.grid->is_top(hi))
      bar.j.assign(rk.grid->n(), kInf);
    else
      bar.j = rk.grid->grades_of(hi);
    return bar;
  };
  for (size_t k = 0; k < rk.res.betti.size(); ++k) {
    for (int elem : rk.res.betti[k]) {
      auto& side = (k % 2 == 0) ? sb.positive : sb.negative;
      side.push_back(bar_of(elem));
    }
  }
  // Indices into positive ++ negative, assigned in degree order.
  int pos_at = 0, neg_at = int(sb.positive.size());
  for (size_t k = 0; k < rk.res.betti.size(); ++k) {
    auto& idx = sb.degrees[int(k)];
    for (size_t c = 0; c < rk.res.betti[k].size(); ++c)
      idx.push_back((k % 2 == 0) ? pos_at++ : neg_at++);
  }
  return sb;
}

SignedBarcode cancel_common(const SignedBarcode& sb) {
  SignedBarcode out;
  out.n = sb.n;
  out.p = sb.p;
  out.shape = sb.shape;
  std::map<Bar, int> mult;
  for (const auto& b : sb.positive) ++mult[b];
  for (const auto& b : sb.negative) --mult[b];
  for (auto& [bar, m] : mult) {
    for (int k = 0; k < m; ++k) out.positive.push_back(bar);
    for (int k = 0; k < -m; ++k) out.negative.push_back(bar);
  }
  return out;
}

int bar_rank(const Bar& bar, BarShape shape, const std::vector<double>& a,
             const std::vector<double>& b) {
  size_t n = bar.i.size();
  for (size_t k = 0; k < n; ++k)
    if (!(bar.i[k] <= a[k])) return 0;
  if (shape == BarShape::Hook) {
    // b must not dominate j.
    bool j_leq_b = true;
    for (size_t k = 0; k < n; ++k)
      if (!(bar.j[k] <= b[k])) { j_leq_b = false; break; }
    return j_leq_b ? 0 : 1;
  }
  for (size_t k = 0; k < n; ++k)
    if (!(b[k] < bar.j[k])) return 0;
  return 1;
}

long signed_rank_sum(const SignedBarcode& sb, const std::vector<double>& a,
                     const std::vector<double>& b) {
  long total = 0;
  for (const auto& bar : sb.positive) total += bar_rank(bar, sb.shape, a, b);
  for (const auto& bar : sb.negative) total -= bar_rank(bar, sb.shape, a, b);
  return total;
}

namespace {

ordered_json endpoint_to_json(const std::vector<double>& v, BarShape shape,
                              bool is_j) {
  if (is_j && shape == BarShape::Hook) {
    bool all_inf = true;
    for (double x : v)
      if (x != kInf) all_inf = false;
    if (all_inf) return "inf";
  }
  ordered_json arr = ordered_json::array();
  for (double x : v) {
    if (x == kInf)
      arr.push_back("inf");
    else
      arr.push_back(x);
  }
  return arr;
}

std::vector<double> endpoint_from_json(const ordered_json& j, int n) {
  std::vector<double> out;
  if (j.is_string()) {
    if (j.get<std::string>() != "inf")
      throw std::invalid_argument("barcode json: bad endpoint marker");
    out.assign(n, kInf);
    return out;
  }
  for (const auto& v : j) {
    if (v.is_string()) {
      if (v.get<std::string>() != "inf")
        throw std::invalid_argument("barcode json: bad coordinate marker");
      out.push_back(kInf);
    } else {
      out.push_back(v.get<double>());
    }
  }
  if (int(out.size()) != n)
    throw std::invalid_argument("barcode json: endpoint arity mismatch");
  return out;
}

}  // namespace

std::string barcode_to_json(const SignedBarcode& sb) {
  ordered_json j;
  j["version"] = 1;
  j["n"] = sb.n;
  j["p"] = sb.p;
  j["shape"] = (sb.shape == BarShape::Hook) ? "hook" : "rectangle";
  auto side = [&](const std::vector<Bar>& bars) {
    ordered_json arr = ordered_json::array();
    for (const auto& b : bars) {
      ordered_json o;
      o["i"] = endpoint_to_json(b.i, sb.shape, false);
      o["j"] = endpoint_to_json(b.j, sb.shape, true);
      arr.push_back(std::move(o));
    }
    return arr;
  };
  j["positive"] = side(sb.positive);
  j["negative"] = side(sb.negative);
  ordered_json deg;
  for (auto& [k, idx] : sb.degrees) deg[std::to_string(k)] = idx;
  j["degrees"] = std::move(deg);
  j["inf"] = "inf";
  return j.dump(2);
}

SignedBarcode barcode_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  if (!j.contains("version") || j["version"].get<int>() != 1)
    throw std::invalid_argument("barcode json: unsupported version");
  SignedBarcode sb;
  sb.n = j["n"].get<int>();
  sb.p = j["p"].get<uint32_t>();
  std::string shape = j["shape"].get<std::string>();
  if (shape == "hook")
    sb.shape = BarShape::Hook;
  else if (shape == "rectangle")
    sb.shape = BarShape::Rectangle;
  else
    throw std::invalid_argument("barcode json: unknown shape '" + shape + "'");
  for (const auto& o : j["positive"]) {
    Bar b;
    b.i = endpoint_from_json(o["i"], sb.n);
    b.j = endpoint_from_json(o["j"], sb.n);
    sb.positive.push_back(std::move(b));
  }
  for (const auto& o : j["negative"]) {
    Bar b;
    b.i = endpoint_from_json(o["i"], sb.n);
    b.j = endpoint_from_json(o["j"], sb.n);
    sb.negative.push_back(std::move(b));
  }
  if (j.contains("degrees"))
    for (auto& [key, idx] : j["degrees"].items()) {
      int deg;
      try {
        deg = std::stoi(key);
      } catch (const std::exception&) {
        throw std::invalid_argument("barcode json: malformed degree key");
      }
      sb.degrees[deg] = idx.get<std::vector<int>>();
    }
  return sb;
}

}  // namespace sbarc
