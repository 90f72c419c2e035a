#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbarc/experiments.hpp"
#include "sbarc/metric.hpp"
#include "sbarc/rankdec.hpp"
#include "sbarc/svg.hpp"

namespace {

using sbarc::kInf;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitExperiment = 4;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::invalid_argument("cannot write '" + out_path + "'");
  out << text;
}

sbarc::Presentation load_presentation(const std::string& path, uint32_t field) {
  auto pres = sbarc::parse_presentation(slurp(path));
  if (field != 0 && field != pres.p) {
    pres.p = field;
    for (auto& rel : pres.relations)
      for (auto& [col, coeff] : rel.column) coeff %= field;
    pres.validate();
  }
  return pres;
}

ordered_json grades_json(const std::vector<double>& g) {
  ordered_json arr = ordered_json::array();
  for (double v : g) {
    if (v == kInf)
      arr.push_back("inf");
    else
      arr.push_back(v);
  }
  return arr;
}

int cmd_rank_inv(const std::string& path, uint32_t field,
                 const std::string& out_path) {
  auto pres = load_presentation(path, field);
  auto grid = sbarc::compress_grades(pres);
  auto mod = sbarc::realize(pres, grid);
  auto rk = sbarc::rank_invariant(*mod);
  ordered_json j;
  j["version"] = 1;
  j["n"] = pres.n;
  j["p"] = pres.p;
  ordered_json pairs = ordered_json::array();
  for (auto& [key, r] : rk.table) {
    ordered_json o;
    o["a"] = grades_json(grid->grades_of(key.first));
    o["b"] = grades_json(grid->grades_of(key.second));
    o["rank"] = r;
    pairs.push_back(std::move(o));
  }
  j["pairs"] = std::move(pairs);
  emit(out_path, j.dump(2));
  return kExitOk;
}

int cmd_betti(const std::string& path, uint32_t field,
              const std::string& out_path) {
  auto pres = load_presentation(path, field);
  auto grid = sbarc::compress_grades(pres);
  auto mod = sbarc::realize(pres, grid);
  auto betti = sbarc::usual_betti(mod);
  // Euler identity self-check: the alternating sum of the projectives'
  // pointwise dimensions must reproduce the module dimensions.
  for (int x = 0; x < grid->num_points(); ++x) {
    long acc = 0;
    for (size_t k = 0; k < betti.size(); ++k)
      for (int g : betti[k])
        if (grid->leq(g, x)) acc += (k % 2 == 0) ? 1 : -1;
    if (acc != mod->dim(x)) {
      std::cerr << "error: Betti Euler identity failed at a grid point\n";
      return kExitInternal;
    }
  }
  ordered_json j;
  j["version"] = 1;
  j["n"] = pres.n;
  j["p"] = pres.p;
  ordered_json degrees = ordered_json::array();
  ordered_json sizes = ordered_json::array();
  for (int k = 0; k <= pres.n; ++k) {
    ordered_json deg = ordered_json::array();
    if (k < int(betti.size())) {
      auto sorted = betti[k];
      std::sort(sorted.begin(), sorted.end());
      for (int g : sorted) deg.push_back(grades_json(grid->grades_of(g)));
    }
    sizes.push_back(deg.size());
    degrees.push_back(std::move(deg));
  }
  j["sizes"] = std::move(sizes);
  j["degrees"] = std::move(degrees);
  emit(out_path, j.dump(2));
  return kExitOk;
}

int cmd_rkdec(const std::string& path, uint32_t field, int max_depth,
              const std::string& out_path) {
  auto pres = load_presentation(path, field);
  auto grid = sbarc::compress_grades(pres);
  auto mod = sbarc::realize(pres, grid);
  auto sb = sbarc::to_signed_barcode(sbarc::rank_exact_resolution(mod, max_depth));
  auto check = sbarc::verify_rank_decomposition(sb, sbarc::rank_invariant(*mod));
  if (!check.ok) {
    std::cerr << "error: rank-exact decomposition failed the rank identity\n";
    return kExitInternal;
  }
  sb.p = pres.p;
  emit(out_path, sbarc::barcode_to_json(sb));
  return kExitOk;
}

int cmd_mrd(const std::string& path, uint32_t field, const std::string& shape,
            const std::string& out_path) {
  auto pres = load_presentation(path, field);
  auto grid = sbarc::compress_grades(pres);
  auto mod = sbarc::realize(pres, grid);
  sbarc::SignedBarcode sb;
  if (shape == "hook") {
    sb = sbarc::mrd_hooks(*mod);
    auto check = sbarc::verify_rank_decomposition(sb, sbarc::rank_invariant(*mod));
    if (!check.ok) {
      std::cerr << "error: decomposition failed the rank identity\n";
      return kExitInternal;
    }
  } else if (shape == "rect") {
    sb = sbarc::mrd_rectangles(*mod);
    auto ext = sbarc::sentinel_extension(*mod);
    auto check =
        sbarc::verify_rank_decomposition(sb, sbarc::rank_invariant(*ext.module));
    if (!check.ok) {
      std::cerr << "error: decomposition failed the rank identity\n";
      return kExitInternal;
    }
  } else {
    std::cerr << "error: --shape must be hook or rect\n";
    return kExitInput;
  }
  emit(out_path, sbarc::barcode_to_json(sb));
  return kExitOk;
}

int cmd_upset_betti(const std::string& path, uint32_t field, int max_depth,
                    const std::string& out_path) {
  auto pres = load_presentation(path, field);
  auto grid_top = sbarc::compress_grades(pres);
  std::vector<std::vector<double>> axes;
  for (int k = 0; k < grid_top->n(); ++k) axes.push_back(grid_top->axis(k));
  auto grid = sbarc::build_grid(axes, false);
  auto mod = sbarc::realize(pres, grid);
  auto ub = sbarc::upset_betti(mod, 10000, max_depth);
  // Pointwise Euler identity over the upset poset.
  auto hom = sbarc::hom_from_upsets(mod, ub.poset);
  for (int v = 0; v < ub.poset->size(); ++v) {
    long acc = 0;
    for (size_t k = 0; k < ub.res.betti.size(); ++k)
      for (int u : ub.res.betti[k])
        if (ub.poset->leq(u, v)) acc += (k % 2 == 0) ? 1 : -1;
    if (acc != hom.dims[v]) {
      std::cerr << "error: upset Betti Euler identity failed\n";
      return kExitInternal;
    }
  }
  ordered_json j;
  j["version"] = 1;
  j["n"] = pres.n;
  j["p"] = pres.p;
  j["pdim"] = ub.res.length;
  ordered_json degrees = ordered_json::array();
  for (auto& deg : ub.res.betti) {
    ordered_json d = ordered_json::array();
    for (int u : deg) {
      ordered_json antichain = ordered_json::array();
      for (int x : ub.poset->upset_antichain(u))
        antichain.push_back(grades_json(grid->grades_of(x)));
      d.push_back(std::move(antichain));
    }
    degrees.push_back(std::move(d));
  }
  j["degrees"] = std::move(degrees);
  emit(out_path, j.dump(2));
  return kExitOk;
}

int cmd_match(const std::string& path1, const std::string& path2,
              const std::string& out_path) {
  auto sb1 = sbarc::barcode_from_json(slurp(path1));
  auto sb2 = sbarc::barcode_from_json(slurp(path2));
  if (sb1.shape != sb2.shape || sb1.n != sb2.n)
    throw std::invalid_argument("match: barcode shape or arity mismatch");
  auto sm = sbarc::signed_bottleneck(sb1, sb2);
  ordered_json j;
  j["version"] = 1;
  j["n"] = sb1.n;
  j["shape"] = sb1.shape == sbarc::BarShape::Hook ? "hook" : "rectangle";
  j["epsilon"] = (sm.epsilon == kInf) ? ordered_json("inf") : ordered_json(sm.epsilon);
  auto side_json = [](const std::vector<sbarc::TaggedBar>& side) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : side) {
      ordered_json o;
      o["from"] = std::string(1, t.side) + std::string(1, t.sign);
      o["index"] = t.index;
      o["i"] = grades_json(t.bar.i);
      o["j"] = grades_json(t.bar.j);
      arr.push_back(std::move(o));
    }
    return arr;
  };
  j["left"] = side_json(sm.left);
  j["right"] = side_json(sm.right);
  ordered_json pairs = ordered_json::array();
  for (auto& pr : sm.matching.pairs) {
    ordered_json o;
    o["left"] = pr.left;
    o["right"] = pr.right;
    o["distance"] = (pr.distance == kInf) ? ordered_json("inf") : ordered_json(pr.distance);
    pairs.push_back(std::move(o));
  }
  j["pairs"] = std::move(pairs);
  auto unmatched_json = [](const std::vector<sbarc::MatchingResult::Unmatched>& u) {
    ordered_json arr = ordered_json::array();
    for (auto& e : u) {
      ordered_json o;
      o["index"] = e.index;
      o["to_zero"] = (e.to_zero == kInf) ? ordered_json("inf") : ordered_json(e.to_zero);
      arr.push_back(std::move(o));
    }
    return arr;
  };
  j["unmatched_left"] = unmatched_json(sm.matching.unmatched_left);
  j["unmatched_right"] = unmatched_json(sm.matching.unmatched_right);
  emit(out_path, j.dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"signed barcode invariants of multi-parameter persistence modules"};
  app.require_subcommand(1);

  uint32_t field = 0;  // 0: take the characteristic from the input file
  uint64_t seed = 0;
  std::string out_path;
  int max_depth = 0;
  app.add_option("--field", field, "characteristic override (prime < 2^16)");
  app.add_option("--seed", seed, "PRNG seed for experiment suites");
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--max-depth", max_depth, "resolution depth guard override");

  std::string in1, in2, shape = "hook", experiment;
  long param_k = -1, param_m = -1, param_n = -1, param_trials = -1;

  auto* rank_inv = app.add_subcommand("rank-inv", "rank invariant of a presentation");
  rank_inv->add_option("file", in1)->required();
  auto* betti = app.add_subcommand("betti", "multigraded Betti numbers");
  betti->add_option("file", in1)->required();
  auto* rkdec = app.add_subcommand("rkdec", "rank-exact signed barcode");
  rkdec->add_option("file", in1)->required();
  auto* mrd = app.add_subcommand("mrd", "minimal rank decomposition");
  mrd->add_option("file", in1)->required();
  mrd->add_option("--shape", shape, "hook or rect");
  auto* upset = app.add_subcommand("upset-betti", "limit-exact Betti numbers");
  upset->add_option("file", in1)->required();
  auto* match = app.add_subcommand("match", "signed bottleneck between barcodes");
  match->add_option("file1", in1)->required();
  match->add_option("file2", in2)->required();
  auto* repro = app.add_subcommand("repro", "reproduction suites");
  repro->add_option("experiment", experiment,
                    "figure1|example52|instability|staircase|gldim-rank|"
                    "gldim-upset|stability-sweep")
      ->required();
  repro->add_option("--k", param_k);
  repro->add_option("--m", param_m);
  repro->add_option("--n", param_n);
  repro->add_option("--trials", param_trials);
  auto* plot = app.add_subcommand("plot", "signed barcode to SVG (n = 2)");
  plot->add_option("file", in1)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);

  try {
    if (rank_inv->parsed()) return cmd_rank_inv(in1, field, out_path);
    if (betti->parsed()) return cmd_betti(in1, field, out_path);
    if (rkdec->parsed()) return cmd_rkdec(in1, field, max_depth, out_path);
    if (mrd->parsed()) return cmd_mrd(in1, field, shape, out_path);
    if (upset->parsed()) return cmd_upset_betti(in1, field, max_depth, out_path);
    if (match->parsed()) return cmd_match(in1, in2, out_path);
    if (plot->parsed()) {
      auto sb = sbarc::barcode_from_json(slurp(in1));
      emit(out_path, sbarc::barcode_to_svg(sb));
      return kExitOk;
    }
    if (repro->parsed()) {
      std::map<std::string, long> params;
      if (param_k >= 0) params["k"] = param_k;
      if (param_m >= 0) params["m"] = param_m;
      if (param_n >= 0) params["n"] = param_n;
      if (param_trials >= 0) params["trials"] = param_trials;
      auto report = sbarc::run_experiment(experiment, seed,
                                          field == 0 ? 2 : field, max_depth,
                                          params);
      emit(out_path, report.json);
      return report.passed ? kExitOk : kExitExperiment;
    }
  } catch (const sbarc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
