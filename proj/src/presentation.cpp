#include "sbarc/presentation.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "sbarc/fp.hpp"

namespace sbarc {

void Presentation::validate() const {
  if (n < 1) throw std::invalid_argument("presentation: n must be >= 1");
  if (!is_prime(p)) throw std::invalid_argument("presentation: p must be prime");
  for (const auto& g : generators)
    if (int(g.size()) != n)
      throw std::invalid_argument("presentation: generator grade arity mismatch");
  for (size_t r = 0; r < relations.size(); ++r) {
    const auto& rel = relations[r];
    if (int(rel.grade.size()) != n)
      throw std::invalid_argument("presentation: relation grade arity mismatch");
    for (auto& [col, coeff] : rel.column) {
      if (col < 0 || col >= int(generators.size()))
        throw std::invalid_argument("presentation: relation " + std::to_string(r) +
                                    " references unknown generator");
      if (coeff % p == 0) continue;
      for (int k = 0; k < n; ++k)
        if (!(generators[col][k] <= rel.grade[k]))
          throw std::invalid_argument(
              "presentation: relation " + std::to_string(r) +
              " is graded below generator " + std::to_string(col));
    }
  }
}

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](bool required) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      size_t pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') continue;
      return true;
    }
    if (required) throw ParseError(lineno, "unexpected end of input");
    return false;
  };

  next_line(true);
  {
    auto tk = tokens(line);
    if (tk.size() != 2 || tk[0] != "rkdec-presentation")
      throw ParseError(lineno, "expected header 'rkdec-presentation v1'");
    if (tk[1] != "v1") throw ParseError(lineno, "unsupported version '" + tk[1] + "'");
  }

  Presentation pres;
  next_line(true);
  {
    auto tk = tokens(line);
    if (tk.size() != 2 || tk[0].rfind("n=", 0) != 0 || tk[1].rfind("p=", 0) != 0)
      throw ParseError(lineno, "expected 'n=<int> p=<prime>'");
    try {
      pres.n = std::stoi(tk[0].substr(2));
      pres.p = uint32_t(std::stoul(tk[1].substr(2)));
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed n/p values");
    }
    if (pres.n < 1) throw ParseError(lineno, "n must be >= 1");
    if (!is_prime(pres.p)) throw ParseError(lineno, "p must be a prime < 2^16");
  }

  next_line(true);
  int gcount = 0;
  {
    auto tk = tokens(line);
    if (tk.size() != 2 || tk[0] != "generators")
      throw ParseError(lineno, "expected 'generators <count>'");
    try {
      gcount = std::stoi(tk[1]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed generator count");
    }
    if (gcount < 0) throw ParseError(lineno, "negative generator count");
  }
  for (int g = 0; g < gcount; ++g) {
    next_line(true);
    auto tk = tokens(line);
    if (int(tk.size()) != pres.n)
      throw ParseError(lineno, "expected " + std::to_string(pres.n) + " grades");
    std::vector<double> grade(pres.n);
    try {
      for (int k = 0; k < pres.n; ++k) grade[k] = std::stod(tk[k]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed grade");
    }
    pres.generators.push_back(std::move(grade));
  }

  next_line(true);
  int rcount = 0;
  {
    auto tk = tokens(line);
    if (tk.size() != 2 || tk[0] != "relations")
      throw ParseError(lineno, "expected 'relations <count>'");
    try {
      rcount = std::stoi(tk[1]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed relation count");
    }
    if (rcount < 0) throw ParseError(lineno, "negative relation count");
  }
  for (int r = 0; r < rcount; ++r) {
    next_line(true);
    size_t semi = line.find(';');
    if (semi == std::string::npos) throw ParseError(lineno, "missing ';' in relation");
    auto gr = tokens(line.substr(0, semi));
    if (int(gr.size()) != pres.n)
      throw ParseError(lineno, "expected " + std::to_string(pres.n) + " grades");
    Presentation::Relation rel;
    rel.grade.resize(pres.n);
    try {
      for (int k = 0; k < pres.n; ++k) rel.grade[k] = std::stod(gr[k]);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed relation grade");
    }
    for (auto& entry : tokens(line.substr(semi + 1))) {
      size_t colon = entry.find(':');
      if (colon == std::string::npos)
        throw ParseError(lineno, "malformed coefficient '" + entry + "'");
      int col;
      int64_t coeff;
      try {
        col = std::stoi(entry.substr(0, colon));
        coeff = std::stoll(entry.substr(colon + 1));
      } catch (const std::exception&) {
        throw ParseError(lineno, "malformed coefficient '" + entry + "'");
      }
      int64_t c = coeff % int64_t(pres.p);
      if (c < 0) c += pres.p;
      rel.column.emplace_back(col, uint32_t(c));
    }
    pres.relations.push_back(std::move(rel));
  }

  if (next_line(false)) throw ParseError(lineno, "trailing content");
  try {
    pres.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(lineno, e.what());
  }
  return pres;
}

std::string write_presentation(const Presentation& pres) {
  std::ostringstream os;
  os.precision(17);
  os << "rkdec-presentation v1\n";
  os << "n=" << pres.n << " p=" << pres.p << "\n";
  os << "generators " << pres.generators.size() << "\n";
  for (const auto& g : pres.generators) {
    for (int k = 0; k < pres.n; ++k) os << (k ? " " : "") << g[k];
    os << "\n";
  }
  os << "relations " << pres.relations.size() << "\n";
  for (const auto& rel : pres.relations) {
    for (int k = 0; k < pres.n; ++k) os << (k ? " " : "") << rel.grade[k];
    os << " ;";
    for (auto& [col, coeff] : rel.column) os << " " << col << ":" << coeff;
    os << "\n";
  }
  return os.str();
}

GridPtr compress_grades(const Presentation& pres) {
  std::vector<std::set<double>> axes(pres.n);
  for (const auto& g : pres.generators)
    for (int k = 0; k < pres.n; ++k) axes[k].insert(g[k]);
  for (const auto& rel : pres.relations)
    for (int k = 0; k < pres.n; ++k) axes[k].insert(rel.grade[k]);
  if (pres.generators.empty() && pres.relations.empty())
    for (int k = 0; k < pres.n; ++k) axes[k].insert(0.0);
  std::vector<std::vector<double>> coords(pres.n);
  for (int k = 0; k < pres.n; ++k) coords[k].assign(axes[k].begin(), axes[k].end());
  return build_grid(std::move(coords), true);
}

}  // namespace sbarc
