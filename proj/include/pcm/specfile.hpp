#pragma once

// Plain-text structure files.
//
//   # comment
//   name = sasakian-r3
//   dim = 3
//   coords = x y z
//   eps0 = 1
//   eps1 = -1
//   sample_box = [-1.5, 1.5] [-1.5, 1.5] [-1.5, 1.5]
//   d_eta = half                      (optional)
//
//   [metric]
//   g 0 0 = y^2/4 + 1/4               (indices are 0-based; one triangle is enough)
//   [phi]
//   phi 0 1 = 1                       (i-th component of phi d_j)
//   [xi]
//   xi 2 = 2
//   [eta]
//   eta 0 = -y/2
//   [exclude]
//   sin(th)                           (must be nonzero at sample points)
//   [sample_map]
//   map 0 = ...                       (optional chart map of the sample box)
//
// Entries that are not listed are zero.

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "pcm/structure.hpp"

namespace pcm {

class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& source, int line, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct SpecFile {
  PCStructure structure;
  std::optional<DEtaConvention> d_eta;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

inline std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline SpecFile parse_spec(std::string_view text, const std::string& source = "<input>") {
  using detail::trim;
  std::map<std::string, std::pair<std::string, int>> header;
  struct Entry {
    std::vector<int> index;
    std::string expr;
    int line;
  };
  std::map<std::string, std::vector<Entry>> sections;
  std::string section;
  const std::vector<std::string> known = {"metric", "phi", "xi", "eta", "exclude", "sample_map"};

  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw SpecError(source, lineno, "malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(known.begin(), known.end(), section) == known.end())
        throw SpecError(source, lineno, "unknown section [" + section + "]");
      sections[section];
      continue;
    }
    if (section.empty()) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SpecError(source, lineno, "expected 'key = value'");
      std::string key = trim(line.substr(0, eq));
      if (header.count(key)) throw SpecError(source, lineno, "duplicate key '" + key + "'");
      header[key] = {trim(line.substr(eq + 1)), lineno};
      continue;
    }
    if (section == "exclude") {
      sections[section].push_back({{}, line, lineno});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(source, lineno, "expected '<name> <indices> = <expression>'");
    auto lhs = detail::words(line.substr(0, eq));
    const std::map<std::string, std::pair<std::string, int>> shape = {
        {"metric", {"g", 2}}, {"phi", {"phi", 2}}, {"xi", {"xi", 1}}, {"eta", {"eta", 1}}, {"sample_map", {"map", 1}}};
    const auto& [label, arity] = shape.at(section);
    if (lhs.empty() || lhs[0] != label || static_cast<int>(lhs.size()) != arity + 1)
      throw SpecError(source, lineno,
                      "expected '" + label + (arity == 2 ? " i j" : " i") + " = <expression>' in [" + section + "]");
    Entry e{{}, trim(line.substr(eq + 1)), lineno};
    for (int k = 1; k <= arity; ++k) {
      try {
        std::size_t used = 0;
        int v = std::stoi(lhs[k], &used);
        if (used != lhs[k].size()) throw std::invalid_argument("");
        e.index.push_back(v);
      } catch (const std::exception&) {
        throw SpecError(source, lineno, "index '" + lhs[k] + "' is not an integer");
      }
    }
    if (e.expr.empty()) throw SpecError(source, lineno, "missing expression");
    sections[section].push_back(std::move(e));
  }

  auto need = [&](const std::string& key) -> const std::pair<std::string, int>& {
    auto it = header.find(key);
    if (it == header.end()) throw SpecError(source, lineno, "missing header key '" + key + "'");
    return it->second;
  };
  for (const auto& [key, value] : header)
    if (key != "name" && key != "dim" && key != "coords" && key != "eps0" && key != "eps1" && key != "sample_box" &&
        key != "d_eta")
      throw SpecError(source, value.second, "unknown header key '" + key + "'");

  auto integer = [&](const std::string& key) {
    const auto& [v, ln] = need(key);
    try {
      std::size_t used = 0;
      int out = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument("");
      return out;
    } catch (const std::exception&) {
      throw SpecError(source, ln, "'" + key + "' must be an integer");
    }
  };

  SpecFile out;
  PCStructure& S = out.structure;
  const int d = integer("dim");
  if (d < 1) throw SpecError(source, need("dim").second, "dim must be positive");
  const auto coord_names = detail::words(need("coords").first);
  if (static_cast<int>(coord_names.size()) != d)
    throw SpecError(source, need("coords").second,
                    "expected " + std::to_string(d) + " coordinate names, got " + std::to_string(coord_names.size()));
  auto coords = std::make_shared<const std::vector<std::string>>(coord_names);
  for (const auto& c : coord_names)
    if (is_reserved_name(c)) throw SpecError(source, need("coords").second, "coordinate name '" + c + "' is reserved");
  S.eps0 = integer("eps0");
  S.eps1 = integer("eps1");
  if (S.eps0 != 1 && S.eps0 != -1) throw SpecError(source, need("eps0").second, "eps0 must be 1 or -1");
  if (S.eps1 != 1 && S.eps1 != -1) throw SpecError(source, need("eps1").second, "eps1 must be 1 or -1");
  S.name = header.count("name") ? header["name"].first : source;
  if (header.count("d_eta")) {
    const auto& [v, ln] = header["d_eta"];
    if (v == "half") out.d_eta = DEtaConvention::Half;
    else if (v == "one") out.d_eta = DEtaConvention::One;
    else throw SpecError(source, ln, "d_eta must be 'half' or 'one'");
  }

  {  // sample_box = [a, b] [c, d] ...
    const auto& [v, ln] = need("sample_box");
    std::size_t pos = 0;
    auto constant = [&](const std::string& s) {
      try {
        return eval_value(parse(s, std::vector<std::string>{}), Vec());
      } catch (const std::exception& e) {
        throw SpecError(source, ln, "bad sample_box bound '" + s + "': " + e.what());
      }
    };
    while (true) {
      auto open = v.find('[', pos);
      if (open == std::string::npos) break;
      auto close = v.find(']', open);
      auto comma = v.find(',', open);
      if (close == std::string::npos || comma == std::string::npos || comma > close)
        throw SpecError(source, ln, "sample_box intervals look like [lo, hi]");
      Interval I{constant(v.substr(open + 1, comma - open - 1)), constant(v.substr(comma + 1, close - comma - 1))};
      if (!(I.lo < I.hi)) throw SpecError(source, ln, "empty sample_box interval");
      S.base.sample_box.push_back(I);
      pos = close + 1;
    }
    if (static_cast<int>(S.base.sample_box.size()) != d)
      throw SpecError(source, ln, "sample_box needs one interval per coordinate");
  }

  auto expr = [&](const std::string& src, int ln) {
    try {
      return parse(src, coords);
    } catch (const ParseError& e) {
      throw SpecError(source, ln, e.what());
    }
  };
  auto check_index = [&](const Entry& e) {
    for (int i : e.index)
      if (i < 0 || i >= d) throw SpecError(source, e.line, "index " + std::to_string(i) + " out of range");
  };
  const Expression zero = Expression::constant(0.0, coords);

  S.base.name = S.name;
  S.base.coords = coords;
  S.base.metric.assign(d, std::vector<Expression>(d, zero));
  std::map<std::pair<int, int>, const Entry*> seen;
  for (const auto& e : sections["metric"]) {
    check_index(e);
    const int i = e.index[0], j = e.index[1];
    if (seen.count({i, j})) throw SpecError(source, e.line, "duplicate metric entry");
    seen[{i, j}] = &e;
    Expression value = expr(e.expr, e.line);
    if (auto other = seen.find({j, i}); i != j && other != seen.end()) {
      if (!structurally_equal(value, expr(other->second->expr, other->second->line)))
        throw SpecError(source, e.line,
                        "metric is not symmetric: g " + std::to_string(i) + " " + std::to_string(j) + " differs from line " +
                            std::to_string(other->second->line));
    }
    S.base.metric[i][j] = S.base.metric[j][i] = value;
  }

  S.phi.assign(d, std::vector<Expression>(d, zero));
  S.xi.assign(d, zero);
  S.eta.assign(d, zero);
  std::map<std::string, std::map<std::vector<int>, int>> dup;
  auto fill = [&](const std::string& sec, auto&& put) {
    for (const auto& e : sections[sec]) {
      check_index(e);
      if (dup[sec].count(e.index)) throw SpecError(source, e.line, "duplicate entry in [" + sec + "]");
      dup[sec][e.index] = e.line;
      put(e, expr(e.expr, e.line));
    }
  };
  fill("phi", [&](const Entry& e, Expression v) { S.phi[e.index[0]][e.index[1]] = v; });
  fill("xi", [&](const Entry& e, Expression v) { S.xi[e.index[0]] = v; });
  fill("eta", [&](const Entry& e, Expression v) { S.eta[e.index[0]] = v; });
  for (const auto& e : sections["exclude"]) S.base.exclude.push_back(expr(e.expr, e.line));
  if (!sections["sample_map"].empty()) {
    S.base.sample_map.assign(d, zero);
    fill("sample_map", [&](const Entry& e, Expression v) { S.base.sample_map[e.index[0]] = v; });
    if (static_cast<int>(dup["sample_map"].size()) != d)
      throw SpecError(source, sections["sample_map"].front().line, "sample_map needs one entry per coordinate");
  }
  try {
    S.validate();
  } catch (const std::exception& e) {
    throw SpecError(source, lineno, e.what());
  }
  return out;
}

inline SpecFile read_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  std::string stem = path.substr(path.find_last_of('/') + 1);
  if (auto dot = stem.rfind('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  SpecFile s = parse_spec(ss.str(), path);
  if (s.structure.name == path) s.structure.name = s.structure.base.name = stem;
  return s;
}

/// Parses and checks the axioms on a small deterministic sample.
inline PCStructure load_spec(const std::string& path, int points = 16) {
  SpecFile s = read_spec_file(path);
  const DEtaConvention conv = s.d_eta.value_or(DEtaConvention::Half);
  check_axioms(s.structure, sample_structure(s.structure, points, derive_seed(0, s.structure.name), conv));
  return s.structure;
}

inline std::string export_spec(const PCStructure& S, std::optional<DEtaConvention> d_eta = std::nullopt,
                               const std::string& comment = "") {
  std::ostringstream os;
  const int d = S.dim();
  if (!comment.empty()) os << "# " << comment << "\n";
  os << "name = " << S.name << "\n";
  os << "dim = " << d << "\n";
  os << "coords =";
  for (const auto& c : *S.base.coords) os << ' ' << c;
  os << "\neps0 = " << S.eps0 << "\neps1 = " << S.eps1 << "\nsample_box =";
  for (const auto& I : S.base.sample_box) os << " [" << detail::number(I.lo) << ", " << detail::number(I.hi) << "]";
  os << "\n";
  if (d_eta) os << "d_eta = " << to_string(*d_eta) << "\n";
  os << "\n[metric]\n";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j)
      if (!S.base.metric[i][j].is_zero()) os << "g " << i << ' ' << j << " = " << to_string(S.base.metric[i][j]) << "\n";
  os << "\n[phi]\n";
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (!S.phi[i][j].is_zero()) os << "phi " << i << ' ' << j << " = " << to_string(S.phi[i][j]) << "\n";
  os << "\n[xi]\n";
  for (int i = 0; i < d; ++i)
    if (!S.xi[i].is_zero()) os << "xi " << i << " = " << to_string(S.xi[i]) << "\n";
  os << "\n[eta]\n";
  for (int i = 0; i < d; ++i)
    if (!S.eta[i].is_zero()) os << "eta " << i << " = " << to_string(S.eta[i]) << "\n";
  if (!S.base.exclude.empty()) {
    os << "\n[exclude]\n";
    for (const auto& e : S.base.exclude) os << to_string(e) << "\n";
  }
  if (!S.base.sample_map.empty()) {
    os << "\n[sample_map]\n";
    for (int i = 0; i < d; ++i) os << "map " << i << " = " << to_string(S.base.sample_map[i]) << "\n";
  }
  return os.str();
}

}  // namespace pcm
