#include "pbwgate/problem.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"

namespace pbwgate {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string line_column(const std::string &text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json &field(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object())
    throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw ParseError(path + "/" + key, "missing field");
  return *it;
}

std::size_t as_index(const json &v, const std::string &path, std::size_t bound) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(path, "expected a non-negative integer");
  auto i = v.get<std::size_t>();
  if (i >= bound)
    throw ParseError(path, "index " + std::to_string(i) + " out of range (< " + std::to_string(bound) + ")");
  return i;
}

Scalar as_scalar(const json &v, const std::string &path) {
  if (v.is_number_integer())
    return Scalar(v.get<long>());
  if (!v.is_string())
    throw ParseError(path, "expected a rational written as a \"p/q\" string");
  try {
    return parse_scalar(v.get<std::string>());
  } catch (const Error &e) {
    throw ParseError(path, e.what());
  }
}

std::vector<std::string> as_labels(const json &v, const std::string &path, std::size_t dim) {
  if (!v.is_array() || v.size() != dim)
    throw ParseError(path, "expected " + std::to_string(dim) + " labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!v[i].is_string())
      throw ParseError(path + "/" + std::to_string(i), "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

// A list of columns, each of length `rows`.
Matrix as_columns(const json &v, const std::string &path, std::size_t rows) {
  if (!v.is_array())
    throw ParseError(path, "expected a list of columns");
  Matrix m(rows, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    std::string p = path + "/" + std::to_string(j);
    if (!v[j].is_array() || v[j].size() != rows)
      throw ParseError(p, "expected a column of length " + std::to_string(rows));
    for (std::size_t i = 0; i < rows; ++i)
      m(i, j) = as_scalar(v[j][i], p + "/" + std::to_string(i));
  }
  return m;
}

// A square matrix given as a list of rows.
Matrix as_rows(const json &v, const std::string &path, std::size_t dim) {
  if (!v.is_array() || v.size() != dim)
    throw ParseError(path, "expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string p = path + "/" + std::to_string(i);
    if (!v[i].is_array() || v[i].size() != dim)
      throw ParseError(p, "expected a row of length " + std::to_string(dim));
    for (std::size_t j = 0; j < dim; ++j)
      m(i, j) = as_scalar(v[i][j], p + "/" + std::to_string(j));
  }
  return m;
}

LieAlgebra parse_algebra(const json &g) {
  const json &dim_v = field(g, "dim", "/g");
  if (!dim_v.is_number_integer() || dim_v.get<long long>() <= 0)
    throw ParseError("/g/dim", "expected a positive integer");
  auto d = dim_v.get<std::size_t>();
  std::vector<std::string> labels;
  if (g.contains("labels")) {
    labels = as_labels(g["labels"], "/g/labels", d);
  } else {
    for (std::size_t i = 0; i < d; ++i)
      labels.push_back("x" + std::to_string(i));
  }

  std::vector<Scalar> c(d * d * d);
  std::map<std::pair<std::size_t, std::size_t>, Vector> given;
  const json &brackets = g.contains("brackets") ? g["brackets"] : json::array();
  if (!brackets.is_array())
    throw ParseError("/g/brackets", "expected a list of [i, j, terms]");
  for (std::size_t b = 0; b < brackets.size(); ++b) {
    std::string p = "/g/brackets/" + std::to_string(b);
    const json &entry = brackets[b];
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError(p, "expected [i, j, [[k, \"coefficient\"], ...]]");
    std::size_t i = as_index(entry[0], p + "/0", d), j = as_index(entry[1], p + "/1", d);
    Vector value(d);
    if (!entry[2].is_array())
      throw ParseError(p + "/2", "expected a list of [k, coefficient] terms");
    for (std::size_t t = 0; t < entry[2].size(); ++t) {
      std::string tp = p + "/2/" + std::to_string(t);
      const json &term = entry[2][t];
      if (!term.is_array() || term.size() != 2)
        throw ParseError(tp, "expected [k, coefficient]");
      value[as_index(term[0], tp + "/0", d)] += as_scalar(term[1], tp + "/1");
    }
    if (i == j && !is_zero(value))
      throw ParseError(p, "bracket [" + labels[i] + ", " + labels[i] + "] must vanish (pair (" +
                              std::to_string(i) + ", " + std::to_string(i) + "))");
    if (!given.emplace(std::make_pair(i, j), value).second)
      throw ParseError(p, "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") given twice");
  }
  for (const auto &[ij, value] : given) {
    auto [i, j] = ij;
    auto other = given.find({j, i});
    if (other != given.end()) {
      for (std::size_t k = 0; k < d; ++k)
        if (value[k] != -other->second[k])
          throw ParseError("/g/brackets", "brackets are not antisymmetric at pair (" +
                                              std::to_string(std::min(i, j)) + ", " +
                                              std::to_string(std::max(i, j)) + ")");
    }
    for (std::size_t k = 0; k < d; ++k) {
      c[(i * d + j) * d + k] = value[k];
      c[(j * d + i) * d + k] = -value[k];
    }
  }
  return LieAlgebra(std::move(labels), std::move(c));
}

ojson scalar_json(const Scalar &x) { return to_string(x); }

ojson columns_json(const Matrix &m) {
  ojson out = ojson::array();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    ojson col = ojson::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
      col.push_back(scalar_json(m(i, j)));
    out.push_back(col);
  }
  return out;
}

ojson rows_json(const Matrix &m) {
  ojson out = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(scalar_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

const std::vector<std::string> kBuiltinModules = {"trivial", "n", "adjoint"};

} // namespace

InclusionPair ProblemFile::pair() const {
  if (complement)
    return make_pair(g, embedding, *complement, h_labels);
  return make_pair(g, embedding, h_labels);
}

LieModule ProblemFile::module(const std::string &mod, const InclusionPair &p) const {
  if (mod == "trivial")
    return LieModule::trivial(p.h_ptr());
  if (mod == "n")
    return quotient_module(p);
  if (mod == "adjoint")
    return LieModule::adjoint(p.h_ptr());
  for (const auto &spec : modules)
    if (spec.name == mod)
      return LieModule(p.h_ptr(), spec.dim, spec.actions);
  throw Error("unknown module '" + mod + "'");
}

std::vector<std::string> ProblemFile::module_names() const {
  auto out = kBuiltinModules;
  for (const auto &spec : modules)
    out.push_back(spec.name);
  return out;
}

bool ProblemFile::operator==(const ProblemFile &o) const {
  return name == o.name && description == o.description && g == o.g &&
         embedding == o.embedding && h_labels == o.h_labels && complement == o.complement &&
         modules == o.modules && settings == o.settings;
}

ProblemFile parse_problem(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParseError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "syntax error");
  }
  if (!doc.is_object())
    throw ParseError("/", "expected an object");

  ProblemFile p;
  const json &name = field(doc, "name", "");
  if (!name.is_string())
    throw ParseError("/name", "expected a string");
  p.name = name.get<std::string>();
  if (doc.contains("description")) {
    if (!doc["description"].is_string())
      throw ParseError("/description", "expected a string");
    p.description = doc["description"].get<std::string>();
  }

  p.g = parse_algebra(field(doc, "g", ""));
  const std::size_t d = p.g.dim();

  const json &h = field(doc, "h", "");
  if (!h.is_object())
    throw ParseError("/h", "expected an object");
  if (h.contains("indices") == h.contains("embedding"))
    throw ParseError("/h", "give exactly one of \"indices\" or \"embedding\"");
  if (h.contains("indices")) {
    const json &idx = h["indices"];
    if (!idx.is_array() || idx.empty())
      throw ParseError("/h/indices", "expected a non-empty list of basis indices");
    std::vector<std::size_t> indices;
    for (std::size_t t = 0; t < idx.size(); ++t)
      indices.push_back(as_index(idx[t], "/h/indices/" + std::to_string(t), d));
    p.embedding = Matrix(d, indices.size());
    for (std::size_t t = 0; t < indices.size(); ++t) {
      p.embedding(indices[t], t) = 1;
      p.h_labels.push_back(p.g.labels()[indices[t]]);
    }
    p.h_indices = indices;
  } else {
    p.embedding = as_columns(h["embedding"], "/h/embedding", d);
    if (p.embedding.cols() == 0)
      throw ParseError("/h/embedding", "expected at least one column");
    for (std::size_t t = 0; t < p.embedding.cols(); ++t)
      p.h_labels.push_back("h" + std::to_string(t));
  }
  if (h.contains("labels"))
    p.h_labels = as_labels(h["labels"], "/h/labels", p.embedding.cols());
  if (h.contains("complement")) {
    p.complement = as_columns(h["complement"], "/h/complement", d);
    if (p.complement->cols() + p.embedding.cols() != d)
      throw ParseError("/h/complement", "expected dim g - dim h columns");
  }

  std::optional<InclusionPair> pair;
  try {
    pair = p.pair();
  } catch (const NotInjective &e) {
    throw ParseError("/h", std::string("embedding is not injective: ") + e.what());
  } catch (const NotSubalgebra &e) {
    throw ParseError("/h", std::string("not a subalgebra: ") + e.what());
  } catch (const Error &e) {
    throw ParseError(h.contains("complement") ? "/h/complement" : "/h", e.what());
  }

  if (doc.contains("modules")) {
    const json &mods = doc["modules"];
    if (!mods.is_array())
      throw ParseError("/modules", "expected a list");
    for (std::size_t m = 0; m < mods.size(); ++m) {
      std::string mp = "/modules/" + std::to_string(m);
      ModuleSpec spec;
      const json &mn = field(mods[m], "name", mp);
      if (!mn.is_string())
        throw ParseError(mp + "/name", "expected a string");
      spec.name = mn.get<std::string>();
      for (const auto &b : kBuiltinModules)
        if (spec.name == b)
          throw ParseError(mp + "/name", "'" + b + "' is a built-in module name");
      for (const auto &prev : p.modules)
        if (prev.name == spec.name)
          throw ParseError(mp + "/name", "duplicate module name");
      const json &md = field(mods[m], "dim", mp);
      if (!md.is_number_integer() || md.get<long long>() <= 0)
        throw ParseError(mp + "/dim", "expected a positive integer");
      spec.dim = md.get<std::size_t>();
      const json &acts = field(mods[m], "actions", mp);
      if (!acts.is_array() || acts.size() != pair->dim_h())
        throw ParseError(mp + "/actions", "expected one matrix per h-basis element (" +
                                              std::to_string(pair->dim_h()) + ")");
      for (std::size_t a = 0; a < acts.size(); ++a)
        spec.actions.push_back(as_rows(acts[a], mp + "/actions/" + std::to_string(a), spec.dim));
      auto bad = LieModule(pair->h_ptr(), spec.dim, spec.actions).bracket_violations();
      if (!bad.empty())
        throw ParseError(mp + "/actions", "not a representation of h at pair (" +
                                              std::to_string(bad.front().first) + ", " +
                                              std::to_string(bad.front().second) + ")");
      p.modules.push_back(std::move(spec));
    }
  }

  if (doc.contains("settings")) {
    const json &s = doc["settings"];
    if (!s.is_object())
      throw ParseError("/settings", "expected an object");
    if (s.contains("max_degree")) {
      if (!s["max_degree"].is_number_integer() || s["max_degree"].get<long long>() < 0)
        throw ParseError("/settings/max_degree", "expected a non-negative integer");
      p.settings.max_degree = s["max_degree"].get<std::size_t>();
    }
    if (s.contains("checks")) {
      if (!s["checks"].is_array())
        throw ParseError("/settings/checks", "expected a list of check names");
      for (std::size_t t = 0; t < s["checks"].size(); ++t) {
        if (!s["checks"][t].is_string())
          throw ParseError("/settings/checks/" + std::to_string(t), "expected a string");
        p.settings.checks.push_back(s["checks"][t].get<std::string>());
      }
    }
    if (s.contains("negative_control")) {
      if (!s["negative_control"].is_boolean())
        throw ParseError("/settings/negative_control", "expected true or false");
      p.settings.negative_control = s["negative_control"].get<bool>();
    }
  }
  return p;
}

ProblemFile parse_problem_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path, "cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string serialize_problem(const ProblemFile &p) {
  const std::size_t d = p.g.dim();
  ojson doc;
  doc["name"] = p.name;
  if (!p.description.empty())
    doc["description"] = p.description;
  ojson brackets = ojson::array();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      ojson terms = ojson::array();
      for (std::size_t k = 0; k < d; ++k)
        if (!is_zero(p.g.constant(i, j, k)))
          terms.push_back(ojson::array({k, scalar_json(p.g.constant(i, j, k))}));
      if (!terms.empty())
        brackets.push_back(ojson::array({i, j, terms}));
    }
  doc["g"] = {{"dim", d}, {"labels", p.g.labels()}, {"brackets", brackets}};
  ojson h;
  if (p.h_indices)
    h["indices"] = *p.h_indices;
  else
    h["embedding"] = columns_json(p.embedding);
  h["labels"] = p.h_labels;
  if (p.complement)
    h["complement"] = columns_json(*p.complement);
  doc["h"] = h;
  if (!p.modules.empty()) {
    ojson mods = ojson::array();
    for (const auto &m : p.modules) {
      ojson acts = ojson::array();
      for (const auto &a : m.actions)
        acts.push_back(rows_json(a));
      mods.push_back({{"name", m.name}, {"dim", m.dim}, {"actions", acts}});
    }
    doc["modules"] = mods;
  }
  ojson s = {{"max_degree", p.settings.max_degree}};
  if (!p.settings.checks.empty())
    s["checks"] = p.settings.checks;
  if (p.settings.negative_control)
    s["negative_control"] = true;
  doc["settings"] = s;
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

LieAlgebra from_brackets(std::vector<std::string> labels,
                         const std::vector<std::tuple<int, int, int, long>> &brackets) {
  std::size_t d = labels.size();
  std::vector<Scalar> c(d * d * d);
  for (auto [i, j, k, v] : brackets) {
    c[(i * d + j) * d + k] = v;
    c[(j * d + i) * d + k] = -v;
  }
  return LieAlgebra(std::move(labels), std::move(c));
}

ProblemFile by_indices(std::string name, std::string description, LieAlgebra g,
                       std::vector<std::size_t> indices) {
  ProblemFile p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.embedding = Matrix(g.dim(), indices.size());
  for (std::size_t t = 0; t < indices.size(); ++t) {
    p.embedding(indices[t], t) = 1;
    p.h_labels.push_back(g.labels()[indices[t]]);
  }
  p.h_indices = std::move(indices);
  p.g = std::move(g);
  return p;
}

ProblemFile diagonal(std::string name, std::string description, const LieAlgebra &l) {
  auto pair = diagonal_pair(l);
  ProblemFile p;
  p.name = std::move(name);
  p.description = std::move(description);
  p.g = pair.g();
  p.embedding = pair.embedding();
  p.h_labels = l.labels();
  return p;
}

} // namespace

std::vector<std::string> catalog_list() {
  return {"sl2-borel",        "diagonal-sl2",        "diagonal-heisenberg",
          "abelian-inclusion", "semidirect-split",    "heisenberg-nonsplit",
          "jacobi-broken-negative-control"};
}

ProblemFile catalog_get(const std::string &name) {
  if (name == "sl2-borel")
    return by_indices(name, "Borel subalgebra span{e, h} of sl2; n is spanned by the image of f",
                      LieAlgebra::sl2(), {0, 1});
  if (name == "diagonal-sl2")
    return diagonal(name, "diagonal sl2 inside sl2 + sl2", LieAlgebra::sl2());
  if (name == "diagonal-heisenberg")
    return diagonal(name, "diagonal Heisenberg algebra inside its double", LieAlgebra::heisenberg());
  if (name == "abelian-inclusion")
    return by_indices(name, "a line inside an abelian 3-dimensional algebra",
                      LieAlgebra::abelian(3, {"x", "y", "z"}), {0});
  if (name == "semidirect-split")
    return by_indices(name, "sl2 inside sl2 acting on its standard representation k^2",
                      from_brackets({"e", "h", "f", "v1", "v2"},
                                    {{0, 2, 1, 1}, {1, 0, 0, 2}, {1, 2, 2, -2},
                                     {0, 4, 3, 1}, {2, 3, 4, 1}, {1, 3, 3, 1}, {1, 4, 4, -1}}),
                      {0, 1, 2});
  if (name == "heisenberg-nonsplit")
    return by_indices(name, "span{p, z} inside the Heisenberg algebra; c is a nonzero class but "
                            "acts trivially on n",
                      LieAlgebra::heisenberg(), {0, 2});
  if (name == "jacobi-broken-negative-control") {
    auto p = by_indices(name, "sl2 structure constants with [h, f] = -3f, which violates Jacobi",
                        from_brackets({"e", "h", "f"}, {{0, 2, 1, 1}, {1, 0, 0, 2}, {1, 2, 2, -3}}),
                        {0, 1});
    p.settings.negative_control = true;
    return p;
  }
  throw Error("unknown catalog entry '" + name + "'");
}

} // namespace pbwgate
