#include "pbwgate/report.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <sstream>

#include "pbwgate/koszul.hpp"
#include "pbwgate/pbw.hpp"

namespace pbwgate {

using json = nlohmann::ordered_json;

namespace {

json matrix_json(const Matrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json labelled(const std::vector<std::string> &labels, const std::function<Scalar(std::size_t)> &coeff) {
  json out = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[labels[i]] = to_string(coeff(i));
  return out;
}

template <class F> Record timed(std::string check, std::string anchor, F &&body) {
  Record r;
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  auto start = std::chrono::steady_clock::now();
  body(r);
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

using Records = std::vector<Record>;

Records validate_checks(const ProblemFile &p) {
  return {timed("validate", "Lie algebra axioms for g and closure of h under the bracket", [&](Record &r) {
    auto v = validate_lie(p.g);
    json violations = json::array();
    for (const auto &x : v.violations)
      violations.push_back(x.describe(p.g));
    auto pair = p.pair();
    r.witness = {{"dim_g", pair.dim_g()},
                 {"dim_h", pair.dim_h()},
                 {"dim_n", pair.dim_n()},
                 {"negative_control", p.settings.negative_control},
                 {"violations", violations}};
    for (const auto &name : p.module_names()) {
      auto m = p.module(name, pair);
      r.witness["modules"][name] = {{"dim", m.dim()}, {"valid", m.is_valid()}};
    }
    r.verdict = v.ok() ? "valid Lie pair" : "Lie axioms violated";
    r.consistent = v.ok() != p.settings.negative_control;
  })};
}

Records alpha_checks(const InclusionPair &pair) {
  const auto &hl = pair.h().labels();
  const auto &nl = pair.n_labels();
  std::size_t dh = pair.dim_h(), dn = pair.dim_n();
  auto n = quotient_module(pair);
  Records out;
  out.push_back(timed("connecting-cocycle", "connecting cocycle of 0 → h → g → n → 0", [&](Record &r) {
    auto c = connecting_cocycle(pair);
    bool cocycle = is_cocycle(c);
    for (std::size_t a = 0; a < dh; ++a)
      for (std::size_t x = 0; x < dn; ++x)
        r.witness["c(" + hl[a] + ")(" + nl[x] + ")"] =
            labelled(hl, [&](std::size_t k) { return c.values(k * dn + x, a); });
    bool zero = c.values.is_zero();
    r.witness["cocycle"] = cocycle;
    r.verdict = zero ? "c = 0 (h → g splits as h-modules)" : "c ≠ 0";
    r.consistent = cocycle;
  }));
  out.push_back(timed("alpha-class", "obstruction class α in H¹(h, Hom(n ⊗ n, n))", [&](Record &r) {
    auto a = alpha_cocycle(pair, n);
    bool cocycle = is_cocycle(a);
    for (std::size_t z = 0; z < dh; ++z)
      for (std::size_t x = 0; x < dn; ++x)
        for (std::size_t v = 0; v < dn; ++v)
          r.witness["a(" + hl[z] + ")(" + nl[x] + "," + nl[v] + ")"] =
              labelled(nl, [&](std::size_t o) { return a.values(o * dn * dn + x * dn + v, z); });
    r.witness["cocycle"] = cocycle;
    if (!cocycle) {
      r.verdict = "α is not a cocycle";
      r.consistent = false;
      return;
    }
    auto b = is_trivial(a);
    r.witness["trivial"] = b.has_value();
    if (b)
      r.witness["primitive"] = matrix_json(b->values);
    r.verdict = b ? "α trivial" : "α non-trivial";
  }));
  out.push_back(timed("alpha-wedge", "restriction of α to ∧²n is exact", [&](Record &r) {
    auto w = alpha_on_wedge(pair);
    bool exact = is_trivial(w).has_value();
    r.witness["exact"] = exact;
    r.verdict = exact ? "exact" : "not exact";
    r.consistent = exact;
  }));
  return out;
}

bool alpha_is_trivial(const InclusionPair &pair) {
  auto n = quotient_module(pair);
  return is_trivial(pair, n, alpha_cocycle(pair, n)).has_value();
}

Records extend_checks(const InclusionPair &pair) {
  return {timed("extension", "ρ: g → End(n) extending the h-action exists iff α = 0", [&](Record &r) {
    bool trivial = alpha_is_trivial(pair);
    auto rho = find_extension(pair, quotient_module(pair));
    r.witness["alpha_trivial"] = trivial;
    r.witness["found"] = rho.has_value();
    if (rho) {
      auto violations = extension_violations(pair, *rho);
      r.witness["violations"] = violations;
      for (std::size_t l = 0; l < pair.dim_n(); ++l)
        r.witness["rho"][pair.n_labels()[l]] = matrix_json(rho->on_complement(l, pair.dim_h()));
      r.consistent = violations.empty() && trivial;
    } else {
      r.consistent = !trivial;
    }
    r.verdict = rho ? "extension found" : "no extension";
  })};
}

Records split_checks(const InclusionPair &pair, std::size_t k_max) {
  return {timed("pbw-splitting", "PBW splitting S(n) → U(g)/U(g)h built from ρ", [&](Record &r) {
    bool trivial = alpha_is_trivial(pair);
    r.witness["alpha_trivial"] = trivial;
    if (!trivial) {
      bool threw = false;
      try {
        splitting_s(pair, 2);
      } catch (const AlphaNontrivial &) {
        threw = true;
      }
      r.verdict = "no splitting (α non-trivial)";
      r.consistent = threw;
      return;
    }
    auto maps = pbw_splitting_I(pair, k_max);
    bool ok = true;
    json levels = json::array();
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const auto &s = maps[k];
      ok = ok && s.ok();
      levels.push_back({{"k", k},
                        {"source_dim", s.map.source.dim()},
                        {"target_dim", s.map.target.dim()},
                        {"equivariant", s.equivariant},
                        {"section", s.section},
                        {"matrix", matrix_json(s.map.matrix)}});
    }
    r.witness["levels"] = levels;
    r.verdict = ok ? "equivariant sections for every k" : "splitting check failed";
    r.consistent = ok;
  })};
}

Records oracle_checks(const InclusionPair &pair, std::size_t k_max) {
  Records out;
  out.push_back(timed("dimensions", "gr F ≅ T(n) and gr R ≅ S(n)", [&](Record &r) {
    auto f = build_filtration(pair, Side::F, k_max);
    auto rr = build_filtration(pair, Side::R, k_max);
    std::size_t dn = pair.dim_n(), f_expected = 0, r_expected = 0, power = 1;
    bool ok = true;
    json levels = json::array();
    for (std::size_t k = 0; k <= k_max; ++k) {
      f_expected += power;
      power *= dn;
      r_expected += dn == 0 ? (k == 0) : binomial(dn + k - 1, k);
      ok = ok && f.dim(k) == f_expected && rr.dim(k) == r_expected;
      levels.push_back({{"k", k}, {"dim_F", f.dim(k)}, {"dim_R", rr.dim(k)}});
    }
    r.witness["levels"] = levels;
    r.verdict = ok ? "dimension identities hold" : "dimension mismatch";
    r.consistent = ok;
  }));
  out.push_back(timed("equivalence", "α = 0 iff the filtrations of F̃ and R̃ split", [&](Record &r) {
    auto rep = equivalence_harness(pair, k_max);
    json levels = json::array();
    for (const auto &l : rep.levels)
      levels.push_back({{"k", l.k}, {"predicted", l.predicted}, {"F_split", l.f_split}, {"R_split", l.r_split}});
    r.witness["alpha_trivial"] = rep.alpha_trivial;
    r.witness["levels"] = levels;
    r.verdict = rep.agrees() ? "oracle agrees with α" : "oracle disagrees with α";
    r.consistent = rep.agrees();
  }));
  return out;
}

Records twisted_checks(const ProblemFile &p, const InclusionPair &pair, const std::string &module,
                       std::size_t k_max) {
  auto v = p.module(module, pair);
  return {timed("twisted:" + module, "twisted equivalence for U(g) ⊗_{U(h)} V", [&](Record &r) {
    auto rep = twisted_verdict(pair, v, k_max);
    r.witness = {{"module", module},
                 {"alpha_trivial", rep.alpha_trivial},
                 {"alpha_V_trivial", rep.alpha_v_trivial},
                 {"F_split", rep.f_split},
                 {"R_split", rep.r_split}};
    r.verdict = std::string("level 1 ") + (rep.alpha_v_trivial ? "splits" : "does not split");
    r.consistent = rep.agrees();
  })};
}

Records koszul_checks(const ProblemFile &p, const InclusionPair &pair, std::size_t k_max) {
  Records out;
  out.push_back(timed("bg-conditions", "Braverman-Gaitsgory conditions for the deformation of qA", [&](Record &r) {
    auto bg = bg_conditions(pair);
    r.witness = {{"condition1", bg.condition1},
                 {"condition2", bg.condition2},
                 {"intersection_dim", bg.intersection_dim},
                 {"dim_qR", quadratic_data(pair).dim()}};
    r.verdict = bg.condition1 && bg.condition2 ? "both conditions hold" : "condition fails";
    r.consistent = p.settings.negative_control ? !bg.condition2 : bg.condition1 && bg.condition2;
  }));
  if (p.settings.negative_control)
    return out;
  out.push_back(timed("qa-dimensions", "qA ≅ T(n) ⊗ S(h) as graded spaces", [&](Record &r) {
    bool ok = true;
    json dims = json::array();
    for (std::size_t k = 0; k <= k_max; ++k) {
      auto got = qa_graded_dimension(pair, k), expected = qa_expected_dimension(pair, k);
      ok = ok && got == expected;
      dims.push_back({{"k", k}, {"dim", got}, {"expected", expected}});
    }
    r.witness["dims"] = dims;
    r.verdict = ok ? "graded dimensions match" : "graded dimension mismatch";
    r.consistent = ok;
  }));
  out.push_back(timed("koszul-acyclicity", "Koszul complex of qA is acyclic in bounded degree", [&](Record &r) {
    auto rep = koszul_acyclicity(pair, k_max);
    json slices = json::array();
    for (const auto &s : rep.slices)
      slices.push_back({{"degree", s.degree},
                        {"dims", s.dims},
                        {"ranks", s.ranks},
                        {"d_squared_zero", s.d_squared_zero},
                        {"exact", s.ok()},
                        {"h0", s.h0}});
    r.witness = {{"dual_dims", rep.dual_dims}, {"dual_contained", rep.dual_contained}, {"slices", slices}};
    r.verdict = rep.ok() ? "exact at interior positions" : "homology found";
    r.consistent = rep.ok();
  }));
  return out;
}

} // namespace

bool Report::consistent() const {
  return std::all_of(records.begin(), records.end(), [](const Record &r) { return r.consistent; });
}

json Report::to_json() const {
  json recs = json::array();
  for (const auto &r : records)
    recs.push_back({{"check", r.check},
                    {"anchor", r.anchor},
                    {"verdict", r.verdict},
                    {"consistent", r.consistent},
                    {"witness", r.witness},
                    {"millis", r.millis}});
  return {{"command", command},
          {"problem", problem},
          {"max_degree", max_degree},
          {"consistent", consistent()},
          {"records", recs}};
}

std::string Report::summary() const {
  std::ostringstream os;
  os << command << " on " << problem << " (K = " << max_degree << ")\n";
  for (const auto &r : records) {
    os << (r.consistent ? "  ok    " : "  FAIL  ") << r.check << ": " << r.verdict << "  [" << r.anchor
       << "]  " << static_cast<long>(r.millis) << " ms\n";
  }
  os << (consistent() ? "consistent" : "INCONSISTENT") << "\n";
  return os.str();
}

const std::vector<std::string> &command_names() {
  static const std::vector<std::string> names = {"validate", "alpha", "extend", "split",
                                                 "oracle",   "twisted", "koszul", "all"};
  return names;
}

Report run_command(const std::string &command, const ProblemFile &problem, const RunOptions &opts) {
  const auto &names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw InputError("unknown command '" + command + "'");
  std::size_t k = opts.max_degree.value_or(problem.settings.max_degree);
  Report report{command, problem.name, k, {}};

  auto validation = validate_lie(problem.g);
  if (!validation.ok() && !problem.settings.negative_control) {
    std::string msg = "g is not a Lie algebra:";
    for (const auto &v : validation.violations)
      msg += " " + v.describe(problem.g) + ";";
    throw InputError(msg);
  }
  if (problem.settings.negative_control && command != "validate" && command != "koszul" && command != "all")
    throw InputError("negative-control problems support only validate, koszul and all");

  InclusionPair pair = problem.pair();
  std::vector<std::string> twisted_modules;
  if (opts.module) {
    problem.module(*opts.module, pair);
    twisted_modules.push_back(*opts.module);
  } else if (command == "twisted") {
    throw InputError("twisted requires --module");
  } else {
    twisted_modules = problem.module_names();
  }

  auto wanted = [&](const std::string &c) {
    if (command != "all")
      return command == c;
    const auto &checks = problem.settings.checks;
    return checks.empty() || std::find(checks.begin(), checks.end(), c) != checks.end();
  };

  std::vector<std::function<Records()>> jobs;
  if (wanted("validate") || command == "all")
    jobs.emplace_back([&] { return validate_checks(problem); });
  if (problem.settings.negative_control) {
    if (wanted("koszul"))
      jobs.emplace_back([&] { return koszul_checks(problem, pair, k); });
  } else {
    if (wanted("alpha"))
      jobs.emplace_back([&] { return alpha_checks(pair); });
    if (wanted("extend"))
      jobs.emplace_back([&] { return extend_checks(pair); });
    if (wanted("split"))
      jobs.emplace_back([&] { return split_checks(pair, k); });
    if (wanted("oracle"))
      jobs.emplace_back([&] { return oracle_checks(pair, k); });
    if (wanted("twisted"))
      for (const auto &m : twisted_modules)
        jobs.emplace_back([&, m] { return twisted_checks(problem, pair, m, k); });
    if (wanted("koszul"))
      jobs.emplace_back([&] { return koszul_checks(problem, pair, k); });
  }

  std::vector<std::future<Records>> futures;
  for (auto &job : jobs)
    futures.push_back(std::async(std::launch::async, job));
  for (auto &f : futures)
    for (auto &r : f.get())
      report.records.push_back(std::move(r));
  return report;
}

} // namespace pbwgate
