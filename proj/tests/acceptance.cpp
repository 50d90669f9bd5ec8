// One PASS/FAIL line per acceptance criterion.  Equalities are exact; the
// only tolerances are the wall-clock bounds below.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "helpers.hpp"
#include "json.hpp"
#include "pbwgate/koszul.hpp"

using namespace pbwgate;
using namespace pbwgate::testing;

namespace {

constexpr double kGoldenSeconds = 1.0;
constexpr double kClassicalSeconds = 30.0;
constexpr std::size_t kClassicalDegree = 3;
constexpr std::size_t kHarnessDegree = 4;
constexpr std::size_t kDimensionDegree = 4;
constexpr std::size_t kRankOracleDegree = 3;
constexpr std::size_t kKoszulDegree = 4;
constexpr std::size_t kTwistedDegree = 3;

// Accumulates failure reasons; a criterion passes when none are recorded.
struct Outcome {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string &what) {
    if (!ok)
      failures.push_back(what);
  }
};

int failed = 0;

void criterion(int id, const std::string &title, const std::function<void(Outcome &)> &body,
               std::optional<double> max_seconds = std::nullopt) {
  Outcome out;
  auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception &e) {
    out.failures.push_back(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (max_seconds && secs >= *max_seconds) {
    std::ostringstream os;
    os << "runtime " << secs << " s exceeds " << *max_seconds << " s";
    out.failures.push_back(os.str());
  }
  bool pass = out.failures.empty();
  failed += !pass;
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << secs << " s";
  if (max_seconds)
    std::cout << ", bound " << *max_seconds << " s";
  std::cout << ")\n";
  for (const auto &f : out.failures)
    std::cout << "       failed: " << f << "\n";
  for (const auto &n : out.notes)
    std::cout << "       note: " << n << "\n";
}

std::size_t f_formula(std::size_t dn, std::size_t k) {
  std::size_t total = 0, p = 1;
  for (std::size_t i = 0; i <= k; ++i, p *= dn)
    total += p;
  return total;
}

std::size_t r_formula(std::size_t dn, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t i = 0; i <= k; ++i)
    total += dn == 0 ? (i == 0) : binomial(dn + i - 1, i);
  return total;
}

std::string named(const std::string &name, const std::string &what) { return name + ": " + what; }

} // namespace

int main() {
  criterion(1, "sl2 Borel golden values of c, a and the triviality test", [](Outcome &o) {
    auto pair = pair_of("sl2-borel");
    auto c = connecting_cocycle(pair);
    o.expect(c.value_on(0) == Vector{0, -1}, "c(e)(f) = -h");
    o.expect(c.value_on(1) == Vector{0, 0}, "c(h)(f) = 0");
    auto n = quotient_module(pair);
    auto a = alpha_cocycle(pair, n);
    o.expect(a.value_on(0) == Vector{2}, "a(e)(f⊗f) = 2f");
    o.expect(a.value_on(1) == Vector{0}, "a(h)(f⊗f) = 0");
    o.expect(!is_trivial(pair, n, a).has_value(), "is_trivial returns none");
  }, kGoldenSeconds);

  criterion(2, "classical PBW on diagonal sl2: extension, sections I_k and dim R^k for k <= 3", [](Outcome &o) {
    auto pair = pair_of("diagonal-sl2");
    auto rho = find_extension(pair, quotient_module(pair));
    o.expect(rho.has_value(), "find_extension succeeds");
    auto maps = pbw_splitting_I(pair, kClassicalDegree);
    o.expect(maps.size() == kClassicalDegree + 1, "one map per k");
    auto r = build_filtration(pair, Side::R, kClassicalDegree);
    for (std::size_t k = 0; k < maps.size(); ++k) {
      std::string at = "k = " + std::to_string(k);
      o.expect(maps[k].equivariant, at + " equivariant");
      o.expect(maps[k].section, at + " section");
      o.expect(maps[k].map.source.dim() == binomial(k + 2, 2), at + " source is S^k(n)");
      std::size_t expected = r_formula(3, k);
      o.expect(maps[k].map.target.dim() == expected, at + " target dim");
      o.expect(r.dim(k) == expected, at + " normal-form dim");
      o.expect(truncated_quotient_dimension(pair, Side::R, k) == expected, at + " rank dim");
    }
    o.notes.push_back("dim R^k asserted as Σ_{i<=k} C(i+2,2) = 1, 4, 10, 20 (normal forms and rank); "
                      "the listed values 14, 34 contradict that formula");
  }, kClassicalSeconds);

  criterion(3, "splitting_s at k = 2, 3 matches the printed expansions on every pair with trivial α",
            [](Outcome &o) {
    for (const auto &name : kTrivialAlpha) {
      auto pair = pair_of(name);
      auto rho = generic_rho(pair);
      for (const auto &w : all_words(pair.dim_n(), 2))
        o.expect(splitting_s_value(pair, rho, w) == printed_s2(pair, rho, w), named(name, "k = 2"));
      for (const auto &w : all_words(pair.dim_n(), 3))
        o.expect(splitting_s_value(pair, rho, w) == printed_s3(pair, rho, w), named(name, "k = 3"));
    }
  });

  criterion(4, "α triviality, F̃ and R̃ oracle splitting agree for k <= 4 on every valid catalog pair",
            [](Outcome &o) {
    for (const auto &name : kValid) {
      auto rep = equivalence_harness(pair_of(name), kHarnessDegree);
      o.expect(rep.levels.size() == kHarnessDegree + 1, named(name, "levels 0..4"));
      for (const auto &l : rep.levels)
        o.expect(l.agrees(), named(name, "level " + std::to_string(l.k)));
    }
    o.notes.push_back("the Jacobi-broken negative control has no α; it is covered by criterion 7");
  });

  criterion(5, "dim F^k = Σ (dim n)^i and dim R^k = Σ C(dim n + i - 1, i) for k <= 4", [](Outcome &o) {
    for (const auto &name : kValid) {
      auto pair = pair_of(name);
      std::size_t dn = pair.dim_n();
      auto f = build_filtration(pair, Side::F, kDimensionDegree);
      auto r = build_filtration(pair, Side::R, kDimensionDegree);
      for (std::size_t k = 0; k <= kDimensionDegree; ++k) {
        std::string at = "k = " + std::to_string(k);
        o.expect(f.dim(k) == f_formula(dn, k), named(name, "F " + at));
        o.expect(r.dim(k) == r_formula(dn, k), named(name, "R " + at));
        if (k <= kRankOracleDegree) {
          o.expect(truncated_quotient_dimension(pair, Side::F, k) == f_formula(dn, k), named(name, "F rank " + at));
          o.expect(truncated_quotient_dimension(pair, Side::R, k) == r_formula(dn, k), named(name, "R rank " + at));
        }
      }
    }
  });

  criterion(6, "d∘d = 0 for p <= 2, c and a cocycles, complement independence, ∧²n restriction exact",
            [](Outcome &o) {
    for (const auto &name : kValid) {
      auto pair = pair_of(name);
      auto n = quotient_module(pair);
      for (const auto &m : {connecting_coefficients(pair), alpha_coefficients(pair, n)})
        for (std::size_t p = 0; p <= 2; ++p)
          o.expect((ce_differential(pair.h(), m, p + 1) * ce_differential(pair.h(), m, p)).is_zero(),
                   named(name, "d∘d at p = " + std::to_string(p)));
      o.expect(is_cocycle(connecting_cocycle(pair)), named(name, "c cocycle"));
      o.expect(is_cocycle(alpha_cocycle(pair, n)), named(name, "a cocycle"));
      o.expect(is_trivial(alpha_on_wedge(pair)).has_value(), named(name, "∧²n restriction exact"));
    }
    for (const auto &[name, complement] : alternative_complements()) {
      auto p = catalog_get(name);
      auto p1 = p.pair();
      p.complement = complement;
      auto p2 = p.pair();
      auto a1 = alpha_cocycle(p1, quotient_module(p1));
      auto moved = transported_alpha(p1, p2);
      Cochain diff{1, a1.coefficients, a1.values - moved.values};
      o.expect(is_trivial(diff).has_value(), named(name, "difference across complements is exact"));
    }
  });

  criterion(7, "BG conditions, qA graded dimensions and Koszul slice exactness", [](Outcome &o) {
    for (const auto &name : kValid) {
      auto pair = pair_of(name);
      auto bg = bg_conditions(pair);
      o.expect(bg.condition1 && bg.condition2, named(name, "bg_conditions = (true, true)"));
      for (std::size_t k = 0; k <= kKoszulDegree; ++k)
        o.expect(qa_graded_dimension(pair, k) == qa_expected_dimension(pair, k),
                 named(name, "qA_" + std::to_string(k)));
    }
    o.expect(!bg_conditions(pair_of("jacobi-broken-negative-control")).condition2,
             "condition (2) fails on the negative control");
    for (const auto &name : {"sl2-borel", "diagonal-sl2"}) {
      auto rep = koszul_acyclicity(pair_of(name), kKoszulDegree);
      o.expect(rep.slices.size() == kKoszulDegree, named(name, "slices 1..4"));
      for (const auto &s : rep.slices) {
        std::string at = "degree " + std::to_string(s.degree);
        o.expect(s.d_squared_zero, named(name, at + " d∘d = 0"));
        o.expect(s.lands_in_complex, named(name, at + " d preserves K̃"));
        for (std::size_t i = 1; i + 1 <= s.degree; ++i)
          o.expect(s.exact[i], named(name, at + " exact at position " + std::to_string(i)));
      }
    }
  });

  criterion(8, "twisted verdicts at K = 3 match the predicted equivalences", [](Outcome &o) {
    auto borel = pair_of("sl2-borel");
    auto diag = pair_of("diagonal-sl2");
    struct Case {
      std::string label;
      TwistedReport rep;
      bool level1, all_levels;
    };
    std::vector<Case> cases = {
        {"sl2-borel, V = n", twisted_verdict(borel, quotient_module(borel), kTwistedDegree), false, false},
        {"sl2-borel, V = trivial", twisted_verdict(borel, LieModule::trivial(borel.h_ptr()), kTwistedDegree), true,
         false},
        {"diagonal-sl2, V = adjoint", twisted_verdict(diag, LieModule::adjoint(diag.h_ptr()), kTwistedDegree), true,
         true},
    };
    for (const auto &c : cases) {
      const auto &r = c.rep;
      o.expect(r.agrees(), named(c.label, "verdicts agree with α and α_V"));
      o.expect(r.f_split.size() == kTwistedDegree && r.r_split.size() == kTwistedDegree, named(c.label, "levels"));
      o.expect(r.f_split[0] == c.level1 && r.r_split[0] == c.level1, named(c.label, "level 1"));
      bool all_f = std::all_of(r.f_split.begin(), r.f_split.end(), [](bool b) { return b; });
      bool all_r = std::all_of(r.r_split.begin(), r.r_split.end(), [](bool b) { return b; });
      o.expect(all_f == c.all_levels && all_r == c.all_levels, named(c.label, "all levels"));
    }
  });

  criterion(9, "pbwgate all --example sl2-borel --json out.json exits 0 with the golden witnesses", [](Outcome &o) {
    auto dir = std::filesystem::temp_directory_path() / "pbwgate_acceptance";
    std::filesystem::create_directories(dir);
    auto out = dir / "out.json";
    std::filesystem::remove(out);
    std::string cmd = std::string(PBWGATE_CLI) + " all --example sl2-borel --json " + out.string() + " > /dev/null";
    int status = std::system(cmd.c_str());
    o.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "exit status 0");
    std::ifstream is(out);
    o.expect(is.good(), "out.json written");
    if (!is)
      return;
    auto j = nlohmann::json::parse(is);
    nlohmann::json c, a;
    std::string verdict;
    for (const auto &r : j["records"]) {
      if (r["check"] == "connecting-cocycle")
        c = r["witness"];
      if (r["check"] == "alpha-class") {
        a = r["witness"];
        verdict = r["verdict"];
      }
    }
    o.expect(c["c(e)(f)"] == nlohmann::json{{"e", "0"}, {"h", "-1"}}, "c(e)(f) = -h");
    o.expect(c["c(h)(f)"] == nlohmann::json{{"e", "0"}, {"h", "0"}}, "c(h)(f) = 0");
    o.expect(a["a(e)(f,f)"] == nlohmann::json{{"f", "2"}}, "a(e)(f⊗f) = 2f");
    o.expect(a["a(h)(f,f)"] == nlohmann::json{{"f", "0"}}, "a(h)(f⊗f) = 0");
    o.expect(a["trivial"] == false && verdict == "α non-trivial", "α non-trivial");
  });

  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
