// Runs the eight acceptance criteria at full size. One PASS/FAIL line each;
// exit status 0 only when every criterion passes within its time limit.

#include "relk2/verify.hpp"

#include <cstdio>
#include <functional>
#include <iostream>

using namespace relk2;

namespace {

struct Criterion {
  int id;
  std::string title;
  double limit_s;
  std::function<SuiteResult(const VerifyConfig&)> run;
};

// A suite result with extra direct checks appended.
SuiteResult with_checks(SuiteResult base, const std::function<void(detail::SuiteRecorder&)>& extra) {
  detail::SuiteRecorder rec(base.name);
  extra(rec);
  SuiteResult more = rec.finish();
  base.checks += more.checks;
  base.failures.insert(base.failures.end(), more.failures.begin(), more.failures.end());
  base.ms += more.ms;
  return base;
}

SuiteResult criterion_oracle(const VerifyConfig& cfg) {
  return with_checks(suite_oracle(cfg), [&](detail::SuiteRecorder& rec) {
    rec.guarded("C2 x C2", [&] {
      GroupSpec spec(2, {1, 1});
      auto full = group_ring_presentation(spec, PresentationMode::full, cfg.budget_pairs);
      K2Report tensor = k2_relative_structure(spec, Route::tensor);
      rec.check(full.structure() == AbelianGroupStructure::elementary(2, 2), "D(F_2[C2 x C2], (G~)) = " + full.structure().to_string());
      rec.check(full.structure() == tensor.structure, "full mode and tensor route differ on C2 x C2");
    });
  });
}

SuiteResult criterion_excision(const VerifyConfig& cfg) {
  return with_checks(suite_excision(cfg), [&](detail::SuiteRecorder& rec) {
    rec.guarded("relation checks", [&] {
      for (unsigned r = 1; r <= 2; ++r) {
        ExcisionReport e = excision_check(GroupSpec(2, std::vector<unsigned>(r, 1)), cfg.budget_pairs);
        rec.check(e.lattice.all() && e.map_well_defined && e.map_surjective, "excision map checks fail at r=" + std::to_string(r));
      }
    });
  });
}

}  // namespace

int main() {
  VerifyConfig cfg;  // p in {2,3,5}, r <= 3, |G| <= 125, 100 samples, seed 20240917
  const std::vector<Criterion> criteria{
      {1, "G~ factors as prod x_j^(p^n_j - 1) over the sweep", 10, suite_factorization},
      {2, "Omega of F_p[G] free of rank r; F_2[x]/(x^3-1) trivial", 5, suite_omega},
      {3, "tensor route (Z/p)^r for |G| > 2; oracle trivial on C2", 30, suite_tensor},
      {4, "full D(F_2[C2 x C2]) = (Z/2)^2 = tensor; reduced = full", 60, criterion_oracle},
      {5, "scholium words trivial (100 per context); psi trivial", 30, suite_scholium},
      {6, "rho kills every Dennis-Stein relation in full mode", 30, suite_rho},
      {7, "excision at p = 2, r = 1, 2 with relation checks", 120, criterion_excision},
      {8, "SNF UMV = D on 200 matrices; HNF unique", 20, suite_linear},
  };
  bool all = true;
  for (const auto& c : criteria) {
    detail::Stopwatch clock;
    SuiteResult r;
    try {
      r = c.run(cfg);
    } catch (const std::exception& e) {
      r.failures.push_back(e.what());
    }
    const double s = clock.ms() / 1000.0;
    const bool in_time = s <= c.limit_s;
    const bool pass = r.passed() && in_time;
    all = all && pass;
    char line[256];
    std::snprintf(line, sizeof line, "%s  [%d] %-58s %6zu checks  %7.2fs / %3.0fs", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), r.checks, s,
                  c.limit_s);
    std::cout << line << "\n";
    if (!in_time) std::cout << "      time limit exceeded\n";
    for (std::size_t k = 0; k < r.failures.size() && k < 5; ++k) std::cout << "      " << r.failures[k] << "\n";
  }
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  return all ? 0 : 1;
}
