#pragma once

// Command-line front end. Exit codes: 0 success, 1 a check failed,
// 2 theorem hypothesis violated, 3 size budget exceeded, 4 outside the
// supported scope, 5 bad input. CLI11 usage errors keep CLI11's codes
// (106 and up); --help exits 0.

#include "relk2/report.hpp"
#include "relk2/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace relk2 {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_hypothesis = 2, exit_budget = 3, exit_scope = 4, exit_input = 5 };

struct RunConfig {
  std::uint32_t p = 2;
  std::vector<unsigned> exponents{1, 1};
  std::string route = "both";
  std::string mode = "full";
  std::string format = "text";
  std::size_t budget_pairs = default_budget_pairs();
  std::uint64_t seed = VerifyConfig{}.seed;
  std::size_t jobs = 1;
  std::size_t rank = 2;
  std::size_t samples = VerifyConfig{}.samples;
  std::vector<std::string> suites;
  std::vector<std::uint32_t> p_list{2, 3, 5};
  std::string inject_fault;
  bool relations = false;
  bool table = false;
};

namespace detail {

inline void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

inline std::string ring_name(const GroupSpec& spec) { return "F_" + std::to_string(spec.p()) + "[" + spec.name() + "]"; }

inline int cmd_k2(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(c.p, c.exponents);
  K2Report rep = k2_relative_structure(spec, parse_route(c.route), parse_mode(c.mode), c.budget_pairs);
  if (c.format == "json") {
    print_json(out, to_json(rep));
  } else {
    out << "K2(" << ring_name(spec) << ", (G~)) = " << rep.structure.to_string() << "   [route " << to_string(rep.route) << "]\n";
    if (rep.tensor_structure) out << "  tensor (G~) (x) Omega: " << rep.tensor_structure->to_string() << "\n";
    if (rep.oracle_structure) out << "  Dennis-Stein " << c.mode << " presentation: " << rep.oracle_structure->to_string() << "\n";
    if (!rep.basis.empty()) out << "  basis: " << join(rep.basis, ", ") << "\n";
    if (rep.agreement) out << "  agreement: " << (*rep.agreement ? "yes" : "NO") << "\n";
    for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
    out << "  " << decomposition_statement(rep) << "\n";
  }
  return rep.agreement.value_or(true) && rep.warnings.empty() ? exit_ok : exit_check_failed;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  VerifyConfig vc;
  vc.p_list = c.p_list;
  vc.seed = c.seed;
  vc.samples = c.samples;
  vc.budget_pairs = c.budget_pairs;
  vc.jobs = c.jobs;
  vc.inject_fault = c.inject_fault;
  auto results = run_suites(c.suites, vc);
  bool all = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all = all && r.passed();
    if (c.format == "json") {
      arr.push_back(Json{{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}, {"ms", r.ms}});
    } else {
      out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << static_cast<long long>(r.ms) << " ms)\n";
      for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) out << "  " << r.failures[i] << "\n";
    }
  }
  if (c.format == "json") print_json(out, Json{{"suites", arr}, {"passed", all}});
  else out << results.size() << " suites, " << (all ? "all passed" : "FAILURES") << "\n";
  return all ? exit_ok : exit_check_failed;
}

inline int cmd_excision(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(2, std::vector<unsigned>(c.rank, 1));
  ExcisionReport rep = excision_check(spec, c.budget_pairs);
  if (c.format == "json") {
    print_json(out, to_json(rep));
  } else {
    out << "G = " << spec.name() << ", |Z[G]/I| = " << to_string(rep.ring_size_i) << ", |Z[G]/J| = " << to_string(rep.ring_size_j) << "\n";
    out << "  D(Z[G]/I, J/I)   = " << rep.integral.to_string() << "   (" << rep.integral_relations << " relations)\n";
    out << "  D(F_2[G], (G~))  = " << rep.modular.to_string() << "\n";
    out << "  equal: " << (rep.equal() ? "yes" : "NO") << ", reduction map well defined: " << (rep.map_well_defined ? "yes" : "NO")
        << ", surjective: " << (rep.map_surjective ? "yes" : "NO") << "\n";
    out << "  J = I + Z G~: " << rep.lattice.j_is_i_plus_gtilde << ", 2 G~ in I: " << rep.lattice.p_gtilde_in_i
        << ", J^2 in I: " << rep.lattice.quotient_square_zero << "\n";
  }
  return rep.ok() ? exit_ok : exit_check_failed;
}

inline int cmd_square(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(c.p, c.exponents);
  SquareReport rep = cartesian_square(spec);
  if (c.format == "json") {
    print_json(out, to_json(rep));
  } else {
    auto line = [&](const SquareCorner& k) {
      out << "  " << k.name << ": ";
      if (k.size) out << to_string(*k.size) << " elements";
      else out << "symbolic";
      if (k.fp_dim) out << ", dim " << *k.fp_dim;
      out << " (" << k.description << ")\n";
    };
    out << "Z[G]/I -> Z[G]/J over F_p[G] -> F_p[G]/(G~), G = " << spec.name() << ", p = " << spec.p() << "\n";
    line(rep.top_left);
    line(rep.top_right);
    line(rep.bottom_left);
    line(rep.bottom_right);
    if (rep.commutes) out << "  commutes: " << (*rep.commutes ? "yes" : "NO") << ", pullback: " << (*rep.pullback ? "yes" : "NO") << "\n";
    for (const auto& n : rep.notes) out << "  note: " << n << "\n";
  }
  return rep.commutes.value_or(true) && rep.pullback.value_or(true) ? exit_ok : exit_check_failed;
}

inline int cmd_oracle(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(c.p, c.exponents);
  auto pres = group_ring_presentation(spec, parse_mode(c.mode), c.budget_pairs);
  if (c.format == "json") {
    Json j;
    j["p"] = spec.p();
    j["exponents"] = spec.exponents();
    j["presentation"] = to_json(pres, c.relations);
    print_json(out, j);
  } else {
    out << "D(" << ring_name(spec) << ", (G~)) = " << pres.structure().to_string() << "   [" << c.mode << " mode, " << pres.generator_count()
        << " generators, " << pres.relation_count() << " relations]\n";
  }
  return exit_ok;
}

inline int cmd_theorem(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(c.p, c.exponents);
  Theorem1Report rep = theorem1_group_ring(spec, parse_mode(c.mode), c.budget_pairs);
  if (c.format == "json") {
    print_json(out, to_json(rep));
  } else {
    out << "A = " << ring_name(spec) << ", I = 0, J = (G~), r = " << rep.r << "\n";
    out << "  D(A/I, J/I)               = " << (rep.oracle ? rep.oracle->to_string() : "skipped") << "\n";
    out << "  J/I (x)_{A/I} Omega_{A/I} = " << rep.tensor_over_a_mod_i.to_string() << "\n";
    out << "  J/I (x)_{A/J} Omega_{A/J} = " << rep.tensor_over_a_mod_j.to_string() << "\n";
    out << "  psi trivial: " << (rep.psi_trivial ? (*rep.psi_trivial ? "yes" : "NO") : "skipped") << ", delta* trivial: " << (rep.delta_trivial ? "yes" : "NO")
        << "\n";
    for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
  }
  return rep.ok() ? exit_ok : exit_check_failed;
}

inline int cmd_lattice(const RunConfig& c, std::ostream& out) {
  GroupSpec spec(2, std::vector<unsigned>(c.rank, 1));
  CharacterLattice lat = build_lattices(spec);
  LatticeChecks checks = relation_checks(lat);
  FiniteQuotientRing zi = quotient_ring(lat, WhichIdeal::i), zj = quotient_ring(lat, WhichIdeal::j);
  if (c.format == "json") {
    print_json(out, Json{{"lattices", to_json(lat)}, {"relation_checks", to_json(checks)}, {"Z[G]/I", to_json(zi, c.table)}, {"Z[G]/J", to_json(zj, c.table)}});
  } else {
    out << "G = " << spec.name() << ", [Gamma : Z[G]] = " << to_string(lattice_index(lat.zg)) << "\n";
    out << "  Z[G]/I: " << to_string(zi.size()) << " elements, additive " << zi.additive_structure().to_string() << "\n";
    out << "  Z[G]/J: " << to_string(zj.size()) << " elements, additive " << zj.additive_structure().to_string() << "\n";
    out << "  relation checks: " << (checks.all() ? "all hold" : "FAIL") << "\n";
  }
  return checks.all() ? exit_ok : exit_check_failed;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Relative K2 of square-zero ideals in group algebras"};
  app.require_subcommand(1);
  RunConfig c;

  auto spec_opts = [&](CLI::App* s) {
    s->add_option("--p", c.p, "prime")->check(CLI::PositiveNumber);
    s->add_option("--exponents", c.exponents, "n_1,...,n_r with G = prod C_{p^n_i}")->delimiter(',')->check(CLI::PositiveNumber);
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--budget-pairs", c.budget_pairs, "largest |R|*|I| for the full presentation")->check(CLI::PositiveNumber);
  };

  auto* k2 = app.add_subcommand("k2", "structure of K2(F_p[G], (G~))");
  spec_opts(k2);
  common(k2);
  k2->add_option("--route", c.route, "tensor, oracle or both")->check(CLI::IsMember({"tensor", "oracle", "both"}));
  k2->add_option("--mode", c.mode, "full or reduced presentation")->check(CLI::IsMember({"full", "reduced"}));

  auto* verify = app.add_subcommand("verify", "run the self-check suites");
  common(verify);
  verify->add_option("--suites", c.suites, "comma-separated suite names")->delimiter(',');
  verify->add_option("--p-list", c.p_list, "primes for the sweeps")->delimiter(',');
  verify->add_option("--seed", c.seed, "seed for randomized checks");
  verify->add_option("--samples", c.samples, "random samples per context")->check(CLI::PositiveNumber);
  verify->add_option("--inject-fault", c.inject_fault, "sabotage one suite (harness self-test)");

  auto* excision = app.add_subcommand("excision", "D(Z[G]/I, J/I) against D(F_2[G], (G~))");
  common(excision);
  excision->add_option("--rank", c.rank, "rank r of G = C_2^r")->check(CLI::PositiveNumber);

  auto* square = app.add_subcommand("square", "the Cartesian square of Z[G]/I");
  spec_opts(square);
  common(square);

  auto* oracle = app.add_subcommand("oracle", "Dennis-Stein presentation of K2(F_p[G], (G~))");
  spec_opts(oracle);
  common(oracle);
  oracle->add_option("--mode", c.mode, "full or reduced")->check(CLI::IsMember({"full", "reduced"}));
  oracle->add_flag("--relations", c.relations, "include generators and relation rows in JSON");

  auto* theorem = app.add_subcommand("theorem", "the tensor isomorphism on A = F_p[G], J = (G~)");
  spec_opts(theorem);
  common(theorem);
  theorem->add_option("--mode", c.mode, "full or reduced")->check(CLI::IsMember({"full", "reduced"}));

  auto* lattice = app.add_subcommand("lattice", "Gamma, J and I for G = C_2^r");
  common(lattice);
  lattice->add_option("--rank", c.rank, "rank r of G = C_2^r")->check(CLI::PositiveNumber);
  lattice->add_flag("--table", c.table, "include multiplication tables in JSON");

  for (auto* s : {k2, verify, excision, square, oracle, theorem, lattice})
    s->add_option("--jobs", c.jobs, "worker threads (used by verify)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*k2) return detail::cmd_k2(c, out);
    if (*verify) return detail::cmd_verify(c, out);
    if (*excision) return detail::cmd_excision(c, out);
    if (*square) return detail::cmd_square(c, out);
    if (*oracle) return detail::cmd_oracle(c, out);
    if (*theorem) return detail::cmd_theorem(c, out);
    if (*lattice) return detail::cmd_lattice(c, out);
  } catch (const HypothesisError& e) {
    err << "hypothesis violated: " << e.what() << "\n";
    return exit_hypothesis;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return exit_budget;
  } catch (const ScopeError& e) {
    err << "unsupported: " << e.what() << "\n";
    return exit_scope;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return exit_input;
  } catch (const ArithmeticError& e) {
    err << "internal consistency check failed: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_input;
}

}  // namespace relk2
