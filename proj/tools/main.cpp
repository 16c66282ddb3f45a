#include <CLI11.hpp>
#include <iostream>

#include "ctinv/report.hpp"
#include "ctinv/verify.hpp"

using namespace ctinv;

int main(int argc, char** argv) {
  CLI::App app{"conjugacy invariants of UPG train-track representatives"};
  app.require_subcommand(1);

  std::string path, path_b, chain_a, chain_b, theta_text;
  long long depth = 24;
  bool as_json = false;

  CLI::App* validate = app.add_subcommand("validate", "check a CT file");
  validate->add_option("path", path)->required();

  CLI::App* inv = app.add_subcommand("invariants", "compute the invariant report");
  inv->add_option("path", path)->required();
  inv->add_option("--chain", chain_a, "total order on higher edges, e.g. c,d,e,q");
  inv->add_option("--depth", depth, "ray prefix display depth");
  inv->add_flag("--json", as_json, "emit the report as JSON");

  CLI::App* cmp = app.add_subcommand("compare", "compare two CTs' invariants");
  cmp->add_option("pathA", path)->required();
  cmp->add_option("pathB", path_b)->required();
  cmp->add_option("--chainA", chain_a);
  cmp->add_option("--chainB", chain_b);

  CLI::App* ver = app.add_subcommand("verify", "verify a candidate conjugator");
  ver->add_option("pathPhi", path)->required();
  ver->add_option("pathPsi", path_b)->required();
  ver->add_option("--theta", theta_text, "x1 -> w1; x2 -> w2; ...")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      try {
        CTData c = load_ct(path);
        auto violations = validate_ct(c);
        if (violations.empty()) {
          std::cout << "valid\n";
          return 0;
        }
        for (const std::string& v : violations) std::cerr << v << "\n";
      } catch (const error& e) {
        std::cerr << e.what() << "\n";
      }
      return 1;
    }
    if (inv->parsed()) {
      CTData c = load_ct(path);
      auto violations = validate_ct(c);
      if (!violations.empty()) {
        for (const std::string& v : violations) std::cerr << v << "\n";
        return 1;
      }
      Report r = invariants_report(c, parse_chain_order(c, chain_a), depth);
      std::cout << (as_json ? r.json() : r.text());
      return 0;
    }
    if (cmp->parsed()) {
      CTData a = load_ct(path);
      CTData b = load_ct(path_b);
      CompareResult res = compare_cts(a, parse_chain_order(a, chain_a), b,
                                      parse_chain_order(b, chain_b));
      std::cout << res.verdict << "\n";
      for (const std::string& d : res.detail) std::cout << d << "\n";
      return 0;
    }
    if (ver->parsed()) {
      CTData cphi = load_ct(path);
      CTData cpsi = load_ct(path_b);
      OuterAuto phi = ct_outer(cphi);
      OuterAuto psi = ct_outer(cpsi);
      OuterAuto theta = OuterAuto::parse(theta_text, cphi.graph.rank());
      bool yes = verify_conjugator(phi, psi, theta);
      std::cout << (yes ? "YES" : "NO") << "\n";
      SpecialChain chain = special_chain(cphi, default_chain_order(cphi));
      XMembership xm = x_membership(cphi, chain, theta);
      std::cout << "x-membership for phi's chain:"
                << " (1)chain=" << xm.chain_preserved
                << " (2)factors=" << xm.factors_fixed
                << " (3)fix=" << xm.fix_classes_fixed
                << " (4)added=" << xm.added_lines_fixed
                << " (5)limits=" << xm.limit_line_pairs_fixed
                << " (6)axes=" << xm.axes_fixed
                << " (7)strong=" << xm.strong_axes_fixed << "\n";
      return yes ? 0 : 1;
    }
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == errc::parse_error ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
