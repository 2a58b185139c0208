#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "k3genus/cft.hpp"
#include "k3genus/charclass.hpp"
#include "k3genus/json_io.hpp"
#include "k3genus/kummer.hpp"
#include "k3genus/modforms.hpp"
#include "k3genus/verify.hpp"

namespace {

using namespace k3genus;

// Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kInputError = 2;
constexpr int kResourceCap = 3;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_input:
    case Errc::off_lattice:
    case Errc::singular_basis:
    case Errc::unsupported_dimension:
    case Errc::order_exceeded:
      return kInputError;
    case Errc::cutoff_too_large:
      return kResourceCap;
    default:
      return kVerificationFailure;
  }
}

struct Options {
  std::string input_path;
  std::string order = "10";
  double tolerance = 1e-8;
  bool orbifold = false;
  bool json = false;
  int theta_k = 3;
  int todd_dim = 2;
  std::string sector = "NS";
};

Rational parse_order(const std::string& text) {
  Rational order = parse_rational(text);
  if (!(order > 0)) fail(Errc::invalid_input, "--order must be > 0");
  return order;
}

Theory theory_from(const Options& opt) {
  TorusSpec spec = torus_spec_from_file(opt.input_path);
  return Theory{opt.orbifold ? TheoryKind::z2_orbifold : TheoryKind::toroidal,
                NarainLattice::from_torus(spec)};
}

int cmd_theta(const Options& opt) {
  std::cout << theta_series(opt.theta_k, parse_order(opt.order)).canonical_text();
  if (opt.theta_k == 1)
    std::cout << "# global prefactor -i carried out of band\n";
  return kOk;
}

int cmd_narain_check(const Options& opt) {
  TorusSpec spec = torus_spec_from_file(opt.input_path);
  std::cout << (opt.json ? narain_check_json(spec) : narain_check_text(spec));
  return kOk;
}

int cmd_zgamma(const Options& opt) {
  TorusSpec spec = torus_spec_from_file(opt.input_path);
  NarainLattice lattice = NarainLattice::from_torus(spec);
  LatticeSumSeries sum = lattice_sum_series(lattice, parse_order(opt.order));
  std::cout << "# lattice sum numerator, q-exp + qbar-exp <= " << plain_string(*sum.order)
            << "; divide by |eta(tau)|^" << 2 * sum.eta_power_per_side << "\n"
            << sum.canonical_text();
  return kOk;
}

int cmd_sector(const Options& opt) {
  Theory theory = theory_from(opt);
  SectorFunction f = sector_function(theory, sector_from_name(opt.sector), parse_order(opt.order));
  FourVariableSeries series = f.expanded();
  std::cout << "# sector " << sector_name(f.label) << ", c = "
            << plain_string(f.central_charge) << ", exact for q-exp + qbar-exp <= "
            << plain_string(series.total_order()) << "\n"
            << "# columns: q qbar y ybar coeff\n"
            << series.canonical_text();
  return kOk;
}

int cmd_ellgen(const Options& opt) {
  Theory theory = theory_from(opt);
  std::cout << cft_elliptic_genus(theory, parse_order(opt.order)).canonical_text();
  return kOk;
}

int cmd_check_spectral_flow(const Options& opt) {
  Theory theory = theory_from(opt);
  FlowCheckReport report = spectral_flow_check(theory, parse_order(opt.order));
  std::cout << report.detail;
  return kOk;
}

int cmd_genus_geometric(const Options& opt) {
  ManifoldData m = manifold_from_file(opt.input_path);
  PuiseuxSeries genus = geometric_elliptic_genus(m, parse_order(opt.order));
  for (const auto& [e, coeff] : genus.terms())
    if (!is_integer(coeff)) {
      std::cerr << "warning: non-integral coefficient " << frac_string(coeff)
                << " (inconsistent Chern numbers?)\n";
      break;
    }
  std::cout << genus.canonical_text();
  return kOk;
}

int cmd_genus_todd(const Options& opt) {
  std::cout << todd_class(opt.todd_dim).canonical_text();
  return kOk;
}

int cmd_kummer_report(const Options& opt) {
  std::cout << kummer_report_json(torus_spec_from_file(opt.input_path));
  return kOk;
}

int cmd_verify_all() {
  std::vector<CriterionResult> results = run_acceptance_suite();
  for (const auto& r : results) {
    std::printf("[%s] %s (%.2fs)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.seconds);
    if (!r.passed) std::fputs(r.detail.c_str(), stdout);
  }
  return all_passed(results) ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact partition functions and elliptic genera of toroidal SCFTs,"
               " their Z2 orbifolds, and K3 geometry"};
  app.require_subcommand(1);
  Options opt;

  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--order", opt.order, "q-truncation order (rational)")
        ->capture_default_str();
  };

  CLI::App* theta = app.add_subcommand("theta", "Jacobi theta function as exact series");
  theta->add_option("--k", opt.theta_k, "theta index in {1,2,3,4}")->capture_default_str();
  add_order(theta);

  CLI::App* narain = app.add_subcommand("narain", "charge lattice construction");
  CLI::App* narain_check = narain->add_subcommand("check", "validate the charge lattice");
  narain_check->add_option("spec", opt.input_path, "torus spec JSON")->required();
  narain_check->add_flag("--json", opt.json, "emit a JSON report");
  CLI::App* zgamma = narain->add_subcommand("zgamma", "lattice partition sum numerator");
  zgamma->add_option("spec", opt.input_path, "torus spec JSON")->required();
  add_order(zgamma);
  narain->require_subcommand(1);

  CLI::App* cft = app.add_subcommand("cft", "sector partition functions and elliptic genus");
  CLI::App* sector = cft->add_subcommand("sector", "one sector as an exact series");
  sector->add_option("spec", opt.input_path, "torus spec JSON")->required();
  sector->add_option("--sector", opt.sector, "NS, NS-tilde, R or R-tilde")
      ->capture_default_str();
  sector->add_flag("--orbifold", opt.orbifold, "Z2 orbifold of the toroidal theory");
  add_order(sector);
  CLI::App* ellgen = cft->add_subcommand("ellgen", "conformal-field-theoretic elliptic genus");
  ellgen->add_option("spec", opt.input_path, "torus spec JSON")->required();
  ellgen->add_flag("--orbifold", opt.orbifold, "Z2 orbifold of the toroidal theory");
  add_order(ellgen);
  CLI::App* flow = cft->add_subcommand("check-spectral-flow", "verify the flow identities");
  flow->add_option("spec", opt.input_path, "torus spec JSON")->required();
  flow->add_flag("--orbifold", opt.orbifold, "Z2 orbifold of the toroidal theory");
  flow->add_option("--order", opt.order, "check through this total order")
      ->capture_default_str();
  cft->require_subcommand(1);

  CLI::App* genus = app.add_subcommand("genus", "geometric elliptic genus and Todd class");
  CLI::App* geometric = genus->add_subcommand("geometric", "elliptic genus from Chern numbers");
  geometric->add_option("manifold", opt.input_path, "manifold data JSON")->required();
  add_order(geometric);
  CLI::App* todd = genus->add_subcommand("todd", "Todd class expansion");
  todd->add_option("--D", opt.todd_dim, "complex dimension")->capture_default_str();
  genus->require_subcommand(1);

  CLI::App* kummer = app.add_subcommand("kummer", "fixed points and Hodge diamonds");
  CLI::App* report = kummer->add_subcommand("report", "JSON report for a torus spec");
  report->add_option("spec", opt.input_path, "torus spec JSON")->required();
  kummer->require_subcommand(1);

  CLI::App* verify = app.add_subcommand("verify-all", "run the complete verification suite");

  app.add_option("--tolerance", opt.tolerance, "numeric tolerance for checks")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (theta->parsed()) return cmd_theta(opt);
    if (narain_check->parsed()) return cmd_narain_check(opt);
    if (zgamma->parsed()) return cmd_zgamma(opt);
    if (sector->parsed()) return cmd_sector(opt);
    if (ellgen->parsed()) return cmd_ellgen(opt);
    if (flow->parsed()) return cmd_check_spectral_flow(opt);
    if (geometric->parsed()) return cmd_genus_geometric(opt);
    if (todd->parsed()) return cmd_genus_todd(opt);
    if (report->parsed()) return cmd_kummer_report(opt);
    if (verify->parsed()) return cmd_verify_all();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kVerificationFailure;
  }
  return kInputError;
}
