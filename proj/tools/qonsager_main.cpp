#include "qonsager/sampling.hpp"
#include "qonsager/transfer.hpp"
#include "qonsager/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  out << content;
  return 0;
}

qonsager::RunConfig load_or_default(const std::string& config_path) {
  if (config_path.empty()) return qonsager::default_config();
  return qonsager::load_config(config_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verifier for a twisted open spin chain and its boundary symmetry"};
  app.require_subcommand(0, 1);

  bool list_suites = false;
  app.add_flag("--list-suites", list_suites, "print the available suite names and exit");

  // verify ------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "run identity-check suites and report residuals");
  std::string config_path, report_path, format = "text";
  std::vector<std::string> suites;
  int sites = -1;
  std::int64_t seed = -1;
  verify->add_option("--config", config_path, "JSON run configuration");
  verify->add_option("--suite", suites, "suite to run (repeatable; default: config's list)");
  verify->add_option("--sites", sites, "override the number of chain sites (1..10)");
  verify->add_option("--seed", seed, "override the sampling seed");
  verify->add_option("--report", report_path, "write the report to this file instead of stdout");
  verify->add_option("--format", format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // spectrum ----------------------------------------------------------------
  auto* spectrum = app.add_subcommand("spectrum", "diagonalize the chain Hamiltonian to CSV");
  std::string sp_config_path, sp_out;
  int sp_sites = -1;
  std::int64_t sp_seed = -1;
  spectrum->add_option("--config", sp_config_path, "JSON run configuration");
  spectrum->add_option("--out", sp_out, "CSV output path (default: stdout)");
  spectrum->add_option("--sites", sp_sites, "override the number of chain sites (1..10)");
  spectrum->add_option("--seed", sp_seed, "override the sampling seed");

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : qonsager::all_suites()) std::cout << name << "\n";
    return 0;
  }

  try {
    if (verify->parsed()) {
      qonsager::RunConfig cfg = load_or_default(config_path);
      if (!suites.empty()) cfg.suites = suites;
      if (sites > 0) cfg.n_sites = sites;
      if (cfg.n_sites < 1 || cfg.n_sites > 10) {
        std::cerr << "error: sites must be between 1 and 10\n";
        return 2;
      }
      if (seed >= 0) cfg.seed = std::uint64_t(seed);

      const qonsager::VerificationReport rep = qonsager::run_suites(cfg);
      const std::string text = qonsager::emit_report(rep, format);
      if (!report_path.empty()) {
        if (int rc = write_file(report_path, text)) return rc;
        std::cout << "report written to " << report_path << " (" << rep.overall() << ")\n";
      } else {
        std::cout << text;
      }
      if (!rep.errors.empty()) return 2;
      return rep.all_pass ? 0 : 1;
    }

    if (spectrum->parsed()) {
      qonsager::RunConfig cfg = load_or_default(sp_config_path);
      if (sp_sites > 0) cfg.n_sites = sp_sites;
      if (cfg.n_sites < 1 || cfg.n_sites > 10) {
        std::cerr << "error: sites must be between 1 and 10\n";
        return 2;
      }
      if (sp_seed >= 0) cfg.seed = std::uint64_t(sp_seed);

      qonsager::Sampler s(qonsager::Sampler::sub_seed(cfg.seed, "spectrum-cli"));
      qonsager::ModelParams mp;
      mp.q = s.generic_q(cfg.q_sampling.r_min, cfg.q_sampling.r_max);
      mp.n_sites = cfg.n_sites;
      for (int i = 0; i < cfg.n_sites; ++i) {
        if (cfg.twist_mode == "fixed-list")
          mp.t.push_back(cfg.twist_values.at(std::size_t(i)));
        else if (cfg.twist_mode == "generic")
          mp.t.push_back(s.on_annulus(0.75, 1.35));
        else
          mp.t.push_back(s.unimodular());
        mp.v.push_back(1.0);
      }
      if (cfg.boundary_mode == "fixed") {
        mp.bp = cfg.boundary;
      } else {
        for (int tries = 0;; ++tries) {
          qonsager::BoundaryParams bp;
          bp.eps_plus = s.on_annulus(0.7, 1.4);
          bp.eps_minus = s.on_annulus(0.7, 1.4);
          bp.k_plus = s.on_annulus(0.7, 1.4);
          bp.k_minus = s.on_annulus(0.7, 1.4);
          bp.kappa = s.on_annulus(0.7, 1.4);
          bp.kappa_star = s.on_annulus(0.7, 1.4);
          bp.kappa_plus = s.on_annulus(0.7, 1.4);
          bp.kappa_minus = s.on_annulus(0.7, 1.4);
          if (std::abs(bp.eps_plus + bp.eps_minus) >= 0.2 &&
              std::abs(bp.kappa + bp.kappa_star) >= 0.2) {
            mp.bp = bp;
            break;
          }
          if (tries > 1000) {
            std::cerr << "error: could not sample a non-degenerate boundary\n";
            return 2;
          }
        }
      }

      const qonsager::Spectrum sp = qonsager::diagonalize(qonsager::mccoy_wu_hamiltonian(mp));
      const std::string csv = qonsager::spectrum_csv(sp);
      if (!sp_out.empty()) {
        if (int rc = write_file(sp_out, csv)) return rc;
        std::cout << "spectrum written to " << sp_out << " (" << sp.eigenvalues.size()
                  << " eigenvalues)\n";
      } else {
        std::cout << csv;
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cout << app.help();
  return 0;
}
