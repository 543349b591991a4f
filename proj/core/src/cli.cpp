#include "sleeve/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "sleeve/atpe.hpp"
#include "sleeve/errors.hpp"
#include "sleeve/harness.hpp"
#include "sleeve/ogm.hpp"
#include "sleeve/rng.hpp"

namespace sleeve::cli {

namespace {

struct CommonArgs {
  int n = 10;
  int d = 1;
  std::string profile = "tanh";
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_profile = true) {
  cmd->set_help_flag("--help", "print help and exit");
  cmd->add_option("--n", a.n, "ambient dimension N")->required();
  cmd->add_option("--d", a.d, "subspace dimension d")->required();
  if (with_profile) cmd->add_option("--profile", a.profile, "profile name (identity | tanh | sin5)");
  cmd->add_option("--seed", a.seed, "master seed");
}

int run_impl(int argc, const char* const* argv) {
  CLI::App app{"sleeve - recovery of linear-sleeve functions f(x) = g(dist(x, L)^2) from point queries"};
  app.require_subcommand(1);
  // the single-letter -h short form would shadow the --h step-size flag
  app.set_help_flag("--help", "print help and exit");

  CommonArgs atpe_args;
  double h = 1e-3;
  auto* cmd_atpe = app.add_subcommand("recover-atpe", "one adaptive tangent-plane estimation run");
  add_common(cmd_atpe, atpe_args);
  cmd_atpe->add_option("--h", h, "divided-difference step size")->check(CLI::PositiveNumber);

  CommonArgs ogm_args;
  int m_samples = 64;
  std::string init_angle = "pi/3";
  std::string ogm_design = "full";
  auto* cmd_ogm = app.add_subcommand("recover-ogm", "one Grassmannian-optimization recovery run");
  add_common(cmd_ogm, ogm_args);
  cmd_ogm->add_option("--m-samples", m_samples, "profile sample count M");
  cmd_ogm->add_option("--init-angle", init_angle, "initialization rotation angle (e.g. pi/3)");
  cmd_ogm->add_option("--design", ogm_design, "measurement design (full | reduced)")
      ->check(CLI::IsMember({"full", "reduced"}));

  CommonArgs ret_args;
  std::string ret_design = "full";
  int probes = 0;
  auto* cmd_ret = app.add_subcommand("retrieval", "projection-retrieval round trip and injectivity probes");
  add_common(cmd_ret, ret_args, false);
  cmd_ret->add_option("--design", ret_design, "measurement design (full | reduced)")
      ->check(CLI::IsMember({"full", "reduced"}));
  cmd_ret->add_option("--probes", probes, "number of random injectivity pair probes to run");

  std::string config_path;
  std::string out_override;
  auto* cmd_exp = app.add_subcommand("experiment", "run an experiment config and write CSVs");
  cmd_exp->add_option("--config", config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_exp->add_option("--out", out_override, "override the config's out_dir");

  std::string plot_csv;
  std::string plot_out = ".";
  auto* cmd_plot = app.add_subcommand("plot", "render an aggregate CSV as SVG plots");
  cmd_plot->add_option("csv", plot_csv, "aggregate CSV path")->required();
  cmd_plot->add_option("--out", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help text or the usage diagnostic
    return code == 0 ? 0 : 2;
  }

  if (cmd_atpe->parsed()) {
    const CommonArgs& a = atpe_args;
    SleeveOracle o(random_subspace(a.n - a.d, a.n, RngStream::derive(a.seed, 0)), make_profile(a.profile));
    const RecoveryReport rep = atpe(o, a.d, h, RngStream::derive(a.seed, 1));
    std::printf("algorithm=atpe N=%d d=%d profile=%s h=%g\n", a.n, a.d, a.profile.c_str(), h);
    std::printf("hs_error=%.12g\nqueries=%ld\niterations=%d\nwall_ms=%ld\n", rep.hs_error, rep.queries,
                rep.iterations, rep.wall_ms);
    return 0;
  }
  if (cmd_ogm->parsed()) {
    const CommonArgs& a = ogm_args;
    const double angle = parse_angle(init_angle);
    const Subspace truth = random_subspace(a.d, a.n, RngStream::derive(a.seed, 0));
    SleeveOracle o(truth, make_profile(a.profile));
    const Subspace init = random_rotation_within(truth, angle, RngStream::derive(a.seed, 2));
    const double init_dist = subspace_distance(init, truth);
    const RecoveryReport rep =
        ogm_recover(o, a.d, m_samples, init, SolverParams{}, RngStream::derive(a.seed, 1),
                    ogm_design == "reduced" ? DesignKind::reduced : DesignKind::full);
    std::printf("algorithm=ogm N=%d d=%d profile=%s M=%d design=%s init_angle=%g\n", a.n, a.d,
                a.profile.c_str(), m_samples, ogm_design.c_str(), angle);
    std::printf("init_distance=%.12g\nhs_error=%.12g\nqueries=%ld\niterations=%d\nwall_ms=%ld\n", init_dist,
                rep.hs_error, rep.queries, rep.iterations, rep.wall_ms);
    return 0;
  }
  if (cmd_ret->parsed()) {
    const CommonArgs& a = ret_args;
    const ProjectionMatrix truth = projection_matrix(random_subspace(a.d, a.n, RngStream::derive(a.seed, 0)));
    const MeasurementDesign design = ret_design == "full"
                                         ? full_design(a.n)
                                         : reduced_design(a.n, a.d, RngStream::derive(a.seed, 1));
    const MeasurementVector m = measure(truth, design);
    const ProjectionMatrix rec = ret_design == "full" ? reconstruct_from_full(m, a.n)
                                                      : reconstruct_from_reduced(m, design, a.n, a.d);
    std::printf("design=%s points=%zu\nroundtrip_error=%.12g\n", ret_design.c_str(), design.size(),
                hs_distance(truth, rec));
    int collisions = 0;
    for (int i = 0; i < probes; ++i) {
      const ProjectionMatrix p = projection_matrix(random_subspace(a.d, a.n, RngStream::derive(a.seed, 2, i)));
      const ProjectionMatrix q = projection_matrix(random_subspace(a.d, a.n, RngStream::derive(a.seed, 3, i)));
      if (hs_distance(p, q) > 1e-6 && check_injectivity_pair(design, p, q)) ++collisions;
    }
    if (probes > 0) std::printf("injectivity_probes=%d collisions=%d\n", probes, collisions);
    return 0;
  }
  if (cmd_exp->parsed()) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;
    const ExperimentResult res = run_experiment(cfg);
    std::printf("wrote %s (%zu rows)\nwrote %s\n", res.trials_path.c_str(), res.rows.size(),
                res.aggregate_path.c_str());
    return 0;
  }
  if (cmd_plot->parsed()) {
    for (const auto& path : emit_plots(plot_csv, plot_out)) std::printf("wrote %s\n", path.c_str());
    return 0;
  }
  return 2;
}

}  // namespace

int run(int argc, const char* const* argv) {
  try {
    return run_impl(argc, argv);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace sleeve::cli
