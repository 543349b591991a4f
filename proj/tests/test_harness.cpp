#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sleeve/atpe.hpp"
#include "sleeve/cli.hpp"
#include "sleeve/errors.hpp"
#include "sleeve/harness.hpp"

using namespace sleeve;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("sleeve_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

// wall_ms is physical time, everything else must be reproducible
std::string mask_wall_ms(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const auto cut = line.rfind(',');
    out += line.substr(0, cut) + ",X\n";
  }
  return out;
}

int run_cli(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"sleeve"};
  argv.insert(argv.end(), args.begin(), args.end());
  return sleeve::cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse_angle") {
  CHECK(parse_angle("pi") == doctest::Approx(M_PI));
  CHECK(parse_angle("pi/3") == doctest::Approx(M_PI / 3));
  CHECK(parse_angle(" pi/4 ") == doctest::Approx(M_PI / 4));
  CHECK(parse_angle("0.5") == doctest::Approx(0.5));
  CHECK_THROWS_AS(parse_angle("tau"), std::invalid_argument);
}

TEST_CASE("parse_config_text: full round trip") {
  const std::string text = R"(# experiment definition
algorithm = atpe
n_list = 6, 8
d_list = 1
profiles = tanh, identity
h_grid = 1e-1, 1e-2
trials = 3
seed = 12
out_dir = /tmp/sleeve_cfg_test
)";
  const ExperimentConfig cfg = parse_config_text(text);
  CHECK(cfg.algorithm == Algorithm::atpe);
  CHECK(cfg.n_list == std::vector<int>{6, 8});
  CHECK(cfg.d_list == std::vector<int>{1});
  CHECK(cfg.profiles == std::vector<std::string>{"tanh", "identity"});
  CHECK(cfg.h_grid == std::vector<double>{1e-1, 1e-2});
  CHECK(cfg.trials == 3);
  CHECK(cfg.seed == 12);
}

TEST_CASE("parse_config_text: diagnostics carry line numbers") {
  CHECK_THROWS_AS(parse_config_text("algorithm = atpe\nbogus_key = 3\n"), ParseError);
  try {
    parse_config_text("algorithm = atpe\nbogus_key = 3\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_text("n_list = 4\n"), ParseError);   // missing algorithm
  CHECK_THROWS_AS(parse_config_text("algorithm = atpe\nn_list = 4\nd_list = 1\nprofiles = tanh\n"),
                  ParseError);  // atpe without h_grid
  CHECK_THROWS_AS(
      parse_config_text("algorithm = retrieval\nn_list = 4\nd_list = 1\nprofiles = tanh\n"),
      ParseError);  // retrieval profile must be a design kind
  CHECK_THROWS_AS(parse_config_file("/nonexistent/sleeve.cfg"), ParseError);
}

TEST_CASE("run_experiment: atpe grid, budgets, determinism, aggregates") {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::atpe;
  cfg.n_list = {6};
  cfg.d_list = {1};
  cfg.profiles = {"tanh"};
  cfg.h_grid = {1e-1, 1e-2};
  cfg.trials = 4;
  cfg.seed = 77;
  cfg.out_dir = temp_dir("atpe").string();

  const ExperimentResult a = run_experiment(cfg);
  REQUIRE(a.rows.size() == 8);
  for (const auto& r : a.rows) {
    CHECK(r.queries == atpe_query_budget(6, 1));
    CHECK(r.iterations == 0);
    CHECK(r.hs_error >= 0.0);
  }
  CHECK(std::filesystem::exists(a.trials_path));
  CHECK(std::filesystem::exists(a.aggregate_path));

  const ExperimentResult b = run_experiment(cfg);
  CHECK(mask_wall_ms(a.trials_csv) == mask_wall_ms(b.trials_csv));
  CHECK(a.aggregate_csv == b.aggregate_csv);

  // independent aggregation pass over the trial rows
  std::istringstream agg(a.aggregate_csv);
  std::string line;
  std::getline(agg, line);
  CHECK(line == kAggregateCsvHeader);
  int cells = 0;
  while (std::getline(agg, line)) {
    std::stringstream ss(line);
    std::string f;
    std::vector<std::string> fields;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    REQUIRE(fields.size() == 8);
    const double param = std::stod(fields[4]);
    std::vector<double> errs;
    for (const auto& r : a.rows)
      if (r.param == param) errs.push_back(r.hs_error);
    REQUIRE(errs.size() == 4);
    double mean = 0;
    for (double e : errs) mean += e;
    mean /= errs.size();
    std::sort(errs.begin(), errs.end());
    const double q95 = errs[static_cast<std::size_t>(std::ceil(0.95 * errs.size())) - 1];
    CHECK(std::stod(fields[6]) == doctest::Approx(mean).epsilon(1e-9));
    CHECK(std::stod(fields[7]) == doctest::Approx(q95).epsilon(1e-9));
    ++cells;
  }
  CHECK(cells == 2);

  // schema: header must be bit-exact
  std::istringstream trials(a.trials_csv);
  std::getline(trials, line);
  CHECK(line == kTrialCsvHeader);
}

TEST_CASE("run_experiment: ogm and retrieval rows") {
  ExperimentConfig cfg;
  cfg.algorithm = Algorithm::ogm;
  cfg.n_list = {8};
  cfg.d_list = {1};
  cfg.profiles = {"tanh"};
  cfg.m_grid = {16};
  cfg.trials = 2;
  cfg.seed = 5;
  cfg.init_angle = parse_angle("pi/3");
  cfg.out_dir = temp_dir("ogm").string();
  const ExperimentResult r = run_experiment(cfg);
  REQUIRE(r.rows.size() == 2);
  for (const auto& row : r.rows) {
    CHECK(row.queries == (8 + 1) + (16 + 1) + 36);  // full design of 8 has 36 points
    CHECK(row.iterations >= 1);
  }

  ExperimentConfig rcfg;
  rcfg.algorithm = Algorithm::retrieval;
  rcfg.n_list = {8};
  rcfg.d_list = {2};
  rcfg.profiles = {"full", "reduced"};
  rcfg.trials = 3;
  rcfg.seed = 6;
  rcfg.out_dir = temp_dir("retr").string();
  const ExperimentResult rr = run_experiment(rcfg);
  REQUIRE(rr.rows.size() == 6);
  for (const auto& row : rr.rows) {
    CHECK(row.hs_error < 1e-8);
    CHECK(row.param == static_cast<double>(row.queries));
  }

  ExperimentConfig bad = rcfg;
  bad.d_list = {9};
  CHECK_THROWS_AS(run_experiment(bad), std::invalid_argument);
}

TEST_CASE("emit_plots: legends, file outputs, malformed input") {
  const auto dir = temp_dir("plots");
  const std::string csv_path = (dir / "aggregate.csv").string();
  {
    std::ofstream out(csv_path);
    out << kAggregateCsvHeader << "\n";
    out << "atpe,10,1,tanh,0.1,4,0.01,0.02\n";
    out << "atpe,10,1,tanh,0.01,4,0.001,0.002\n";
    out << "atpe,10,8,tanh,0.1,4,0.03,0.04\n";
    out << "atpe,10,8,tanh,0.01,4,0.004,0.005\n";
  }
  const auto files = emit_plots(csv_path, (dir / "plots").string());
  REQUIRE(files.size() == 2);  // mean + q95 for one algorithm
  for (const auto& f : files) {
    std::ifstream in(f);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string svg = ss.str();
    CHECK(svg.find("<svg") != std::string::npos);
    // one legend entry per (N, d, profile) cell
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("N=10 d=", pos)) != std::string::npos) {
      ++count;
      ++pos;
    }
    CHECK(count == 2);
  }

  const std::string empty_path = (dir / "empty.csv").string();
  std::ofstream(empty_path) << "";
  CHECK_THROWS_AS(emit_plots(empty_path, dir.string()), ParseError);

  const std::string headeronly_path = (dir / "headeronly.csv").string();
  std::ofstream(headeronly_path) << kAggregateCsvHeader << "\n";
  CHECK_THROWS_AS(emit_plots(headeronly_path, dir.string()), ParseError);

  const std::string bad_path = (dir / "bad.csv").string();
  std::ofstream(bad_path) << kAggregateCsvHeader << "\natpe,10,1,tanh,xyz\n";
  try {
    emit_plots(bad_path, dir.string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("cli_entry: exit codes") {
  CHECK(run_cli({"--help"}) == 0);
  CHECK(run_cli({"bogus-cmd"}) == 2);
  CHECK(run_cli({"recover-atpe", "--n", "6", "--d", "1", "--unknown-flag", "3"}) == 2);
  CHECK(run_cli({"experiment", "--config", "/definitely/missing.cfg"}) == 2);
  CHECK(run_cli({"recover-atpe", "--n", "6", "--d", "1", "--profile", "tanh", "--h", "1e-2",
                 "--seed", "7"}) == 0);
  CHECK(run_cli({"retrieval", "--n", "6", "--d", "2", "--design", "full", "--seed", "1"}) == 0);

  const auto dir = temp_dir("cli");
  const std::string cfg_path = (dir / "exp.cfg").string();
  const std::string out_dir = (dir / "out").string();
  const std::string agg_path = (dir / "out" / "aggregate.csv").string();
  std::ofstream(cfg_path) << "algorithm = retrieval\nn_list = 6\nd_list = 1\nprofiles = full\n"
                          << "trials = 2\nseed = 3\nout_dir = " << out_dir << "\n";
  CHECK(run_cli({"experiment", "--config", cfg_path.c_str()}) == 0);
  CHECK(std::filesystem::exists(dir / "out" / "trials.csv"));
  CHECK(run_cli({"plot", agg_path.c_str(), "--out", out_dir.c_str()}) == 0);
}
