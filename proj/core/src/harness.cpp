#include "sleeve/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sleeve/atpe.hpp"
#include "sleeve/errors.hpp"
#include "sleeve/rng.hpp"

namespace sleeve {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

struct Cell {
  int n, d;
  std::string profile;
  double param;
};

TrialRow run_trial(const ExperimentConfig& cfg, const Cell& cell, int cell_index, int trial) {
  const std::uint64_t base = RngStream::derive(cfg.seed, static_cast<std::uint64_t>(cell_index),
                                               static_cast<std::uint64_t>(trial));
  const std::uint64_t s_oracle = RngStream::derive(base, 0);
  const std::uint64_t s_alg = RngStream::derive(base, 1);
  const std::uint64_t s_init = RngStream::derive(base, 2);
  const std::uint64_t s_design = RngStream::derive(base, 3);

  TrialRow row{to_string(cfg.algorithm), cell.n, cell.d, cell.profile, cell.param, trial, 0, 0, 0, 0};
  switch (cfg.algorithm) {
    case Algorithm::atpe: {
      SleeveOracle o(random_subspace(cell.n - cell.d, cell.n, s_oracle), make_profile(cell.profile));
      const RecoveryReport rep = atpe(o, cell.d, cell.param, s_alg);
      row.hs_error = rep.hs_error;
      row.queries = rep.queries;
      row.iterations = rep.iterations;
      row.wall_ms = rep.wall_ms;
      break;
    }
    case Algorithm::ogm: {
      const Subspace truth = random_subspace(cell.d, cell.n, s_oracle);
      SleeveOracle o(truth, make_profile(cell.profile));
      const Subspace init = random_rotation_within(truth, cfg.init_angle, s_init);
      const RecoveryReport rep =
          ogm_recover(o, cell.d, static_cast<int>(cell.param), init, SolverParams{}, s_alg);
      row.hs_error = rep.hs_error;
      row.queries = rep.queries;
      row.iterations = rep.iterations;
      row.wall_ms = rep.wall_ms;
      break;
    }
    case Algorithm::retrieval: {
      const ProjectionMatrix truth = projection_matrix(random_subspace(cell.d, cell.n, s_oracle));
      const MeasurementDesign design = cell.profile == "full"
                                           ? full_design(cell.n)
                                           : reduced_design(cell.n, cell.d, s_design);
      const auto start = std::chrono::steady_clock::now();
      const MeasurementVector m = measure(truth, design);
      const ProjectionMatrix rec = cell.profile == "full"
                                       ? reconstruct_from_full(m, cell.n)
                                       : reconstruct_from_reduced(m, design, cell.n, cell.d);
      row.hs_error = hs_distance(truth, rec);
      row.queries = static_cast<long>(design.size());
      row.param = static_cast<double>(design.size());
      row.wall_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - start)
                                          .count());
      break;
    }
  }
  return row;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::atpe: return "atpe";
    case Algorithm::ogm: return "ogm";
    case Algorithm::retrieval: return "retrieval";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "atpe") return Algorithm::atpe;
  if (s == "ogm") return Algorithm::ogm;
  if (s == "retrieval") return Algorithm::retrieval;
  throw std::invalid_argument("unknown algorithm '" + s + "' (atpe | ogm | retrieval)");
}

double parse_angle(const std::string& text) {
  const std::string t = trim(text);
  if (t == "pi") return M_PI;
  if (t.rfind("pi/", 0) == 0) {
    const double den = std::stod(t.substr(3));
    if (den == 0.0) throw std::invalid_argument("parse_angle: division by zero");
    return M_PI / den;
  }
  std::size_t pos = 0;
  const double v = std::stod(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("parse_angle: cannot parse '" + text + "'");
  return v;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  bool have_algorithm = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  try {
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ParseError("config line " + std::to_string(lineno) + ": expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "algorithm") {
        cfg.algorithm = algorithm_from_string(value);
        have_algorithm = true;
      } else if (key == "n_list") {
        cfg.n_list.clear();
        for (const auto& v : split(value, ',')) cfg.n_list.push_back(std::stoi(v));
      } else if (key == "d_list") {
        cfg.d_list.clear();
        for (const auto& v : split(value, ',')) cfg.d_list.push_back(std::stoi(v));
      } else if (key == "profiles") {
        cfg.profiles = split(value, ',');
      } else if (key == "h_grid") {
        cfg.h_grid.clear();
        for (const auto& v : split(value, ',')) cfg.h_grid.push_back(std::stod(v));
      } else if (key == "m_grid") {
        cfg.m_grid.clear();
        for (const auto& v : split(value, ',')) cfg.m_grid.push_back(std::stoi(v));
      } else if (key == "trials") {
        cfg.trials = std::stoi(value);
      } else if (key == "init_angle") {
        cfg.init_angle = parse_angle(value);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else {
        throw ParseError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError("config line " + std::to_string(lineno) + ": " + e.what());
  }

  if (!have_algorithm) throw ParseError("config: missing 'algorithm'");
  if (cfg.n_list.empty()) throw ParseError("config: n_list must be non-empty");
  if (cfg.d_list.empty()) throw ParseError("config: d_list must be non-empty");
  if (cfg.profiles.empty()) throw ParseError("config: profiles must be non-empty");
  if (cfg.trials < 1) throw ParseError("config: trials must be >= 1");
  if (cfg.algorithm == Algorithm::atpe && cfg.h_grid.empty())
    throw ParseError("config: atpe needs a non-empty h_grid");
  if (cfg.algorithm == Algorithm::ogm && cfg.m_grid.empty())
    throw ParseError("config: ogm needs a non-empty m_grid");
  for (const auto& p : cfg.profiles) {
    if (cfg.algorithm == Algorithm::retrieval) {
      if (p != "full" && p != "reduced")
        throw ParseError("config: retrieval profiles must be 'full' or 'reduced'");
    } else {
      make_profile(p);  // throws on unknown names
    }
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min<int>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::string trials_to_csv(const std::vector<TrialRow>& rows) {
  std::string out = kTrialCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.algorithm + ',' + std::to_string(r.n) + ',' + std::to_string(r.d) + ',' + r.profile + ',' +
           fmt_double(r.param) + ',' + std::to_string(r.trial) + ',' + fmt_double(r.hs_error) + ',' +
           std::to_string(r.queries) + ',' + std::to_string(r.iterations) + ',' +
           std::to_string(r.wall_ms) + '\n';
  }
  return out;
}

std::string aggregate_to_csv(const std::vector<TrialRow>& rows) {
  struct Agg {
    TrialRow key;
    std::vector<double> errors;
  };
  std::vector<Agg> cells;
  for (const auto& r : rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const Agg& a) {
      return a.key.algorithm == r.algorithm && a.key.n == r.n && a.key.d == r.d &&
             a.key.profile == r.profile && a.key.param == r.param;
    });
    if (it == cells.end()) {
      cells.push_back(Agg{r, {}});
      it = cells.end() - 1;
    }
    it->errors.push_back(r.hs_error);
  }
  std::string out = kAggregateCsvHeader;
  out += '\n';
  for (auto& c : cells) {
    std::vector<double> sorted = c.errors;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double mean = 0;
    for (double e : sorted) mean += e;
    mean /= static_cast<double>(n);
    // nearest-rank 95th percentile
    const std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
    const double q95 = sorted[std::max<std::size_t>(rank, 1) - 1];
    out += c.key.algorithm + ',' + std::to_string(c.key.n) + ',' + std::to_string(c.key.d) + ',' +
           c.key.profile + ',' + fmt_double(c.key.param) + ',' + std::to_string(n) + ',' +
           fmt_double(mean) + ',' + fmt_double(q95) + '\n';
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  std::vector<Cell> cells;
  for (int n : cfg.n_list)
    for (int d : cfg.d_list)
      for (const auto& prof : cfg.profiles) {
        if (d < 1 || d >= n)
          throw std::invalid_argument("run_experiment: need 1 <= d < N, got d=" + std::to_string(d) +
                                      ", N=" + std::to_string(n));
        switch (cfg.algorithm) {
          case Algorithm::atpe:
            for (double h : cfg.h_grid) cells.push_back(Cell{n, d, prof, h});
            break;
          case Algorithm::ogm:
            for (int m : cfg.m_grid) cells.push_back(Cell{n, d, prof, static_cast<double>(m)});
            break;
          case Algorithm::retrieval:
            cells.push_back(Cell{n, d, prof, 0.0});
            break;
        }
      }

  ExperimentResult result;
  result.rows.resize(cells.size() * static_cast<std::size_t>(cfg.trials));
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    parallel_for(cfg.trials, [&](int t) {
      result.rows[ci * cfg.trials + t] = run_trial(cfg, cells[ci], static_cast<int>(ci), t);
    });
  }

  result.trials_csv = trials_to_csv(result.rows);
  result.aggregate_csv = aggregate_to_csv(result.rows);

  std::filesystem::create_directories(cfg.out_dir);
  result.trials_path = (std::filesystem::path(cfg.out_dir) / "trials.csv").string();
  result.aggregate_path = (std::filesystem::path(cfg.out_dir) / "aggregate.csv").string();
  std::ofstream(result.trials_path) << result.trials_csv;
  std::ofstream(result.aggregate_path) << result.aggregate_csv;
  return result;
}

}  // namespace sleeve
