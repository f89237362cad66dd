// Command-line interface for the liegp library.
//
// Subcommands:
//   reps      list the spectral levels of a space
//   kernel    evaluate a kernel Gram matrix on points
//   sample    draw random-feature prior samples
//   regress   exact GP posterior (optionally with hyperparameter search)
//   converge  truncation / feature-count convergence diagnostics
//
// Exit codes: 0 success, 2 invalid configuration or arguments,
//             3 numerical failure, 4 file I/O failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liegp/errors.hpp"
#include "liegp/gp.hpp"
#include "liegp/kernels.hpp"
#include "liegp/sampling.hpp"

namespace {

using nlohmann::json;
using liegp::InvalidConfig;
using liegp::IoError;
using liegp::Rng;
namespace gp = liegp::gp;
namespace groups = liegp::groups;
namespace kernels = liegp::kernels;
namespace repr = liegp::repr;
namespace sampling = liegp::sampling;
namespace spaces = liegp::spaces;

struct Options {
  std::string config_path;
  std::string space = "S2";
  std::string kernel_kind = "heat";
  double nu = 1.5;
  double kappa = 1.0;
  double sigma2 = 1.0;
  int budget = 32;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int features = 256;
  std::string out;
  std::string format = "csv";
  std::string scale = "unit";

  std::string points_path;
  int random_points = 0;
  int draws = 1;
  std::string data_path;
  std::string query_path;
  double noise = 0.0;
  bool fit = false;
  bool fit_nu = false;
  int restarts = 5;
  int subgroup_samples = 4096;
  int repeats = 16;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration resolution

spaces::SpaceId parse_space(const std::string& s) {
  static const std::regex sphere_re(R"(^S(\d{1,2})$)");
  static const std::regex proj_re(R"(^RP(\d{1,2})$)");
  static const std::regex su_re(R"(^SU\((\d{1,2})\)$)");
  static const std::regex so_re(R"(^SO\((\d{1,2})\)$)");
  static const std::regex quot_re(R"(^SO\((\d{1,2})\)/SO\((\d{1,2})\)$)");
  std::smatch m;
  if (std::regex_match(s, m, quot_re)) {
    const int n = std::stoi(m[1]);
    const int h = std::stoi(m[2]);
    if (h != n - 1) {
      throw InvalidConfig("only SO(n)/SO(n-1) coset spaces are supported, got " + s);
    }
    return spaces::make_so_quotient(n);
  }
  if (std::regex_match(s, m, sphere_re)) return spaces::make_sphere(std::stoi(m[1]));
  if (std::regex_match(s, m, proj_re)) return spaces::make_projective(std::stoi(m[1]));
  if (std::regex_match(s, m, su_re)) return spaces::make_group_space(repr::su(std::stoi(m[1])));
  if (std::regex_match(s, m, so_re)) return spaces::make_group_space(repr::so(std::stoi(m[1])));
  throw InvalidConfig("unrecognized space '" + s +
                      "' (expected forms: S2, RP3, SU(2), SO(3), SO(3)/SO(2))");
}

kernels::SpectralDensity make_density(const Options& o) {
  kernels::SpectralDensity d;
  if (o.kernel_kind == "heat") {
    d.kind = kernels::DensityKind::Heat;
  } else if (o.kernel_kind == "matern") {
    d.kind = kernels::DensityKind::Matern;
  } else {
    throw InvalidConfig("kernel must be 'heat' or 'matern', got '" + o.kernel_kind + "'");
  }
  d.kappa = o.kappa;
  d.nu = o.nu;
  d.sigma2 = o.sigma2;
  return d;
}

spaces::EigenvalueScale parse_scale(const Options& o) {
  if (o.scale == "unit") return spaces::EigenvalueScale::UnitSphere;
  if (o.scale == "killing") return spaces::EigenvalueScale::Killing;
  throw InvalidConfig("scale must be 'unit' or 'killing', got '" + o.scale + "'");
}

void apply_config_file(Options& o, const CLI::App* sub) {
  if (o.config_path.empty()) return;
  std::ifstream f(o.config_path);
  if (!f) throw IoError("cannot open config file: " + o.config_path);
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config file must hold a JSON object");
  static const std::set<std::string> known = {"space", "kernel", "nu",   "kappa",
                                              "sigma2", "budget", "seed"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw InvalidConfig("unknown config key '" + item.key() + "'");
    }
  }
  try {
    const auto flag_absent = [&](const char* flag) { return sub->count(flag) == 0; };
    if (j.contains("space") && flag_absent("--space")) o.space = j.at("space").get<std::string>();
    if (j.contains("kernel") && flag_absent("--kernel")) {
      o.kernel_kind = j.at("kernel").get<std::string>();
    }
    if (j.contains("nu") && flag_absent("--nu")) o.nu = j.at("nu").get<double>();
    if (j.contains("kappa") && flag_absent("--kappa")) o.kappa = j.at("kappa").get<double>();
    if (j.contains("sigma2") && flag_absent("--sigma2")) o.sigma2 = j.at("sigma2").get<double>();
    if (j.contains("budget") && flag_absent("--budget")) o.budget = j.at("budget").get<int>();
    if (j.contains("seed") && flag_absent("--seed")) {
      o.seed = j.at("seed").get<std::uint64_t>();
      o.seed_set = true;
    }
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("config value has the wrong type: ") + e.what());
  }
}

void require_seed(const Options& o, const std::string& why) {
  if (!o.seed_set) throw InvalidConfig("--seed is required: " + why);
}

// ---------------------------------------------------------------------------
// Point file I/O
//
// Text files, one point per row, whitespace-separated numbers; blank lines
// and lines starting with '#' are skipped.  Row widths:
//   S^n / RP^n:   n+1 coordinates
//   SO(n):        n^2 real entries, row-major
//   SU(n):        2 n^2 numbers, row-major with re,im interleaved

int point_width(const spaces::SpaceId& s) {
  switch (s.kind) {
    case spaces::SpaceKind::Sphere:
    case spaces::SpaceKind::Projective:
      return s.sphere_dim + 1;
    case spaces::SpaceKind::Group:
    case spaces::SpaceKind::Quotient:
      break;
  }
  const repr::GroupId g = s.group;
  return g.family == repr::GroupFamily::SU ? 2 * g.n * g.n : g.n * g.n;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream iss(line);
    std::vector<double> row;
    std::string token;
    while (iss >> token) {
      try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        row.push_back(v);
      } catch (const std::exception&) {
        throw IoError(path + ":" + std::to_string(lineno) + ": malformed number '" + token +
                      "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

spaces::SpacePoint point_from_row(const spaces::SpaceId& space, const std::vector<double>& row) {
  if (space.kind == spaces::SpaceKind::Sphere || space.kind == spaces::SpaceKind::Projective) {
    Eigen::VectorXd v(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) v[static_cast<Eigen::Index>(i)] = row[i];
    const double norm = v.norm();
    if (norm < 1e-12) throw InvalidConfig("point rows must be nonzero vectors");
    v /= norm;
    if (space.kind == spaces::SpaceKind::Projective) v = spaces::canonicalize_projective(v);
    return spaces::make_point(std::move(v));
  }
  const repr::GroupId g = space.group;
  const int n = g.n;
  Eigen::MatrixXcd m(n, n);
  if (g.family == repr::GroupFamily::SU) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const std::size_t base = 2 * static_cast<std::size_t>(i * n + j);
        m(i, j) = std::complex<double>(row[base], row[base + 1]);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        m(i, j) = row[static_cast<std::size_t>(i * n + j)];
      }
    }
  }
  groups::GroupElement e{g, std::move(m)};
  groups::validate_element(e, 1e-6);
  return spaces::make_point(std::move(e));
}

std::vector<std::string> row_from_point(const spaces::SpaceId& space,
                                        const spaces::SpacePoint& p) {
  std::vector<std::string> row;
  if (p.is_vector()) {
    for (Eigen::Index i = 0; i < p.vec().size(); ++i) row.push_back(fmt(p.vec()[i]));
    return row;
  }
  const int n = space.group.n;
  const bool complex_entries = space.group.family == repr::GroupFamily::SU;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::complex<double> v = p.elem().m(i, j);
      row.push_back(fmt(v.real()));
      if (complex_entries) row.push_back(fmt(v.imag()));
    }
  }
  return row;
}

std::vector<spaces::SpacePoint> points_from_file(const std::string& path,
                                                 const spaces::SpaceId& space) {
  const auto rows = read_rows(path);
  if (rows.empty()) throw IoError(path + ": no points found");
  const int width = point_width(space);
  std::vector<spaces::SpacePoint> points;
  points.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != width) {
      throw IoError(path + ": point row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " values, expected " +
                    std::to_string(width) + " for " + spaces::space_name(space));
    }
    points.push_back(point_from_row(space, rows[i]));
  }
  return points;
}

// Points from --points FILE, or --random N sampled with the command seed.
std::vector<spaces::SpacePoint> resolve_points(const Options& o, const spaces::SpaceId& space,
                                               const std::string& path, int random_count,
                                               Rng rng, bool* randomly_generated = nullptr) {
  if (randomly_generated) *randomly_generated = false;
  if (!path.empty() && random_count > 0) {
    throw InvalidConfig("give either a points file or --random, not both");
  }
  if (!path.empty()) return points_from_file(path, space);
  if (random_count <= 0) {
    throw InvalidConfig("this command needs evaluation points: pass --points FILE or --random N");
  }
  require_seed(o, "random evaluation points are drawn from it");
  if (randomly_generated) *randomly_generated = true;
  return spaces::haar_sample_space(space, random_count, rng);
}

// ---------------------------------------------------------------------------
// Output

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json json_rows = json::array();  // parallel representation for --format json
};

Table table_from_matrix(const std::string& prefix, const Eigen::MatrixXd& m) {
  Table t;
  for (Eigen::Index j = 0; j < m.cols(); ++j) t.header.push_back(prefix + std::to_string(j));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row;
    json jrow = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(fmt(m(i, j)));
      jrow.push_back(m(i, j));
    }
    t.rows.push_back(std::move(row));
    t.json_rows.push_back(std::move(jrow));
  }
  return t;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file: " + path);
  f << text;
  if (!f) throw IoError("failed while writing: " + path);
}

json resolved_config(const Options& o, const std::string& command) {
  json j{{"command", command},   {"space", o.space},   {"kernel", o.kernel_kind},
         {"kappa", o.kappa},     {"sigma2", o.sigma2}, {"budget", o.budget},
         {"format", o.format}};
  if (o.kernel_kind == "matern") j["nu"] = o.nu;
  if (o.seed_set) j["seed"] = o.seed;
  return j;
}

void emit(const Options& o, const json& resolved, const json& meta, const Table& t) {
  std::string text;
  if (o.format == "csv") {
    std::ostringstream ss;
    ss << join(t.header, ',') << '\n';
    for (const auto& row : t.rows) ss << join(row, ',') << '\n';
    text = ss.str();
  } else {
    const json doc{
        {"config", resolved}, {"meta", meta}, {"columns", t.header}, {"data", t.json_rows}};
    text = doc.dump(2) + "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  write_file(o.out, text);
  const json echo{{"config", resolved}, {"meta", meta}};
  write_file(o.out + ".resolved.json", echo.dump(2) + "\n");
}

void emit_points_echo(const Options& o, const spaces::SpaceId& space,
                      const std::vector<spaces::SpacePoint>& pts, const std::string& suffix) {
  if (o.out.empty()) return;
  std::ostringstream ss;
  ss << "# " << spaces::space_name(space) << " points, one per row\n";
  for (const auto& p : pts) ss << join(row_from_point(space, p), ' ') << '\n';
  write_file(o.out + suffix, ss.str());
}

json kernel_meta(const kernels::SpectralKernel& k, int requested_budget) {
  const bool zonal = k.space.kind == spaces::SpaceKind::Sphere ||
                     k.space.kind == spaces::SpaceKind::Projective;
  const std::string scale =
      (!zonal || k.scale == spaces::EigenvalueScale::Killing) ? "killing" : "unit_sphere";
  return json{{"space", spaces::space_name(k.space)},
              {"budget", requested_budget},
              {"effective_budget", k.effective_budget},
              {"normalizer", k.normalizer},
              {"truncation_residual", k.truncation_residual},
              {"eigenvalue_scale", scale}};
}

// ---------------------------------------------------------------------------
// Commands

void run_reps(const Options& o) {
  const spaces::SpaceId space = parse_space(o.space);
  Table t;
  json meta{{"space", spaces::space_name(space)}, {"budget", o.budget}};
  if (space.kind == spaces::SpaceKind::Group) {
    const auto ladder = repr::enumerate_representations(space.group, o.budget);
    t.header = {"signature", "dimension", "eigenvalue"};
    for (const auto& rep : ladder) {
      std::vector<std::string> sig_parts;
      for (int p : rep.signature) sig_parts.push_back(std::to_string(p));
      t.rows.push_back({join(sig_parts, ' '), std::to_string(rep.dimension),
                        fmt(rep.eigenvalue)});
      t.json_rows.push_back(json{{"signature", rep.signature},
                                 {"dimension", rep.dimension},
                                 {"eigenvalue", rep.eigenvalue}});
    }
    meta["count"] = ladder.size();
  } else if (space.kind == spaces::SpaceKind::Quotient) {
    require_seed(o, "invariant ranks are estimated by Monte Carlo subgroup averaging");
    Rng rng(o.seed);
    const auto ladder = repr::enumerate_representations(space.group, o.budget);
    std::vector<repr::Signature> sigs;
    for (const auto& rep : ladder) sigs.push_back(rep.signature);
    const auto averages = spaces::average_subgroup_characters(space.group, sigs, *space.quotient,
                                                              o.subgroup_samples, rng);
    t.header = {"signature", "dimension", "eigenvalue", "invariant_rank"};
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const long long rank = std::llround(averages[i]);
      std::vector<std::string> sig_parts;
      for (int p : ladder[i].signature) sig_parts.push_back(std::to_string(p));
      t.rows.push_back({join(sig_parts, ' '), std::to_string(ladder[i].dimension),
                        fmt(ladder[i].eigenvalue), std::to_string(rank)});
      t.json_rows.push_back(json{{"signature", ladder[i].signature},
                                 {"dimension", ladder[i].dimension},
                                 {"eigenvalue", ladder[i].eigenvalue},
                                 {"invariant_rank", rank}});
    }
    meta["count"] = ladder.size();
    meta["subgroup_samples"] = o.subgroup_samples;
  } else {
    const auto ladder = spaces::zonal_levels(space, o.budget, parse_scale(o));
    t.header = {"level", "multiplicity", "eigenvalue"};
    for (const auto& lv : ladder) {
      t.rows.push_back(
          {std::to_string(lv.level), std::to_string(lv.multiplicity), fmt(lv.eigenvalue)});
      t.json_rows.push_back(json{{"level", lv.level},
                                 {"multiplicity", lv.multiplicity},
                                 {"eigenvalue", lv.eigenvalue}});
    }
    meta["count"] = ladder.size();
    meta["eigenvalue_scale"] = o.scale == "killing" ? "killing" : "unit_sphere";
  }
  emit(o, resolved_config(o, "reps"), meta, t);
}

void run_kernel(const Options& o) {
  const spaces::SpaceId space = parse_space(o.space);
  const kernels::SpectralDensity density = make_density(o);
  Rng rng(o.seed_set ? o.seed : 0);
  bool random_points = false;
  const auto points =
      resolve_points(o, space, o.points_path, o.random_points, rng.fork(1), &random_points);

  kernels::SpectralKernel k;
  Eigen::MatrixXd gram;
  json meta;
  if (space.kind == spaces::SpaceKind::Quotient) {
    require_seed(o, "coset-space kernels are built by Monte Carlo subgroup averaging");
    Rng build_rng = rng.fork(2);
    k = kernels::build_quotient_kernel(space, density, o.budget, o.subgroup_samples, build_rng);
    const auto evaluator = kernels::group_kernel_evaluator(k);
    Rng sum_rng = rng.fork(3);
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    gram.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i; j < n; ++j) {
        const auto res = spaces::periodic_summation(
            evaluator, *space.quotient, points[static_cast<std::size_t>(i)].elem(),
            points[static_cast<std::size_t>(j)].elem(), o.subgroup_samples, sum_rng);
        gram(i, j) = res.value;
        gram(j, i) = res.value;
      }
    }
    meta = kernel_meta(k, o.budget);
    meta["subgroup_samples"] = o.subgroup_samples;
  } else {
    k = kernels::build_kernel(space, density, o.budget, parse_scale(o));
    gram = kernels::kernel_matrix(k, points);
    meta = kernel_meta(k, o.budget);
  }
  meta["num_points"] = points.size();

  const Table t = table_from_matrix("k", gram);
  emit(o, resolved_config(o, "kernel"), meta, t);
  if (random_points) emit_points_echo(o, space, points, ".points.csv");
}

void run_sample(const Options& o) {
  require_seed(o, "prior samples are stochastic");
  const spaces::SpaceId space = parse_space(o.space);
  const kernels::SpectralDensity density = make_density(o);
  Rng rng(o.seed);
  bool random_points = false;
  const auto points =
      resolve_points(o, space, o.points_path, o.random_points, rng.fork(1), &random_points);

  const kernels::SpectralKernel k =
      kernels::build_kernel(space, density, o.budget, parse_scale(o));
  Rng basis_rng = rng.fork(2);
  auto basis = std::make_shared<sampling::FeatureBasis>(
      sampling::build_feature_basis(k, o.features, basis_rng));
  if (o.draws < 1) throw InvalidConfig("--draws must be at least 1");

  Rng draw_rng = rng.fork(3);
  Eigen::MatrixXd values(o.draws, static_cast<Eigen::Index>(points.size()));
  for (int d = 0; d < o.draws; ++d) {
    const auto f = sampling::draw_prior_sample(basis, draw_rng);
    values.row(d) = f.at(points).transpose();
  }

  json meta = kernel_meta(k, o.budget);
  meta["num_points"] = points.size();
  meta["features"] = o.features;
  meta["draws"] = o.draws;

  const Table t = table_from_matrix("f", values);
  emit(o, resolved_config(o, "sample"), meta, t);
  if (random_points) emit_points_echo(o, space, points, ".points.csv");
}

void run_regress(const Options& o) {
  require_seed(o, "posterior queries and restarts derive their randomness from it");
  const spaces::SpaceId space = parse_space(o.space);
  kernels::SpectralDensity density = make_density(o);
  if (o.data_path.empty()) throw InvalidConfig("regress needs --data FILE (coordinates + target per row)");
  if (o.noise < 0.0) throw InvalidConfig("--noise must be non-negative");

  const auto rows = read_rows(o.data_path);
  if (rows.empty()) throw IoError(o.data_path + ": no observations found");
  const int width = point_width(space);
  gp::Dataset data;
  data.targets.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != width + 1) {
      throw IoError(o.data_path + ": observation row " + std::to_string(i + 1) + " has " +
                    std::to_string(rows[i].size()) + " values, expected " +
                    std::to_string(width + 1) + " (point coordinates then target)");
    }
    std::vector<double> coords(rows[i].begin(), rows[i].end() - 1);
    data.inputs.push_back(point_from_row(space, coords));
    data.targets[static_cast<Eigen::Index>(i)] = rows[i].back();
  }
  data.noise_variance = o.noise;

  Rng rng(o.seed);
  bool random_query = false;
  const auto query =
      resolve_points(o, space, o.query_path, o.random_points, rng.fork(1), &random_query);

  double noise = o.noise;
  json meta;
  if (o.fit) {
    gp::FitOptions fopt;
    fopt.fit_nu = o.fit_nu && density.kind == kernels::DensityKind::Matern;
    fopt.restarts = o.restarts;
    fopt.seed = o.seed;
    const gp::FitResult fit =
        gp::fit_hyperparameters(space, density, o.noise, data, o.budget, fopt);
    density = fit.density;
    noise = fit.noise_variance;
    meta["fit"] = json{{"improved", fit.improved},
                       {"initial_lml", fit.initial_lml},
                       {"best_lml", fit.best_lml},
                       {"kappa", density.kappa},
                       {"sigma2", density.sigma2},
                       {"nu", density.nu},
                       {"noise_variance", noise},
                       {"restarts", o.restarts}};
  }

  const kernels::SpectralKernel k =
      kernels::build_kernel(space, density, o.budget, parse_scale(o));
  data.noise_variance = noise;
  const gp::PosteriorResult post = gp::posterior_mean_cov(k, data, query);
  const double lml = gp::log_marginal_likelihood(k, data);

  meta.update(kernel_meta(k, o.budget));
  meta["num_train"] = data.size();
  meta["num_query"] = query.size();
  meta["log_marginal_likelihood"] = lml;
  meta["noise_variance"] = noise;
  meta["jitter_used"] = post.jitter_used;

  Table t;
  t.header = {"mean", "variance"};
  for (Eigen::Index i = 0; i < post.mean.size(); ++i) {
    t.rows.push_back({fmt(post.mean[i]), fmt(post.cov(i, i))});
    t.json_rows.push_back(json::array({post.mean[i], post.cov(i, i)}));
  }
  emit(o, resolved_config(o, "regress"), meta, t);
  if (random_query) emit_points_echo(o, space, query, ".query.csv");
}

void run_converge(const Options& o) {
  require_seed(o, "convergence diagnostics sample points and feature phases");
  const spaces::SpaceId space = parse_space(o.space);
  const kernels::SpectralDensity density = make_density(o);
  Rng rng(o.seed);
  const int random_count = (o.points_path.empty() && o.random_points == 0) ? 10 : o.random_points;
  const auto points = resolve_points(o, space, o.points_path, random_count, rng.fork(1));
  if (o.repeats < 1) throw InvalidConfig("--repeats must be at least 1");

  Table t;
  t.header = {"section", "x", "value"};
  auto add_row = [&t](const std::string& section, double x, double value) {
    t.rows.push_back({section, fmt(x), fmt(value)});
    t.json_rows.push_back(json::array({section, x, value}));
  };

  // Spectral truncation: residual mass of the outermost retained level.
  std::set<int> budgets;
  for (int div : {8, 4, 2, 1}) budgets.insert(std::max(2, o.budget / div));
  for (int b : budgets) {
    const auto kb = kernels::build_kernel(space, density, b, parse_scale(o));
    add_row("budget", static_cast<double>(b), kb.truncation_residual);
  }

  // Random-feature convergence: relative Frobenius error of Phi Phi^T against
  // the truncated kernel, averaged over fresh bases, for L = 64 .. 4096.
  const kernels::SpectralKernel k =
      kernels::build_kernel(space, density, o.budget, parse_scale(o));
  const Eigen::MatrixXd gram = kernels::kernel_matrix(k, points);
  const double gram_norm = gram.norm();
  Rng feature_rng = rng.fork(2);
  std::vector<double> log_l, log_err;
  for (int l = 64; l <= 4096; l *= 2) {
    double acc = 0.0;
    for (int r = 0; r < o.repeats; ++r) {
      const auto basis = sampling::build_feature_basis(k, l, feature_rng);
      const Eigen::MatrixXd cov = sampling::feature_covariance(basis, points);
      acc += (cov - gram).norm() / gram_norm;
    }
    const double err = acc / o.repeats;
    add_row("features", static_cast<double>(l), err);
    log_l.push_back(std::log(static_cast<double>(l)));
    log_err.push_back(std::log(std::max(err, 1e-300)));
  }

  // Least-squares slope of log error against log feature count.
  const double n = static_cast<double>(log_l.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < log_l.size(); ++i) {
    mx += log_l[i];
    my += log_err[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < log_l.size(); ++i) {
    sxy += (log_l[i] - mx) * (log_err[i] - my);
    sxx += (log_l[i] - mx) * (log_l[i] - mx);
  }
  const double slope = sxy / sxx;

  json meta = kernel_meta(k, o.budget);
  meta["num_points"] = points.size();
  meta["repeats"] = o.repeats;
  meta["feature_slope"] = slope;
  emit(o, resolved_config(o, "converge"), meta, t);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Stationary Gaussian processes on compact groups, spheres, and coset spaces"};
  app.require_subcommand(1);

  CLI::App* c_reps = app.add_subcommand("reps", "List the spectral levels of a space");
  CLI::App* c_kernel = app.add_subcommand("kernel", "Evaluate a kernel Gram matrix on points");
  CLI::App* c_sample = app.add_subcommand("sample", "Draw random-feature prior samples");
  CLI::App* c_regress = app.add_subcommand("regress", "Exact GP posterior on observations");
  CLI::App* c_converge =
      app.add_subcommand("converge", "Truncation and feature-count convergence diagnostics");

  for (CLI::App* sub : {c_reps, c_kernel, c_sample, c_regress, c_converge}) {
    sub->add_option("--config", o.config_path, "JSON config file (flags override its values)");
    sub->add_option("--space", o.space, "Space name: S2, RP3, SU(2), SO(3), SO(3)/SO(2)");
    sub->add_option("--kernel", o.kernel_kind, "Spectral density: heat or matern");
    sub->add_option("--kappa", o.kappa, "Length-scale parameter");
    sub->add_option("--nu", o.nu, "Matern smoothness");
    sub->add_option("--sigma2", o.sigma2, "Marginal variance");
    sub->add_option("--budget", o.budget, "Number of spectral levels")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "RNG seed (required for stochastic commands)");
    sub->add_option("--out", o.out, "Output file (stdout when absent)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--scale", o.scale, "Sphere eigenvalue scale")
        ->check(CLI::IsMember({"unit", "killing"}));
    sub->add_option("--subgroup-samples", o.subgroup_samples,
                    "Monte Carlo subgroup samples for coset spaces")
        ->check(CLI::PositiveNumber);
  }
  for (CLI::App* sub : {c_kernel, c_sample, c_converge}) {
    sub->add_option("--points", o.points_path, "Evaluation points file");
    sub->add_option("--random", o.random_points, "Sample this many evaluation points")
        ->check(CLI::PositiveNumber);
  }
  c_sample->add_option("--features", o.features, "Random-feature count")
      ->check(CLI::PositiveNumber);
  c_sample->add_option("--draws", o.draws, "Number of prior draws")->check(CLI::PositiveNumber);
  c_regress->add_option("--data", o.data_path, "Observations file: coordinates then target");
  c_regress->add_option("--query", o.query_path, "Query points file");
  c_regress->add_option("--random", o.random_points, "Sample this many query points")
      ->check(CLI::PositiveNumber);
  c_regress->add_option("--noise", o.noise, "Observation noise variance");
  c_regress->add_flag("--fit", o.fit, "Maximize the marginal likelihood before predicting");
  c_regress->add_flag("--fit-nu", o.fit_nu, "Also fit the Matern smoothness");
  c_regress->add_option("--restarts", o.restarts, "Hyperparameter search restarts")
      ->check(CLI::NonNegativeNumber);
  c_converge->add_option("--features", o.features, "Feature budget for the top rung")
      ->check(CLI::PositiveNumber);
  c_converge->add_option("--repeats", o.repeats, "Bases averaged per feature count")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  o.seed_set = sub->count("--seed") > 0;
  try {
    apply_config_file(o, sub);
    if (sub == c_reps) {
      run_reps(o);
    } else if (sub == c_kernel) {
      run_kernel(o);
    } else if (sub == c_sample) {
      run_sample(o);
    } else if (sub == c_regress) {
      run_regress(o);
    } else {
      run_converge(o);
    }
    return 0;
  } catch (const InvalidConfig& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const liegp::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
