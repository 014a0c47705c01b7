#include "unicluster_cli/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unicluster/datagen.hpp"
#include "unicluster/density.hpp"
#include "unicluster/graph.hpp"
#include "unicluster/kernels.hpp"
#include "unicluster/kmeans.hpp"
#include "unicluster/metrics.hpp"
#include "unicluster/spectral.hpp"
#include "unicluster_cli/csv.hpp"

namespace unicluster::cli {

namespace {

using json = nlohmann::ordered_json;

// Flag-level problems detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenerateOptions {
  std::string preset;
  std::string out;
  std::uint64_t seed = 0;
  std::optional<std::size_t> n;
  std::optional<double> noise;
};

struct FitOptions {
  std::string algo;
  std::string in;
  std::string out;
  std::uint64_t seed = 0;
  int restarts = 1;
  std::optional<int> k;
  std::optional<double> sigma;
  std::optional<double> eps;
  int min_pts = 5;
  int max_iters = 300;
  double tol = 1e-6;
  std::string kernel = "gaussian";
  double offset = 1.0;
  double degree = 2.0;
  std::string plot_data;
  std::string edges;
};

struct ScoreOptions {
  std::string pred;
  std::string truth;
};

template <typename T>
T require(const std::optional<T>& v, const std::string& flag, const std::string& algo) {
  if (!v) throw UsageError("--algo " + algo + " requires " + flag);
  return *v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path + "'");
  return f;
}

json matrix_json(const Eigen::Ref<const Matrix>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mixture_json(const MixtureModel& m) {
  json means = json::array(), covs = json::array();
  for (const auto& mu : m.means()) means.push_back(vector_json(mu));
  for (const auto& s : m.covariances()) covs.push_back(matrix_json(s.matrix()));
  return json{{"weights", vector_json(m.weights())}, {"means", means}, {"covariances", covs}};
}

ClusteringReport run_gmm(const Dataset& data, const FitOptions& o, const RunConfig& cfg) {
  const int k = require(o.k, "--k", o.algo);
  const EmResult r = fit_em_best_of(data, k, cfg, o.restarts);
  ClusteringReport rep;
  rep.algorithm = "gmm";
  rep.params = {{"k", k}};
  rep.labels = harden(r.resp);
  rep.loglik_trace = r.trace.log_likelihood;
  rep.iterations = r.trace.iterations;
  rep.converged = r.trace.converged;
  RowMatrix centers(k, static_cast<Eigen::Index>(data.dim()));
  for (int c = 0; c < k; ++c) centers.row(c) = r.model.means()[static_cast<std::size_t>(c)].transpose();
  rep.centers = std::move(centers);
  rep.mixture = r.model;
  return rep;
}

ClusteringReport run_kmeans(const Dataset& data, const FitOptions& o, const RunConfig& cfg) {
  const int k = require(o.k, "--k", o.algo);
  const kmeans::Result r = kmeans::fit_best_of(data, k, cfg, o.restarts);
  ClusteringReport rep;
  rep.algorithm = "kmeans";
  rep.params = {{"k", k}};
  rep.labels = r.assignment;
  rep.objective_trace = r.objective_trace;
  rep.iterations = r.iterations;
  rep.converged = r.converged;
  rep.centers = r.centroids;
  rep.distance_evaluations = r.distance_evaluations;
  return rep;
}

KernelSpec kernel_from(const FitOptions& o) {
  if (o.kernel == "gaussian") return KernelSpec::gaussian(require(o.sigma, "--sigma", o.algo));
  if (o.kernel == "polynomial") return KernelSpec::polynomial(o.offset, o.degree);
  if (o.kernel == "linear") return KernelSpec::linear();
  throw UsageError("unknown --kernel '" + o.kernel + "'");
}

ClusteringReport run_kkmeans(const Dataset& data, const FitOptions& o, const RunConfig& cfg) {
  const int k = require(o.k, "--k", o.algo);
  const KernelSpec spec = kernel_from(o);
  const KernelMatrix km = kernel_matrix(spec, data);
  const Vector weights = Vector::Ones(static_cast<Eigen::Index>(data.size()));
  const WkkResult r = wkk_fit_best_of(km.values, weights, k, cfg, o.restarts);
  ClusteringReport rep;
  rep.algorithm = "kkmeans";
  rep.params = {{"k", k}};
  if (spec.kind == KernelKind::kGaussian) rep.params.emplace_back("sigma", spec.sigma);
  if (spec.kind == KernelKind::kPolynomial) {
    rep.params.emplace_back("offset", spec.offset);
    rep.params.emplace_back("degree", spec.degree);
  }
  rep.labels = r.assignment;
  rep.objective_trace = r.objective_trace;
  rep.iterations = r.iterations;
  rep.converged = r.converged;
  rep.kernel_evaluations = km.evaluations;
  return rep;
}

ClusteringReport dispatch(const Dataset& data, const FitOptions& o, const RunConfig& cfg) {
  if (o.algo == "gmm") return run_gmm(data, o, cfg);
  if (o.algo == "kmeans") return run_kmeans(data, o, cfg);
  if (o.algo == "kkmeans") return run_kkmeans(data, o, cfg);
  if (o.algo == "sc") {
    const int k = require(o.k, "--k", o.algo);
    return njw_fit(data, k, require(o.sigma, "--sigma", o.algo), cfg, std::max(o.restarts, 1) * kSpectralPartitionRestarts);
  }
  if (o.algo == "meanshift") {
    ClimbOptions climb;
    climb.max_iters = o.max_iters;
    return mean_shift(data, require(o.eps, "--eps", o.algo), climb);
  }
  const DbscanParams p{require(o.eps, "--eps", o.algo), o.min_pts};
  if (o.algo == "dbscan") return dbscan_graph(data, p);
  if (o.algo == "dbscan-spectral") return dbscan_spectral(data, p);
  ClimbOptions climb;
  climb.max_iters = o.max_iters;
  return dbscan_climb(data, p, climb);
}

SimilarityGraph graph_for(const Dataset& data, const FitOptions& o) {
  if (o.algo == "dbscan" || o.algo == "dbscan-spectral" || o.algo == "dbscan-climb" || o.algo == "meanshift") {
    return build_graph(data, KernelSpec::heaviside(*o.eps));
  }
  if (o.algo == "sc" || o.algo == "kkmeans") return build_graph(data, kernel_from(o));
  throw UsageError("--emit-edges needs a graph or kernel algorithm, not " + o.algo);
}

void write_plot_data(const std::string& path, const Dataset& data, const HardAssignment& labels) {
  auto f = open_out(path);
  f << "x\ty\tlabel\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    f << format_double(p(0)) << '\t' << format_double(data.dim() > 1 ? p(1) : 0.0) << '\t' << labels[i] << '\n';
  }
}

json report_json(const ClusteringReport& rep, std::uint64_t seed, double wall_ms) {
  json j;
  j["algorithm"] = rep.algorithm;
  json params = json::object();
  for (const auto& [name, value] : rep.params) {
    if (value == std::floor(value) && std::abs(value) < 1e15) {
      params[name] = static_cast<long long>(value);
    } else {
      params[name] = value;
    }
  }
  j["params"] = params;
  j["seed"] = seed;
  j["labels"] = rep.labels.cluster_of();
  if (rep.centers) j["centers"] = matrix_json(*rep.centers);
  if (rep.mixture) j["mixture"] = mixture_json(*rep.mixture);
  if (!rep.loglik_trace.empty()) j["loglik_trace"] = rep.loglik_trace;
  if (!rep.objective_trace.empty()) j["objective_trace"] = rep.objective_trace;
  if (!rep.eigenvalues.empty()) j["eigenvalues"] = rep.eigenvalues;
  j["n_outliers"] = rep.n_outliers();
  j["iterations"] = rep.iterations;
  j["converged"] = rep.converged;
  j["wall_time_ms"] = wall_ms;
  return j;
}

int cmd_generate(const GenerateOptions& o, std::ostream& out) {
  Dataset data = [&] {
    if (o.preset == "circles" && (o.n || o.noise)) {
      Rng rng(o.seed);
      return circles(o.n.value_or(300), 1.0, 3.0, o.noise.value_or(0.05), rng);
    }
    if (o.n || o.noise) throw UsageError("--n and --noise only apply to --preset circles");
    return preset(o.preset, o.seed);
  }();
  auto f = open_out(o.out);
  write_csv(f, data);
  if (!f) throw IoError("write to '" + o.out + "' failed");
  out << "wrote " << data.size() << " rows to " << o.out << '\n';
  return kExitOk;
}

int cmd_fit(const FitOptions& o, std::ostream& out) {
  if (o.restarts < 1) throw UsageError("--restarts must be >= 1");
  const Dataset data = read_csv_file(o.in);
  RunConfig cfg;
  cfg.seed = o.seed;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.tol;
  cfg.validate();

  const auto start = std::chrono::steady_clock::now();
  const ClusteringReport rep = dispatch(data, o, cfg);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (!o.plot_data.empty()) write_plot_data(o.plot_data, data, rep.labels);
  if (!o.edges.empty()) {
    const SimilarityGraph g = graph_for(data, o);
    auto f = open_out(o.edges);
    write_edge_list(f, g);
  }
  const std::string text = report_json(rep, o.seed, wall_ms).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    auto f = open_out(o.out);
    f << text;
  }
  return kExitOk;
}

// Labels from a fit report (JSON object with "labels"), a bare JSON array,
// or a CSV with a label column.
HardAssignment load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw IoError("'" + path + "': " + e.what());
    }
    const json& arr = j.is_object() ? j.at("labels") : j;
    return HardAssignment(arr.get<std::vector<int>>());
  }
  std::istringstream csv(text);
  const Dataset data = read_csv(csv);
  if (!data.has_labels()) throw UsageError("'" + path + "' has no label column");
  return HardAssignment(data.labels());
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

int cmd_score(const ScoreOptions& o, std::ostream& out) {
  const HardAssignment pred = load_labels(o.pred);
  const HardAssignment truth = load_labels(o.truth);
  json j;
  j["ami"] = round6(ami(pred, truth));
  j["ari"] = round6(ari(pred, truth));
  out << j.dump() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unicluster: Gaussian-mixture, kernel, spectral and density clustering"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a preset dataset as CSV");
  generate->add_option("--preset", gen.preset, "Dataset preset")
      ->required()
      ->check(CLI::IsMember(preset_names()));
  generate->add_option("--out", gen.out, "Output CSV path")->required();
  generate->add_option("--seed", gen.seed, "Random seed")->envname("UNICLUSTER_SEED");
  generate->add_option("--n", gen.n, "Point count (circles only)")->check(CLI::PositiveNumber);
  generate->add_option("--noise", gen.noise, "Radial noise (circles only)")->check(CLI::NonNegativeNumber);

  FitOptions fit;
  auto* fitcmd = app.add_subcommand("fit", "Cluster a CSV dataset and print a JSON report");
  fitcmd->add_option("--algo", fit.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"gmm", "kmeans", "kkmeans", "sc", "dbscan", "dbscan-spectral", "dbscan-climb",
                             "meanshift"}));
  fitcmd->add_option("--in", fit.in, "Input CSV")->required();
  fitcmd->add_option("--out", fit.out, "Output JSON (stdout when omitted)");
  fitcmd->add_option("--seed", fit.seed, "Random seed")->envname("UNICLUSTER_SEED");
  fitcmd->add_option("--restarts", fit.restarts, "Independent restarts, best kept");
  fitcmd->add_option("--k", fit.k, "Number of clusters");
  fitcmd->add_option("--sigma", fit.sigma, "Gaussian kernel width");
  fitcmd->add_option("--eps", fit.eps, "Neighbourhood radius");
  fitcmd->add_option("--min-pts", fit.min_pts, "Core-point threshold, point itself included");
  fitcmd->add_option("--max-iters", fit.max_iters, "Iteration cap");
  fitcmd->add_option("--tol", fit.tol, "Relative convergence tolerance");
  fitcmd->add_option("--kernel", fit.kernel, "kkmeans kernel")
      ->check(CLI::IsMember({"gaussian", "polynomial", "linear"}));
  fitcmd->add_option("--offset", fit.offset, "Polynomial kernel offset");
  fitcmd->add_option("--degree", fit.degree, "Polynomial kernel degree");
  fitcmd->add_option("--emit-plot-data", fit.plot_data, "Write x, y, label TSV");
  fitcmd->add_option("--emit-edges", fit.edges, "Write the similarity graph as an edge list");

  ScoreOptions score;
  auto* scorecmd = app.add_subcommand("score", "AMI and ARI between two labelings");
  scorecmd->add_option("--pred", score.pred, "Fit JSON, label array JSON or labeled CSV")->required();
  scorecmd->add_option("--truth", score.truth, "Fit JSON, label array JSON or labeled CSV")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (fitcmd->parsed()) return cmd_fit(fit, out);
    return cmd_score(score, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const LengthMismatch& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.name() << ": " << e.what() << '\n';
    return kExitAlgorithm;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
}

}  // namespace unicluster::cli
