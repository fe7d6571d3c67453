#include "compsem/reduce.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <fstream>
#include <limits>

#include "compsem/rng.hpp"
#include "compsem/tensor.hpp"
#include "compsem/tensor_io.hpp"

#include "json.hpp"

namespace compsem {

std::string reduction_name(ReductionMethod method) {
  return method == ReductionMethod::Svd ? "svd" : "nmf";
}

ReductionMethod parse_reduction(const std::string& name) {
  if (name == "svd") return ReductionMethod::Svd;
  if (name == "nmf") return ReductionMethod::Nmf;
  throw ValueError("unknown reduction method '" + name + "'");
}

void ReducedSpace::rebuild_index() {
  index.clear();
  for (std::size_t i = 0; i < targets.size(); ++i)
    index.emplace(targets[i], static_cast<long>(i));
}

Eigen::VectorXd ReducedSpace::embedding(const std::string& target) const {
  auto it = index.find(target);
  if (it == index.end()) throw OovError(target);
  return embeddings.row(it->second);
}

void ReducedSpace::append(const std::string& target, const Eigen::VectorXd& vec) {
  if (vec.size() != k) {
    throw ShapeError("embedding for '" + target + "' has length " +
                     std::to_string(vec.size()) + ", expected " +
                     std::to_string(k));
  }
  if (index.count(target)) throw ValueError("duplicate target: " + target);
  embeddings.conservativeResize(embeddings.rows() + 1, Eigen::NoChange);
  embeddings.row(embeddings.rows() - 1) = vec;
  index.emplace(target, static_cast<long>(targets.size()));
  targets.push_back(target);
}

ReducedSpace svd_reduce(const Eigen::MatrixXd& core,
                        std::vector<std::string> names, Eigen::Index k) {
  if (static_cast<std::size_t>(core.rows()) != names.size()) {
    throw ShapeError("svd_reduce: " + std::to_string(names.size()) +
                     " names for " + std::to_string(core.rows()) + " rows");
  }
  if (k < 1 || k > std::min(core.rows(), core.cols())) {
    throw ValueError("svd_reduce: k = " + std::to_string(k) +
                     " exceeds min(rows, cols) = " +
                     std::to_string(std::min(core.rows(), core.cols())));
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(core,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::MatrixXd u = svd.matrixU().leftCols(k);
  Eigen::MatrixXd v = svd.matrixV().leftCols(k);
  const Eigen::VectorXd sigma = svd.singularValues().head(k);

  // Deterministic sign convention: the largest-magnitude component of each
  // right singular vector is made positive.
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index at = 0;
    v.col(j).cwiseAbs().maxCoeff(&at);
    if (v(at, j) < 0.0) {
      v.col(j) = -v.col(j);
      u.col(j) = -u.col(j);
    }
  }

  ReducedSpace space;
  space.method = ReductionMethod::Svd;
  space.k = k;
  space.targets = std::move(names);
  space.embeddings = u * sigma.asDiagonal();
  space.projector = std::move(v);
  space.rebuild_index();
  return space;
}

namespace {

// Lin (2007) projected-gradient solver for min_{H >= 0} |V - W H|_F^2 with
// Armijo search along the projection arc.  Returns the iteration count so
// the caller can tighten tolerances when the start point is already good.
long nls_subproblem(const Eigen::MatrixXd& v, const Eigen::MatrixXd& w,
                    Eigen::MatrixXd& h, double tol, const NmfOptions& opts) {
  const Eigen::MatrixXd wtv = w.transpose() * v;
  const Eigen::MatrixXd wtw = w.transpose() * w;

  double alpha = 1.0;
  long iter = 1;
  for (; iter <= opts.inner_max; ++iter) {
    const Eigen::MatrixXd grad = wtw * h - wtv;
    double projnorm2 = 0.0;
    for (Eigen::Index j = 0; j < grad.size(); ++j) {
      const double g = grad(j);
      if (g < 0.0 || h(j) > 0.0) projnorm2 += g * g;
    }
    if (std::sqrt(projnorm2) <= tol) break;

    bool shrinking = false;
    Eigen::MatrixXd last = h;
    for (int inner = 0; inner < 20; ++inner) {
      Eigen::MatrixXd candidate = (h - alpha * grad).cwiseMax(0.0);
      const Eigen::MatrixXd d = candidate - h;
      const double gradd = grad.cwiseProduct(d).sum();
      const double dqd = (wtw * d).cwiseProduct(d).sum();
      const bool sufficient = (1.0 - opts.armijo) * gradd + 0.5 * dqd <= 0.0;
      if (inner == 0) shrinking = !sufficient;
      if (shrinking) {
        if (sufficient) {
          h = std::move(candidate);
          break;
        }
        alpha *= opts.step_shrink;
      } else {
        if (!sufficient || candidate == last) {
          h = std::move(last);
          break;
        }
        alpha /= opts.step_shrink;
        last = std::move(candidate);
      }
    }
  }
  return iter;
}

}  // namespace

NmfReduction nmf_reduce(const Eigen::MatrixXd& core,
                        std::vector<std::string> names, Eigen::Index k,
                        const NmfOptions& opts) {
  if (static_cast<std::size_t>(core.rows()) != names.size()) {
    throw ShapeError("nmf_reduce: " + std::to_string(names.size()) +
                     " names for " + std::to_string(core.rows()) + " rows");
  }
  if (k < 1 || k > std::min(core.rows(), core.cols())) {
    throw ValueError("nmf_reduce: k = " + std::to_string(k) +
                     " exceeds min(rows, cols)");
  }
  Eigen::Index bad_r, bad_c;
  if (core.minCoeff(&bad_r, &bad_c) < 0.0) {
    throw ValueError("nmf_reduce: negative input at (" + std::to_string(bad_r) +
                     "," + std::to_string(bad_c) + ")");
  }
  const double sum = core.sum();
  if (sum <= 0.0) throw ValueError("nmf_reduce: input matrix is zero");
  const Eigen::MatrixXd x = core / sum;

  const Eigen::Index m = x.rows(), n = x.cols();
  const double scale = std::sqrt(x.mean() / static_cast<double>(k));
  Rng rng(opts.seed);
  Eigen::MatrixXd w(m, k), h(k, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < k; ++j) w(i, j) = rng.uniform() * scale;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = rng.uniform() * scale;

  NmfReduction out;
  out.input_squared_norm = x.squaredNorm();
  double objective = (x - w * h).squaredNorm();
  out.objectives.push_back(objective);

  // Subproblem tolerances start loose and tighten whenever a subproblem is
  // solved in a single iteration (Lin's schedule).
  const Eigen::MatrixXd grad_w0 = (w * h - x) * h.transpose();
  const Eigen::MatrixXd grad_h0 = w.transpose() * (w * h - x);
  const double initgrad = std::sqrt(grad_w0.squaredNorm() + grad_h0.squaredNorm());
  double tol_w = std::max(1e-3, opts.tolerance) * initgrad;
  double tol_h = tol_w;

  Eigen::MatrixXd best_w = w, best_h = h;
  double best_objective = objective;
  out.converged = false;

  for (long outer = 0; outer < opts.max_outer; ++outer) {
    Eigen::MatrixXd wt = w.transpose();
    const long iters_w =
        nls_subproblem(x.transpose(), h.transpose(), wt, tol_w, opts);
    w = wt.transpose();
    if (iters_w == 1) tol_w *= 0.1;

    const long iters_h = nls_subproblem(x, w, h, tol_h, opts);
    if (iters_h == 1) tol_h *= 0.1;

    const double previous = objective;
    objective = (x - w * h).squaredNorm();
    out.objectives.push_back(objective);
    if (objective < best_objective) {
      best_objective = objective;
      best_w = w;
      best_h = h;
    }
    // An outer iteration where both subproblems returned immediately only
    // tightened their tolerances; it is not evidence of a fixed point.
    if (iters_w == 1 && iters_h == 1) continue;
    if (previous == 0.0 ||
        (previous - objective) / previous < opts.tolerance) {
      out.converged = true;
      break;
    }
  }

  ReducedSpace& space = out.space;
  space.method = ReductionMethod::Nmf;
  space.k = k;
  space.targets = std::move(names);
  space.embeddings = std::move(best_w);
  space.projector = std::move(best_h);
  space.rebuild_index();
  return out;
}

Eigen::VectorXd project(const ReducedSpace& space, const Eigen::VectorXd& raw,
                        const NmfOptions& opts) {
  if (space.method == ReductionMethod::Svd) {
    if (raw.size() != space.projector.rows()) {
      throw ShapeError("project: raw vector length " +
                       std::to_string(raw.size()) + " vs " +
                       std::to_string(space.projector.rows()) + " contexts");
    }
    return space.projector.transpose() * raw;
  }
  if (raw.size() != space.projector.cols()) {
    throw ShapeError("project: raw vector length " + std::to_string(raw.size()) +
                     " vs " + std::to_string(space.projector.cols()) +
                     " contexts");
  }
  // min_{w >= 0} |raw - w H|_2 as a transposed NLS subproblem.
  const Eigen::MatrixXd target = raw;
  const Eigen::MatrixXd basis = space.projector.transpose();  // contexts x k
  Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(space.k, 1);

  const Eigen::MatrixXd grad0 = basis.transpose() * (basis * coef - target);
  double projnorm0 = 0.0;
  for (Eigen::Index j = 0; j < grad0.size(); ++j) {
    const double g = grad0(j);
    if (g < 0.0 || coef(j) > 0.0) projnorm0 += g * g;
  }
  const double tol = opts.tolerance * std::sqrt(projnorm0);
  nls_subproblem(target, basis, coef, tol, opts);
  return coef.col(0);
}

void ReducedSpace::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["method"] = reduction_name(method);
  meta["k"] = k;
  meta["targets"] = targets.size();
  std::ofstream out(dir / "space.json");
  if (!out) throw IoError("cannot write " + (dir / "space.json").string());
  out << meta.dump(2) << '\n';

  save_tensor(dir / "embeddings.tensor", Tensord::from_matrix(embeddings));
  save_tensor(dir / "projector.tensor", Tensord::from_matrix(projector));
  std::ofstream names(dir / "targets.txt");
  for (const auto& t : targets) names << t << '\n';
}

ReducedSpace ReducedSpace::load(const std::filesystem::path& dir) {
  std::ifstream meta_in(dir / "space.json");
  if (!meta_in) throw IoError("cannot open " + (dir / "space.json").string());
  nlohmann::json meta = nlohmann::json::parse(meta_in);
  if (!meta.contains("method") || !meta.contains("k")) {
    throw IoError("space.json is missing the mandatory method/k fields");
  }
  ReducedSpace space;
  space.method = parse_reduction(meta["method"].get<std::string>());
  space.k = meta["k"].get<Eigen::Index>();

  const Tensord emb = load_tensor(dir / "embeddings.tensor");
  const Tensord proj = load_tensor(dir / "projector.tensor");
  space.embeddings = emb.as_matrix();
  space.projector = proj.as_matrix();

  std::ifstream names(dir / "targets.txt");
  if (!names) throw IoError("cannot open " + (dir / "targets.txt").string());
  std::string line;
  while (std::getline(names, line)) {
    if (!line.empty()) space.targets.push_back(line);
  }
  if (static_cast<Eigen::Index>(space.targets.size()) != space.embeddings.rows()) {
    throw IoError("targets.txt does not match the embeddings matrix");
  }
  space.rebuild_index();
  return space;
}

}  // namespace compsem
