#include "compsem/train.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "compsem/tensor_io.hpp"

namespace compsem {

namespace {

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid]
                           : 0.5 * (values[mid - 1] + values[mid]);
}

Eigen::MatrixXd stack_rows(const std::vector<Eigen::VectorXd>& rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index k = rows.front().size();
  Eigen::MatrixXd m(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (rows[i].size() != k) {
      throw ShapeError("training rows have inconsistent dimensions: " +
                       std::to_string(rows[i].size()) + " vs " +
                       std::to_string(k));
    }
    m.row(i) = rows[i];
  }
  return m;
}

// Reshapes ridge coefficients (inputs x outputs) into the tensor applying
// them: shape (out_shape..., k) with the contracted argument mode last.
Tensord coefficients_to_tensor(const Eigen::MatrixXd& coef,
                               std::vector<Index> out_shape) {
  Tensord::RowMajorMatrix transposed = coef.transpose();
  out_shape.push_back(coef.rows());
  return Tensord(std::move(out_shape),
                 Eigen::Map<const Tensord::VectorType>(transposed.data(),
                                                       transposed.size()));
}

}  // namespace

TrainedModel train_intransitive(const std::string& verb,
                                const VectorPairs& pairs,
                                const TrainOptions& opts) {
  const long n = static_cast<long>(pairs.size());
  if (n < opts.min_examples) {
    throw InsufficientDataError("verb '" + verb + "': " + std::to_string(n) +
                                    " training examples, minimum is " +
                                    std::to_string(opts.min_examples),
                                n);
  }
  std::vector<Eigen::VectorXd> xs, ys;
  xs.reserve(pairs.size());
  ys.reserve(pairs.size());
  for (const auto& [subject, sentence] : pairs) {
    xs.push_back(subject);
    ys.push_back(sentence);
  }
  const Eigen::MatrixXd x = stack_rows(xs);
  const Eigen::MatrixXd y = stack_rows(ys);
  GcvChoice fit = gcv_select(x, y, opts.lambda_grid);

  TrainedModel model;
  model.lemma = verb;
  model.arity = 1;
  model.tensor = coefficients_to_tensor(fit.coefficients, {y.cols()});
  model.stages = {{1, n, fit.lambda}};
  return model;
}

VpMatrices train_vp_matrices(const std::string& verb,
                             const std::vector<VpTriple>& triples,
                             const TrainOptions& opts) {
  std::map<std::string, VectorPairs> groups;
  for (const VpTriple& t : triples) {
    groups[t.object].emplace_back(t.subject, t.sentence);
  }
  VpMatrices out;
  for (const auto& [object, pairs] : groups) {
    if (static_cast<long>(pairs.size()) < opts.min_examples) continue;
    TrainedModel vp = train_intransitive(verb + "_" + object, pairs, opts);
    out.matrices.emplace(object, std::move(vp.tensor));
    out.lambdas.emplace(object, vp.stages[0].lambda_median);
    out.group_sizes.emplace(object, static_cast<long>(pairs.size()));
  }
  if (out.matrices.empty()) {
    throw InsufficientDataError(
        "verb '" + verb + "': no object group reaches " +
            std::to_string(opts.min_examples) + " examples",
        0);
  }
  return out;
}

TrainedModel train_transitive(
    const std::string& verb, const std::map<std::string, Tensord>& vp_matrices,
    const std::map<std::string, Eigen::VectorXd>& object_vectors,
    const TrainOptions& opts, const WarningSink& warn) {
  std::vector<Eigen::VectorXd> xs, ys;
  const Tensord* reference = nullptr;
  for (const auto& [object, matrix] : vp_matrices) {
    auto it = object_vectors.find(object);
    if (it == object_vectors.end()) {
      if (warn) warn("object '" + object + "' has no vector, skipped");
      continue;
    }
    if (reference && !matrix.same_shape(*reference)) {
      throw ShapeError("VP matrices disagree in shape: " + matrix.shape_str() +
                       " vs " + reference->shape_str());
    }
    reference = &matrix;
    xs.push_back(it->second);
    ys.push_back(matrix.data());
  }
  const long n = static_cast<long>(xs.size());
  if (n < opts.min_examples) {
    throw InsufficientDataError("verb '" + verb + "': only " +
                                    std::to_string(n) +
                                    " objects with matrix and vector",
                                n);
  }
  const Eigen::MatrixXd x = stack_rows(xs);
  const Eigen::MatrixXd y = stack_rows(ys);
  GcvChoice fit = gcv_select(x, y, opts.lambda_grid);

  TrainedModel model;
  model.lemma = verb;
  model.arity = 2;
  model.tensor = coefficients_to_tensor(
      fit.coefficients, {reference->dim(0), reference->dim(1)});
  model.stages = {{1, n, fit.lambda}};
  return model;
}

NaryTraining train_nary(
    const std::string& word, int arity,
    const std::vector<Observation>& observations,
    const std::unordered_map<std::string, Eigen::VectorXd>& vectors,
    const TrainOptions& opts, const WarningSink& warn) {
  if (arity < 1) throw ValueError("train_nary: arity must be >= 1");

  NaryTraining out;
  out.table.stages.resize(arity + 1);

  auto& observed = out.table.stages[arity];
  for (const Observation& obs : observations) {
    if (static_cast<int>(obs.args.size()) != arity) {
      throw ValueError("observation tuple size " +
                       std::to_string(obs.args.size()) +
                       " does not match arity " + std::to_string(arity));
    }
    if (!observed.emplace(obs.args, Tensord::from_vector(obs.vector)).second) {
      throw ValueError("duplicate observation tuple for '" + word + "'");
    }
  }

  std::vector<StageInfo> stage_infos(arity);
  std::vector<std::vector<double>> stage_lambdas(arity);

  for (int stage = arity - 1; stage >= 0; --stage) {
    const auto& children = out.table.stages[stage + 1];
    auto& current = out.table.stages[stage];

    // Group children by their first `stage` arguments; map order keeps the
    // whole recursion independent of observation order.
    std::map<std::vector<std::string>,
             std::vector<std::pair<const std::string*, const Tensord*>>>
        groups;
    for (const auto& [tuple, tensor] : children) {
      std::vector<std::string> prefix(tuple.begin(), tuple.begin() + stage);
      groups[std::move(prefix)].emplace_back(&tuple[stage], &tensor);
    }

    for (const auto& [prefix, members] : groups) {
      std::vector<Eigen::VectorXd> xs, ys;
      const Tensord* reference = nullptr;
      for (const auto& [lemma, tensor] : members) {
        auto it = vectors.find(*lemma);
        if (it == vectors.end()) {
          if (warn) warn("no vector for '" + *lemma + "', pair skipped");
          continue;
        }
        if (reference && !tensor->same_shape(*reference)) {
          throw ShapeError("stage " + std::to_string(stage + 1) +
                           " tensors disagree in shape");
        }
        reference = tensor;
        xs.push_back(it->second);
        ys.push_back(tensor->data());
      }
      if (static_cast<long>(xs.size()) < opts.min_examples) continue;

      GcvChoice fit =
          gcv_select(stack_rows(xs), stack_rows(ys), opts.lambda_grid);
      current.emplace(prefix,
                      coefficients_to_tensor(fit.coefficients,
                                             reference->shape()));
      stage_infos[stage].regressions += 1;
      stage_infos[stage].examples += static_cast<long>(xs.size());
      stage_lambdas[stage].push_back(fit.lambda);
    }

    if (current.empty()) {
      throw StageError("train_nary('" + word + "'): stage " +
                           std::to_string(stage) + " has no viable regression",
                       stage);
    }
  }
  for (int stage = 0; stage < arity; ++stage) {
    stage_infos[stage].lambda_median = median(stage_lambdas[stage]);
  }

  out.model.lemma = word;
  out.model.arity = arity;
  out.model.tensor = out.table.stages[0].begin()->second;
  out.model.stages = std::move(stage_infos);
  return out;
}

void TrainedModel::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  const std::string base = lemma + ".a" + std::to_string(arity);
  save_tensor(dir / (base + ".tensor"), tensor);
  std::ofstream meta(dir / (base + ".meta.tsv"));
  if (!meta) throw IoError("cannot write model metadata for " + lemma);
  meta << "verb\t" << lemma << '\n';
  meta << "arity\t" << arity << '\n';
  for (std::size_t i = 0; i < stages.size(); ++i) {
    meta << "stage\t" << i << '\t' << stages[i].regressions << '\t'
         << stages[i].examples << '\t' << format_double(stages[i].lambda_median)
         << '\n';
  }
}

TrainedModel TrainedModel::load_named(const std::filesystem::path& dir,
                                      const std::string& lemma, int arity) {
  const std::string base = lemma + ".a" + std::to_string(arity);
  TrainedModel model;
  model.tensor = load_tensor(dir / (base + ".tensor"));
  std::ifstream meta(dir / (base + ".meta.tsv"));
  if (!meta) throw IoError("missing model metadata: " + base + ".meta.tsv");
  std::string line;
  while (std::getline(meta, line)) {
    std::istringstream row(line);
    std::string key;
    std::getline(row, key, '\t');
    if (key == "verb") {
      std::getline(row, model.lemma);
    } else if (key == "arity") {
      std::string v;
      std::getline(row, v);
      model.arity = std::stoi(v);
    } else if (key == "stage") {
      std::string index, regressions, examples, lambda;
      std::getline(row, index, '\t');
      std::getline(row, regressions, '\t');
      std::getline(row, examples, '\t');
      std::getline(row, lambda);
      StageInfo info{std::stol(regressions), std::stol(examples),
                     std::stod(lambda)};
      const std::size_t i = std::stoul(index);
      if (model.stages.size() <= i) model.stages.resize(i + 1);
      model.stages[i] = info;
    }
  }
  return model;
}

void ModelSet::add(TrainedModel m) {
  auto key = std::make_pair(m.lemma, m.arity);
  models.insert_or_assign(std::move(key), std::move(m));
}

const TrainedModel* ModelSet::find(const std::string& lemma, int arity) const {
  auto it = models.find({lemma, arity});
  return it == models.end() ? nullptr : &it->second;
}

void ModelSet::save(const std::filesystem::path& dir) const {
  for (const auto& [_, model] : models) model.save(dir);
}

ModelSet ModelSet::load(const std::filesystem::path& dir) {
  ModelSet set;
  std::vector<std::filesystem::path> metas;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.size() > 9 && name.ends_with(".meta.tsv")) {
      metas.push_back(entry.path());
    }
  }
  std::sort(metas.begin(), metas.end());
  for (const auto& meta : metas) {
    std::string base = meta.filename().string();
    base.resize(base.size() - 9);  // strip ".meta.tsv"
    const std::size_t dot = base.rfind(".a");
    if (dot == std::string::npos) continue;
    const std::string lemma = base.substr(0, dot);
    const int arity = std::stoi(base.substr(dot + 2));
    set.add(TrainedModel::load_named(dir, lemma, arity));
  }
  return set;
}

}  // namespace compsem
