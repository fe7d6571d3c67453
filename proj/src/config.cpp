#include "compsem/config.hpp"

#include <fstream>
#include <sstream>

#include "compsem/errors.hpp"

namespace compsem {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_grid(const std::string& value) {
  std::vector<double> grid;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) grid.push_back(std::stod(item));
  }
  return grid;
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  PipelineConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ValueError(path.string() + ":" + std::to_string(line_no) +
                       ": expected key = value");
    }
    config.set(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
  }
  return config;
}

void PipelineConfig::set(const std::string& key, const std::string& value) {
  try {
    if (key == "corpus") corpus = value;
    else if (key == "triples") triples = value;
    else if (key == "dataset") dataset = value;
    else if (key == "out") out = value;
    else if (key == "weighting") weighting = value;
    else if (key == "reduction") reduction = value;
    else if (key == "k") k = std::stol(value);
    else if (key == "lambda_grid") lambda_grid = parse_grid(value);
    else if (key == "min_examples") min_examples = std::stol(value);
    else if (key == "min_nonzero_dims") min_nonzero_dims = std::stol(value);
    else if (key == "max_targets") max_targets = std::stol(value);
    else if (key == "max_contexts") max_contexts = std::stol(value);
    else if (key == "stoplist_size") stoplist_size = std::stol(value);
    else if (key == "nmf_max_outer") nmf_max_outer = std::stol(value);
    else if (key == "nmf_tolerance") nmf_tolerance = std::stod(value);
    else if (key == "nmf_inner_max") nmf_inner_max = std::stol(value);
    else if (key == "nmf_armijo") nmf_armijo = std::stod(value);
    else if (key == "nmf_step_shrink") nmf_step_shrink = std::stod(value);
    else if (key == "seed") seed = std::stoull(value);
    else throw ValueError("unknown config key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw ValueError("bad value '" + value + "' for config key '" + key + "'");
  } catch (const std::out_of_range&) {
    throw ValueError("value '" + value + "' out of range for key '" + key + "'");
  }
}

void PipelineConfig::validate() const {
  if (k < 1) throw ValueError("config: k must be >= 1");
  if (weighting != "pmi" && weighting != "lmi")
    throw ValueError("config: weighting must be pmi or lmi");
  if (reduction != "svd" && reduction != "nmf" && reduction != "none")
    throw ValueError("config: reduction must be svd, nmf or none");
  if (lambda_grid.empty()) throw ValueError("config: empty lambda grid");
  for (double l : lambda_grid) {
    if (l < 0.0) throw ValueError("config: lambda values must be >= 0");
  }
  if (min_examples < 1 || min_nonzero_dims < 0)
    throw ValueError("config: thresholds must be positive");
  if (max_targets < 1 || max_contexts < 1 || stoplist_size < 0)
    throw ValueError("config: vocabulary thresholds must be positive");
}

}  // namespace compsem
