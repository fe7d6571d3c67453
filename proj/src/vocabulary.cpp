#include "compsem/vocabulary.hpp"

#include <algorithm>
#include <fstream>

namespace compsem {

namespace {

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : lines) out << line << '\n';
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

void Vocabulary::rebuild_index() {
  target_index.clear();
  context_index.clear();
  for (std::size_t i = 0; i < targets.size(); ++i)
    target_index.emplace(targets[i], static_cast<long>(i));
  for (std::size_t i = 0; i < contexts.size(); ++i)
    context_index.emplace(contexts[i], static_cast<long>(i));
}

long Vocabulary::target_id(const std::string& token) const {
  auto it = target_index.find(token);
  return it == target_index.end() ? -1 : it->second;
}

long Vocabulary::context_id(const std::string& token) const {
  auto it = context_index.find(token);
  return it == context_index.end() ? -1 : it->second;
}

long Vocabulary::add_phrase_target(const std::string& token) {
  auto it = target_index.find(token);
  if (it != target_index.end()) return it->second;
  targets.push_back(token);
  const long id = static_cast<long>(targets.size()) - 1;
  target_index.emplace(token, id);
  return id;
}

void Vocabulary::validate() const {
  if (target_index.size() != targets.size())
    throw ValueError("duplicate target tokens in vocabulary");
  if (context_index.size() != contexts.size())
    throw ValueError("duplicate context tokens in vocabulary");
  for (const auto& c : contexts) {
    if (stoplist.count(c))
      throw ValueError("stoplisted token used as context: " + c);
  }
  if (word_target_count > targets.size())
    throw ValueError("word_target_count exceeds target count");
}

void Vocabulary::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  write_lines(dir / "targets.txt", targets);
  write_lines(dir / "contexts.txt", contexts);
  std::vector<std::string> stop(stoplist.begin(), stoplist.end());
  std::sort(stop.begin(), stop.end());
  write_lines(dir / "stoplist.txt", stop);
  std::vector<std::string> phrases(targets.begin() + word_target_count,
                                   targets.end());
  write_lines(dir / "phrases.txt", phrases);
}

Vocabulary Vocabulary::load(const std::filesystem::path& dir) {
  Vocabulary v;
  v.targets = read_lines(dir / "targets.txt");
  v.contexts = read_lines(dir / "contexts.txt");
  if (std::filesystem::exists(dir / "stoplist.txt")) {
    for (auto& s : read_lines(dir / "stoplist.txt")) v.stoplist.insert(s);
  }
  std::size_t phrase_count = 0;
  if (std::filesystem::exists(dir / "phrases.txt")) {
    phrase_count = read_lines(dir / "phrases.txt").size();
  }
  v.word_target_count = v.targets.size() - phrase_count;
  v.rebuild_index();
  v.validate();
  return v;
}

}  // namespace compsem
