#ifndef COMPSEM_VOCABULARY_HPP
#define COMPSEM_VOCABULARY_HPP

#include <filesystem>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "compsem/errors.hpp"

namespace compsem {

// Target and context token lists of a distributional space.  Indices are
// stable for the lifetime of the space; targets are ordered with word
// targets first and phrase tokens appended after `word_target_count`.
struct Vocabulary {
  std::vector<std::string> targets;
  std::vector<std::string> contexts;
  std::unordered_set<std::string> stoplist;
  std::size_t word_target_count = 0;

  std::unordered_map<std::string, long> target_index;
  std::unordered_map<std::string, long> context_index;

  void rebuild_index();

  // -1 when absent
  long target_id(const std::string& token) const;
  long context_id(const std::string& token) const;

  bool is_phrase_target(std::size_t id) const { return id >= word_target_count; }

  // Appends a phrase token row; returns its id.
  long add_phrase_target(const std::string& token);

  // Throws ValueError on duplicate tokens or stoplisted contexts.
  void validate() const;

  void save(const std::filesystem::path& dir) const;
  static Vocabulary load(const std::filesystem::path& dir);
};

}  // namespace compsem

#endif
