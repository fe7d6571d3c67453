#include "compsem/space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace compsem {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

bool valid_utf8(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size()) {
    const unsigned char c = line[i];
    std::size_t extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c >> 5) == 0x6) {
      extra = 1;
    } else if ((c >> 4) == 0xe) {
      extra = 2;
    } else if ((c >> 3) == 0x1e) {
      extra = 3;
    } else {
      return false;
    }
    for (std::size_t j = 1; j <= extra; ++j) {
      if (i + j >= line.size()) return false;
      if ((static_cast<unsigned char>(line[i + j]) >> 6) != 0x2) return false;
    }
    i += extra + 1;
  }
  return true;
}

SparseMatrix count_cooccurrences(std::istream& corpus, const Vocabulary& vocab,
                                 const WarningSink& warn) {
  SparseMatrix counts(static_cast<long>(vocab.targets.size()),
                      static_cast<long>(vocab.contexts.size()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(corpus, line)) {
    ++line_no;
    if (!valid_utf8(line) || line.find('\0') != std::string::npos) {
      if (warn) warn("line " + std::to_string(line_no) + ": malformed, skipped");
      continue;
    }
    const std::vector<std::string> tokens = split_tokens(line);
    if (tokens.empty()) continue;

    // Pre-resolve ids once per sentence; -1 = not in that vocabulary list.
    std::vector<long> tids(tokens.size()), cids(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      tids[i] = vocab.target_id(tokens[i]);
      cids[i] = vocab.stoplist.count(tokens[i]) ? -1
                                                : vocab.context_id(tokens[i]);
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tids[i] < 0) continue;
      for (std::size_t j = 0; j < tokens.size(); ++j) {
        if (j == i || cids[j] < 0) continue;
        counts.add(tids[i], cids[j], 1.0);
      }
    }
  }
  if (corpus.bad()) throw IoError("corpus stream failed while counting");
  return counts;
}

PhraseSpec PhraseSpec::from_triple(const TripleRecord& t) {
  PhraseSpec s;
  s.kind = t.transitive() ? Kind::SubjectVerbObject : Kind::SubjectVerb;
  s.subject = t.subject;
  s.verb = t.verb;
  s.object = t.object;
  return s;
}

std::string PhraseSpec::token() const {
  std::string out = subject + "_" + verb;
  if (kind == Kind::SubjectVerbObject) out += "_" + object;
  return out;
}

bool PhraseSpec::matches(const TripleRecord& t) const {
  return subject == t.subject && verb == t.verb && object == t.object;
}

SparseMatrix count_phrase_occurrences(
    const std::vector<PhraseOccurrence>& occurrences,
    const std::vector<PhraseSpec>& specs, Vocabulary& vocab,
    const WarningSink& warn) {
  std::unordered_set<std::string> known_verbs;
  std::map<std::string, std::size_t> spec_by_token;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    known_verbs.insert(specs[i].verb);
    spec_by_token.emplace(specs[i].token(), i);
  }

  SparseMatrix counts(static_cast<long>(vocab.targets.size()),
                      static_cast<long>(vocab.contexts.size()));
  for (const PhraseOccurrence& occ : occurrences) {
    if (!known_verbs.count(occ.triple.verb)) {
      if (warn) {
        warn("sentence " + std::to_string(occ.triple.sentence) +
             ": unknown verb '" + occ.triple.verb + "', triple skipped");
      }
      continue;
    }
    const PhraseSpec spec = PhraseSpec::from_triple(occ.triple);
    auto it = spec_by_token.find(spec.token());
    if (it == spec_by_token.end() || !specs[it->second].matches(occ.triple)) {
      continue;
    }
    const long row = vocab.add_phrase_target(spec.token());
    if (row >= counts.rows()) {
      counts.resize(static_cast<long>(vocab.targets.size()), counts.cols());
    }
    for (const std::string& tok : occ.tokens) {
      if (vocab.stoplist.count(tok)) continue;
      const long c = vocab.context_id(tok);
      if (c >= 0) counts.add(row, c, 1.0);
    }
  }
  return counts;
}

namespace {

// Shared profile of the count table used by both weighting schemes.
struct Margins {
  std::vector<double> row;
  std::vector<double> col;
  double total;
};

Margins margins_of(const SparseMatrix& counts) {
  Margins m{counts.row_sums(), counts.col_sums(), counts.total()};
  if (m.total <= 0.0) throw ValueError("cannot weight a matrix with zero total");
  return m;
}

}  // namespace

SparseMatrix weight_pmi(const SparseMatrix& counts) {
  const Margins m = margins_of(counts);
  SparseMatrix out(counts.rows(), counts.cols());
  for (const auto& t : counts.sorted_triplets()) {
    if (t.value <= 0.0) continue;
    const double pmi =
        std::log(t.value * m.total / (m.row[t.row] * m.col[t.col]));
    if (pmi > 0.0) out.set(t.row, t.col, pmi);
  }
  return out;
}

SparseMatrix weight_lmi(const SparseMatrix& counts) {
  const Margins m = margins_of(counts);
  SparseMatrix out(counts.rows(), counts.cols());
  for (const auto& t : counts.sorted_triplets()) {
    if (t.value <= 0.0) continue;
    const double pmi =
        std::log(t.value * m.total / (m.row[t.row] * m.col[t.col]));
    if (pmi > 0.0) out.set(t.row, t.col, t.value * pmi);
  }
  return out;
}

Vocabulary build_vocabulary(std::istream& corpus, long max_targets,
                            long max_contexts, long stoplist_size) {
  std::map<std::string, long> freq;
  std::string line;
  while (std::getline(corpus, line)) {
    for (const auto& tok : split_tokens(line)) ++freq[tok];
  }
  std::vector<std::pair<std::string, long>> ranked(freq.begin(), freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });

  Vocabulary vocab;
  for (std::size_t i = 0;
       i < ranked.size() && i < static_cast<std::size_t>(stoplist_size); ++i) {
    vocab.stoplist.insert(ranked[i].first);
  }
  for (const auto& [tok, _] : ranked) {
    if (static_cast<long>(vocab.targets.size()) < max_targets)
      vocab.targets.push_back(tok);
    if (!vocab.stoplist.count(tok) &&
        static_cast<long>(vocab.contexts.size()) < max_contexts)
      vocab.contexts.push_back(tok);
  }
  vocab.word_target_count = vocab.targets.size();
  vocab.rebuild_index();
  vocab.validate();
  return vocab;
}

std::size_t for_each_triple_occurrence(
    std::istream& corpus, const std::vector<TripleRecord>& triples,
    const std::function<void(const PhraseOccurrence&)>& fn) {
  std::multimap<std::size_t, const TripleRecord*> by_sentence;
  for (const TripleRecord& t : triples) by_sentence.emplace(t.sentence, &t);

  std::string line;
  std::size_t index = 0;
  while (std::getline(corpus, line)) {
    auto [lo, hi] = by_sentence.equal_range(index);
    if (lo != hi) {
      const std::vector<std::string> tokens = split_tokens(line);
      for (auto it = lo; it != hi; ++it) {
        fn(PhraseOccurrence{*it->second, tokens});
      }
    }
    ++index;
  }
  return index;
}

std::vector<TripleRecord> load_triples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<TripleRecord> triples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string index, subject, verb, object;
    if (!std::getline(row, index, '\t') || !std::getline(row, subject, '\t') ||
        !std::getline(row, verb, '\t') || !std::getline(row, object)) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected sentence_index<TAB>subject<TAB>verb<TAB>object");
    }
    TripleRecord t;
    try {
      t.sentence = std::stoul(index);
    } catch (const std::exception&) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": bad sentence index '" + index + "'");
    }
    t.subject = subject;
    t.verb = verb;
    t.object = object == "-" ? "" : object;
    triples.push_back(std::move(t));
  }
  return triples;
}

void save_triples(const std::filesystem::path& path,
                  const std::vector<TripleRecord>& triples) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const TripleRecord& t : triples) {
    out << t.sentence << '\t' << t.subject << '\t' << t.verb << '\t'
        << (t.object.empty() ? "-" : t.object) << '\n';
  }
}

}  // namespace compsem
