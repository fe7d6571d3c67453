#ifndef COMPSEM_SPACE_HPP
#define COMPSEM_SPACE_HPP

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "compsem/sparse.hpp"
#include "compsem/vocabulary.hpp"

namespace compsem {

// Receives non-fatal per-record diagnostics (skipped lines, unknown verbs).
using WarningSink = std::function<void(const std::string&)>;

// One dependency triple: sentence_index is 0-based into the corpus file,
// object is empty for intransitives (serialized as "-").
struct TripleRecord {
  std::size_t sentence = 0;
  std::string subject;
  std::string verb;
  std::string object;

  bool transitive() const { return !object.empty(); }
};

// A phrase pattern to collect vectors for, with lemmas in surface order.
struct PhraseSpec {
  enum class Kind { SubjectVerb, SubjectVerbObject };

  Kind kind = Kind::SubjectVerb;
  std::string subject;
  std::string verb;
  std::string object;

  static PhraseSpec from_triple(const TripleRecord& t);
  // Phrase-token spelling used as the target row name: lemmas joined by '_'.
  std::string token() const;
  bool matches(const TripleRecord& t) const;
  bool operator==(const PhraseSpec&) const = default;
};

// A triple joined with the tokens of its sentence.
struct PhraseOccurrence {
  TripleRecord triple;
  std::vector<std::string> tokens;
};

// Whole-sentence co-occurrence counting: entry (t, c) is the number of
// (sentence, position) pairs where target t sees context c at another
// position of the same sentence.  A token never counts its own position.
SparseMatrix count_cooccurrences(std::istream& corpus, const Vocabulary& vocab,
                                 const WarningSink& warn = {});

// Adds one target row per distinct matching phrase; each occurrence
// contributes its sentence's full context profile to the phrase row.
// Occurrences whose verb is not named by any spec are skipped with a
// warning.  Rows appear in first-occurrence order; specs without
// occurrences get no row.
SparseMatrix count_phrase_occurrences(
    const std::vector<PhraseOccurrence>& occurrences,
    const std::vector<PhraseSpec>& specs, Vocabulary& vocab,
    const WarningSink& warn = {});

// Non-negative PMI: w(t,c) = max(0, ln(p(t,c) / (p(t) p(c)))), zero-count
// cells stay zero.  Marginals are taken over the full matrix, phrase rows
// included.  Natural log throughout.
SparseMatrix weight_pmi(const SparseMatrix& counts);

// Local mutual information: raw count times the clamped PMI score.
SparseMatrix weight_lmi(const SparseMatrix& counts);

// Frequency-based vocabulary: the `stoplist_size` most frequent tokens form
// the stoplist, contexts are the next `max_contexts` most frequent, targets
// the overall `max_targets` most frequent.  Ties break alphabetically.
Vocabulary build_vocabulary(std::istream& corpus, long max_targets,
                            long max_contexts, long stoplist_size);

// Streaming join of a triple file against its corpus; calls `fn` once per
// triple with the sentence's tokens.  Returns the number of corpus lines.
std::size_t for_each_triple_occurrence(
    std::istream& corpus, const std::vector<TripleRecord>& triples,
    const std::function<void(const PhraseOccurrence&)>& fn);

std::vector<TripleRecord> load_triples(const std::filesystem::path& path);
void save_triples(const std::filesystem::path& path,
                  const std::vector<TripleRecord>& triples);

std::vector<std::string> split_tokens(const std::string& line);
bool valid_utf8(const std::string& line);

}  // namespace compsem

#endif
