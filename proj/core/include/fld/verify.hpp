#pragma once

#include <string>
#include <vector>

#include "fld/arguments.hpp"
#include "fld/dataset.hpp"

namespace fld {

struct Violation {
  std::size_t index = 0;  // 0-based instance index
  std::string reason;
};

// True when some scheme instantiates to exactly these premises and this
// conclusion. Premise order is tried as given first, then permuted.
bool step_matches_some_scheme(const std::vector<ArgumentScheme>& schemes,
                              const std::vector<Formula>& premises, const Formula& conclusion);

// Full instance audit: step structure and id discipline, re-matching of
// every proof step against the scheme set, fact-set consistency, label
// certification, and the compound size bound. At most one violation is
// reported per instance.
std::vector<Violation> verify_records(const std::vector<CorpusRecord>& records,
                                      const std::vector<ArgumentScheme>& schemes);
std::vector<Violation> verify_corpus(const std::string& path,
                                     const std::vector<ArgumentScheme>& schemes);

}  // namespace fld
