#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wps {

// Built-in worked examples with their expected verdicts. Each entry keeps
// its input documents as serialized text (so they can be dumped and
// re-parsed) and a self-check that reproduces the expected outcome.
struct CorpusEntry {
    std::string name;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> documents;  // (name, json text)
    std::function<bool(std::ostream&, unsigned seed)> run;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry* corpus_find(const std::string& name);

}  // namespace wps
