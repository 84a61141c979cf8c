#pragma once

#include <string>
#include <vector>

namespace diffalg {

struct CorpusSystem {
    std::string name;
    std::string text;  // system-file syntax
};

/// The worked examples shipped with the library.
const std::vector<CorpusSystem>& corpusSystems();
const CorpusSystem& corpusSystem(const std::string& name);

struct CorpusCheck {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Recomputes every golden value and compares exactly.
std::vector<CorpusCheck> runCorpus();

} // namespace diffalg
