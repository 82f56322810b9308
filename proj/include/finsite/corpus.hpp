#pragma once
#include <string>
#include <vector>

#include "finsite/io.hpp"

namespace finsite {

/// One bundled example: an input document plus its expected results. Every
/// expectation carries a provenance tag; "literature" expectations also name
/// the fact they quote.
struct Expectation {
    std::string id;
    std::string provenance; // literature | trivial | derived
    std::string cite;       // required for literature
    Json body;              // the full expectation object
};

struct CorpusEntry {
    std::string name;
    Json input;
    Document doc;
    std::vector<Expectation> expectations;
};

struct CheckResult {
    std::string entry;
    std::string id;
    bool pass = false;
    bool inconclusive = false;
    std::string detail;
};

CorpusEntry load_corpus_entry(const Json& j, const std::string& name_hint);
std::vector<CorpusEntry> load_corpus_dir(const std::string& dir);

std::vector<CheckResult> evaluate_entry(const CorpusEntry& entry);

struct CorpusReport {
    std::vector<CheckResult> results;
    int passed = 0, failed = 0, inconclusive = 0;
    std::string text;
    Json machine;
};

/// Runs every entry (threads = 1 for sequential); output is identical for
/// any thread count.
CorpusReport run_corpus(const std::vector<CorpusEntry>& entries, int threads);

} // namespace finsite
