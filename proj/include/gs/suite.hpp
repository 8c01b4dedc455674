#pragma once

#include "gs/prover.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace gs {

// One line of a corpus manifest: `file expected-verdict topic`; `#` starts a comment.
struct ManifestEntry {
    std::string file;
    std::string expected;
    std::string topic;
};

// Throws ParseError on lines with the wrong number of fields or an unknown verdict.
std::vector<ManifestEntry> parseManifest(std::string_view text);
const std::vector<std::string>& knownVerdicts();

struct CaseResult {
    ManifestEntry entry;
    std::string description;   // the first comment line of the file
    std::string actual;
    std::string detail;        // proof length, error message, ...
    std::string artifact;      // path of the emitted proof, if any
    double seconds = 0;
    bool pass() const { return actual == entry.expected; }
};

struct ExperimentReport {
    std::string id;
    std::vector<CaseResult> cases;
    bool allPassed() const;
    std::size_t passed() const;
};

struct SuiteOptions {
    std::string topic;                   // empty runs every case
    std::filesystem::path artifactDir;   // empty emits nothing
    ProverConfig prover = [] {
        ProverConfig c;
        c.vertexLimit = 16;
        return c;
    }();
};

// Runs the cases in manifest order; file names are relative to corpusDir.
ExperimentReport runSuite(const std::filesystem::path& corpusDir, const std::vector<ManifestEntry>& cases,
                          const SuiteOptions& opts = {});
// one line per case and a summary; timings only when asked, so the default output is reproducible
std::string formatReport(const ExperimentReport& r, bool timing = false);

std::string readFile(const std::filesystem::path& p);   // throws std::runtime_error

}  // namespace gs
