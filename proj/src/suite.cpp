#include "gs/suite.hpp"

#include "gs/formula.hpp"
#include "gs/inference.hpp"
#include "gs/sequent.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gs {

const std::vector<std::string>& knownVerdicts() {
    static const std::vector<std::string> v = {"provable", "not-provable", "not-cograph", "valid", "mll-provable",
                                               "mll-not-provable"};
    return v;
}

std::vector<ManifestEntry> parseManifest(std::string_view text) {
    std::vector<ManifestEntry> out;
    std::istringstream in{std::string(text)};
    std::string line;
    for (std::size_t no = 1; std::getline(in, line); ++no) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream fields(line);
        std::vector<std::string> f;
        for (std::string w; fields >> w;) f.push_back(w);
        if (f.empty()) continue;
        if (f.size() != 3) throw ParseError("expected `file verdict topic`", no, 1);
        const auto& known = knownVerdicts();
        if (std::find(known.begin(), known.end(), f[1]) == known.end())
            throw ParseError("unknown verdict '" + f[1] + "'", no, line.find(f[1]) + 1);
        out.push_back({f[0], f[1], f[2]});
    }
    return out;
}

std::string readFile(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

bool ExperimentReport::allPassed() const { return passed() == cases.size(); }

std::size_t ExperimentReport::passed() const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass(); }));
}

namespace {

std::string firstComment(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] != '#') return {};
        auto body = line.find_first_not_of(" \t#", start);
        return body == std::string::npos ? std::string() : line.substr(body);
    }
    return {};
}

std::string withoutComments(const std::string& text) {
    std::istringstream in(text);
    std::string out, line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        out += line + "\n";
    }
    return out;
}

void evaluate(const std::filesystem::path& path, const std::string& text, CaseResult& r, const SuiteOptions& opts) {
    const std::string& want = r.entry.expected;
    if (want == "provable" || want == "not-provable") {
        Graph g = parseGraph(text);
        ProofResult res = Prover(opts.prover).run(g);
        if (res.verdict == Verdict::Limit) {
            r.actual = "limit";
            r.detail = res.message;
            return;
        }
        if (res.verdict == Verdict::Refuted) {
            r.actual = "not-provable";
            return;
        }
        CheckResult chk = checkDerivation(*res.proof, opts.prover.rules);
        if (!chk.ok || !res.proof->isProof() || res.proof->conclusion != g) {
            r.actual = "invalid-proof";
            r.detail = chk.message;
            return;
        }
        r.actual = "provable";
        r.detail = std::to_string(res.proof->length()) + " steps";
        if (!opts.artifactDir.empty()) {
            std::filesystem::create_directories(opts.artifactDir);
            auto out = opts.artifactDir / (path.stem().string() + ".proof");
            std::ofstream(out) << formatDerivation(*res.proof);
            r.artifact = out.string();
        }
    } else if (want == "not-cograph") {
        r.actual = fromCograph(parseGraph(text)) ? "cograph" : "not-cograph";
    } else if (want == "valid") {
        Derivation d = parseDerivation(text);
        CheckResult chk = checkDerivation(d, RuleSet::all());
        r.actual = chk.ok ? "valid" : "invalid";
        r.detail = chk.ok ? std::to_string(d.length()) + " steps" : "step " + std::to_string(chk.failedStep) + ": " + chk.message;
    } else {
        Sequent s = parseSequent(withoutComments(text));
        auto p = proveMllG4(s);
        if (p && !checkSequentProof(*p)) {
            r.actual = "invalid-proof";
            return;
        }
        r.actual = p ? "mll-provable" : "mll-not-provable";
        if (p) r.detail = std::to_string(p->size()) + " rule instances";
    }
}

}  // namespace

ExperimentReport runSuite(const std::filesystem::path& corpusDir, const std::vector<ManifestEntry>& cases,
                          const SuiteOptions& opts) {
    ExperimentReport rep;
    rep.id = opts.topic.empty() ? "all" : opts.topic;
    for (const ManifestEntry& e : cases) {
        if (!opts.topic.empty() && e.topic != opts.topic) continue;
        CaseResult r;
        r.entry = e;
        auto t0 = std::chrono::steady_clock::now();
        try {
            std::filesystem::path path = corpusDir / e.file;
            std::string text = readFile(path);
            r.description = firstComment(text);
            evaluate(path, text, r, opts);
        } catch (const LimitError& ex) {
            r.actual = "limit";
            r.detail = ex.what();
        } catch (const std::exception& ex) {
            r.actual = "error";
            r.detail = ex.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep.cases.push_back(std::move(r));
    }
    return rep;
}

std::string formatReport(const ExperimentReport& r, bool timing) {
    std::string out;
    char buf[64];
    for (const CaseResult& c : r.cases) {
        out += c.pass() ? "ok    " : "FAIL  ";
        std::string file = c.entry.file;
        file.resize(std::max<std::size_t>(file.size(), 40), ' ');
        out += file + " expected " + c.entry.expected + ", got " + c.actual;
        if (!c.detail.empty()) out += " (" + c.detail + ")";
        if (timing) {
            std::snprintf(buf, sizeof buf, " [%.3f s]", c.seconds);
            out += buf;
        }
        out += "\n";
    }
    out += std::to_string(r.passed()) + "/" + std::to_string(r.cases.size()) + " cases as expected";
    if (timing) {
        double total = 0;
        for (const CaseResult& c : r.cases) total += c.seconds;
        std::snprintf(buf, sizeof buf, " in %.2f s", total);
        out += buf;
    }
    return out + "\n";
}

}  // namespace gs
