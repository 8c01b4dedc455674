// gs: command-line front end. Exit status 0 on success or a positive verdict, 1 on a negative
// verdict, 2 on malformed input, limits and other errors.

#include "gs/connectives.hpp"
#include "gs/formula.hpp"
#include "gs/inference.hpp"
#include "gs/modular.hpp"
#include "gs/prover.hpp"
#include "gs/sequent.hpp"
#include "gs/suite.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gs;
namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0, kNegative = 1, kError = 2;

// A file name, or the text itself when no such file exists.
std::string contents(const std::string& arg) {
    std::error_code ec;
    if (fs::is_regular_file(arg, ec)) return readFile(arg);
    return arg;
}

bool looksLikeGraph(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    while (in >> word) {
        if (word[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        return word == "vertex" || word == "edge";
    }
    return true;   // only comments: the empty graph
}

std::string stripComments(const std::string& text) {
    std::istringstream in(text);
    std::string out, line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        out += line + " ";
    }
    return out;
}

// graph files, formula files and inline formulas
Graph loadGraph(const std::string& arg) {
    std::string text = contents(arg);
    if (looksLikeGraph(text)) return parseGraph(text);
    return toGraph(parseFormula(stripComments(text)));
}

struct ProveOptions {
    std::string rules = "gs";
    bool analytic = false;
    std::size_t limit = 12;
    std::string emit;
};

ProverConfig configFor(const ProveOptions& o) {
    ProverConfig c;
    if (o.rules == "gs") c.rules = RuleSet::gs();
    else if (o.rules == "gs+ssup") c.rules = RuleSet::gsSsUp();
    else if (o.rules == "gs+gdown") c.rules = RuleSet::gsGDown();
    else throw std::invalid_argument("unknown rule set '" + o.rules + "'");
    c.vertexLimit = o.limit;
    if (o.analytic) {
        c.rules = RuleSet::gsSsUp();
        c.analyticPruning = true;
    }
    return c;
}

void addProveOptions(CLI::App* cmd, ProveOptions& o) {
    cmd->add_option("--rules", o.rules, "rule set searched")->check(CLI::IsMember({"gs", "gs+ssup", "gs+gdown"}));
    cmd->add_flag("--analytic", o.analytic, "GS with ss_up, pruned to analytic premises");
    cmd->add_option("--limit", o.limit, "largest graph searched, in vertices");
    cmd->add_option("--emit", o.emit, "write the proof to this file");
}

int runProver(const Graph& g, const ProveOptions& o) {
    ProofResult r = Prover(configFor(o)).run(g);
    switch (r.verdict) {
        case Verdict::Limit: std::cout << "limit: " << r.message << "\n"; return kError;
        case Verdict::Refuted: std::cout << "not provable\n"; return kNegative;
        case Verdict::Provable: break;
    }
    std::cout << "provable, " << r.proof->length() << " steps\n";
    if (!o.emit.empty()) {
        std::ofstream out(o.emit);
        if (!out) throw std::runtime_error("cannot write " + o.emit);
        out << formatDerivation(*r.proof);
    }
    return kOk;
}

RuleSet parseRuleSet(const std::string& s) {
    if (s == "gs") return RuleSet::gs();
    if (s == "gs+ssup") return RuleSet::gsSsUp();
    if (s == "gs+gdown") return RuleSet::gsGDown();
    if (s == "sgs") return RuleSet::sgs();
    return RuleSet::all();
}

int connectivesCommand(const std::vector<std::string>& orth, const std::string& stab, const std::string& comp, bool census) {
    bool any = false;
    if (!orth.empty()) {
        any = true;
        Partition p = parsePartition(orth.at(0)), q = parsePartition(orth.at(1));
        IncidenceGraph g = incidenceGraph(p, q);
        bool o = orthogonal(p, q);
        std::cout << formatPartition(p) << (o ? " is" : " is not") << " orthogonal to " << formatPartition(q) << " ("
                  << g.edges.size() << " edges, " << g.componentCount() << (g.componentCount() == 1 ? " component, " : " components, ")
                  << (g.acyclic() ? "acyclic" : "cyclic") << ")\n";
        if (!stab.empty() || !comp.empty() || census) std::cout << "\n";
        if (!o && stab.empty() && comp.empty() && !census) return kNegative;
    }
    if (!stab.empty()) {
        any = true;
        auto s = stabilizerGroup(parsePartitionSet(stab));
        std::cout << "stabilizer of order " << s.size() << ":";
        for (const auto& p : s) std::cout << " " << formatCycles(p);
        std::cout << "\n";
    }
    if (!comp.empty()) {
        any = true;
        PartitionSet s = parsePartitionSet(comp);
        auto c = orthogonalComplement(s);
        if (c.empty()) {
            std::cout << "no partition is orthogonal to " << formatPartitionSet(s) << "\n";
            return kNegative;
        }
        std::cout << formatPartitionSet(PartitionSet::make(s.n, c)) << "\n";
    }
    if (census || !any) {
        PartitionSet g4 = g4Partitions();
        PartitionSet g4d = PartitionSet::make(4, orthogonalComplement(g4));
        auto sg = stabilizerGroup(g4);
        auto pc = primeGraphCensus();
        auto cc = connectiveCensus(4);
        std::cout << "G4          " << formatPartitionSet(g4) << "\n"
                  << "dual of G4  " << formatPartitionSet(g4d) << "\n"
                  << "stabilizer  order " << sg.size() << ", " << 24 / sg.size() << " instances\n"
                  << "P4          " << automorphismGroup(pathP4()).size() << " automorphisms, " << pc.instances
                  << " instances, " << pc.dualPairs << " dual pairs\n"
                  << "partitions  " << cc.nonDecomposableDualPairs << " non-decomposable dual pairs on 4 inputs\n";
    }
    return kOk;
}

int paperSuite(const std::string& topic, const std::string& manifest, const std::string& artifacts,
               const std::string& json, bool timing) {
    fs::path m = manifest.empty() ? fs::path("corpus/manifest.txt") : fs::path(manifest);
    auto entries = parseManifest(readFile(m));
    SuiteOptions opts;
    opts.topic = topic;
    opts.artifactDir = artifacts;
    if (!topic.empty() &&
        std::none_of(entries.begin(), entries.end(), [&](const ManifestEntry& e) { return e.topic == topic; }))
        throw std::invalid_argument("no cases with topic '" + topic + "'");
    ExperimentReport rep = runSuite(m.parent_path(), entries, opts);
    std::cout << formatReport(rep, timing);
    if (!json.empty()) {
        nlohmann::json j;
        j["experiment"] = rep.id;
        j["passed"] = rep.passed();
        j["total"] = rep.cases.size();
        for (const CaseResult& c : rep.cases) {
            nlohmann::json k = {{"file", c.entry.file},     {"topic", c.entry.topic}, {"expected", c.entry.expected},
                                {"actual", c.actual},       {"detail", c.detail},     {"description", c.description},
                                {"ok", c.pass()}};
            if (!c.artifact.empty()) k["artifact"] = c.artifact;
            if (timing) k["seconds"] = c.seconds;
            j["cases"].push_back(k);
        }
        std::ofstream(json) << j.dump(2) << "\n";
    }
    return rep.allPassed() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Proof search and tools for graphs as generalised formulas"};
    app.require_subcommand(1);
    int status = kOk;

    ProveOptions po;
    std::string input, input2;
    auto* prove = app.add_subcommand("prove", "search a GS proof of a graph or formula");
    prove->add_option("input", input, "graph file, formula file or formula")->required();
    addProveOptions(prove, po);
    prove->callback([&] { status = runProver(loadGraph(input), po); });

    ProveOptions io;
    auto* implies = app.add_subcommand("implies", "search a proof of A -o B");
    implies->add_option("a", input, "premise")->required();
    implies->add_option("b", input2, "conclusion")->required();
    addProveOptions(implies, io);
    implies->callback([&] { status = runProver(par(dual(loadGraph(input)), loadGraph(input2)), io); });

    std::string checkRules = "all";
    auto* check = app.add_subcommand("check", "check a derivation file");
    check->add_option("proof", input, "derivation file")->required();
    check->add_option("--rules", checkRules, "rules allowed")->check(CLI::IsMember({"gs", "gs+ssup", "gs+gdown", "sgs", "all"}));
    check->callback([&] {
        Derivation d = parseDerivation(contents(input));
        CheckResult r = checkDerivation(d, parseRuleSet(checkRules));
        if (!r.ok) {
            std::cout << "invalid: step " << r.failedStep << ": " << r.message << "\n";
            status = kNegative;
            return;
        }
        RuleSet used;
        for (const auto& s : d.steps) used = used.with(s.rule);
        std::cout << "valid " << (d.isProof() ? "proof" : "derivation") << ", " << d.length() << " steps, rules "
                  << used.str() << "\n";
    });

    auto* decomp = app.add_subcommand("decompose", "print the modular decomposition");
    decomp->add_option("graph", input)->required();
    decomp->callback([&] { std::cout << formatTree(decompose(loadGraph(input))) << "\n"; });

    auto* dualCmd = app.add_subcommand("dual", "print the dual graph");
    dualCmd->add_option("graph", input)->required();
    dualCmd->callback([&] { std::cout << formatGraph(dual(loadGraph(input))); });

    auto* isoCmd = app.add_subcommand("iso", "decide isomorphism");
    isoCmd->add_option("a", input)->required();
    isoCmd->add_option("b", input2)->required();
    isoCmd->callback([&] {
        auto f = findIsomorphism(loadGraph(input), loadGraph(input2));
        if (!f) {
            std::cout << "not isomorphic\n";
            status = kNegative;
            return;
        }
        std::cout << "isomorphic:";
        for (auto [v, w] : *f) std::cout << " " << v << "->" << w;
        std::cout << "\n";
    });

    auto* toG = app.add_subcommand("to-graph", "graph of a formula");
    toG->add_option("formula", input)->required();
    toG->callback([&] { std::cout << formatGraph(toGraph(parseFormula(stripComments(contents(input))))); });

    bool unicode = false;
    auto* toF = app.add_subcommand("to-formula", "formula of a cograph");
    toF->add_option("graph", input)->required();
    toF->add_flag("--unicode", unicode);
    toF->callback([&] {
        auto f = fromCograph(loadGraph(input));
        if (!f) {
            std::cout << "not a cograph\n";
            status = kNegative;
            return;
        }
        std::cout << (unicode ? formatUnicode(*f) : formatAscii(*f)) << "\n";
    });

    auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
    dot->add_option("graph", input)->required();
    dot->callback([&] { std::cout << toDot(loadGraph(input)); });

    bool g4 = false;
    auto* mll = app.add_subcommand("mll-prove", "sequent proof search in MLL with mix");
    mll->add_option("sequent", input, "sequent file or comma-separated formulas")->required();
    mll->add_flag("--g4", g4, "add the rules of G4 and its dual");
    mll->callback([&] {
        Sequent s = parseSequent(stripComments(contents(input)));
        auto p = g4 ? proveMllG4(s) : proveMll(s);
        if (!p) {
            std::cout << "not provable\n";
            status = kNegative;
            return;
        }
        std::cout << formatSequentProof(*p);
    });

    std::vector<std::string> orth;
    std::string stab, comp;
    bool census = false;
    auto* conn = app.add_subcommand("connectives", "connectives as partitions");
    conn->add_option("--orthogonal", orth, "two partitions, e.g. {{1,3},{2}} {{1},{2,3}}")->expected(2);
    conn->add_option("--stabilizer", stab, "partition set");
    conn->add_option("--complement", comp, "partition set");
    conn->add_flag("--census", census, "G4 and P4 summary");
    conn->callback([&] { status = connectivesCommand(orth, stab, comp, census); });

    std::string topic, manifest, artifacts, json;
    bool timing = false;
    auto* suite = app.add_subcommand("paper-suite", "run the example corpus against its manifest");
    suite->add_option("--section", topic, "opening, decomposition, derivations, mll, splitting, connectives, separation");
    suite->add_option("--manifest", manifest, "default corpus/manifest.txt");
    suite->add_option("--artifacts", artifacts, "directory for emitted proofs");
    suite->add_option("--json", json, "also write the report as JSON");
    suite->add_flag("--timing", timing, "include timings");
    suite->callback([&] { status = paperSuite(topic, manifest, artifacts, json, timing); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kError;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kError;
    } catch (const LimitError& e) {
        std::cerr << "limit: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return status;
}
