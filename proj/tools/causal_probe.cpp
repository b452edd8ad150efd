#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "causalprobe/ci_tests.hpp"
#include "causalprobe/ensemble.hpp"
#include "causalprobe/errors.hpp"
#include "causalprobe/fci.hpp"
#include "causalprobe/feature_table.hpp"
#include "causalprobe/graph_io.hpp"
#include "causalprobe/normality.hpp"
#include "causalprobe/scm.hpp"
#include "causalprobe/sem.hpp"

namespace cp = causalprobe;

namespace {

void applyThreadCap() {
    const char* env = std::getenv("CAUSAL_PROBE_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    long t = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || t < 1) {
        throw cp::ValidationError("bad_thread_count",
                                  "CAUSAL_PROBE_THREADS must be a positive integer");
    }
    omp_set_num_threads(static_cast<int>(t));
}

std::string readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cp::ValidationError("file_not_found", "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw cp::ValidationError("cannot_write", "cannot write " + path);
    out << content << "\n";
}

// JSON goes to stdout unless --out redirects it to a file.
void emit(const std::string& json, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << json << "\n";
    } else {
        writeFile(outPath, json);
    }
}

std::string trimCopy(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> splitNames(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        piece = trimCopy(piece);
        if (!piece.empty()) out.push_back(piece);
    }
    return out;
}

void checkAlpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw cp::ValidationError("bad_alpha", "alpha must lie in (0,1), got " +
                                                   std::to_string(alpha));
    }
}

// Shared --vars/--schema resolution. Empty selections mean all columns.
struct TableSelection {
    std::string varsCsv;
    std::string schema;

    std::vector<std::string> schemaList() const {
        return schema.empty() ? std::vector<std::string>{} : cp::resolveSchema(schema);
    }

    std::vector<std::string> pick(const cp::FeatureTable& table) const {
        if (!varsCsv.empty() && !schema.empty()) {
            throw cp::ValidationError("bad_arguments",
                                      "--vars and --schema are mutually exclusive");
        }
        if (!varsCsv.empty()) return splitNames(varsCsv);
        if (!schema.empty()) return cp::resolveSchema(schema);
        return table.names;
    }
};

cp::FeatureTable selectColumns(const cp::FeatureTable& table,
                               const std::vector<std::string>& vars) {
    cp::FeatureTable out;
    for (const std::string& name : vars) {
        out.names.push_back(name);
        out.cols.push_back(table.cols[table.columnIndex(name)]);
    }
    return out;
}

cp::kernels::Matrix matrixFromTable(const cp::FeatureTable& table,
                                    const std::vector<std::string>& vars) {
    cp::kernels::Matrix m(table.nRows(), vars.size());
    for (std::size_t c = 0; c < vars.size(); ++c) {
        const std::vector<double>& col = table.cols[table.columnIndex(vars[c])];
        for (std::size_t r = 0; r < col.size(); ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
        }
    }
    return m;
}

struct DiscoverArgs {
    std::string data;
    TableSelection select;
    std::string test = "fisherz";
    std::string truth;
    double alpha = 0.05;
    int maxCondSize = 4;
    bool noStable = false;
    bool rulesR5R7 = false;
    bool ensemble = false;
    int runs = 30;
    double fraction = 0.8;
    double edgeThreshold = 0.5;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    std::string tracePath;
    std::string dumpRunsDir;
};

void runDiscover(const DiscoverArgs& args) {
    checkAlpha(args.alpha);
    if (args.maxCondSize < -1) {
        throw cp::ValidationError("bad_cond_size",
                                  "--max-cond-size must be -1 (unbounded) or >= 0");
    }
    if (args.runs < 1) {
        throw cp::ValidationError("bad_run_count", "--runs must be at least 1");
    }
    if (!(args.fraction > 0.0 && args.fraction <= 1.0)) {
        throw cp::ValidationError("bad_fraction", "--fraction must lie in (0,1]");
    }
    if (!(args.edgeThreshold > 0.0 && args.edgeThreshold <= 1.0)) {
        throw cp::ValidationError("bad_threshold",
                                  "--edge-threshold must lie in (0,1]");
    }
    if (args.format != "json" && args.format != "dot") {
        throw cp::ValidationError("bad_format", "--format must be json or dot");
    }
    if (args.test != "fisherz" && args.test != "kcit" && args.test != "oracle") {
        throw cp::ValidationError("bad_test", "--test must be fisherz, kcit or oracle");
    }
    if (args.test == "oracle" && args.truth.empty()) {
        throw cp::ValidationError("missing_truth", "--test oracle needs --truth");
    }
    if (args.ensemble && !args.tracePath.empty()) {
        throw cp::ValidationError("bad_arguments",
                                  "--trace is only available for single runs");
    }

    cp::FeatureTable table = cp::loadTable(args.data, args.select.schemaList());
    std::vector<std::string> vars = args.select.pick(table);
    cp::kernels::Matrix data = matrixFromTable(table, vars);

    std::shared_ptr<cp::Scm> truth;
    if (args.test == "oracle") {
        truth = std::make_shared<cp::Scm>(cp::scmFromJson(readFile(args.truth)));
    }

    cp::FciParams fci;
    fci.alpha = args.alpha;
    fci.maxCondSize = args.maxCondSize == -1 ? cp::kUnboundedCondSize : args.maxCondSize;
    fci.stableSkeleton = !args.noStable;
    fci.rulesR5R7 = args.rulesR5R7;

    auto makeTest = [&](const cp::kernels::Matrix& m,
                        std::uint64_t seed) -> std::unique_ptr<cp::CiTest> {
        if (args.test == "fisherz") {
            return std::make_unique<cp::FisherZTest>(m, args.alpha);
        }
        if (args.test == "kcit") {
            cp::KcitParams kp;
            kp.seed = seed;
            return std::make_unique<cp::KcitTest>(m, args.alpha, kp);
        }
        return std::make_unique<cp::OracleTest>(truth->dag, vars);
    };

    if (args.ensemble) {
        cp::EnsembleParams ep;
        ep.nRuns = args.runs;
        ep.subsampleFraction = args.fraction;
        ep.edgeThreshold = args.edgeThreshold;
        ep.seed = args.seed;
        ep.fci = fci;
        cp::EnsembleResult result = cp::runEnsemble(data, vars, makeTest, ep);
        if (!args.dumpRunsDir.empty()) {
            std::filesystem::create_directories(args.dumpRunsDir);
            for (const cp::EnsembleRun& run : result.runs) {
                if (!run.ok) continue;
                writeFile(args.dumpRunsDir + "/run_" + std::to_string(run.index) +
                              ".json",
                          cp::pagToJson(run.pag));
            }
        }
        emit(args.format == "dot" ? cp::pagToDot(result.consensus)
                                  : cp::ensembleResultToJson(result),
             args.out);
    } else {
        auto test = makeTest(data, args.seed);
        cp::FciResult result = cp::runFci(*test, vars, fci);
        if (!args.tracePath.empty()) {
            writeFile(args.tracePath, cp::traceToJson(result.trace, vars));
        }
        emit(cp::exportGraph(result.pag, args.format), args.out);
    }
}

std::string semSummaryTable(const cp::SemFit& fit) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    std::size_t metricW = 6, featureW = 7;
    for (const cp::SemParameter& p : fit.parameters) {
        if (p.kind != cp::SemParameter::Kind::Path) continue;
        metricW = std::max(metricW, p.to.size());
        featureW = std::max(featureW, p.from.size());
    }
    os << std::left << std::setw(static_cast<int>(metricW) + 2) << "metric"
       << std::setw(static_cast<int>(featureW) + 2) << "feature" << std::right
       << std::setw(10) << "estimate" << std::setw(14) << "standardized" << "\n";
    for (const cp::SemParameter& p : fit.parameters) {
        if (p.kind != cp::SemParameter::Kind::Path) continue;
        os << std::left << std::setw(static_cast<int>(metricW) + 2) << p.to
           << std::setw(static_cast<int>(featureW) + 2) << p.from << std::right
           << std::setw(10) << p.estimate << std::setw(14) << p.standardized << "\n";
    }
    const cp::FitIndices& fi = fit.indices;
    os << "chi_square=" << fi.chiSquare << " df=" << fi.df << " p=" << fi.pValue
       << " cfi=" << fi.cfi << " tli=" << fi.tli << " rmsea=" << fi.rmsea
       << " cmin_df=" << fi.cminDf << "\n";
    return os.str();
}

void runSemfit(const std::string& dataPath, const std::string& modelPath,
               const std::string& methodName, const std::string& outPath) {
    cp::SemMethod method = cp::semMethodFromName(methodName);
    cp::FeatureTable table = cp::loadTable(dataPath);
    cp::SemModel model = cp::loadSemModel(modelPath);
    cp::SemFit fit = cp::fitSem(model, table, method);
    std::string json = cp::semFitToJson(fit);
    emit(json, outPath);
    if (!outPath.empty()) std::cout << semSummaryTable(fit);
}

struct PipelineConfig {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }
    double getDouble(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        try {
            std::size_t pos = 0;
            double v = std::stod(kv.at(key), &pos);
            if (pos != kv.at(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw cp::ValidationError("bad_config", "config key '" + key +
                                                        "' is not a number");
        }
    }
    long getLong(const std::string& key, long fallback) const {
        if (!has(key)) return fallback;
        try {
            std::size_t pos = 0;
            long v = std::stol(kv.at(key), &pos);
            if (pos != kv.at(key).size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw cp::ValidationError("bad_config", "config key '" + key +
                                                        "' is not an integer");
        }
    }
    bool getBool(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string& v = kv.at(key);
        if (v == "true" || v == "1") return true;
        if (v == "false" || v == "0") return false;
        throw cp::ValidationError("bad_config",
                                  "config key '" + key + "' must be true or false");
    }
};

PipelineConfig parsePipelineConfig(const std::string& text) {
    static const std::set<std::string> kKnown = {
        "data",  "vars", "schema",   "alpha",         "test",   "truth",
        "ensemble", "runs", "fraction", "edge_threshold", "seed",
        "max_cond_size", "model", "method", "out_dir"};
    PipelineConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(ss, line)) {
        ++lineNo;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trimCopy(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw cp::ValidationError("bad_config",
                                      "config line " + std::to_string(lineNo) +
                                          ": expected key = value");
        }
        std::string key = trimCopy(line.substr(0, eq));
        std::string value = trimCopy(line.substr(eq + 1));
        if (!kKnown.count(key)) {
            throw cp::ValidationError("bad_config", "unknown config key '" + key + "'");
        }
        if (cfg.kv.count(key)) {
            throw cp::ValidationError("bad_config", "duplicate config key '" + key + "'");
        }
        cfg.kv[key] = value;
    }
    if (!cfg.has("data")) {
        throw cp::ValidationError("bad_config", "config needs a 'data' entry");
    }
    return cfg;
}

// normtest, then discovery when 'test' is set, then a SEM fit when 'model'
// is set; each stage's JSON lands in out_dir.
void runPipeline(const std::string& configPath) {
    PipelineConfig cfg = parsePipelineConfig(readFile(configPath));
    std::filesystem::path outDir = cfg.get("out_dir", ".");
    std::filesystem::create_directories(outDir);

    double alpha = cfg.getDouble("alpha", 0.05);
    checkAlpha(alpha);
    TableSelection select{cfg.get("vars"), cfg.get("schema")};

    cp::FeatureTable table = cp::loadTable(cfg.get("data"), select.schemaList());
    std::vector<std::string> vars = select.pick(table);

    std::string normPath = (outDir / "normtest.json").string();
    writeFile(normPath, cp::normalityReportToJson(
                            cp::normalityReport(selectColumns(table, vars), alpha)));
    std::cout << "wrote " << normPath << "\n";

    if (cfg.has("test")) {
        DiscoverArgs d;
        d.data = cfg.get("data");
        d.select = select;
        d.test = cfg.get("test");
        d.truth = cfg.get("truth");
        d.alpha = alpha;
        d.maxCondSize = static_cast<int>(cfg.getLong("max_cond_size", 4));
        // The ensemble is the protocol's default; single runs are opt-out.
        d.ensemble = cfg.getBool("ensemble", true);
        d.runs = static_cast<int>(cfg.getLong("runs", 30));
        d.fraction = cfg.getDouble("fraction", 0.8);
        d.edgeThreshold = cfg.getDouble("edge_threshold", 0.5);
        d.seed = static_cast<std::uint64_t>(cfg.getLong("seed", 0));
        d.out = (outDir / "discovery.json").string();
        runDiscover(d);
        std::cout << "wrote " << d.out << "\n";
    }

    if (cfg.has("model")) {
        std::string semPath = (outDir / "semfit.json").string();
        runSemfit(cfg.get("data"), cfg.get("model"), cfg.get("method", "ml"), semPath);
        std::cout << "wrote " << semPath << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"causal_probe: normality checks, FCI causal discovery with a "
                 "stability ensemble, SEM fitting, and synthetic benchmarks"};
    app.require_subcommand(1);

    // normtest
    auto* normtest = app.add_subcommand("normtest", "Shapiro-Wilk normality report");
    std::string ntData, ntOut;
    TableSelection ntSelect;
    double ntAlpha = 0.05;
    normtest->add_option("--data", ntData, "CSV input")->required();
    normtest->add_option("--vars", ntSelect.varsCsv, "comma-separated column names");
    normtest->add_option("--schema", ntSelect.schema,
                         "built-in schema name or schema file");
    normtest->add_option("--alpha", ntAlpha, "significance level");
    normtest->add_option("--out", ntOut, "write JSON here instead of stdout");
    normtest->callback([&] {
        checkAlpha(ntAlpha);
        cp::FeatureTable table = cp::loadTable(ntData, ntSelect.schemaList());
        cp::FeatureTable picked = selectColumns(table, ntSelect.pick(table));
        emit(cp::normalityReportToJson(cp::normalityReport(picked, ntAlpha)), ntOut);
    });

    // discover
    auto* discover = app.add_subcommand("discover", "FCI causal discovery");
    DiscoverArgs da;
    discover->add_option("--data", da.data, "CSV input")->required();
    discover->add_option("--vars", da.select.varsCsv, "comma-separated column names");
    discover->add_option("--schema", da.select.schema,
                         "built-in schema name or schema file");
    discover->add_option("--test", da.test, "fisherz, kcit or oracle")->required();
    discover->add_option("--truth", da.truth, "ground-truth JSON for --test oracle");
    discover->add_option("--alpha", da.alpha, "significance level");
    discover->add_option("--max-cond-size", da.maxCondSize,
                         "conditioning set cap, -1 for unbounded");
    discover->add_flag("--no-stable", da.noStable,
                       "use the order-dependent skeleton variant");
    discover->add_flag("--selection-rules", da.rulesR5R7,
                       "apply the selection-bias orientation rules R5-R7");
    discover->add_flag("--ensemble", da.ensemble, "subsampled stability ensemble");
    discover->add_option("--runs", da.runs, "ensemble runs");
    discover->add_option("--fraction", da.fraction, "subsample fraction");
    discover->add_option("--edge-threshold", da.edgeThreshold,
                         "consensus keeps edges with support above this");
    discover->add_option("--dump-runs", da.dumpRunsDir,
                         "directory for per-run ensemble graphs");
    discover->add_option("--seed", da.seed, "RNG seed");
    discover->add_option("--out", da.out, "write output here instead of stdout");
    discover->add_option("--format", da.format, "json or dot");
    discover->add_option("--trace", da.tracePath, "write the decision trace here");
    discover->callback([&] { runDiscover(da); });

    // semfit
    auto* semfit = app.add_subcommand("semfit", "structural equation model fit");
    std::string sfData, sfModel, sfMethod = "ml", sfOut;
    semfit->add_option("--data", sfData, "CSV input")->required();
    semfit->add_option("--model", sfModel, "model specification file")->required();
    semfit->add_option("--method", sfMethod, "ml or gls");
    semfit->add_option("--out", sfOut, "write JSON here instead of stdout");
    semfit->callback([&] { runSemfit(sfData, sfModel, sfMethod, sfOut); });

    // synth
    auto* synth = app.add_subcommand("synth", "sample a random SCM benchmark");
    int syObserved = 6, syLatent = 1, syRows = 1000;
    double syEdgeProb = 0.3;
    std::string syMechanism = "linear", syDataOut, syTruthOut;
    std::uint64_t sySeed = 0;
    synth->add_option("--observed", syObserved, "observed variable count");
    synth->add_option("--latent", syLatent, "latent confounder count");
    synth->add_option("--edge-prob", syEdgeProb, "edge inclusion probability");
    synth->add_option("--rows", syRows, "sample size");
    synth->add_option("--mechanism", syMechanism, "linear or quadratic_mix");
    synth->add_option("--seed", sySeed, "RNG seed");
    synth->add_option("--data-out", syDataOut, "CSV output path")->required();
    synth->add_option("--truth-out", syTruthOut, "truth JSON output path")->required();
    synth->callback([&] {
        if (syRows < 1) throw cp::ValidationError("bad_row_count", "--rows must be >= 1");
        cp::Scm scm = cp::randomScm(syObserved, syLatent, syEdgeProb, sySeed,
                                    cp::mechanismFromName(syMechanism));
        // Data seed is offset so structure and noise draws stay decoupled.
        cp::FeatureTable data = cp::sampleData(scm, syRows, sySeed + 1);
        cp::saveTable(data, syDataOut);
        writeFile(syTruthOut, cp::scmToJson(scm));
        std::cout << "{\"data\": \"" << syDataOut << "\", \"truth\": \"" << syTruthOut
                  << "\", \"nodes\": " << scm.dag.nNodes()
                  << ", \"edges\": " << scm.dag.edges().size() << "}\n";
    });

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "score a graph against a truth");
    std::string evGraph, evTruth, evOut;
    evaluate->add_option("--graph", evGraph, "estimated PAG JSON")->required();
    evaluate->add_option("--truth", evTruth, "ground-truth SCM JSON")->required();
    evaluate->add_option("--out", evOut, "write JSON here instead of stdout");
    evaluate->callback([&] {
        cp::Pag pag = cp::pagFromJson(readFile(evGraph));
        cp::Scm truth = cp::scmFromJson(readFile(evTruth));
        emit(cp::graphScoreToJson(cp::scoreGraph(pag, truth)), evOut);
    });

    // pipeline
    auto* pipeline = app.add_subcommand(
        "pipeline", "normtest -> discover -> semfit from a key=value config");
    std::string plConfig;
    pipeline->add_option("--config", plConfig, "configuration file")->required();
    pipeline->callback([&] { runPipeline(plConfig); });

    try {
        applyThreadCap();
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cp::Error& e) {
        std::cerr << e.id() << ": " << e.what() << "\n";
        return e.kind() == cp::ErrorKind::Validation ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "internal_error: " << e.what() << "\n";
        return 3;
    }
}
