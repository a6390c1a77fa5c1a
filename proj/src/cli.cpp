#include "hodgeseq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "hodgeseq/eigenbasis.hpp"
#include "hodgeseq/errors.hpp"
#include "hodgeseq/io.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "cli";

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw HodgeseqError(ErrorKind::Input, kModule, "cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw HodgeseqError(ErrorKind::Input, kModule, path + ": " + e.what());
    }
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw HodgeseqError(ErrorKind::Input, kModule, "cannot write " + out_path);
    }
    out << text;
}

void write_json(const std::string& out_path, const nlohmann::json& j) {
    write_text(out_path, j.dump(2) + "\n");
}

std::size_t cell_budget_from_env() {
    const char* raw = std::getenv("HODGESEQ_CELL_BUDGET");
    if (!raw) return BuildOptions{}.cell_budget;
    char* end = nullptr;
    unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            std::string("HODGESEQ_CELL_BUDGET must be a positive integer, got \"") +
                                raw + "\"");
    }
    return static_cast<std::size_t>(value);
}

// Flag values shared across subcommands; each subcommand binds the subset it
// understands.
struct JobConfig {
    std::string complex_path;
    std::string weights_path;
    std::string model_weights_path;
    std::string cochain_path;
    std::string corpus_path;
    std::string out_path;
    std::string format = "csv";
    std::string theorem;
    std::string scaling = "none";
    std::string base_vertex;
    std::string dims_text;
    std::optional<int> dim;
    int components = 0;
    int max_dim = 0;
    int trials = 100;
    unsigned int seed = 12345;
    double tol = 0.0; // 0 = per-command default
    double cluster_tol = 1e-8;
    double smoothing = 0.0;
    bool no_augmentation = false;
    bool list_cells = false;
    bool validate = false;
};

std::pair<int, int> parse_dim_range(const JobConfig& config) {
    if (config.dim && !config.dims_text.empty()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "give either --dim or --dims, not both");
    }
    if (config.dim) return {*config.dim, *config.dim};
    if (config.dims_text.empty()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "a dimension is required: --dim N or --dims A..B");
    }
    std::size_t sep = config.dims_text.find("..");
    if (sep == std::string::npos) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "--dims expects A..B, got \"" + config.dims_text + "\"");
    }
    try {
        int lo = std::stoi(config.dims_text.substr(0, sep));
        int hi = std::stoi(config.dims_text.substr(sep + 2));
        if (lo > hi) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "--dims range is empty: " + config.dims_text);
        }
        return {lo, hi};
    } catch (const HodgeseqError&) {
        throw;
    } catch (const std::exception&) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "--dims expects integer bounds, got \"" + config.dims_text + "\"");
    }
}

struct Workspace {
    ComplexSpec spec;
    ComplexIndex complex = ComplexIndex::full_sequence(1, -1);
    nlohmann::json weights_json; // null when no --weights was given
};

// The complex comes from --complex, or from a "complex" member embedded in
// the weights file (ingest output has both shapes).
Workspace load_workspace(const JobConfig& config, bool weights_required) {
    Workspace ws;
    nlohmann::json spec_json;
    if (!config.weights_path.empty()) {
        ws.weights_json = load_json_file(config.weights_path);
    } else if (weights_required) {
        throw HodgeseqError(ErrorKind::Input, kModule, "--weights is required");
    }
    if (!config.complex_path.empty()) {
        nlohmann::json j = load_json_file(config.complex_path);
        spec_json = j.contains("complex") ? j["complex"] : j;
    } else if (ws.weights_json.is_object() && ws.weights_json.contains("complex")) {
        spec_json = ws.weights_json["complex"];
    } else {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "no complex given: pass --complex, or --weights with an embedded one");
    }
    ws.spec = complex_spec_from_json(spec_json);
    if (config.no_augmentation) ws.spec.augmented = false;
    BuildOptions options;
    options.cell_budget = cell_budget_from_env();
    ws.complex = build_complex(ws.spec, options);
    return ws;
}

WeightFunction load_weights(const Workspace& ws) {
    return weights_from_json(ws.weights_json, ws.complex, ws.spec.vocabulary);
}

VertexId resolve_base_vertex(const JobConfig& config, const Vocabulary& vocabulary) {
    if (config.base_vertex.empty()) return 0;
    return vocabulary.id(config.base_vertex);
}

nlohmann::json check_to_json(const CheckResult& check) {
    nlohmann::json j;
    j["name"] = check.name;
    j["pass"] = check.pass;
    j["measured"] = check.measured;
    j["threshold"] = check.threshold;
    if (!check.details.empty()) j["details"] = check.details;
    return j;
}

nlohmann::json report_to_json(const VerificationReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& check : report.checks) checks.push_back(check_to_json(check));
    nlohmann::json j;
    j["pass"] = report.pass;
    j["checks"] = std::move(checks);
    return j;
}

const CheckResult* first_failure(const VerificationReport& report) {
    for (const CheckResult& check : report.checks) {
        if (!check.pass) return &check;
    }
    return nullptr;
}

int finish_verify(const JobConfig& config, const std::string& theorem, bool pass,
                  nlohmann::json report, const CheckResult* failure) {
    report["theorem"] = theorem;
    report["pass"] = pass;
    write_json(config.out_path, report);
    if (pass) {
        std::cerr << "verify " << theorem << ": PASS\n";
        return 0;
    }
    std::cerr << "verify " << theorem << ": FAIL";
    if (failure) {
        std::cerr << " (" << failure->name << ": measured " << format_double(failure->measured)
                  << ", threshold " << format_double(failure->threshold) << ")";
    }
    std::cerr << "\n";
    return 1;
}

int run_build(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/false);
    nlohmann::json out;
    out["complex"] = complex_spec_to_json(ws.spec);
    nlohmann::json counts;
    for (int n = ws.complex.min_dim(); n <= ws.complex.top_dim(); ++n) {
        counts[std::to_string(n)] = ws.complex.cell_count(n);
    }
    out["counts"] = std::move(counts);
    if (config.list_cells) {
        nlohmann::json cells;
        for (int n = ws.complex.min_dim(); n <= ws.complex.top_dim(); ++n) {
            nlohmann::json level = nlohmann::json::array();
            for (std::size_t i = 0; i < ws.complex.cell_count(n); ++i) {
                level.push_back(cell_name(ws.complex.cell_at(n, i), ws.spec.vocabulary.names()));
            }
            cells[std::to_string(n)] = std::move(level);
        }
        out["cells"] = std::move(cells);
    }
    if (config.validate) {
        ValidationReport validation = validate_acc(ws.complex);
        nlohmann::json v;
        v["pass"] = validation.pass;
        if (!validation.pass) v["failure"] = validation.failure;
        out["validation"] = std::move(v);
        if (!validation.pass) {
            write_json(config.out_path, out);
            std::cerr << "build: validation failed: " << validation.failure << "\n";
            return 1;
        }
    }
    write_json(config.out_path, out);
    return 0;
}

int run_laplacian(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/true);
    WeightFunction w = load_weights(ws);
    auto [lo, hi] = parse_dim_range(config);
    if (lo != hi) {
        throw HodgeseqError(ErrorKind::Input, kModule, "laplacian expects a single --dim");
    }
    LaplacianBundle bundle = laplacian(ws.complex, w, lo);
    std::vector<std::string> names;
    names.reserve(ws.complex.cell_count(lo));
    for (std::size_t i = 0; i < ws.complex.cell_count(lo); ++i) {
        names.push_back(cell_name(ws.complex.cell_at(lo, i), ws.spec.vocabulary.names()));
    }
    if (config.format == "json") {
        nlohmann::json out;
        out["dim"] = lo;
        out["cells"] = names;
        nlohmann::json rows = nlohmann::json::array();
        for (Eigen::Index r = 0; r < bundle.full.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (Eigen::Index c = 0; c < bundle.full.cols(); ++c) row.push_back(bundle.full(r, c));
            rows.push_back(std::move(row));
        }
        out["entries"] = std::move(rows);
        write_json(config.out_path, out);
        return 0;
    }
    std::ostringstream out;
    out << "cell";
    for (const std::string& name : names) out << ',' << csv_escape(name);
    out << '\n';
    for (Eigen::Index r = 0; r < bundle.full.rows(); ++r) {
        out << csv_escape(names[static_cast<std::size_t>(r)]);
        for (Eigen::Index c = 0; c < bundle.full.cols(); ++c) {
            out << ',' << format_double(bundle.full(r, c));
        }
        out << '\n';
    }
    write_text(config.out_path, out.str());
    return 0;
}

int run_spectrum(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/true);
    WeightFunction w = load_weights(ws);
    auto [lo, hi] = parse_dim_range(config);
    std::vector<SpectrumReport> reports;
    for (int n = lo; n <= hi; ++n) {
        reports.push_back(spectrum(laplacian(ws.complex, w, n), config.cluster_tol));
    }
    if (config.format == "json") {
        nlohmann::json dims = nlohmann::json::array();
        for (const SpectrumReport& report : reports) {
            nlohmann::json entry;
            entry["dim"] = report.dim;
            entry["betti"] = report.betti;
            nlohmann::json eigenvalues = nlohmann::json::array();
            for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
                eigenvalues.push_back(report.eigenvalues(i));
            }
            entry["eigenvalues"] = std::move(eigenvalues);
            nlohmann::json clusters = nlohmann::json::array();
            for (const EigenCluster& cluster : report.clusters) {
                nlohmann::json c;
                c["eigenvalue"] = cluster.value;
                c["multiplicity"] = cluster.multiplicity;
                c["attribution"] = to_string(cluster.side);
                clusters.push_back(std::move(c));
            }
            entry["clusters"] = std::move(clusters);
            dims.push_back(std::move(entry));
        }
        nlohmann::json out;
        out["dims"] = std::move(dims);
        write_json(config.out_path, out);
        return 0;
    }
    std::ostringstream out;
    out << "dim,eigenvalue,multiplicity,attribution\n";
    for (const SpectrumReport& report : reports) {
        for (const EigenCluster& cluster : report.clusters) {
            out << report.dim << ',' << format_double(cluster.value) << ',' << cluster.multiplicity
                << ',' << to_string(cluster.side) << '\n';
        }
    }
    write_text(config.out_path, out.str());
    return 0;
}

int run_decompose(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/true);
    WeightFunction w = load_weights(ws);
    auto [lo, hi] = parse_dim_range(config);
    if (lo != hi) {
        throw HodgeseqError(ErrorKind::Input, kModule, "decompose expects a single --dim");
    }
    if (config.cochain_path.empty()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "--cochain is required");
    }
    Eigen::VectorXd cochain =
        cochain_from_json(load_json_file(config.cochain_path), ws.complex, ws.spec.vocabulary, lo);
    LaplacianBundle bundle = laplacian(ws.complex, w, lo);
    HodgeSplit split = hodge_decompose(bundle, cochain);
    nlohmann::json out;
    out["dim"] = lo;
    out["harmonic"] = cochain_to_json(ws.complex, ws.spec.vocabulary, lo, split.harmonic);
    out["exact"] = cochain_to_json(ws.complex, ws.spec.vocabulary, lo, split.exact);
    out["coexact"] = cochain_to_json(ws.complex, ws.spec.vocabulary, lo, split.coexact);
    write_json(config.out_path, out);
    return 0;
}

int run_embed(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/true);
    WeightFunction w = load_weights(ws);
    auto [lo, hi] = parse_dim_range(config);
    if (lo != hi) {
        throw HodgeseqError(ErrorKind::Input, kModule, "embed expects a single --dim");
    }
    EmbedScaling scaling;
    if (config.scaling == "none") {
        scaling = EmbedScaling::None;
    } else if (config.scaling == "inverse-sqrt-eigenvalue") {
        scaling = EmbedScaling::InverseSqrtEigenvalue;
    } else {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "--scaling expects none or inverse-sqrt-eigenvalue, got \"" +
                                config.scaling + "\"");
    }
    LaplacianBundle bundle = laplacian(ws.complex, w, lo);
    SpectrumReport report = spectrum(bundle, config.cluster_tol);
    Eigen::MatrixXd coordinates = spectral_embed(bundle, report, config.components, scaling);
    std::ostringstream out;
    out << "cell";
    for (int c = 1; c <= config.components; ++c) out << ",c" << c;
    out << '\n';
    for (Eigen::Index r = 0; r < coordinates.rows(); ++r) {
        out << csv_escape(cell_name(ws.complex.cell_at(lo, static_cast<std::size_t>(r)),
                                    ws.spec.vocabulary.names()));
        for (Eigen::Index c = 0; c < coordinates.cols(); ++c) {
            out << ',' << format_double(coordinates(r, c));
        }
        out << '\n';
    }
    write_text(config.out_path, out.str());
    return 0;
}

int run_verify(const JobConfig& config) {
    Workspace ws = load_workspace(config, /*weights_required=*/true);
    WeightFunction w = load_weights(ws);

    if (config.theorem == "seq-spectrum") {
        double tol = config.tol > 0.0 ? config.tol : 1e-9;
        IndependentModel model = [&] {
            if (!config.model_weights_path.empty()) {
                WeightFunction mw = weights_from_json(load_json_file(config.model_weights_path),
                                                      ws.complex, ws.spec.vocabulary);
                if (mw.provenance() != WeightProvenance::IndependentSequence ||
                    !mw.vertex_parameters()) {
                    throw HodgeseqError(ErrorKind::Precondition, kModule,
                                        "--model-weights must use the independent model");
                }
                return IndependentModel::sequence(*mw.vertex_parameters());
            }
            if (w.provenance() != WeightProvenance::IndependentSequence || !w.vertex_parameters()) {
                throw HodgeseqError(ErrorKind::Precondition, kModule,
                                    "seq-spectrum needs independent weights "
                                    "(or --model-weights with the reference model)");
            }
            return IndependentModel::sequence(*w.vertex_parameters());
        }();
        VertexId base = resolve_base_vertex(config, ws.spec.vocabulary);
        auto [lo, hi] = parse_dim_range(config);
        bool pass = true;
        const CheckResult* failure = nullptr;
        nlohmann::json dims = nlohmann::json::array();
        std::vector<VerificationReport> kept;
        kept.reserve(static_cast<std::size_t>(hi - lo + 1));
        for (int n = lo; n <= hi; ++n) {
            kept.push_back(verify_sequence_theorem(ws.complex, model, w, n, tol, base));
            const VerificationReport& report = kept.back();
            nlohmann::json entry = report_to_json(report);
            entry["dim"] = n;
            dims.push_back(std::move(entry));
            pass = pass && report.pass;
            if (!failure) failure = first_failure(report);
        }
        nlohmann::json out;
        out["dims"] = std::move(dims);
        return finish_verify(config, "seq-spectrum", pass, std::move(out), failure);
    }

    if (config.theorem == "simp-identity") {
        SimplicialTheoremOptions options;
        if (config.tol > 0.0) options.tol = config.tol;
        options.expected_constant = w.predicted_identity_constant();
        VerificationReport report = verify_simplicial_theorem(ws.complex, w, options);
        return finish_verify(config, "simp-identity", report.pass, report_to_json(report),
                             first_failure(report));
    }

    if (config.theorem == "hodge") {
        double tol = config.tol > 0.0 ? config.tol : 1e-10;
        if (config.trials < 1) {
            throw HodgeseqError(ErrorKind::Input, kModule, "--trials must be positive");
        }
        auto [lo, hi] = parse_dim_range(config);
        std::mt19937 rng(config.seed);
        std::uniform_real_distribution<double> uniform(-1.0, 1.0);
        VerificationReport report;
        for (int n = lo; n <= hi; ++n) {
            LaplacianBundle bundle = laplacian(ws.complex, w, n);
            double worst_residual = 0.0;
            double worst_overlap = 0.0;
            for (int t = 0; t < config.trials; ++t) {
                Eigen::VectorXd x(bundle.full.rows());
                for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = uniform(rng);
                HodgeSplit split = hodge_decompose(bundle, x);
                double scale = std::max(1.0, weighted_norm(bundle.w_here, x));
                worst_residual = std::max(
                    worst_residual,
                    weighted_norm(bundle.w_here,
                                  x - split.harmonic - split.exact - split.coexact) /
                        scale);
                const Eigen::VectorXd* parts[3] = {&split.harmonic, &split.exact, &split.coexact};
                for (int a = 0; a < 3; ++a) {
                    for (int b = a + 1; b < 3; ++b) {
                        double na = weighted_norm(bundle.w_here, *parts[a]);
                        double nb = weighted_norm(bundle.w_here, *parts[b]);
                        double overlap = std::abs(weighted_inner(bundle.w_here, *parts[a], *parts[b])) /
                                         std::max(1.0, na * nb);
                        worst_overlap = std::max(worst_overlap, overlap);
                    }
                }
            }
            CheckResult reconstruction;
            reconstruction.name = "dim-" + std::to_string(n) + "-reconstruction";
            reconstruction.measured = worst_residual;
            reconstruction.threshold = tol;
            reconstruction.pass = worst_residual <= tol;
            report.add(reconstruction);
            CheckResult orthogonality;
            orthogonality.name = "dim-" + std::to_string(n) + "-orthogonality";
            orthogonality.measured = worst_overlap;
            orthogonality.threshold = tol;
            orthogonality.pass = worst_overlap <= tol;
            report.add(orthogonality);
        }
        return finish_verify(config, "hodge", report.pass, report_to_json(report),
                             first_failure(report));
    }

    if (config.theorem == "scaling") {
        double tol = config.tol > 0.0 ? config.tol : 1e-13;
        auto [lo, hi] = parse_dim_range(config);
        const double alphas[3] = {1e-3, 1.0, 1e3};
        VerificationReport report;
        for (int n = lo; n <= hi; ++n) {
            Eigen::MatrixXd base = laplacian(ws.complex, w, n).full;
            for (double alpha : alphas) {
                WeightFunction scaled = scaled_weights(ws.complex, w, alpha);
                double measured =
                    (laplacian(ws.complex, scaled, n).full - base).cwiseAbs().maxCoeff();
                CheckResult check;
                check.name = "dim-" + std::to_string(n) + "-alpha-" + format_double(alpha);
                check.measured = measured;
                check.threshold = tol;
                check.pass = measured <= tol;
                report.add(check);
            }
        }
        return finish_verify(config, "scaling", report.pass, report_to_json(report),
                             first_failure(report));
    }

    throw HodgeseqError(ErrorKind::Input, kModule,
                        "--theorem expects seq-spectrum, simp-identity, hodge or scaling, got \"" +
                            config.theorem + "\"");
}

int run_ingest(const JobConfig& config) {
    if (config.corpus_path.empty()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "ingest needs a corpus file");
    }
    std::ifstream in(config.corpus_path);
    if (!in) {
        throw HodgeseqError(ErrorKind::Input, kModule, "cannot open " + config.corpus_path);
    }
    BuildOptions options;
    options.cell_budget = cell_budget_from_env();
    options.augmentation = !config.no_augmentation;
    IngestResult result = ingest_corpus(in, config.max_dim, config.smoothing, options);
    ComplexIndex complex = build_complex(result.spec, options);
    Distribution p(complex, result.mass, 1e-9);
    nlohmann::json out = distribution_to_json(complex, result.spec.vocabulary, p, "conditional");
    out["complex"] = complex_spec_to_json(result.spec);
    write_json(config.out_path, out);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    JobConfig config;
    CLI::App app{"Weighted Hodge Laplacians on sequence and simplicial complexes"};
    app.require_subcommand(1);

    auto add_complex = [&](CLI::App* cmd) {
        cmd->add_option("--complex", config.complex_path, "complex description JSON");
        cmd->add_flag("--no-augmentation", config.no_augmentation,
                      "drop the empty cell (unreduced cohomology)");
    };
    auto add_weights = [&](CLI::App* cmd) {
        cmd->add_option("--weights", config.weights_path,
                        "weight description JSON (may embed a \"complex\")");
    };
    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", config.out_path, "output path (default stdout)"); };
    auto add_dims = [&](CLI::App* cmd) {
        cmd->add_option("--dim", config.dim, "single dimension");
        cmd->add_option("--dims", config.dims_text, "dimension range A..B");
    };
    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", config.format, "output format (default csv)")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* build = app.add_subcommand("build", "build a complex and report its cell enumeration");
    add_complex(build);
    add_out(build);
    build->add_flag("--list-cells", config.list_cells, "list every cell name per dimension");
    build->add_flag("--validate", config.validate, "check the cell-complex axioms");

    CLI::App* lap = app.add_subcommand("laplacian", "emit the dense Hodge Laplacian at one dimension");
    add_complex(lap);
    add_weights(lap);
    add_out(lap);
    add_dims(lap);
    add_format(lap);

    CLI::App* spec = app.add_subcommand("spectrum", "eigenvalue clusters with up/down attribution");
    add_complex(spec);
    add_weights(spec);
    add_out(spec);
    add_dims(spec);
    add_format(spec);
    spec->add_option("--cluster-tol", config.cluster_tol,
                     "relative gap that merges eigenvalues into one cluster (default 1e-8)");

    CLI::App* dec = app.add_subcommand("decompose", "Hodge-decompose a cochain");
    add_complex(dec);
    add_weights(dec);
    add_out(dec);
    add_dims(dec);
    dec->add_option("--cochain", config.cochain_path, "cochain JSON ({\"cell\": value})");

    CLI::App* ver = app.add_subcommand("verify", "check a closed-form result, exit 1 on failure");
    add_complex(ver);
    add_weights(ver);
    add_out(ver);
    add_dims(ver);
    ver->add_option("--theorem", config.theorem,
                    "seq-spectrum | simp-identity | hodge | scaling")
        ->required();
    ver->add_option("--tol", config.tol, "verification tolerance (default depends on the theorem)");
    ver->add_option("--base-vertex", config.base_vertex,
                    "base vertex name for the labeled eigenbasis (default: first vertex)");
    ver->add_option("--model-weights", config.model_weights_path,
                    "independent weights supplying seq-spectrum predictions");
    ver->add_option("--trials", config.trials, "random cochains per dimension for hodge (default 100)");
    ver->add_option("--seed", config.seed, "seed for the hodge random cochains (default 12345)");

    CLI::App* emb = app.add_subcommand("embed", "spectral coordinates per cell, CSV cell,c1,...,cd");
    add_complex(emb);
    add_weights(emb);
    add_out(emb);
    add_dims(emb);
    emb->add_option("--components", config.components, "number of coordinates")->required();
    emb->add_option("--scaling", config.scaling, "none | inverse-sqrt-eigenvalue (default none)");
    emb->add_option("--cluster-tol", config.cluster_tol,
                    "relative gap that merges eigenvalues into one cluster (default 1e-8)");

    CLI::App* ing = app.add_subcommand("ingest",
                                       "fit relative frequencies from '.'-separated sequences");
    ing->add_option("corpus", config.corpus_path, "newline-delimited corpus file")->required();
    ing->add_option("--max-dim", config.max_dim, "largest Laplacian dimension to support")->required();
    ing->add_option("--smoothing", config.smoothing, "additive smoothing constant (default 0)");
    ing->add_flag("--no-augmentation", config.no_augmentation, "drop the empty cell");
    add_out(ing);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.push_back("hodgeseq");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const std::string& arg : argv_storage) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (build->parsed()) return run_build(config);
        if (lap->parsed()) return run_laplacian(config);
        if (spec->parsed()) return run_spectrum(config);
        if (dec->parsed()) return run_decompose(config);
        if (ver->parsed()) return run_verify(config);
        if (emb->parsed()) return run_embed(config);
        if (ing->parsed()) return run_ingest(config);
    } catch (const HodgeseqError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace hodgeseq
