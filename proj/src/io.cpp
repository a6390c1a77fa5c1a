#include "hodgeseq/io.hpp"

#include <cctype>
#include <cstdio>
#include <istream>
#include <utility>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "cli";

bool valid_vertex_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '.' || c == ',' || c == '{' || c == '}' || c == '(' || c == ')') return false;
    }
    return true;
}

void require_valid_vertex_name(const std::string& name) {
    if (!valid_vertex_name(name)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "invalid vertex name \"" + name +
                                "\" (names are nonempty, without whitespace or '.,{}()')");
    }
}

std::vector<std::string> split_on(const std::string& text, char delim) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(delim, start);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

const nlohmann::json& require_member(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            std::string("missing required key \"") + key + "\"");
    }
    return *it;
}

double number_or_throw(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "expected a number for " + where);
    }
    return j.get<double>();
}

std::vector<Eigen::VectorXd> zero_mass(const ComplexIndex& complex) {
    std::vector<Eigen::VectorXd> mass;
    mass.reserve(static_cast<std::size_t>(complex.top_dim() - complex.min_dim() + 1));
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        mass.push_back(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.cell_count(n))));
    }
    return mass;
}

// Fills per-dimension vectors from a {"cell name": number} object aligned
// with the given complex.
std::vector<Eigen::VectorXd> mass_from_map(const nlohmann::json& map, const ComplexIndex& complex,
                                           const Vocabulary& vocabulary) {
    if (!map.is_object()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "expected an object mapping cells to numbers");
    }
    std::vector<Eigen::VectorXd> mass = zero_mass(complex);
    for (const auto& item : map.items()) {
        Cell cell = cell_from_name(item.key(), vocabulary, complex.kind());
        if (!complex.contains(cell)) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "cell \"" + item.key() + "\" is not in the complex");
        }
        double value = number_or_throw(item.value(), "cell \"" + item.key() + "\"");
        mass[static_cast<std::size_t>(cell.dim() - complex.min_dim())](
            static_cast<Eigen::Index>(complex.index_of(cell))) = value;
    }
    return mass;
}

} // namespace

Vocabulary::Vocabulary(std::vector<std::string> names) {
    names_.reserve(names.size());
    for (std::string& name : names) {
        require_valid_vertex_name(name);
        if (ids_.count(name)) {
            throw HodgeseqError(ErrorKind::Input, kModule, "duplicate vertex name \"" + name + "\"");
        }
        ids_.emplace(name, static_cast<VertexId>(names_.size()));
        names_.push_back(std::move(name));
    }
}

const std::string& Vocabulary::name(VertexId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= names_.size()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "vertex id " + std::to_string(id) + " out of range");
    }
    return names_[static_cast<std::size_t>(id)];
}

VertexId Vocabulary::id(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "unknown vertex name \"" + name + "\"");
    }
    return it->second;
}

VertexId Vocabulary::id_or_add(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    require_valid_vertex_name(name);
    VertexId id = static_cast<VertexId>(names_.size());
    ids_.emplace(name, id);
    names_.push_back(name);
    return id;
}

Cell cell_from_name(const std::string& name, const Vocabulary& vocabulary, ComplexKind kind) {
    if (name.empty()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "empty cell name");
    }
    if (name == "()" || name == "{}") return Cell::empty();
    if (name.front() == '{') {
        if (name.back() != '}') {
            throw HodgeseqError(ErrorKind::Input, kModule, "unterminated set in \"" + name + "\"");
        }
        std::vector<VertexId> vertices;
        for (const std::string& token : split_on(name.substr(1, name.size() - 2), ',')) {
            vertices.push_back(vocabulary.id(token));
        }
        return Cell::simplex_from_set(vertices);
    }
    if (kind == ComplexKind::Simplicial) {
        return Cell::simplex({vocabulary.id(name)});
    }
    std::vector<VertexId> vertices;
    for (const std::string& token : split_on(name, '.')) {
        vertices.push_back(vocabulary.id(token));
    }
    return Cell::sequence(vertices);
}

ComplexSpec complex_spec_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "a complex description must be an object");
    }
    ComplexSpec spec;
    const nlohmann::json& kind = require_member(j, "kind");
    if (kind == "sequence") {
        spec.kind = ComplexKind::FullSequence;
    } else if (kind == "simplicial") {
        spec.kind = ComplexKind::Simplicial;
    } else {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "unknown complex kind " + kind.dump() +
                                " (expected \"sequence\" or \"simplicial\")");
    }
    const nlohmann::json& vertices = require_member(j, "vertices");
    if (!vertices.is_array()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "\"vertices\" must be an array of names");
    }
    std::vector<std::string> names;
    names.reserve(vertices.size());
    for (const nlohmann::json& v : vertices) {
        if (!v.is_string()) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"vertices\" must be an array of names");
        }
        names.push_back(v.get<std::string>());
    }
    spec.vocabulary = Vocabulary(std::move(names));
    if (auto it = j.find("augmented"); it != j.end()) {
        if (!it->is_boolean()) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"augmented\" must be a boolean");
        }
        spec.augmented = it->get<bool>();
    }
    if (spec.kind == ComplexKind::FullSequence) {
        const nlohmann::json& max_dim = require_member(j, "max_dim");
        if (!max_dim.is_number_integer()) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"max_dim\" must be an integer");
        }
        spec.max_laplacian_dim = max_dim.get<int>();
        if (spec.max_laplacian_dim < -1) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"max_dim\" must be at least -1");
        }
    } else if (auto it = j.find("facets"); it != j.end()) {
        if (!it->is_array()) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"facets\" must be an array of arrays");
        }
        spec.facets_given = true;
        for (const nlohmann::json& facet : *it) {
            if (!facet.is_array()) {
                throw HodgeseqError(ErrorKind::Input, kModule, "\"facets\" must be an array of arrays");
            }
            std::vector<VertexId> verts;
            verts.reserve(facet.size());
            for (const nlohmann::json& v : facet) {
                if (v.is_string()) {
                    verts.push_back(spec.vocabulary.id(v.get<std::string>()));
                } else if (v.is_number_integer()) {
                    int id = v.get<int>();
                    if (id < 0 || id >= spec.vocabulary.size()) {
                        throw HodgeseqError(ErrorKind::Input, kModule,
                                            "facet vertex id " + std::to_string(id) + " out of range");
                    }
                    verts.push_back(static_cast<VertexId>(id));
                } else {
                    throw HodgeseqError(ErrorKind::Input, kModule,
                                        "facet entries must be vertex names or ids");
                }
            }
            spec.facets.push_back(std::move(verts));
        }
    }
    return spec;
}

nlohmann::json complex_spec_to_json(const ComplexSpec& spec) {
    nlohmann::json j;
    j["kind"] = spec.kind == ComplexKind::FullSequence ? "sequence" : "simplicial";
    j["vertices"] = spec.vocabulary.names();
    j["augmented"] = spec.augmented;
    if (spec.kind == ComplexKind::FullSequence) {
        j["max_dim"] = spec.max_laplacian_dim;
    } else if (spec.facets_given) {
        nlohmann::json facets = nlohmann::json::array();
        for (const std::vector<VertexId>& facet : spec.facets) {
            nlohmann::json names = nlohmann::json::array();
            for (VertexId v : facet) names.push_back(spec.vocabulary.name(v));
            facets.push_back(std::move(names));
        }
        j["facets"] = std::move(facets);
    }
    return j;
}

ComplexIndex build_complex(const ComplexSpec& spec, const BuildOptions& options) {
    BuildOptions opts = options;
    opts.augmentation = spec.augmented;
    if (spec.kind == ComplexKind::FullSequence) {
        return ComplexIndex::full_sequence(spec.vocabulary.size(), spec.max_laplacian_dim, opts);
    }
    if (!spec.facets_given) {
        return ComplexIndex::full_simplex(spec.vocabulary.size(), opts);
    }
    return ComplexIndex::simplicial(spec.vocabulary.size(), spec.facets, opts);
}

WeightFunction weights_from_json(const nlohmann::json& j, const ComplexIndex& complex,
                                 const Vocabulary& vocabulary, double tol) {
    if (!j.is_object()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "a weight description must be an object");
    }
    const nlohmann::json& model = require_member(j, "model");
    if (model == "independent") {
        const nlohmann::json& map = require_member(j, "vertex_weights");
        if (!map.is_object()) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "\"vertex_weights\" must map every vertex name to a number");
        }
        Eigen::VectorXd weights(vocabulary.size());
        std::vector<bool> seen(static_cast<std::size_t>(vocabulary.size()), false);
        for (const auto& item : map.items()) {
            VertexId id = vocabulary.id(item.key());
            weights(id) = number_or_throw(item.value(), "vertex \"" + item.key() + "\"");
            seen[static_cast<std::size_t>(id)] = true;
        }
        for (VertexId id = 0; id < vocabulary.size(); ++id) {
            if (!seen[static_cast<std::size_t>(id)]) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "\"vertex_weights\" misses vertex \"" + vocabulary.name(id) + "\"");
            }
        }
        if (complex.kind() == ComplexKind::FullSequence) {
            return independent_sequence_weights(complex,
                                                IndependentModel::sequence(std::move(weights), tol));
        }
        return independent_simplicial_weights(complex, IndependentModel::simplicial(std::move(weights)));
    }
    if (model == "conditional") {
        Distribution p(complex, mass_from_map(require_member(j, "probabilities"), complex, vocabulary),
                       tol);
        return conditional_weights(complex, p);
    }
    if (model == "moment") {
        ComplexIndex full = ComplexIndex::full_simplex(vocabulary.size());
        Distribution p(full, mass_from_map(require_member(j, "probabilities"), full, vocabulary), tol);
        return moment_map(complex, p);
    }
    if (model == "empty-normalized") {
        Distribution p(complex, mass_from_map(require_member(j, "probabilities"), complex, vocabulary),
                       tol);
        return empty_normalized(complex, p);
    }
    if (model == "raw") {
        const nlohmann::json& map = require_member(j, "weights");
        if (!map.is_object()) {
            throw HodgeseqError(ErrorKind::Input, kModule, "\"weights\" must map cells to numbers");
        }
        std::vector<Eigen::VectorXd> values = zero_mass(complex);
        std::vector<std::vector<bool>> seen;
        for (const Eigen::VectorXd& block : values) {
            seen.emplace_back(static_cast<std::size_t>(block.size()), false);
        }
        for (const auto& item : map.items()) {
            Cell cell = cell_from_name(item.key(), vocabulary, complex.kind());
            if (!complex.contains(cell)) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "cell \"" + item.key() + "\" is not in the complex");
            }
            std::size_t level = static_cast<std::size_t>(cell.dim() - complex.min_dim());
            std::size_t index = complex.index_of(cell);
            values[level](static_cast<Eigen::Index>(index)) =
                number_or_throw(item.value(), "cell \"" + item.key() + "\"");
            seen[level][index] = true;
        }
        for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
            const auto& level = seen[static_cast<std::size_t>(n - complex.min_dim())];
            for (std::size_t index = 0; index < level.size(); ++index) {
                if (!level[index]) {
                    throw HodgeseqError(ErrorKind::Input, kModule,
                                        "\"weights\" misses cell " +
                                            cell_name(complex.cell_at(n, index), vocabulary.names()));
                }
            }
        }
        return raw_weights(complex, std::move(values));
    }
    throw HodgeseqError(ErrorKind::Input, kModule,
                        "unknown weight model " + model.dump() +
                            " (expected independent, conditional, moment, empty-normalized or raw)");
}

nlohmann::json distribution_to_json(const ComplexIndex& complex, const Vocabulary& vocabulary,
                                    const Distribution& p, const std::string& model) {
    nlohmann::json probabilities = nlohmann::json::object();
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        for (std::size_t index = 0; index < complex.cell_count(n); ++index) {
            double mass = p.mass(n, index);
            if (mass != 0.0) {
                probabilities[cell_name(complex.cell_at(n, index), vocabulary.names())] = mass;
            }
        }
    }
    nlohmann::json j;
    j["model"] = model;
    j["probabilities"] = std::move(probabilities);
    return j;
}

Eigen::VectorXd cochain_from_json(const nlohmann::json& j, const ComplexIndex& complex,
                                  const Vocabulary& vocabulary, int n) {
    if (!j.is_object()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "a cochain must be an object mapping cells to numbers");
    }
    if (!complex.has_dim(n)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "dimension " + std::to_string(n) + " is not stored in the complex");
    }
    Eigen::VectorXd values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(complex.cell_count(n)));
    for (const auto& item : j.items()) {
        Cell cell = cell_from_name(item.key(), vocabulary, complex.kind());
        if (cell.dim() != n) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "cell \"" + item.key() + "\" has dimension " +
                                    std::to_string(cell.dim()) + ", expected " + std::to_string(n));
        }
        values(static_cast<Eigen::Index>(complex.index_of(cell))) =
            number_or_throw(item.value(), "cell \"" + item.key() + "\"");
    }
    return values;
}

nlohmann::json cochain_to_json(const ComplexIndex& complex, const Vocabulary& vocabulary, int n,
                               const Eigen::VectorXd& values) {
    if (!complex.has_dim(n) ||
        values.size() != static_cast<Eigen::Index>(complex.cell_count(n))) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "cochain length does not match the cells of dimension " + std::to_string(n));
    }
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t index = 0; index < complex.cell_count(n); ++index) {
        j[cell_name(complex.cell_at(n, index), vocabulary.names())] =
            values(static_cast<Eigen::Index>(index));
    }
    return j;
}

std::string format_double(double value) {
    if (value == 0.0) value = 0.0; // drop the sign of negative zero
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string csv_escape(const std::string& field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs_quotes) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

IngestResult ingest_corpus(std::istream& in, int max_laplacian_dim, double smoothing,
                           const BuildOptions& options) {
    if (max_laplacian_dim < -1) {
        throw HodgeseqError(ErrorKind::Input, kModule, "max_dim must be at least -1");
    }
    Vocabulary vocabulary;
    std::vector<std::vector<VertexId>> rows;
    std::string line;
    std::size_t line_number = 0;
    const std::size_t max_slots = static_cast<std::size_t>(max_laplacian_dim + 2);
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos) {
            rows.emplace_back(); // blank line: the empty sequence
            continue;
        }
        std::size_t last = line.find_last_not_of(" \t");
        std::vector<std::string> tokens = split_on(line.substr(first, last - first + 1), '.');
        if (tokens.size() > max_slots) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "line " + std::to_string(line_number) + " has " +
                                    std::to_string(tokens.size()) + " tokens; at most " +
                                    std::to_string(max_slots) + " fit below max_dim " +
                                    std::to_string(max_laplacian_dim));
        }
        std::vector<VertexId> row;
        row.reserve(tokens.size());
        for (const std::string& token : tokens) {
            if (token.empty()) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "line " + std::to_string(line_number) + " has an empty token");
            }
            row.push_back(vocabulary.id_or_add(token));
        }
        rows.push_back(std::move(row));
    }
    if (vocabulary.size() == 0) {
        throw HodgeseqError(ErrorKind::Input, kModule, "the corpus contains no tokens");
    }

    IngestResult result;
    result.spec.kind = ComplexKind::FullSequence;
    result.spec.vocabulary = vocabulary;
    result.spec.max_laplacian_dim = max_laplacian_dim;
    result.spec.augmented = options.augmentation;
    ComplexIndex complex = build_complex(result.spec, options);

    std::vector<Cell> observations;
    observations.reserve(rows.size());
    for (const std::vector<VertexId>& row : rows) {
        observations.push_back(row.empty() ? Cell::empty() : Cell::sequence(row));
    }
    Distribution p = empirical_distribution(complex, observations, smoothing);
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        result.mass.push_back(p.at(n));
    }
    return result;
}

} // namespace hodgeseq
