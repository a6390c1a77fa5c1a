#ifndef HODGESEQ_IO_HPP
#define HODGESEQ_IO_HPP

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "hodgeseq/complex.hpp"
#include "hodgeseq/weights.hpp"

namespace hodgeseq {

/**
 * Vertex vocabulary: dense ids 0..m-1 bound to names in declaration order.
 * Names must be nonempty and free of the separators used in cell names
 * (".", ",", "{", "}", "(", ")") and of whitespace.
 */
class Vocabulary {
public:
    Vocabulary() = default;
    explicit Vocabulary(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(VertexId id) const;
    VertexId id(const std::string& name) const;      // ErrorKind::Input when unknown
    VertexId id_or_add(const std::string& name);     // first-appearance order

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, VertexId> ids_;
};

// Parse a cell name ("a.b.a", "{a,b}", "()") back into a cell.  The expected
// kind disambiguates bare vertex names.
Cell cell_from_name(const std::string& name, const Vocabulary& vocabulary, ComplexKind kind);

/**
 * Declarative complex description as stored on disk:
 *   {"kind": "sequence",   "vertices": [...], "max_dim": n}
 *   {"kind": "simplicial", "vertices": [...], "facets": [[...], ...]}
 * Simplicial facets may list vertices by name or by id; when "facets" is
 * absent the full simplex over the vertices is meant.  "augmented": false
 * drops the empty cell.  For sequence complexes max_dim is the largest
 * dimension whose Laplacian will be requested; cells one dimension higher
 * are enumerated to support it.
 */
struct ComplexSpec {
    ComplexKind kind = ComplexKind::FullSequence;
    Vocabulary vocabulary;
    int max_laplacian_dim = 0;                     // sequence kind only
    std::vector<std::vector<VertexId>> facets;     // simplicial kind only
    bool facets_given = false;                     // false => full simplex
    bool augmented = true;
};

ComplexSpec complex_spec_from_json(const nlohmann::json& j);
nlohmann::json complex_spec_to_json(const ComplexSpec& spec);
ComplexIndex build_complex(const ComplexSpec& spec, const BuildOptions& options);

/**
 * Weight description:
 *   {"model": "independent",      "vertex_weights": {"a": 0.5, ...}}
 *   {"model": "conditional",      "probabilities": {"a.b": 0.1, ...}}
 *   {"model": "moment",           "probabilities": {"{a,b}": 0.1, ...}}
 *   {"model": "empty-normalized", "probabilities": {...}}
 *   {"model": "raw",              "weights": {...}}
 * Probability maps must sum to 1; cells not listed carry mass 0.  Raw
 * weights must cover every stored cell.
 */
WeightFunction weights_from_json(const nlohmann::json& j, const ComplexIndex& complex,
                                 const Vocabulary& vocabulary, double tol = 1e-12);

nlohmann::json distribution_to_json(const ComplexIndex& complex, const Vocabulary& vocabulary,
                                    const Distribution& p, const std::string& model);

// {"cell": value} maps; cells not listed are zero, unknown names an error.
Eigen::VectorXd cochain_from_json(const nlohmann::json& j, const ComplexIndex& complex,
                                  const Vocabulary& vocabulary, int n);
nlohmann::json cochain_to_json(const ComplexIndex& complex, const Vocabulary& vocabulary, int n,
                               const Eigen::VectorXd& values);

// Fixed-format helpers: 17 significant digits, RFC-4180-style quoting.
std::string format_double(double value);
std::string csv_escape(const std::string& field);

struct IngestResult {
    ComplexSpec spec;                    // sequence complex, vocabulary in first-appearance order
    std::vector<Eigen::VectorXd> mass;   // empirical distribution, aligned with the complex
};

/**
 * Reads newline-delimited '.'-separated token sequences (blank lines count
 * as the empty sequence) and fits relative frequencies over the full
 * sequence complex of the discovered vocabulary, with additive smoothing
 * applied to every stored cell.  Sequences longer than max_dim+2 slots are
 * an error.
 */
IngestResult ingest_corpus(std::istream& in, int max_laplacian_dim, double smoothing,
                           const BuildOptions& options);

} // namespace hodgeseq

#endif // HODGESEQ_IO_HPP
