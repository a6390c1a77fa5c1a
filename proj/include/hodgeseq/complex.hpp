#ifndef HODGESEQ_COMPLEX_HPP
#define HODGESEQ_COMPLEX_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hodgeseq/cell.hpp"

namespace hodgeseq {

enum class ComplexKind { FullSequence, Simplicial };

struct BuildOptions {
    std::size_t cell_budget = 200000; // maximum number of cells per dimension
    bool augmentation = true;         // materialize the empty cell at dimension -1
};

/**
 * Indexed cell complex with a contiguous id range per dimension.
 *
 * Full sequence complexes are virtual: cells are enumerated as base-m digit
 * strings (leftmost slot most significant), so dimension n holds m^(n+1)
 * cells in lexicographic order and index<->cell conversion is arithmetic.
 * Simplicial complexes store the downward closure of their facets, sorted
 * lexicographically within each dimension.
 */
class ComplexIndex {
public:
    // Stores dimensions -1..max_laplacian_dim+1 so that the Laplacian at
    // max_laplacian_dim still has its coboundary target available.
    static ComplexIndex full_sequence(int vertex_count, int max_laplacian_dim,
                                      const BuildOptions& options = {});
    // Downward closure of the given facets (vertex ids in [0, vertex_count)).
    static ComplexIndex simplicial(int vertex_count,
                                   const std::vector<std::vector<VertexId>>& facets,
                                   const BuildOptions& options = {});
    // Convenience: the full simplex 2^[m], i.e. the single facet {0..m-1}.
    static ComplexIndex full_simplex(int vertex_count, const BuildOptions& options = {});

    ComplexKind kind() const { return kind_; }
    int vertex_count() const { return vertex_count_; }
    bool augmented() const { return augmented_; }
    int min_dim() const { return augmented_ ? -1 : 0; }
    int top_dim() const { return top_dim_; }
    bool has_dim(int n) const { return n >= min_dim() && n <= top_dim_; }

    std::size_t cell_count(int n) const; // 0 outside [min_dim, top_dim]
    Cell cell_at(int n, std::size_t index) const;
    std::size_t index_of(const Cell& cell) const; // ErrorKind::Input when absent
    bool contains(const Cell& cell) const;

    // Incidence number kappa(upper, lower); total on cells of the complex and
    // zero whenever dim(upper) != dim(lower)+1 or lower is not a face.
    int incidence(const Cell& upper, const Cell& lower) const;

    // Normalized facet list (simplicial complexes only).
    const std::vector<std::vector<VertexId>>& facets() const;

private:
    ComplexIndex() = default;

    ComplexKind kind_ = ComplexKind::FullSequence;
    int vertex_count_ = 0;
    int top_dim_ = -1;
    bool augmented_ = true;
    // Full sequence: cell_counts_[n+1] = m^(n+1), cells not materialized.
    std::vector<std::size_t> cell_counts_;
    // Simplicial storage, indexed by dim+1.
    std::vector<std::vector<Cell>> cells_;
    std::vector<std::unordered_map<Cell, std::size_t, CellHash>> lookup_;
    std::vector<std::vector<VertexId>> facets_;
};

// Optional replacement incidence function used by validate_acc fixtures.
using KappaFn = std::function<int(const Cell& upper, const Cell& lower)>;

struct ValidationReport {
    bool pass = true;
    std::string failure; // description of the first violation found
    std::optional<std::pair<Cell, Cell>> violating_pair;
};

/**
 * Checks the abstract-cell-complex axioms on the stored cells: dimension
 * monotonicity and closure of faces, support of the incidence numbers, and
 * the composition identity sum_j kappa(x, y_j) kappa(y_j, z) = 0 for every
 * pair (x, z) two dimensions apart (verified exactly in integer arithmetic
 * as D_n * D_{n-1} = 0).  A kappa override lets tests inject violations.
 */
ValidationReport validate_acc(const ComplexIndex& complex, const KappaFn& kappa_override = nullptr);

} // namespace hodgeseq

#endif // HODGESEQ_COMPLEX_HPP
