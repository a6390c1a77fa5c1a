#include "hodgeseq/complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include <Eigen/Sparse>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "cell-complex";

std::string cell_debug(const Cell& c) {
    std::ostringstream out;
    switch (c.kind()) {
        case CellKind::Empty: out << "()"; break;
        case CellKind::Sequence: {
            out << '(';
            for (std::size_t i = 0; i < c.vertices().size(); ++i) {
                if (i) out << ',';
                out << c.vertices()[i];
            }
            out << ')';
            break;
        }
        case CellKind::Simplex: {
            out << '{';
            for (std::size_t i = 0; i < c.vertices().size(); ++i) {
                if (i) out << ',';
                out << c.vertices()[i];
            }
            out << '}';
            break;
        }
    }
    return out.str();
}

void check_budget_step(std::size_t current, int m, std::size_t budget, int dim) {
    if (current > budget / static_cast<std::size_t>(m)) {
        throw HodgeseqError(ErrorKind::Size, kModule,
                            "dimension " + std::to_string(dim) + " would hold more than " +
                                std::to_string(budget) + " cells; raise the cell budget");
    }
}

// Distinct codimension-1 faces of a cell, in the order they first appear.
std::vector<Cell> distinct_faces(const Cell& c) {
    std::vector<Cell> faces;
    if (c.dim() < 0) return faces;
    if (c.kind() == CellKind::Sequence || c.kind() == CellKind::Empty) {
        for (int i = 0; i <= c.dim(); ++i) {
            Cell f = remove(c, i);
            if (std::find(faces.begin(), faces.end(), f) == faces.end()) faces.push_back(f);
        }
    } else {
        for (std::size_t j = 0; j < c.vertices().size(); ++j) {
            std::vector<VertexId> v = c.vertices();
            v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
            faces.push_back(v.empty() ? Cell::empty() : Cell::simplex(std::move(v)));
        }
    }
    return faces;
}

} // namespace

ComplexIndex ComplexIndex::full_sequence(int vertex_count, int max_laplacian_dim,
                                         const BuildOptions& options) {
    if (vertex_count < 1) {
        throw HodgeseqError(ErrorKind::Input, kModule, "vertex_count must be >= 1");
    }
    if (max_laplacian_dim < -1) {
        throw HodgeseqError(ErrorKind::Input, kModule, "max_dim must be >= -1");
    }
    ComplexIndex cx;
    cx.kind_ = ComplexKind::FullSequence;
    cx.vertex_count_ = vertex_count;
    cx.augmented_ = options.augmentation;
    cx.top_dim_ = max_laplacian_dim + 1;
    // counts m^(n+1) for n = -1 .. top
    cx.cell_counts_.assign(static_cast<std::size_t>(cx.top_dim_) + 2, 0);
    std::size_t count = 1;
    cx.cell_counts_[0] = count;
    for (int n = 0; n <= cx.top_dim_; ++n) {
        check_budget_step(count, vertex_count, options.cell_budget, n);
        count *= static_cast<std::size_t>(vertex_count);
        cx.cell_counts_[static_cast<std::size_t>(n) + 1] = count;
    }
    return cx;
}

ComplexIndex ComplexIndex::simplicial(int vertex_count,
                                      const std::vector<std::vector<VertexId>>& facets,
                                      const BuildOptions& options) {
    if (vertex_count < 1) {
        throw HodgeseqError(ErrorKind::Input, kModule, "vertex_count must be >= 1");
    }
    // Normalize facets: sort, reject duplicates, drop non-maximal ones.
    std::vector<std::vector<VertexId>> normalized;
    for (const auto& raw : facets) {
        std::vector<VertexId> f = raw;
        std::sort(f.begin(), f.end());
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] < 0 || f[i] >= vertex_count) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "facet vertex " + std::to_string(f[i]) +
                                        " outside [0, " + std::to_string(vertex_count) + ")");
            }
            if (i > 0 && f[i] == f[i - 1]) {
                throw HodgeseqError(ErrorKind::Input, kModule,
                                    "facet contains duplicate vertex " + std::to_string(f[i]));
            }
        }
        if (f.empty()) continue; // the empty face is implicit
        normalized.push_back(std::move(f));
    }
    std::sort(normalized.begin(), normalized.end());
    normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
    auto contains_all = [](const std::vector<VertexId>& big, const std::vector<VertexId>& small) {
        return std::includes(big.begin(), big.end(), small.begin(), small.end());
    };
    std::vector<std::vector<VertexId>> maximal;
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < normalized.size() && !dominated; ++j) {
            if (i != j && normalized[j].size() >= normalized[i].size() &&
                contains_all(normalized[j], normalized[i])) {
                dominated = normalized[j].size() > normalized[i].size();
            }
        }
        if (!dominated) maximal.push_back(normalized[i]);
    }

    ComplexIndex cx;
    cx.kind_ = ComplexKind::Simplicial;
    cx.vertex_count_ = vertex_count;
    cx.augmented_ = options.augmentation;
    cx.facets_ = maximal;

    // Downward closure.
    std::set<std::vector<VertexId>> closure;
    for (const auto& f : maximal) {
        if (f.size() > 60) {
            throw HodgeseqError(ErrorKind::Size, kModule, "facet too large to enumerate");
        }
        // The widest dimension slice of a k-facet holds C(k, floor(k/2))
        // faces; refuse before enumerating 2^k subsets.
        std::size_t widest = 1;
        for (std::size_t j = 1; j <= f.size() / 2; ++j) {
            if (widest > options.cell_budget) break;
            widest = widest * (f.size() - j + 1) / j;
        }
        if (widest > options.cell_budget) {
            throw HodgeseqError(ErrorKind::Size, kModule,
                                "a facet of " + std::to_string(f.size()) +
                                    " vertices exceeds the cell budget; raise it");
        }
        std::size_t subsets = std::size_t(1) << f.size();
        for (std::size_t mask = 1; mask < subsets; ++mask) {
            std::vector<VertexId> sub;
            for (std::size_t b = 0; b < f.size(); ++b) {
                if (mask & (std::size_t(1) << b)) sub.push_back(f[b]);
            }
            closure.insert(std::move(sub));
        }
    }
    int top = -1;
    for (const auto& s : closure) top = std::max(top, static_cast<int>(s.size()) - 1);
    if (!cx.augmented_ && top < 0) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "complex has no cells (empty facet list without augmentation)");
    }
    cx.top_dim_ = top;
    cx.cells_.assign(static_cast<std::size_t>(top) + 2, {});
    cx.lookup_.assign(static_cast<std::size_t>(top) + 2, {});
    if (cx.augmented_) cx.cells_[0].push_back(Cell::empty());
    for (const auto& s : closure) {
        cx.cells_[s.size()].push_back(Cell::simplex(s));
    }
    for (std::size_t d = 0; d < cx.cells_.size(); ++d) {
        auto& cells = cx.cells_[d];
        std::sort(cells.begin(), cells.end());
        if (cells.size() > options.cell_budget) {
            throw HodgeseqError(ErrorKind::Size, kModule,
                                "dimension " + std::to_string(static_cast<int>(d) - 1) +
                                    " exceeds the cell budget");
        }
        for (std::size_t i = 0; i < cells.size(); ++i) {
            cx.lookup_[d].emplace(cells[i], i);
        }
    }
    cx.cell_counts_.assign(cx.cells_.size(), 0);
    for (std::size_t d = 0; d < cx.cells_.size(); ++d) cx.cell_counts_[d] = cx.cells_[d].size();
    return cx;
}

ComplexIndex ComplexIndex::full_simplex(int vertex_count, const BuildOptions& options) {
    std::vector<VertexId> all(static_cast<std::size_t>(vertex_count));
    for (int i = 0; i < vertex_count; ++i) all[static_cast<std::size_t>(i)] = i;
    return simplicial(vertex_count, {all}, options);
}

std::size_t ComplexIndex::cell_count(int n) const {
    if (!has_dim(n)) return 0;
    return cell_counts_[static_cast<std::size_t>(n + 1)];
}

Cell ComplexIndex::cell_at(int n, std::size_t index) const {
    if (!has_dim(n) || index >= cell_count(n)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "no cell " + std::to_string(index) + " at dimension " + std::to_string(n));
    }
    if (kind_ == ComplexKind::FullSequence) {
        if (n == -1) return Cell::empty();
        std::vector<VertexId> digits(static_cast<std::size_t>(n) + 1);
        std::size_t rest = index;
        for (int slot = n; slot >= 0; --slot) {
            digits[static_cast<std::size_t>(slot)] =
                static_cast<VertexId>(rest % static_cast<std::size_t>(vertex_count_));
            rest /= static_cast<std::size_t>(vertex_count_);
        }
        return Cell::sequence(std::move(digits));
    }
    return cells_[static_cast<std::size_t>(n + 1)][index];
}

bool ComplexIndex::contains(const Cell& cell) const {
    int n = cell.dim();
    if (!has_dim(n)) return false;
    if (cell.is_empty()) return augmented_;
    if (kind_ == ComplexKind::FullSequence) {
        if (cell.kind() != CellKind::Sequence) return false;
        for (VertexId v : cell.vertices()) {
            if (v < 0 || v >= vertex_count_) return false;
        }
        return true;
    }
    if (cell.kind() != CellKind::Simplex) return false;
    const auto& table = lookup_[static_cast<std::size_t>(n + 1)];
    return table.find(cell) != table.end();
}

std::size_t ComplexIndex::index_of(const Cell& cell) const {
    if (!contains(cell)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "cell " + cell_debug(cell) + " does not belong to the complex");
    }
    if (cell.is_empty()) return 0;
    if (kind_ == ComplexKind::FullSequence) {
        std::size_t index = 0;
        for (VertexId v : cell.vertices()) {
            index = index * static_cast<std::size_t>(vertex_count_) + static_cast<std::size_t>(v);
        }
        return index;
    }
    return lookup_[static_cast<std::size_t>(cell.dim() + 1)].at(cell);
}

int ComplexIndex::incidence(const Cell& upper, const Cell& lower) const {
    if (!contains(upper) || !contains(lower)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "incidence asked for cells outside the complex: " + cell_debug(upper) +
                                ", " + cell_debug(lower));
    }
    if (upper.dim() != lower.dim() + 1) return 0;
    if (kind_ == ComplexKind::FullSequence) {
        int sum = 0;
        int sign = 1;
        for (int i = 0; i <= upper.dim(); ++i, sign = -sign) {
            if (remove(upper, i) == lower) sum += sign;
        }
        return sum;
    }
    // Simplex: the removed vertex must sit at a unique ordinal.
    if (lower.is_empty()) return 1; // kappa(vertex, empty) = +1
    const auto& u = upper.vertices();
    const auto& l = lower.vertices();
    int removed_at = -1;
    std::size_t li = 0;
    for (std::size_t ui = 0; ui < u.size(); ++ui) {
        if (li < l.size() && u[ui] == l[li]) {
            ++li;
        } else if (removed_at < 0) {
            removed_at = static_cast<int>(ui);
        } else {
            return 0;
        }
    }
    if (li != l.size() || removed_at < 0) return 0;
    return (removed_at % 2 == 0) ? 1 : -1;
}

const std::vector<std::vector<VertexId>>& ComplexIndex::facets() const {
    if (kind_ != ComplexKind::Simplicial) {
        throw HodgeseqError(ErrorKind::Input, kModule, "facets are defined for simplicial complexes");
    }
    return facets_;
}

ValidationReport validate_acc(const ComplexIndex& complex, const KappaFn& kappa_override) {
    ValidationReport report;
    auto kappa = [&](const Cell& u, const Cell& l) {
        return kappa_override ? kappa_override(u, l) : complex.incidence(u, l);
    };
    auto fail = [&](const Cell& a, const Cell& b, const std::string& what) {
        report.pass = false;
        report.failure = what + " (" + cell_debug(a) + ", " + cell_debug(b) + ")";
        report.violating_pair = std::make_pair(a, b);
    };

    // Closure and enumeration round trip.
    for (int n = complex.min_dim(); n <= complex.top_dim(); ++n) {
        for (std::size_t i = 0; i < complex.cell_count(n); ++i) {
            Cell c = complex.cell_at(n, i);
            if (complex.index_of(c) != i) {
                fail(c, c, "enumeration is not a bijection at dimension " + std::to_string(n));
                return report;
            }
            if (n == complex.min_dim()) continue;
            for (const Cell& f : distinct_faces(c)) {
                if (!complex.contains(f)) {
                    fail(c, f, "face missing from the complex");
                    return report;
                }
            }
        }
    }

    // Support: nonzero kappa only on codimension-1 face pairs (exhaustive on
    // small dimension slices).
    for (int n = complex.min_dim(); n < complex.top_dim(); ++n) {
        std::size_t pairs = complex.cell_count(n + 1) * complex.cell_count(n);
        if (pairs > 250000) continue;
        for (std::size_t r = 0; r < complex.cell_count(n + 1); ++r) {
            Cell u = complex.cell_at(n + 1, r);
            std::vector<Cell> faces = distinct_faces(u);
            for (std::size_t c = 0; c < complex.cell_count(n); ++c) {
                Cell l = complex.cell_at(n, c);
                int k = kappa(u, l);
                if (k != 0 && std::find(faces.begin(), faces.end(), l) == faces.end()) {
                    fail(u, l, "nonzero incidence on a non-face pair");
                    return report;
                }
            }
        }
    }

    // Composition identity, exact in integer arithmetic: D_n * D_{n-1} = 0.
    for (int n = complex.min_dim() + 1; n < complex.top_dim(); ++n) {
        auto assemble = [&](int k) {
            Eigen::SparseMatrix<std::int64_t> d(
                static_cast<Eigen::Index>(complex.cell_count(k + 1)),
                static_cast<Eigen::Index>(complex.cell_count(k)));
            std::vector<Eigen::Triplet<std::int64_t>> triplets;
            for (std::size_t r = 0; r < complex.cell_count(k + 1); ++r) {
                Cell u = complex.cell_at(k + 1, r);
                for (const Cell& f : distinct_faces(u)) {
                    if (!complex.contains(f)) continue;
                    std::int64_t v = kappa(u, f);
                    if (v != 0) {
                        triplets.emplace_back(static_cast<Eigen::Index>(r),
                                              static_cast<Eigen::Index>(complex.index_of(f)), v);
                    }
                }
            }
            d.setFromTriplets(triplets.begin(), triplets.end());
            return d;
        };
        Eigen::SparseMatrix<std::int64_t> product = assemble(n) * assemble(n - 1);
        for (int col = 0; col < product.outerSize(); ++col) {
            for (Eigen::SparseMatrix<std::int64_t>::InnerIterator it(product, col); it; ++it) {
                if (it.value() != 0) {
                    fail(complex.cell_at(n + 1, static_cast<std::size_t>(it.row())),
                         complex.cell_at(n - 1, static_cast<std::size_t>(it.col())),
                         "coboundary composition is nonzero");
                    return report;
                }
            }
        }
    }
    return report;
}

} // namespace hodgeseq
