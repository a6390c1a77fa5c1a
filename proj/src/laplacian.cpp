#include "hodgeseq/laplacian.hpp"

#include <cmath>
#include <vector>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "hodge-core";

void require_dim(const ComplexIndex& cx, int n) {
    if (!cx.has_dim(n)) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "complex has no dimension " + std::to_string(n));
    }
}

void require_alignment(const ComplexIndex& cx, const WeightFunction& w) {
    if (w.min_dim() != cx.min_dim() || w.top_dim() != cx.top_dim()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "weight function does not span the complex dimensions");
    }
    for (int n = cx.min_dim(); n <= cx.top_dim(); ++n) {
        if (static_cast<std::size_t>(w.at(n).size()) != cx.cell_count(n)) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "weight function misaligned at dimension " + std::to_string(n));
        }
    }
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar> assemble_coboundary(const ComplexIndex& cx, int n) {
    require_dim(cx, n);
    if (n == cx.top_dim()) {
        if (cx.kind() == ComplexKind::FullSequence) {
            throw HodgeseqError(ErrorKind::Truncation, kModule,
                                "cells of dimension " + std::to_string(n + 1) +
                                    " were not materialized; rebuild with a larger max_dim");
        }
        return Eigen::SparseMatrix<Scalar>(0, static_cast<Eigen::Index>(cx.cell_count(n)));
    }
    Eigen::SparseMatrix<Scalar> d(static_cast<Eigen::Index>(cx.cell_count(n + 1)),
                                  static_cast<Eigen::Index>(cx.cell_count(n)));
    std::vector<Eigen::Triplet<Scalar>> triplets;
    bool sequences = cx.kind() == ComplexKind::FullSequence;
    for (std::size_t r = 0; r < cx.cell_count(n + 1); ++r) {
        Cell upper = cx.cell_at(n + 1, r);
        if (sequences) {
            Scalar sign = 1;
            for (int i = 0; i <= upper.dim(); ++i, sign = -sign) {
                triplets.emplace_back(static_cast<Eigen::Index>(r),
                                      static_cast<Eigen::Index>(cx.index_of(remove(upper, i))),
                                      sign);
            }
        } else {
            Scalar sign = 1;
            const auto& verts = upper.vertices();
            for (std::size_t j = 0; j < verts.size(); ++j, sign = -sign) {
                std::vector<VertexId> rest = verts;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
                Cell face = rest.empty() ? Cell::empty() : Cell::simplex(std::move(rest));
                if (!cx.contains(face)) continue; // empty cell dropped without augmentation
                triplets.emplace_back(static_cast<Eigen::Index>(r),
                                      static_cast<Eigen::Index>(cx.index_of(face)), sign);
            }
        }
    }
    d.setFromTriplets(triplets.begin(), triplets.end()); // duplicate slots accumulate
    return d;
}

} // namespace

SparseInt coboundary_matrix(const ComplexIndex& complex, int n) {
    return assemble_coboundary<std::int64_t>(complex, n);
}

SparseReal coboundary_matrix_real(const ComplexIndex& complex, int n) {
    return assemble_coboundary<double>(complex, n);
}

LaplacianBundle laplacian(const ComplexIndex& complex, const WeightFunction& w, int n,
                          std::size_t dense_cap) {
    require_dim(complex, n);
    require_alignment(complex, w);
    std::size_t count = complex.cell_count(n);
    if (count > dense_cap) {
        throw HodgeseqError(ErrorKind::Size, kModule,
                            "dense Laplacian at dimension " + std::to_string(n) + " would be " +
                                std::to_string(count) + "^2; the cap is " + std::to_string(dense_cap));
    }
    LaplacianBundle b;
    b.dim = n;
    b.w_here = w.at(n);
    b.d_here = coboundary_matrix_real(complex, n); // may throw the truncation error
    b.w_above = (n < complex.top_dim()) ? w.at(n + 1) : Eigen::VectorXd(0);
    if (n > complex.min_dim()) {
        b.d_below = coboundary_matrix_real(complex, n - 1);
        b.w_below = w.at(n - 1);
    } else {
        b.d_below = SparseReal(static_cast<Eigen::Index>(count), 0);
        b.w_below = Eigen::VectorXd(0);
    }

    Eigen::VectorXd inv_here = b.w_here.cwiseInverse();
    Eigen::VectorXd sqrt_here = b.w_here.cwiseSqrt();
    Eigen::VectorXd inv_sqrt_here = sqrt_here.cwiseInverse();

    // Gram pieces D^T W D (up) and D_below W^{-1} D_below^T (down); both are
    // symmetric, so the symmetrized operator is assembled from them directly.
    Eigen::MatrixXd up_gram = Eigen::MatrixXd(SparseReal(b.d_here.transpose()) *
                                              b.w_above.asDiagonal() * b.d_here);
    Eigen::MatrixXd down_gram = Eigen::MatrixXd(b.d_below * b.w_below.cwiseInverse().asDiagonal() *
                                                SparseReal(b.d_below.transpose()));
    b.up = inv_here.asDiagonal() * up_gram;
    b.down = down_gram * b.w_here.asDiagonal();
    b.full = b.up + b.down;
    b.symmetrized = inv_sqrt_here.asDiagonal() * up_gram * inv_sqrt_here.asDiagonal() +
                    sqrt_here.asDiagonal() * down_gram * sqrt_here.asDiagonal();
    return b;
}

Eigen::MatrixXd adjoint_matrix(const LaplacianBundle& bundle) {
    return bundle.w_here.cwiseInverse().asDiagonal() *
           Eigen::MatrixXd(SparseReal(bundle.d_here.transpose())) * bundle.w_above.asDiagonal();
}

Eigen::MatrixXd sequence_laplacian_direct(const ComplexIndex& complex, const WeightFunction& w, int n) {
    if (complex.kind() != ComplexKind::FullSequence) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "closed-form sequence Laplacian needs a full sequence complex");
    }
    if (!complex.augmented()) {
        throw HodgeseqError(ErrorKind::Precondition, kModule,
                            "closed-form sequence Laplacian assumes the empty cell is present");
    }
    require_dim(complex, n);
    require_alignment(complex, w);
    if (n == complex.top_dim()) {
        throw HodgeseqError(ErrorKind::Truncation, kModule,
                            "closed form at dimension " + std::to_string(n) +
                                " needs dimension " + std::to_string(n + 1) + " weights");
    }
    int m = complex.vertex_count();
    auto wv = [&](const Cell& c) { return w.value(c.dim(), complex.index_of(c)); };
    Eigen::Index size = static_cast<Eigen::Index>(complex.cell_count(n));
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index s = 0; s < size; ++s) {
        Cell sigma = complex.cell_at(n, static_cast<std::size_t>(s));
        double w_sigma = wv(sigma);
        // glue terms on the diagonal
        double diag = 0.0;
        for (int i = 0; i <= n + 1; ++i) {
            for (VertexId a = 0; a < m; ++a) diag += wv(glue(sigma, i, a)) / w_sigma;
        }
        L(s, s) += diag;
        for (int i = 0; i <= n; ++i) {
            Cell rem_i = remove(sigma, i);
            double w_rem_i = wv(rem_i);
            for (VertexId a = 0; a < m; ++a) {
                // swap terms collapse the up and down contributions at j = i
                Cell swapped_cell = swap(sigma, i, a);
                Eigen::Index t = static_cast<Eigen::Index>(complex.index_of(swapped_cell));
                double w_swap = wv(swapped_cell);
                L(t, s) -= wv(glue(sigma, i, a)) / w_swap + wv(glue(sigma, i + 1, a)) / w_swap -
                           w_sigma / w_rem_i;
                // glue-after-remove cross terms, j strictly below and above i
                for (int j = 0; j < i; ++j) {
                    Cell rem_j = remove(sigma, j);
                    Cell target = glue(rem_j, i, a);
                    double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                    double value = w_sigma / wv(rem_j) - wv(glue(sigma, i + 1, a)) / wv(target);
                    L(static_cast<Eigen::Index>(complex.index_of(target)), s) += sign * value;
                }
                for (int j = i + 1; j <= n; ++j) {
                    Cell rem_j = remove(sigma, j);
                    Cell target = glue(rem_j, i, a);
                    double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
                    double value = w_sigma / wv(rem_j) - wv(glue(sigma, i, a)) / wv(target);
                    L(static_cast<Eigen::Index>(complex.index_of(target)), s) += sign * value;
                }
            }
        }
    }
    return L;
}

Eigen::MatrixXd independent_sequence_laplacian_direct(const ComplexIndex& complex,
                                                      const IndependentModel& model, int n) {
    if (complex.kind() != ComplexKind::FullSequence || !complex.augmented()) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "closed form needs an augmented full sequence complex");
    }
    if (model.flavor != IndependentModel::Flavor::Sequence ||
        model.vertex_weights.size() != complex.vertex_count()) {
        throw HodgeseqError(ErrorKind::Model, kModule, "mismatched independent sequence model");
    }
    require_dim(complex, n);
    int m = complex.vertex_count();
    Eigen::Index size = static_cast<Eigen::Index>(complex.cell_count(n));
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index s = 0; s < size; ++s) {
        Cell sigma = complex.cell_at(n, static_cast<std::size_t>(s));
        double occupied = 0.0;
        for (VertexId x : sigma.vertices()) occupied += model.vertex_weights(x);
        L(s, s) = static_cast<double>(n + 2) - occupied;
        for (int i = 0; i <= n; ++i) {
            double w_replaced = model.vertex_weights(sigma.vertices()[static_cast<std::size_t>(i)]);
            for (VertexId a = 0; a < m; ++a) {
                if (a == sigma.vertices()[static_cast<std::size_t>(i)]) continue;
                Eigen::Index t = static_cast<Eigen::Index>(complex.index_of(swap(sigma, i, a)));
                L(t, s) = -w_replaced;
            }
        }
    }
    return L;
}

Eigen::MatrixXd simplicial_laplacian_direct(const ComplexIndex& complex, const WeightFunction& w, int n) {
    if (complex.kind() != ComplexKind::Simplicial) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "closed-form simplicial Laplacian needs a simplicial complex");
    }
    require_dim(complex, n);
    require_alignment(complex, w);
    int m = complex.vertex_count();
    auto wv = [&](const Cell& c) { return w.value(c.dim(), complex.index_of(c)); };
    Eigen::Index size = static_cast<Eigen::Index>(complex.cell_count(n));
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index s = 0; s < size; ++s) {
        Cell xi = complex.cell_at(n, static_cast<std::size_t>(s));
        double w_xi = wv(xi);
        const auto& verts = xi.vertices();
        double diag = 0.0;
        // cofaces xi + {i}
        std::vector<Cell> cofaces(static_cast<std::size_t>(m));
        std::vector<bool> has_coface(static_cast<std::size_t>(m), false);
        for (VertexId i = 0; i < m; ++i) {
            if (std::binary_search(verts.begin(), verts.end(), i)) continue;
            std::vector<VertexId> up = verts;
            up.insert(std::upper_bound(up.begin(), up.end(), i), i);
            Cell coface = Cell::simplex(std::move(up));
            if (!complex.contains(coface)) continue;
            cofaces[static_cast<std::size_t>(i)] = coface;
            has_coface[static_cast<std::size_t>(i)] = true;
            diag += wv(coface) / w_xi;
        }
        // faces xi - {i_k}
        for (std::size_t k = 0; k < verts.size(); ++k) {
            std::vector<VertexId> down = verts;
            down.erase(down.begin() + static_cast<std::ptrdiff_t>(k));
            Cell face = down.empty() ? Cell::empty() : Cell::simplex(std::move(down));
            if (complex.contains(face)) diag += w_xi / wv(face);
        }
        L(s, s) += diag;
        // cross terms: replace vertex i_k by i, signed by the two hops
        for (VertexId i = 0; i < m; ++i) {
            if (std::binary_search(verts.begin(), verts.end(), i)) continue;
            for (std::size_t k = 0; k < verts.size(); ++k) {
                std::vector<VertexId> shared = verts;
                shared.erase(shared.begin() + static_cast<std::ptrdiff_t>(k));
                std::vector<VertexId> target_verts = shared;
                target_verts.insert(std::upper_bound(target_verts.begin(), target_verts.end(), i), i);
                Cell target = Cell::simplex(std::move(target_verts));
                if (!complex.contains(target)) continue;
                Cell shared_face = shared.empty() ? Cell::empty() : Cell::simplex(shared);
                double sign_k = (k % 2 == 0) ? 1.0 : -1.0; // kappa(xi, shared)
                std::size_t pos_i = static_cast<std::size_t>(
                    std::lower_bound(shared.begin(), shared.end(), i) - shared.begin());
                double kappa_ts = (pos_i % 2 == 0) ? 1.0 : -1.0; // kappa(target, shared)
                double term = 0.0;
                if (complex.contains(shared_face)) term += w_xi / wv(shared_face);
                if (has_coface[static_cast<std::size_t>(i)]) {
                    term -= wv(cofaces[static_cast<std::size_t>(i)]) / wv(target);
                }
                L(static_cast<Eigen::Index>(complex.index_of(target)), s) += sign_k * kappa_ts * term;
            }
        }
    }
    return L;
}

Eigen::MatrixXd combinatorial_laplacian(const ComplexIndex& graph, const WeightFunction& w) {
    if (graph.kind() != ComplexKind::Simplicial || graph.top_dim() > 1) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "combinatorial Laplacian is defined for complexes of dimension <= 1");
    }
    require_alignment(graph, w);
    Eigen::Index size = static_cast<Eigen::Index>(graph.cell_count(0));
    Eigen::MatrixXd adjacency = Eigen::MatrixXd::Zero(size, size);
    if (graph.has_dim(1)) {
        for (std::size_t e = 0; e < graph.cell_count(1); ++e) {
            Cell edge = graph.cell_at(1, e);
            Eigen::Index i = static_cast<Eigen::Index>(
                graph.index_of(Cell::simplex({edge.vertices()[0]})));
            Eigen::Index j = static_cast<Eigen::Index>(
                graph.index_of(Cell::simplex({edge.vertices()[1]})));
            adjacency(i, j) = adjacency(j, i) = w.value(1, e);
        }
    }
    Eigen::VectorXd degree = adjacency.rowwise().sum();
    Eigen::MatrixXd result = Eigen::MatrixXd(degree.asDiagonal()) - adjacency;
    return w.at(0).cwiseInverse().asDiagonal() * result;
}

double weighted_inner(const Eigen::VectorXd& w, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
    if (w.size() != f.size() || w.size() != g.size()) {
        throw HodgeseqError(ErrorKind::Input, kModule, "inner product size mismatch");
    }
    return (w.array() * f.array() * g.array()).sum();
}

double weighted_norm(const Eigen::VectorXd& w, const Eigen::VectorXd& f) {
    return std::sqrt(weighted_inner(w, f, f));
}

} // namespace hodgeseq
