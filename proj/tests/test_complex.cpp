#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "hodgeseq/complex.hpp"
#include "hodgeseq/errors.hpp"

using namespace hodgeseq;

namespace {

// Independent incidence oracle for sequences: sum the removal signs.
int kappa_sequence_oracle(const Cell& upper, const Cell& lower) {
    if (upper.dim() != lower.dim() + 1) return 0;
    int sum = 0;
    for (int i = 0; i <= upper.dim(); ++i) {
        if (remove(upper, i) == lower) sum += (i % 2 == 0) ? 1 : -1;
    }
    return sum;
}

// Independent incidence oracle for simplices: (-1)^position of the dropped
// vertex, 0 unless exactly one vertex is dropped.
int kappa_simplex_oracle(const Cell& upper, const Cell& lower) {
    if (upper.dim() != lower.dim() + 1) return 0;
    if (lower.is_empty()) return upper.dim() == 0 ? 1 : 0;
    const auto& u = upper.vertices();
    const auto& l = lower.vertices();
    for (std::size_t drop = 0; drop < u.size(); ++drop) {
        std::vector<VertexId> rest;
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (i != drop) rest.push_back(u[i]);
        }
        if (rest == l) return (drop % 2 == 0) ? 1 : -1;
    }
    return 0;
}

} // namespace

TEST_CASE("full sequence complex enumerates m^(n+1) cells up to max_dim+1") {
    ComplexIndex cx = ComplexIndex::full_sequence(2, 1);
    CHECK(cx.kind() == ComplexKind::FullSequence);
    CHECK(cx.min_dim() == -1);
    CHECK(cx.top_dim() == 2); // one dimension above the requested Laplacian dim
    CHECK(cx.cell_count(-1) == 1);
    CHECK(cx.cell_count(0) == 2);
    CHECK(cx.cell_count(1) == 4);
    CHECK(cx.cell_count(2) == 8);
    CHECK(cx.cell_count(3) == 0); // outside the stored range

    ComplexIndex big = ComplexIndex::full_sequence(4, 4);
    CHECK(big.cell_count(4) == 1024);
    CHECK(big.cell_count(5) == 4096);
}

TEST_CASE("sequence cells are ordered as base-m digit strings") {
    ComplexIndex cx = ComplexIndex::full_sequence(3, 1);
    CHECK(cx.cell_at(0, 0) == Cell::sequence({0}));
    CHECK(cx.cell_at(0, 2) == Cell::sequence({2}));
    CHECK(cx.cell_at(1, 0) == Cell::sequence({0, 0}));
    CHECK(cx.cell_at(1, 5) == Cell::sequence({1, 2})); // 1*3 + 2
    CHECK(cx.cell_at(1, 7) == Cell::sequence({2, 1}));
    CHECK(cx.cell_at(-1, 0) == Cell::empty());

    // index_of inverts cell_at on every stored dimension
    for (int n = cx.min_dim(); n <= cx.top_dim(); ++n) {
        for (std::size_t i = 0; i < cx.cell_count(n); ++i) {
            CHECK(cx.index_of(cx.cell_at(n, i)) == i);
        }
    }

    CHECK(cx.contains(Cell::sequence({2, 2, 2})));
    CHECK_FALSE(cx.contains(Cell::sequence({0, 3})));       // vertex out of range
    CHECK_FALSE(cx.contains(Cell::sequence({0, 0, 0, 0}))); // beyond stored dims
    CHECK_FALSE(cx.contains(Cell::simplex({0, 1})));        // wrong kind
    CHECK_THROWS_AS(cx.index_of(Cell::sequence({0, 0, 0, 0})), HodgeseqError);
    CHECK_THROWS_AS((void)cx.facets(), HodgeseqError);
}

TEST_CASE("cell budget bounds every dimension") {
    CHECK_THROWS_AS(ComplexIndex::full_sequence(10, 5), HodgeseqError); // 10^7 cells at the top
    BuildOptions tight;
    tight.cell_budget = 100;
    CHECK_THROWS_AS(ComplexIndex::full_sequence(2, 6, tight), HodgeseqError); // 2^8 = 256 > 100
    CHECK_NOTHROW(ComplexIndex::full_sequence(2, 4, tight));                  // 2^6 = 64 fits
}

TEST_CASE("cell budget accepts complexes inside the bound") {
    BuildOptions tight;
    tight.cell_budget = 128;
    ComplexIndex cx = ComplexIndex::full_sequence(2, 5, tight); // top slice 2^7 = 128
    CHECK(cx.cell_count(6) == 128);
    tight.cell_budget = 127;
    CHECK_THROWS_AS(ComplexIndex::full_sequence(2, 5, tight), HodgeseqError);
}

TEST_CASE("non-augmented complexes drop the empty cell") {
    BuildOptions options;
    options.augmentation = false;
    ComplexIndex cx = ComplexIndex::full_sequence(2, 1, options);
    CHECK(cx.min_dim() == 0);
    CHECK(cx.cell_count(-1) == 0);
    CHECK_FALSE(cx.contains(Cell::empty()));
    CHECK_FALSE(cx.augmented());
}

TEST_CASE("simplicial complexes store the downward closure of their facets") {
    ComplexIndex tri = ComplexIndex::full_simplex(3);
    CHECK(tri.kind() == ComplexKind::Simplicial);
    CHECK(tri.top_dim() == 2);
    CHECK(tri.cell_count(-1) == 1);
    CHECK(tri.cell_count(0) == 3);
    CHECK(tri.cell_count(1) == 3);
    CHECK(tri.cell_count(2) == 1);

    // lexicographic order within a dimension
    CHECK(tri.cell_at(1, 0) == Cell::simplex({0, 1}));
    CHECK(tri.cell_at(1, 1) == Cell::simplex({0, 2}));
    CHECK(tri.cell_at(1, 2) == Cell::simplex({1, 2}));
    CHECK(tri.index_of(Cell::simplex({0, 2})) == 1);

    ComplexIndex boundary = ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(boundary.top_dim() == 1);
    CHECK(boundary.cell_count(1) == 3);
    CHECK_FALSE(boundary.contains(Cell::simplex({0, 1, 2})));
}

TEST_CASE("facet normalization sorts, deduplicates and drops non-maximal faces") {
    ComplexIndex cx = ComplexIndex::simplicial(4, {{2, 0, 1}, {0, 1}, {1, 2}, {3}});
    REQUIRE(cx.facets().size() == 2);
    CHECK(cx.facets()[0] == std::vector<VertexId>{0, 1, 2});
    CHECK(cx.facets()[1] == std::vector<VertexId>{3});
    CHECK(cx.cell_count(0) == 4);
    CHECK(cx.cell_count(1) == 3);

    CHECK_THROWS_AS(ComplexIndex::simplicial(3, {{0, 0}}), HodgeseqError);  // duplicate vertex
    CHECK_THROWS_AS(ComplexIndex::simplicial(2, {{0, 5}}), HodgeseqError);  // out of range
    BuildOptions options;
    options.augmentation = false;
    CHECK_THROWS_AS(ComplexIndex::simplicial(2, {}, options), HodgeseqError); // nothing left
}

TEST_CASE("oversized facets are refused before enumeration") {
    BuildOptions tight;
    tight.cell_budget = 1000;
    std::vector<VertexId> big;
    for (VertexId v = 0; v < 40; ++v) big.push_back(v);
    CHECK_THROWS_AS(ComplexIndex::simplicial(40, {big}, tight), HodgeseqError);
}

TEST_CASE("sequence incidence matches the removal-sign oracle") {
    ComplexIndex cx = ComplexIndex::full_sequence(2, 1);

    // frozen spot checks: kappa((a,b),(b)) = +1, kappa((a,b),(a)) = -1,
    // repeated vertices cancel: kappa((a,a),(a)) = 0, and kappa(v, ()) = +1
    CHECK(cx.incidence(Cell::sequence({0, 1}), Cell::sequence({1})) == 1);
    CHECK(cx.incidence(Cell::sequence({0, 1}), Cell::sequence({0})) == -1);
    CHECK(cx.incidence(Cell::sequence({0, 0}), Cell::sequence({0})) == 0);
    CHECK(cx.incidence(Cell::sequence({0}), Cell::empty()) == 1);
    CHECK(cx.incidence(Cell::sequence({1, 1, 0}), Cell::sequence({1})) == 0); // wrong codimension

    for (int n = cx.min_dim(); n < cx.top_dim(); ++n) {
        for (std::size_t r = 0; r < cx.cell_count(n + 1); ++r) {
            for (std::size_t c = 0; c < cx.cell_count(n); ++c) {
                Cell u = cx.cell_at(n + 1, r);
                Cell l = cx.cell_at(n, c);
                CHECK(cx.incidence(u, l) == kappa_sequence_oracle(u, l));
            }
        }
    }
}

TEST_CASE("simplicial incidence matches the dropped-vertex oracle") {
    ComplexIndex cx = ComplexIndex::full_simplex(4);

    CHECK(cx.incidence(Cell::simplex({0, 1, 2}), Cell::simplex({1, 2})) == 1);
    CHECK(cx.incidence(Cell::simplex({0, 1, 2}), Cell::simplex({0, 2})) == -1);
    CHECK(cx.incidence(Cell::simplex({0, 1, 2}), Cell::simplex({0, 1})) == 1);
    CHECK(cx.incidence(Cell::simplex({1}), Cell::empty()) == 1);
    CHECK(cx.incidence(Cell::simplex({0, 3}), Cell::simplex({1})) == 0);

    for (int n = cx.min_dim(); n < cx.top_dim(); ++n) {
        for (std::size_t r = 0; r < cx.cell_count(n + 1); ++r) {
            for (std::size_t c = 0; c < cx.cell_count(n); ++c) {
                Cell u = cx.cell_at(n + 1, r);
                Cell l = cx.cell_at(n, c);
                CHECK(cx.incidence(u, l) == kappa_simplex_oracle(u, l));
            }
        }
    }

    CHECK_THROWS_AS(cx.incidence(Cell::simplex({0, 1}), Cell::simplex({7})), HodgeseqError);
}

TEST_CASE("validation passes on honest complexes") {
    CHECK(validate_acc(ComplexIndex::full_sequence(2, 2)).pass);
    CHECK(validate_acc(ComplexIndex::full_sequence(3, 1)).pass);
    CHECK(validate_acc(ComplexIndex::full_simplex(4)).pass);
    CHECK(validate_acc(ComplexIndex::simplicial(3, {{0, 1}, {1, 2}, {0, 2}})).pass);
    BuildOptions options;
    options.augmentation = false;
    CHECK(validate_acc(ComplexIndex::full_sequence(2, 2, options)).pass);
}

TEST_CASE("validation catches a flipped incidence sign") {
    ComplexIndex cx = ComplexIndex::full_sequence(2, 1);
    Cell bad_u = Cell::sequence({0, 1});
    Cell bad_l = Cell::sequence({1});
    KappaFn flipped = [&](const Cell& u, const Cell& l) {
        int k = cx.incidence(u, l);
        if (u == bad_u && l == bad_l) return -k;
        return k;
    };
    ValidationReport report = validate_acc(cx, flipped);
    CHECK_FALSE(report.pass);
    CHECK(report.violating_pair.has_value());
    CHECK_FALSE(report.failure.empty());
}

TEST_CASE("validation catches incidence support outside faces") {
    ComplexIndex cx = ComplexIndex::full_simplex(3);
    KappaFn leaky = [&](const Cell& u, const Cell& l) {
        int k = cx.incidence(u, l);
        if (k == 0 && u.dim() == l.dim() + 1) return 7; // nonzero off the faces
        return k;
    };
    ValidationReport report = validate_acc(cx, leaky);
    CHECK_FALSE(report.pass);
}
