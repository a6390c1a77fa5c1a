#ifndef HODGESEQ_CELL_HPP
#define HODGESEQ_CELL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hodgeseq {

using VertexId = std::int32_t;

enum class CellKind { Empty, Sequence, Simplex };

/**
 * A single cell of a complex: an ordered vertex tuple (sequence, repeats
 * allowed), a strictly increasing vertex set (simplex), or the distinguished
 * empty cell of dimension -1 shared by both kinds.
 */
class Cell {
public:
    Cell() = default;

    static Cell empty();
    static Cell sequence(std::vector<VertexId> vertices);
    // Requires strictly increasing vertices; throws ErrorKind::Input otherwise.
    static Cell simplex(std::vector<VertexId> vertices);
    // Sorts the input first; duplicates are still an error.
    static Cell simplex_from_set(std::vector<VertexId> vertices);

    CellKind kind() const { return kind_; }
    bool is_empty() const { return kind_ == CellKind::Empty; }
    int dim() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<VertexId>& vertices() const { return vertices_; }

    bool operator==(const Cell& other) const {
        return kind_ == other.kind_ && vertices_ == other.vertices_;
    }
    bool operator!=(const Cell& other) const { return !(*this == other); }
    // Orders by dimension first, then lexicographically by vertices.
    bool operator<(const Cell& other) const;

private:
    Cell(CellKind kind, std::vector<VertexId> vertices);

    CellKind kind_ = CellKind::Empty;
    std::vector<VertexId> vertices_;
};

struct CellHash {
    std::size_t operator()(const Cell& c) const;
};

// Sequence calculus.  All three act on sequence cells (the empty cell counts
// as the length-0 sequence) and validate their slot argument.
//   glue(s, i, v):  insert v at slot i, 0 <= i <= dim+1
//   remove(s, i):   drop slot i, 0 <= i <= dim
//   swap(s, i, v):  replace slot i by v, 0 <= i <= dim
Cell glue(const Cell& s, int slot, VertexId v);
Cell remove(const Cell& s, int slot);
Cell swap(const Cell& s, int slot, VertexId v);

// True when a and b are sequences of equal length differing in at most one
// slot (reflexive by definition).
bool swapped(const Cell& a, const Cell& b);

// Human-readable cell name: sequences "a.b.a", simplices "{a,b}", empty "()".
std::string cell_name(const Cell& cell, const std::vector<std::string>& vocabulary);

} // namespace hodgeseq

#endif // HODGESEQ_CELL_HPP
