#include "hodgeseq/cell.hpp"

#include <algorithm>
#include <sstream>

#include "hodgeseq/errors.hpp"

namespace hodgeseq {

namespace {

const char* kModule = "cell-complex";

void require_sequence_like(const Cell& s, const char* op) {
    if (s.kind() == CellKind::Simplex) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            std::string(op) + " is defined on sequence cells only");
    }
}

} // namespace

Cell::Cell(CellKind kind, std::vector<VertexId> vertices)
    : kind_(kind), vertices_(std::move(vertices)) {}

Cell Cell::empty() { return Cell(CellKind::Empty, {}); }

Cell Cell::sequence(std::vector<VertexId> vertices) {
    if (vertices.empty()) return empty();
    return Cell(CellKind::Sequence, std::move(vertices));
}

Cell Cell::simplex(std::vector<VertexId> vertices) {
    if (vertices.empty()) return empty();
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        if (vertices[i - 1] >= vertices[i]) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "simplex vertices must be strictly increasing");
        }
    }
    return Cell(CellKind::Simplex, std::move(vertices));
}

Cell Cell::simplex_from_set(std::vector<VertexId> vertices) {
    std::sort(vertices.begin(), vertices.end());
    return simplex(std::move(vertices));
}

bool Cell::operator<(const Cell& other) const {
    if (dim() != other.dim()) return dim() < other.dim();
    if (kind_ != other.kind_) return static_cast<int>(kind_) < static_cast<int>(other.kind_);
    return vertices_ < other.vertices_;
}

std::size_t CellHash::operator()(const Cell& c) const {
    std::size_t h = static_cast<std::size_t>(c.kind()) + 0x9e3779b97f4a7c15ULL;
    for (VertexId v : c.vertices()) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

Cell glue(const Cell& s, int slot, VertexId v) {
    require_sequence_like(s, "glue");
    int len = s.dim() + 1;
    if (slot < 0 || slot > len) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "glue slot " + std::to_string(slot) + " out of range [0, " +
                                std::to_string(len) + "]");
    }
    std::vector<VertexId> out = s.vertices();
    out.insert(out.begin() + slot, v);
    return Cell::sequence(std::move(out));
}

Cell remove(const Cell& s, int slot) {
    require_sequence_like(s, "remove");
    int top = s.dim();
    if (slot < 0 || slot > top) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "remove slot " + std::to_string(slot) + " out of range [0, " +
                                std::to_string(top) + "]");
    }
    std::vector<VertexId> out = s.vertices();
    out.erase(out.begin() + slot);
    return Cell::sequence(std::move(out));
}

Cell swap(const Cell& s, int slot, VertexId v) {
    require_sequence_like(s, "swap");
    int top = s.dim();
    if (slot < 0 || slot > top) {
        throw HodgeseqError(ErrorKind::Input, kModule,
                            "swap slot " + std::to_string(slot) + " out of range [0, " +
                                std::to_string(top) + "]");
    }
    std::vector<VertexId> out = s.vertices();
    out[static_cast<std::size_t>(slot)] = v;
    return Cell::sequence(std::move(out));
}

bool swapped(const Cell& a, const Cell& b) {
    require_sequence_like(a, "swapped");
    require_sequence_like(b, "swapped");
    if (a.dim() != b.dim()) return false;
    int differing = 0;
    for (std::size_t i = 0; i < a.vertices().size(); ++i) {
        if (a.vertices()[i] != b.vertices()[i] && ++differing > 1) return false;
    }
    return true;
}

std::string cell_name(const Cell& cell, const std::vector<std::string>& vocabulary) {
    auto lookup = [&](VertexId v) -> const std::string& {
        if (v < 0 || static_cast<std::size_t>(v) >= vocabulary.size()) {
            throw HodgeseqError(ErrorKind::Input, kModule,
                                "vertex id " + std::to_string(v) + " outside the vocabulary");
        }
        return vocabulary[static_cast<std::size_t>(v)];
    };
    switch (cell.kind()) {
        case CellKind::Empty:
            return "()";
        case CellKind::Sequence: {
            std::ostringstream out;
            for (std::size_t i = 0; i < cell.vertices().size(); ++i) {
                if (i) out << '.';
                out << lookup(cell.vertices()[i]);
            }
            return out.str();
        }
        case CellKind::Simplex: {
            std::ostringstream out;
            out << '{';
            for (std::size_t i = 0; i < cell.vertices().size(); ++i) {
                if (i) out << ',';
                out << lookup(cell.vertices()[i]);
            }
            out << '}';
            return out.str();
        }
    }
    return "()";
}

} // namespace hodgeseq
