#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqbench/ir.hpp"

namespace sqbench {

// 2 x cols array of quantum dots.
struct DotGrid {
    int rows = 2;
    int cols = 0;

    int count() const { return rows * cols; }
    bool contains(Dot d) const {
        return d.row >= 0 && d.row < rows && d.col >= 0 && d.col < cols;
    }
    int index(Dot d) const { return d.row * cols + d.col; }
    Dot dot(int idx) const { return {idx / cols, idx % cols}; }
    std::vector<Dot> all_dots() const;
};

enum class CgVariant { CG1, CG2, CG3, Custom };

const char* variant_name(CgVariant v);
CgVariant variant_from_string(const std::string& s);

// Connectivity graph over a bilinear dot grid. Edges are the dot pairs along
// which both shuttles and two-qubit gates are permitted. The graph is
// undirected and must be connected; readout is pinned to the bottom-left dot.
class ConnectivityGraph {
public:
    ConnectivityGraph(DotGrid grid, CgVariant variant,
                      std::vector<std::pair<Dot, Dot>> edges);

    const DotGrid& grid() const { return grid_; }
    CgVariant variant() const { return variant_; }
    Dot measurement_dot() const { return {1, 0}; }

    int num_dots() const { return grid_.count(); }
    std::size_t num_edges() const { return n_edges_; }
    double average_degree() const;

    bool adjacent(Dot a, Dot b) const;
    // Neighbors in lexicographic (row, col) order.
    std::span<const Dot> neighbors(Dot d) const;

private:
    DotGrid grid_;
    CgVariant variant_;
    std::size_t n_edges_ = 0;
    std::vector<std::vector<Dot>> adj_;  // indexed by grid_.index
};

// Standard variants:
//   CG1 - both horizontal rows plus vertical rungs at the two end columns
//   CG2 - full ladder (rows plus every vertical rung)
//   CG3 - full ladder plus both diagonals in every unit cell
ConnectivityGraph build_cg(CgVariant variant, int cols);

ConnectivityGraph build_custom_cg(int cols, std::vector<std::pair<Dot, Dot>> edges);

// Custom graph from JSON: {"cols": 6, "edges": [[[0,0],[0,1]], ...]}
ConnectivityGraph load_cg_json(const std::string& json_text);

// Which dots currently hold a qubit. Keyed by grid index.
class OccupancySet {
public:
    OccupancySet() = default;
    explicit OccupancySet(const DotGrid& grid) : grid_(grid), bits_(grid.count(), false) {}

    bool occupied(Dot d) const { return bits_[grid_.index(d)]; }
    void set(Dot d, bool v) { bits_[grid_.index(d)] = v; }
    int count() const;

private:
    DotGrid grid_;
    std::vector<bool> bits_;
};

// Breadth-first shortest path from `from` to `to`, inclusive of endpoints.
// With avoid_occupied set, interior dots must be unoccupied (endpoints are
// exempt). Ties are broken by expanding neighbors in lexicographic order,
// which makes the result deterministic. Returns nullopt when unreachable.
std::optional<std::vector<Dot>> shortest_path(const ConnectivityGraph& cg,
                                              const OccupancySet& occupied,
                                              Dot from, Dot to,
                                              bool avoid_occupied);

// BFS distance variant of the above; -1 when unreachable.
int bfs_distance(const ConnectivityGraph& cg, const OccupancySet& occupied,
                 Dot from, Dot to, bool avoid_occupied);

}  // namespace sqbench
