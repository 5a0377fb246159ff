#include "sqbench/arch.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "json.hpp"

namespace sqbench {

std::vector<Dot> DotGrid::all_dots() const {
    std::vector<Dot> out;
    out.reserve(count());
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out.push_back({r, c});
    return out;
}

const char* variant_name(CgVariant v) {
    switch (v) {
        case CgVariant::CG1: return "cg1";
        case CgVariant::CG2: return "cg2";
        case CgVariant::CG3: return "cg3";
        case CgVariant::Custom: return "custom";
    }
    return "?";
}

CgVariant variant_from_string(const std::string& s) {
    if (s == "1" || s == "cg1" || s == "CG1") return CgVariant::CG1;
    if (s == "2" || s == "cg2" || s == "CG2") return CgVariant::CG2;
    if (s == "3" || s == "cg3" || s == "CG3") return CgVariant::CG3;
    if (s == "custom") return CgVariant::Custom;
    throw std::invalid_argument("unknown connectivity variant: " + s);
}

namespace {

void check_grid(const DotGrid& g) {
    if (g.rows != 2) throw std::invalid_argument("grid must have exactly 2 rows");
    if (g.cols < 4 || g.cols > 7)
        throw std::invalid_argument("grid cols must lie in [4, 7]");
}

bool graph_connected(const DotGrid& grid, const std::vector<std::vector<Dot>>& adj) {
    std::vector<bool> seen(grid.count(), false);
    std::deque<Dot> queue{grid.dot(0)};
    seen[0] = true;
    int reached = 1;
    while (!queue.empty()) {
        Dot d = queue.front();
        queue.pop_front();
        for (Dot n : adj[grid.index(d)]) {
            if (!seen[grid.index(n)]) {
                seen[grid.index(n)] = true;
                ++reached;
                queue.push_back(n);
            }
        }
    }
    return reached == grid.count();
}

}  // namespace

ConnectivityGraph::ConnectivityGraph(DotGrid grid, CgVariant variant,
                                     std::vector<std::pair<Dot, Dot>> edges)
    : grid_(grid), variant_(variant), adj_(grid.count()) {
    check_grid(grid_);
    for (auto& [a, b] : edges) {
        if (!grid_.contains(a) || !grid_.contains(b))
            throw std::invalid_argument("edge endpoint outside grid");
        if (a == b) throw std::invalid_argument("self-loop edge");
        auto& na = adj_[grid_.index(a)];
        if (std::find(na.begin(), na.end(), b) != na.end()) continue;  // duplicate
        na.push_back(b);
        adj_[grid_.index(b)].push_back(a);
        ++n_edges_;
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    if (!graph_connected(grid_, adj_))
        throw std::invalid_argument("connectivity graph is not connected");
}

double ConnectivityGraph::average_degree() const {
    return 2.0 * static_cast<double>(n_edges_) / static_cast<double>(num_dots());
}

bool ConnectivityGraph::adjacent(Dot a, Dot b) const {
    const auto& nbrs = adj_[grid_.index(a)];
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::span<const Dot> ConnectivityGraph::neighbors(Dot d) const {
    return adj_[grid_.index(d)];
}

ConnectivityGraph build_cg(CgVariant variant, int cols) {
    if (variant == CgVariant::Custom)
        throw std::invalid_argument("custom graphs need an explicit edge list");
    DotGrid grid{2, cols};
    check_grid(grid);
    std::vector<std::pair<Dot, Dot>> edges;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c + 1 < cols; ++c) edges.push_back({{r, c}, {r, c + 1}});
    if (variant == CgVariant::CG1) {
        edges.push_back({{0, 0}, {1, 0}});
        edges.push_back({{0, cols - 1}, {1, cols - 1}});
        // A bare ladder frame is a single cycle, which freezes the cyclic
        // order of the qubits and makes most interaction patterns
        // unroutable. One center rung keeps CG1 strictly sparser than CG2
        // while leaving every pairing reachable.
        edges.push_back({{0, cols / 2}, {1, cols / 2}});
    } else {
        for (int c = 0; c < cols; ++c) edges.push_back({{0, c}, {1, c}});
    }
    if (variant == CgVariant::CG3) {
        for (int c = 0; c + 1 < cols; ++c) {
            edges.push_back({{0, c}, {1, c + 1}});
            edges.push_back({{1, c}, {0, c + 1}});
        }
    }
    return ConnectivityGraph(grid, variant, std::move(edges));
}

ConnectivityGraph build_custom_cg(int cols, std::vector<std::pair<Dot, Dot>> edges) {
    return ConnectivityGraph(DotGrid{2, cols}, CgVariant::Custom, std::move(edges));
}

ConnectivityGraph load_cg_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    int cols = j.at("cols").get<int>();
    std::vector<std::pair<Dot, Dot>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("edge must be a pair of dots");
        auto dot = [](const nlohmann::json& d) -> Dot {
            return {d.at(0).get<int>(), d.at(1).get<int>()};
        };
        edges.push_back({dot(e.at(0)), dot(e.at(1))});
    }
    return build_custom_cg(cols, std::move(edges));
}

int OccupancySet::count() const {
    int n = 0;
    for (bool b : bits_) n += b ? 1 : 0;
    return n;
}

std::optional<std::vector<Dot>> shortest_path(const ConnectivityGraph& cg,
                                              const OccupancySet& occupied,
                                              Dot from, Dot to,
                                              bool avoid_occupied) {
    const DotGrid& grid = cg.grid();
    if (from == to) throw std::invalid_argument("shortest_path: from == to");
    std::vector<int> parent(grid.count(), -1);
    std::vector<bool> seen(grid.count(), false);
    std::deque<Dot> queue{from};
    seen[grid.index(from)] = true;
    while (!queue.empty()) {
        Dot d = queue.front();
        queue.pop_front();
        for (Dot n : cg.neighbors(d)) {
            if (seen[grid.index(n)]) continue;
            if (avoid_occupied && n != to && occupied.occupied(n)) continue;
            seen[grid.index(n)] = true;
            parent[grid.index(n)] = grid.index(d);
            if (n == to) {
                std::vector<Dot> path{to};
                for (int at = grid.index(to); parent[at] != -1; at = parent[at])
                    path.push_back(grid.dot(parent[at]));
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(n);
        }
    }
    return std::nullopt;
}

int bfs_distance(const ConnectivityGraph& cg, const OccupancySet& occupied,
                 Dot from, Dot to, bool avoid_occupied) {
    if (from == to) return 0;
    auto path = shortest_path(cg, occupied, from, to, avoid_occupied);
    return path ? static_cast<int>(path->size()) - 1 : -1;
}

}  // namespace sqbench
