#include "sqbench/compile.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>
#include <set>
#include <stdexcept>

namespace sqbench {

int InteractionGraph::weight(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = weights.find({a, b});
    return it == weights.end() ? 0 : it->second;
}

InteractionGraph build_interaction_graph(const Circuit& c) {
    InteractionGraph ig;
    ig.n_qubits = c.n_qubits;
    for (const auto& op : c.ops) {
        if (!is_two_qubit(op.kind) || op.tag == OpTag::Noise) continue;
        int a = op.operands[0], b = op.operands[1];
        if (a > b) std::swap(a, b);
        ++ig.weights[{a, b}];
    }
    return ig;
}

void Placement::validate(const ConnectivityGraph& cg) const {
    std::set<Dot> used;
    for (Dot d : dot_of) {
        if (!cg.grid().contains(d))
            throw std::invalid_argument("placement maps a qubit outside the grid");
        if (!used.insert(d).second)
            throw std::invalid_argument("placement is not injective");
    }
}

Placement random_placement(const ConnectivityGraph& cg, int n_qubits, Rng& rng) {
    if (n_qubits > cg.num_dots())
        throw std::invalid_argument("more qubits than dots");
    std::vector<Dot> dots = cg.grid().all_dots();
    rng.shuffle(dots);
    Placement p;
    p.dot_of.assign(dots.begin(), dots.begin() + n_qubits);
    return p;
}

namespace {

// BFS from `start` restricted to free dots, returning the path to the
// nearest free dot that is not in `banned_targets`. Dots in `banned_targets`
// may still be traversed. Lexicographic expansion keeps this deterministic.
std::optional<std::vector<Dot>> displacement_path(const ConnectivityGraph& cg,
                                                  const OccupancySet& occ,
                                                  Dot start,
                                                  const std::set<Dot>& banned_targets) {
    const DotGrid& grid = cg.grid();
    std::vector<int> parent(grid.count(), -1);
    std::vector<bool> seen(grid.count(), false);
    seen[grid.index(start)] = true;
    std::deque<Dot> queue{start};
    while (!queue.empty()) {
        Dot d = queue.front();
        queue.pop_front();
        for (Dot n : cg.neighbors(d)) {
            if (seen[grid.index(n)] || occ.occupied(n)) continue;
            seen[grid.index(n)] = true;
            parent[grid.index(n)] = grid.index(d);
            if (!banned_targets.count(n)) {
                std::vector<Dot> path{n};
                for (int at = grid.index(n); parent[at] != -1; at = parent[at])
                    path.push_back(grid.dot(parent[at]));
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(n);
        }
    }
    return std::nullopt;
}

int qubit_at(const std::vector<Dot>& dot_of, Dot d) {
    for (std::size_t q = 0; q < dot_of.size(); ++q)
        if (dot_of[q] == d) return static_cast<int>(q);
    return -1;
}

void do_shuttle(const ConnectivityGraph& cg, OccupancySet& occ,
                std::vector<Dot>& dot_of, int q, Dot to,
                std::vector<Operation>& out) {
    Dot from = dot_of[q];
    if (!cg.adjacent(from, to)) throw std::logic_error("shuttle along a non-edge");
    if (occ.occupied(to)) throw std::logic_error("shuttle into an occupied dot");
    out.push_back(make_shuttle(q, from, to));
    occ.set(from, false);
    occ.set(to, true);
    dot_of[q] = to;
}

}  // namespace

bool resolve_blockage(const ConnectivityGraph& cg, OccupancySet& occ,
                      std::vector<Dot>& dot_of_qubit,
                      std::span<const Dot> path,
                      std::vector<Operation>& out) {
    std::set<Dot> on_path(path.begin(), path.end());
    const std::size_t checkpoint = out.size();
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (!occ.occupied(path[i])) continue;
        int blocker = qubit_at(dot_of_qubit, path[i]);
        auto dp = displacement_path(cg, occ, path[i], on_path);
        if (!dp) {
            // Roll back is unnecessary: partial displacements leave all
            // invariants intact, but report failure so the caller reroutes.
            (void)checkpoint;
            return false;
        }
        for (std::size_t j = 1; j < dp->size(); ++j)
            do_shuttle(cg, occ, dot_of_qubit, blocker, (*dp)[j], out);
    }
    return true;
}

namespace {

class Router {
public:
    Router(const Circuit& c, const ConnectivityGraph& cg, const Placement& p,
           std::uint64_t seed, const HardwareProfile& profile)
        : circuit_(c), cg_(cg), profile_(profile), rng_(splitmix64(seed)) {
        if (c.n_qubits > cg.num_dots())
            throw std::invalid_argument("more qubits than dots");
        if (p.n_qubits() != c.n_qubits)
            throw std::invalid_argument("placement does not cover the circuit");
        p.validate(cg);
        dot_of_ = p.dot_of;
        occ_ = OccupancySet(cg.grid());
        for (Dot d : dot_of_) occ_.set(d, true);
    }

    CompiledCircuit run() {
        CompiledCircuit cc;
        cc.n_qubits = circuit_.n_qubits;
        cc.initial_placement.dot_of = dot_of_;
        for (const auto& op : circuit_.ops) {
            if (op.kind == GateKind::Shuttle)
                throw std::invalid_argument("input circuits cannot contain shuttles");
            if (op.tag == OpTag::Noise) {
                out_.push_back(op);
                continue;
            }
            if (is_two_qubit(op.kind)) {
                make_adjacent(op.operands[0], op.operands[1]);
            } else if (op.kind == GateKind::MeasureZ) {
                move_to_dot(op.operands[0], cg_.measurement_dot());
            }
            out_.push_back(op);
        }
        cc.final_placement.dot_of = dot_of_;
        cc.shuttle_count = shuttles_;
        double total = 0.0;
        for (const auto& op : out_) total += duration_of(op, profile_);
        cc.duration_ns = total;
        cc.ops = std::move(out_);
        return cc;
    }

private:
    Dot dot(int q) const { return dot_of_[q]; }

    void emit_shuttle(int q, Dot to) {
        do_shuttle(cg_, occ_, dot_of_, q, to, out_);
        ++shuttles_;
    }

    void walk(int q, std::span<const Dot> path) {
        for (std::size_t i = 1; i < path.size(); ++i) emit_shuttle(q, path[i]);
    }

    // Cost of moving q next to / onto `goal`: length of the occupancy-aware
    // path when one exists, otherwise the plain path length plus a penalty
    // per blocker.
    int path_cost(int q, Dot goal) const {
        if (dot(q) == goal) return 0;
        if (auto free = shortest_path(cg_, occ_, dot(q), goal, true))
            return static_cast<int>(free->size()) - 1;
        auto any = shortest_path(cg_, occ_, dot(q), goal, false);
        if (!any) return std::numeric_limits<int>::max();
        int blockers = 0;
        for (std::size_t i = 1; i + 1 < any->size(); ++i)
            if (occ_.occupied((*any)[i])) ++blockers;
        return static_cast<int>(any->size()) - 1 + 2 * blockers;
    }

    // Bring the hole to `v` without disturbing the mover (and, when
    // possible, the other gate operand), then step the mover into it. This
    // is the guaranteed-progress fallback for dense occupancies where no
    // blocker has a free dot to retreat to.
    void hole_step(int q, Dot v, int avoid_qubit) {
        if (occ_.occupied(v)) {
            auto hole_path = find_hole_path(v, q, avoid_qubit);
            if (!hole_path) hole_path = find_hole_path(v, q, -1);
            if (!hole_path)
                throw std::runtime_error("unroutable: no free dot reachable");
            for (std::size_t i = hole_path->size() - 1; i >= 1; --i) {
                Dot from = (*hole_path)[i - 1];
                int occupant = qubit_at(dot_of_, from);
                emit_shuttle(occupant, (*hole_path)[i]);
            }
        }
        emit_shuttle(q, v);
    }

    // BFS from v through arbitrarily occupied dots to the nearest free dot,
    // avoiding the dots of the given qubits. Path runs v -> ... -> hole.
    std::optional<std::vector<Dot>> find_hole_path(Dot v, int q, int avoid_qubit) const {
        const DotGrid& grid = cg_.grid();
        std::vector<int> parent(grid.count(), -1);
        std::vector<bool> seen(grid.count(), false);
        seen[grid.index(v)] = true;
        seen[grid.index(dot(q))] = true;
        if (avoid_qubit >= 0) seen[grid.index(dot(avoid_qubit))] = true;
        std::deque<Dot> queue{v};
        while (!queue.empty()) {
            Dot d = queue.front();
            queue.pop_front();
            for (Dot n : cg_.neighbors(d)) {
                if (seen[grid.index(n)]) continue;
                seen[grid.index(n)] = true;
                parent[grid.index(n)] = grid.index(d);
                if (!occ_.occupied(n)) {
                    std::vector<Dot> path{n};
                    for (int at = grid.index(n); parent[at] != -1; at = parent[at])
                        path.push_back(grid.dot(parent[at]));
                    std::reverse(path.begin(), path.end());
                    return path;  // runs v..hole after reversal below
                }
                queue.push_back(n);
            }
        }
        return std::nullopt;
    }

    void make_adjacent(int qa, int qb) {
        if (cg_.adjacent(dot(qa), dot(qb))) return;
        int ca = path_cost(qa, dot(qb));
        int cb = path_cost(qb, dot(qa));
        int mover, other;
        if (ca < cb || (ca == cb && qa < qb)) {
            mover = qa;
            other = qb;
        } else {
            mover = qb;
            other = qa;
        }
        OccupancySet no_occupancy(cg_.grid());
        long guard = 0;
        int best = bfs_distance(cg_, no_occupancy, dot(mover), dot(other), false);
        int stalled = 0;
        while (!cg_.adjacent(dot(mover), dot(other))) {
            if (++guard > kGuardLimit)
                throw std::runtime_error("unroutable: adjacency search stalled");
            // On near-full grids the greedy march can cycle: every hole
            // migration pushes the partner along as well. Detect the lack of
            // progress and switch to an exact search over configurations.
            int d = bfs_distance(cg_, no_occupancy, dot(mover), dot(other), false);
            if (d < best) {
                best = d;
                stalled = 0;
            } else if (++stalled > 2 * cg_.num_dots()) {
                exact_adjacency_solve(qa, qb);
                return;
            }
            auto free_path = shortest_path(cg_, occ_, dot(mover), dot(other), true);
            if (free_path) {
                walk(mover, std::span(free_path->data(), free_path->size() - 1));
                continue;
            }
            auto any_path = shortest_path(cg_, occ_, dot(mover), dot(other), false);
            if (!any_path) throw std::runtime_error("unroutable: operands disconnected");
            std::span<const Dot> truncated(any_path->data(), any_path->size() - 1);
            std::size_t before = out_.size();
            if (resolve_blockage(cg_, occ_, dot_of_, truncated, out_)) {
                shuttles_ += static_cast<long>(out_.size() - before);
                walk(mover, truncated);
            } else {
                shuttles_ += static_cast<long>(out_.size() - before);
                hole_step(mover, (*any_path)[1], other);
            }
        }
    }

    void move_to_dot(int q, Dot target) {
        long guard = 0;
        while (dot(q) != target) {
            if (++guard > kGuardLimit)
                throw std::runtime_error("unroutable: move search stalled");
            auto path = shortest_path(cg_, occ_, dot(q), target, true);
            if (!path || occ_.occupied(target))
                path = shortest_path(cg_, occ_, dot(q), target, false);
            if (!path) throw std::runtime_error("unroutable: target disconnected");
            std::size_t before = out_.size();
            if (resolve_blockage(cg_, occ_, dot_of_, *path, out_)) {
                shuttles_ += static_cast<long>(out_.size() - before);
                walk(q, *path);
            } else {
                shuttles_ += static_cast<long>(out_.size() - before);
                // Step along the plain shortest path so that the distance to
                // the fixed target strictly decreases; hole migration never
                // moves the mover itself.
                auto plain = shortest_path(cg_, occ_, dot(q), target, false);
                if (!plain) throw std::runtime_error("unroutable: target disconnected");
                hole_step(q, (*plain)[1], -1);
            }
        }
    }

    // Breadth-first search over whole-array configurations (each move is one
    // shuttle into the hole next to it), stopping at the first configuration
    // where qa and qb sit on adjacent dots. Exact and deterministic; only
    // used when the greedy march stops making progress, which confines it to
    // small dense instances.
    void exact_adjacency_solve(int qa, int qb) {
        const DotGrid& grid = cg_.grid();
        const int nq = static_cast<int>(dot_of_.size());
        auto encode = [&](const std::vector<Dot>& dots) {
            std::uint64_t key = 0;
            for (int q = 0; q < nq; ++q)
                key |= static_cast<std::uint64_t>(grid.index(dots[q])) << (4 * q);
            return key;
        };
        struct Move {
            int qubit;
            Dot from, to;
        };
        std::uint64_t start = encode(dot_of_);
        std::unordered_map<std::uint64_t, std::pair<std::uint64_t, Move>> parent;
        std::deque<std::vector<Dot>> queue{dot_of_};
        parent.emplace(start, std::make_pair(start, Move{-1, {}, {}}));
        constexpr std::size_t kExploreCap = 4000000;
        std::uint64_t goal_key = 0;
        bool found = false;
        while (!queue.empty() && !found) {
            std::vector<Dot> cur = std::move(queue.front());
            queue.pop_front();
            std::uint64_t cur_key = encode(cur);
            OccupancySet occ(grid);
            for (Dot d : cur) occ.set(d, true);
            for (int q = 0; q < nq && !found; ++q) {
                for (Dot nb : cg_.neighbors(cur[q])) {
                    if (occ.occupied(nb)) continue;
                    std::vector<Dot> next = cur;
                    next[q] = nb;
                    std::uint64_t key = encode(next);
                    if (parent.count(key)) continue;
                    parent.emplace(key,
                                   std::make_pair(cur_key, Move{q, cur[q], nb}));
                    if (cg_.adjacent(next[qa], next[qb])) {
                        goal_key = key;
                        found = true;
                        break;
                    }
                    if (parent.size() > kExploreCap)
                        throw std::runtime_error("unroutable: search space exhausted");
                    queue.push_back(std::move(next));
                }
            }
        }
        if (!found) throw std::runtime_error("unroutable: no adjacent configuration");
        std::vector<Move> moves;
        for (std::uint64_t key = goal_key; key != start;) {
            auto& [prev, move] = parent.at(key);
            moves.push_back(move);
            key = prev;
        }
        for (auto it = moves.rbegin(); it != moves.rend(); ++it)
            emit_shuttle(it->qubit, it->to);
    }

    static constexpr long kGuardLimit = 20000;

    const Circuit& circuit_;
    const ConnectivityGraph& cg_;
    HardwareProfile profile_;
    std::vector<Dot> dot_of_;
    OccupancySet occ_;
    std::vector<Operation> out_;
    long shuttles_ = 0;
    Rng rng_;
};

}  // namespace

CompiledCircuit route(const Circuit& c, const ConnectivityGraph& cg,
                      const Placement& placement, std::uint64_t seed,
                      const HardwareProfile& profile) {
    Router router(c, cg, placement, seed, profile);
    return router.run();
}

Circuit reverse_circuit(const Circuit& c) {
    Circuit rev(c.n_qubits);
    for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) {
        Operation op = *it;
        if (is_rotation(op.kind) || op.kind == GateKind::CPhase)
            op.angle = reduce_angle(-op.angle);
        rev.ops.push_back(std::move(op));
    }
    return rev;
}

Placement sabre_placement(const Circuit& c, const ConnectivityGraph& cg,
                          int trials, std::uint64_t seed,
                          const HardwareProfile& profile) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (c.n_qubits > cg.num_dots())
        throw std::invalid_argument("more qubits than dots");
    Circuit reversed = reverse_circuit(c);
    long best_shuttles = std::numeric_limits<long>::max();
    Placement best;
    for (int t = 0; t < trials; ++t) {
        Rng rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(t) + 1)));
        Placement start = random_placement(cg, c.n_qubits, rng);
        Placement after_forward = route(c, cg, start, seed, profile).final_placement;
        Placement candidate =
            route(reversed, cg, after_forward, seed, profile).final_placement;
        long shuttles = route(c, cg, candidate, seed, profile).shuttle_count;
        if (shuttles < best_shuttles) {
            best_shuttles = shuttles;
            best = candidate;
        }
    }
    return best;
}

AuditResult audit_stream(const Circuit& source, const CompiledCircuit& cc,
                         const ConnectivityGraph& cg) {
    auto fail = [](std::string msg) { return AuditResult{false, std::move(msg)}; };
    try {
        cc.initial_placement.validate(cg);
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    if (cc.initial_placement.n_qubits() != source.n_qubits)
        return fail("initial placement does not cover the circuit");

    std::vector<Dot> dot_of = cc.initial_placement.dot_of;
    OccupancySet occ(cg.grid());
    for (Dot d : dot_of) occ.set(d, true);

    std::vector<Operation> replayed;
    long shuttles = 0;
    for (std::size_t i = 0; i < cc.ops.size(); ++i) {
        const Operation& op = cc.ops[i];
        if (op.kind == GateKind::Shuttle) {
            if (op.tag != OpTag::Routing)
                return fail("shuttle without routing tag at op " + std::to_string(i));
            int q = op.operands[0];
            if (q < 0 || q >= source.n_qubits)
                return fail("shuttle operand out of range at op " + std::to_string(i));
            if (dot_of[q] != op.src)
                return fail("shuttle source mismatch at op " + std::to_string(i));
            if (!cg.adjacent(op.src, op.dst))
                return fail("shuttle along a non-edge at op " + std::to_string(i));
            if (occ.occupied(op.dst))
                return fail("shuttle into occupied dot at op " + std::to_string(i));
            occ.set(op.src, false);
            occ.set(op.dst, true);
            dot_of[q] = op.dst;
            ++shuttles;
            continue;
        }
        if (is_two_qubit(op.kind) && op.tag != OpTag::Noise) {
            if (!cg.adjacent(dot_of[op.operands[0]], dot_of[op.operands[1]]))
                return fail("2q gate on non-adjacent dots at op " + std::to_string(i));
        }
        if (op.kind == GateKind::MeasureZ && op.tag != OpTag::Noise) {
            if (dot_of[op.operands[0]] != cg.measurement_dot())
                return fail("measurement away from the measurement dot at op " +
                            std::to_string(i));
        }
        replayed.push_back(op);
    }
    if (replayed.size() != source.ops.size())
        return fail("compiled stream drops or adds circuit operations");
    for (std::size_t i = 0; i < replayed.size(); ++i)
        if (!(replayed[i] == source.ops[i]))
            return fail("circuit op mismatch at position " + std::to_string(i));
    if (shuttles != cc.shuttle_count) return fail("shuttle_count mismatch");
    if (dot_of != cc.final_placement.dot_of) return fail("final placement mismatch");
    return {};
}

}  // namespace sqbench
