#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "sqbench/arch.hpp"

namespace sqbench::oracle {

namespace {

double hypot2(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    auto at = [&](int r, int c) -> double& { return a[static_cast<size_t>(r) * n + c]; };
    std::vector<double> d(n), e(n, 0.0);

    // Householder reduction to tridiagonal form (eigenvalues only).
    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
                    e[j] = g / h;
                    f += e[j] * at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = at(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k)
                        at(j, k) -= f * e[k] + g * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (int i = 0; i < n; ++i) d[i] = at(i, i);

    // QL with implicit shifts on the tridiagonal (d, e).
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (++iter == 50) throw std::runtime_error("QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<double> hermitian_eigenvalues(const DensityMatrix& m) {
    const int n = m.dim;
    const int nn = 2 * n;
    std::vector<double> big(static_cast<size_t>(nn) * nn, 0.0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double re = m.at(r, c).real(), im = m.at(r, c).imag();
            big[static_cast<size_t>(r) * nn + c] = re;
            big[static_cast<size_t>(r) * nn + (n + c)] = -im;
            big[static_cast<size_t>(n + r) * nn + c] = im;
            big[static_cast<size_t>(n + r) * nn + (n + c)] = re;
        }
    std::vector<double> doubled = symmetric_eigenvalues(std::move(big), nn);
    // Every eigenvalue appears twice; the numerically split pair members
    // straddle the true value, so their mean is the accurate estimate.
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
        out.push_back(0.5 * (doubled[2 * i] + doubled[2 * i + 1]));
    return out;
}

std::vector<double> char_poly(const DensityMatrix& m) {
    const int n = m.dim;
    // Faddeev-LeVerrier: M_1 = A, c_1 = -tr M_1,
    // M_{k+1} = A (M_k + c_k I), c_{k+1} = -tr(M_{k+1}) / (k+1).
    std::vector<cplx> mk(m.m);
    std::vector<double> coeffs;
    auto trace = [&](const std::vector<cplx>& mat) {
        cplx t = 0.0;
        for (int i = 0; i < n; ++i) t += mat[static_cast<size_t>(i) * n + i];
        return t.real();
    };
    double ck = -trace(mk);
    coeffs.push_back(ck);
    for (int k = 2; k <= n; ++k) {
        std::vector<cplx> shifted(mk);
        for (int i = 0; i < n; ++i) shifted[static_cast<size_t>(i) * n + i] += ck;
        std::vector<cplx> next(static_cast<size_t>(n) * n, cplx{0.0, 0.0});
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                cplx acc = 0.0;
                for (int i = 0; i < n; ++i)
                    acc += m.m[static_cast<size_t>(r) * n + i] *
                           shifted[static_cast<size_t>(i) * n + c];
                next[static_cast<size_t>(r) * n + c] = acc;
            }
        mk = std::move(next);
        ck = -trace(mk) / static_cast<double>(k);
        coeffs.push_back(ck);
    }
    return coeffs;
}

namespace {

double eval_monic(const std::vector<double>& tail, double x) {
    double v = 1.0;
    for (double c : tail) v = v * x + c;
    return v;
}

std::vector<double> derivative_tail(const std::vector<double>& tail) {
    // d/dx of x^n + c1 x^{n-1} + ... + cn, renormalized to monic form.
    const int n = static_cast<int>(tail.size());
    std::vector<double> out;
    for (int i = 1; i < n; ++i)
        out.push_back(tail[static_cast<size_t>(i) - 1] * (n - i) / static_cast<double>(n));
    return out;
}

double bisect_root(const std::vector<double>& tail, double lo, double hi) {
    double flo = eval_monic(tail, lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = eval_monic(tail, mid);
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> real_roots(const std::vector<double>& monic_tail) {
    const int n = static_cast<int>(monic_tail.size());
    if (n == 0) return {};
    if (n == 1) return {-monic_tail[0]};
    std::vector<double> crit = real_roots(derivative_tail(monic_tail));
    double bound = 1.0;
    for (double c : monic_tail) bound = std::max(bound, 2.0 * std::abs(c));
    bound += 1.0;
    std::vector<double> cuts{-bound};
    cuts.insert(cuts.end(), crit.begin(), crit.end());
    cuts.push_back(bound);
    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double lo = cuts[i], hi = cuts[i + 1];
        double flo = eval_monic(monic_tail, lo), fhi = eval_monic(monic_tail, hi);
        if (flo == 0.0) {
            roots.push_back(lo);
            continue;
        }
        if ((flo < 0.0) != (fhi < 0.0))
            roots.push_back(bisect_root(monic_tail, lo, hi));
        else if (std::abs(fhi) < 1e-12)
            roots.push_back(hi);
    }
    // A real-rooted polynomial can have multiple roots at critical points;
    // pad by nearest critical values if bisection missed any.
    std::size_t need = static_cast<std::size_t>(n);
    for (std::size_t i = 0; roots.size() < need && i < crit.size(); ++i)
        if (std::abs(eval_monic(monic_tail, crit[i])) < 1e-9) roots.push_back(crit[i]);
    std::sort(roots.begin(), roots.end());
    return roots;
}

double subset_entropy(const StateVector& s, std::span<const int> subset) {
    std::vector<int> keep(subset.begin(), subset.end());
    std::sort(keep.begin(), keep.end());
    const int n = s.n;
    const std::size_t dim = s.dim();

    // Full dense density matrix, then an element-wise partial trace of it.
    std::vector<cplx> rho(dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            rho[r * dim + c] = s.amps[r] * std::conj(s.amps[c]);

    std::vector<int> env;
    for (int q = 0; q < n; ++q)
        if (!std::binary_search(keep.begin(), keep.end(), q)) env.push_back(q);
    const std::size_t dk = std::size_t{1} << keep.size();
    const std::size_t de = std::size_t{1} << env.size();
    auto scatter = [](std::size_t compact, const std::vector<int>& qs) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < qs.size(); ++j)
            if (compact & (std::size_t{1} << j)) out |= std::size_t{1} << qs[j];
        return out;
    };
    DensityMatrix reduced;
    reduced.dim = static_cast<int>(dk);
    reduced.m.assign(dk * dk, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dk; ++r)
        for (std::size_t c = 0; c < dk; ++c) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < de; ++e) {
                std::size_t rr = scatter(r, keep) | scatter(e, env);
                std::size_t cc = scatter(c, keep) | scatter(e, env);
                acc += rho[rr * dim + cc];
            }
            reduced.m[r * dk + c] = acc;
        }

    std::vector<double> eig = hermitian_eigenvalues(reduced);
    double entropy = 0.0;
    for (double lam : eig)
        if (lam > 1e-14) entropy -= lam * std::log(lam);
    return entropy;
}

double tripartite_mi(const StateVector& s, const I3Partition& p) {
    auto join = [](std::initializer_list<const std::vector<int>*> parts) {
        std::vector<int> out;
        for (auto* part : parts) out.insert(out.end(), part->begin(), part->end());
        return out;
    };
    return oracle::subset_entropy(s, p.a) + oracle::subset_entropy(s, p.b) +
           oracle::subset_entropy(s, p.c) +
           oracle::subset_entropy(s, join({&p.a, &p.b, &p.c})) -
           oracle::subset_entropy(s, join({&p.a, &p.b})) -
           oracle::subset_entropy(s, join({&p.b, &p.c})) -
           oracle::subset_entropy(s, join({&p.a, &p.c}));
}

double esp(std::span<const Operation> ops, double duration_ns,
           const HardwareProfile& profile) {
    long double log_sum = 0.0L;
    for (const auto& op : ops)
        log_sum += std::log(static_cast<long double>(fidelity_of(op, profile)));
    log_sum += -static_cast<long double>(duration_ns) / profile.t2_ns;
    return static_cast<double>(std::exp(log_sum));
}

int bfs_distance(const ConnectivityGraph& cg, const OccupancySet& occ, Dot from,
                 Dot to, bool avoid_occupied) {
    if (from == to) return 0;
    const DotGrid& grid = cg.grid();
    std::vector<int> dist(grid.count(), -1);
    dist[grid.index(from)] = 0;
    std::deque<Dot> queue{from};
    while (!queue.empty()) {
        Dot d = queue.front();
        queue.pop_front();
        for (Dot nb : cg.neighbors(d)) {
            if (dist[grid.index(nb)] != -1) continue;
            if (avoid_occupied && nb != to && occ.occupied(nb)) continue;
            dist[grid.index(nb)] = dist[grid.index(d)] + 1;
            if (nb == to) return dist[grid.index(nb)];
            queue.push_back(nb);
        }
    }
    return -1;
}

StateVector random_state(int n_qubits, Rng& rng) {
    StateVector s = StateVector::zero(n_qubits);
    for (auto& a : s.amps) {
        // Box-Muller
        double u1 = rng.uniform01_open0();
        double u2 = rng.uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        a = cplx{r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }
    double norm = s.norm();
    for (auto& a : s.amps) a /= norm;
    return s;
}

}  // namespace sqbench::oracle
