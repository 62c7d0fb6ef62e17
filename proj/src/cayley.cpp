#include "cfcolor/cayley.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "cfcolor/errors.hpp"

namespace cfcolor {

GenSet::GenSet(std::vector<Int> gens) : gens_(std::move(gens)) {
    require(!gens_.empty(), "generating set must be nonempty");
    std::sort(gens_.begin(), gens_.end());
    gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
    require(gens_.front() >= 1, "generators must be positive");
}

GenSet GenSet::range(std::size_t m) {
    require(m >= 1, "range generating set needs m >= 1");
    std::vector<Int> g;
    for (std::size_t i = 1; i <= m; ++i) g.emplace_back(static_cast<unsigned long>(i));
    return GenSet(std::move(g));
}

bool GenSet::contains(const Int& g) const {
    return std::binary_search(gens_.begin(), gens_.end(), g);
}

WindowGraph window_graph(const GenSet& gens, std::size_t M, const Int& first) {
    WindowGraph g;
    g.first = first;
    g.size = M + 1;
    g.adjacency.resize(g.size);
    for (const Int& d : gens.gens()) {
        if (d > Int(static_cast<unsigned long>(M))) break;
        std::size_t step = d.get_ui();
        for (std::size_t u = 0; u + step < g.size; ++u) g.edges.emplace_back(u, u + step);
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (auto [u, v] : g.edges) {
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    return g;
}

bool is_proper(const WindowGraph& g, const Coloring& c) {
    if (c.colors.size() != g.size) return false;
    for (int col : c.colors) {
        if (col < 1 || col > c.num_colors) return false;
    }
    return std::none_of(g.edges.begin(), g.edges.end(),
                        [&](const auto& e) { return c.colors[e.first] == c.colors[e.second]; });
}

Coloring rotation_coloring(const GenSet& gens, const Surd& alpha, const Int& N, std::size_t M,
                           const Int& first) {
    require(N >= 1, "number of colors must be positive");
    const Rat invN(Int(1), N);
    for (const Int& g : gens.gens()) {
        Surd gap = dist_nearest_int(Surd(Rat(g)) * alpha);
        require(cmp_surd_rat(gap, invN) == std::strong_ordering::greater,
                "||g alpha|| > 1/N fails for generator g=" + g.get_str());
    }
    require(N <= Int(std::numeric_limits<int>::max()), "too many colors");

    Coloring c;
    c.first = first;
    c.num_colors = static_cast<int>(N.get_si());
    c.colors.resize(M + 1);
    const Surd scale{Rat(N)};
    for (std::size_t i = 0; i <= M; ++i) {
        Surd x = Surd(Rat(Int(first + Int(static_cast<unsigned long>(i))))) * alpha;
        Surd frac = x - Surd(Rat(x.floor()));
        // Half-open buckets [(n-1)/N, n/N).
        c.colors[i] = static_cast<int>((scale * frac).floor().get_si()) + 1;
    }
    ensure(is_proper(window_graph(gens, M, first), c), "rotation coloring is not proper");
    c.verified = true;
    return c;
}

namespace {

// Smallest-last order, reversed so that the densest core is colored first.
std::vector<std::size_t> degeneracy_order(const WindowGraph& g) {
    std::vector<std::size_t> degree(g.size);
    for (std::size_t v = 0; v < g.size; ++v) degree[v] = g.adjacency[v].size();
    std::vector<bool> removed(g.size, false);
    std::vector<std::size_t> order;
    order.reserve(g.size);
    for (std::size_t step = 0; step < g.size; ++step) {
        std::size_t pick = g.size;
        for (std::size_t v = 0; v < g.size; ++v) {
            if (!removed[v] && (pick == g.size || degree[v] < degree[pick])) pick = v;
        }
        removed[pick] = true;
        order.push_back(pick);
        for (std::size_t w : g.adjacency[pick]) {
            if (!removed[w]) --degree[w];
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

int greedy_colors(const WindowGraph& g, const std::vector<std::size_t>& order) {
    std::vector<int> color(g.size, 0);
    int used = 0;
    for (std::size_t v : order) {
        std::vector<bool> taken(static_cast<std::size_t>(used) + 2, false);
        for (std::size_t w : g.adjacency[v]) {
            if (color[w] > 0) taken[static_cast<std::size_t>(color[w])] = true;
        }
        int c = 1;
        while (taken[static_cast<std::size_t>(c)]) ++c;
        color[v] = c;
        used = std::max(used, c);
    }
    return used;
}

int greedy_clique(const WindowGraph& g) {
    int best = g.size > 0 ? 1 : 0;
    for (std::size_t start = 0; start < g.size; ++start) {
        std::vector<std::size_t> clique{start};
        std::vector<std::size_t> cand = g.adjacency[start];
        std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            return g.adjacency[a].size() > g.adjacency[b].size();
        });
        for (std::size_t v : cand) {
            bool ok = std::all_of(clique.begin(), clique.end(), [&](std::size_t u) {
                const auto& adj = g.adjacency[u];
                return std::find(adj.begin(), adj.end(), v) != adj.end();
            });
            if (ok) clique.push_back(v);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

class KColorSearch {
public:
    KColorSearch(const WindowGraph& g, const std::vector<std::size_t>& order, int k,
                 std::uint64_t& nodes, std::uint64_t budget)
        : g_(g), order_(order), k_(k), color_(g.size, 0), nodes_(nodes), budget_(budget) {}

    bool run() { return place(0, 0); }

private:
    bool place(std::size_t pos, int used) {
        if (pos == order_.size()) return true;
        if (++nodes_ > budget_) throw BudgetExceeded("chromatic number search exceeded its node budget");
        std::size_t v = order_[pos];
        // Colors above used+1 are symmetric to used+1.
        int limit = std::min(k_, used + 1);
        for (int c = 1; c <= limit; ++c) {
            bool clash = std::any_of(g_.adjacency[v].begin(), g_.adjacency[v].end(),
                                     [&](std::size_t w) { return color_[w] == c; });
            if (clash) continue;
            color_[v] = c;
            if (place(pos + 1, std::max(used, c))) return true;
            color_[v] = 0;
        }
        return false;
    }

    const WindowGraph& g_;
    const std::vector<std::size_t>& order_;
    int k_;
    std::vector<int> color_;
    std::uint64_t& nodes_;
    std::uint64_t budget_;
};

}  // namespace

int chromatic_number(const WindowGraph& g, std::uint64_t node_budget) {
    if (g.size == 0) return 0;
    if (g.edges.empty()) return 1;
    auto order = degeneracy_order(g);
    int upper = greedy_colors(g, order);
    int lower = greedy_clique(g);
    std::uint64_t nodes = 0;
    for (int k = lower; k < upper; ++k) {
        if (KColorSearch(g, order, k, nodes, node_budget).run()) return k;
    }
    return upper;
}

int clique_lower_bound(const GenSet& gens, std::size_t M) {
    const Int window(static_cast<unsigned long>(M));
    int best = 1;
    for (const Int& d : gens.gens()) {
        if (d > window) break;
        Int t = 1;
        while ((t + 1) * d <= window && gens.contains(Int((t + 1) * d))) ++t;
        best = std::max(best, static_cast<int>(t.get_si()) + 1);
    }
    return best;
}

DirichletWitness dirichlet_witness(const Surd& alpha, const Int& M) {
    require(M >= 1, "Dirichlet window must be positive");
    const Rat bound(Int(1), M);
    for (Int m = 1; m <= M; ++m) {
        Surd v = dist_nearest_int(Surd(Rat(m)) * alpha);
        if (cmp_surd_rat(v, bound) != std::strong_ordering::greater) return {m, v};
    }
    throw InconsistencyError("no m <= M with ||m alpha|| <= 1/M");
}

void write_edge_list(std::ostream& os, const WindowGraph& g) {
    for (auto [u, v] : g.edges) os << g.label(u).get_str() << ' ' << g.label(v).get_str() << '\n';
}

void write_coloring(std::ostream& os, const Coloring& c) {
    for (std::size_t i = 0; i < c.colors.size(); ++i) {
        os << Int(c.first + Int(static_cast<unsigned long>(i))).get_str() << ' ' << c.colors[i] << '\n';
    }
}

}  // namespace cfcolor
