#pragma once

/**
 * Cayley graphs of (Z,+) with respect to a finite generating set, restricted
 * to windows of consecutive integers. Windows give certified lower bounds
 * for the chromatic number of the full graph; rotation colorings
 * m -> floor(N * frac(m alpha)) + 1 give certified upper bounds.
 */

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "cfcolor/exact.hpp"

namespace cfcolor {

class GenSet {
public:
    // Sorts and deduplicates. Throws PreconditionError when empty or when
    // a generator is not positive.
    explicit GenSet(std::vector<Int> gens);

    // {1, ..., m}
    static GenSet range(std::size_t m);

    const std::vector<Int>& gens() const { return gens_; }
    bool contains(const Int& g) const;

private:
    std::vector<Int> gens_;
};

// Vertices first, first+1, ..., first+M, stored by local index 0..M.
struct WindowGraph {
    Int first;
    std::size_t size = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // local, u < v
    std::vector<std::vector<std::size_t>> adjacency;

    Int label(std::size_t local) const { return first + Int(static_cast<unsigned long>(local)); }
};

struct Coloring {
    Int first;
    std::vector<int> colors;  // colors[i] in 1..num_colors for vertex first+i
    int num_colors = 0;
    bool verified = false;
};

WindowGraph window_graph(const GenSet& gens, std::size_t M, const Int& first = Int(0));

bool is_proper(const WindowGraph& g, const Coloring& c);

// Throws PreconditionError naming the first generator with ||g alpha|| <= 1/N.
// The returned coloring has been checked against the window's edges.
Coloring rotation_coloring(const GenSet& gens, const Surd& alpha, const Int& N, std::size_t M,
                           const Int& first = Int(0));

inline constexpr std::uint64_t kDefaultColoringBudget = 50'000'000;

// Exact chromatic number by branch and bound. Throws BudgetExceeded when
// more than `node_budget` search nodes are expanded.
int chromatic_number(const WindowGraph& g, std::uint64_t node_budget = kDefaultColoringBudget);

// Size of a clique formed by an arithmetic progression {0, d, ..., t d}
// whose nonzero differences all lie in gens and fit the window.
int clique_lower_bound(const GenSet& gens, std::size_t M);

struct DirichletWitness {
    Int m;
    Surd value;  // ||m alpha||
};

// Smallest 1 <= m <= M with ||m alpha|| <= 1/M.
DirichletWitness dirichlet_witness(const Surd& alpha, const Int& M);

// "u v" per line, labels in absolute coordinates.
void write_edge_list(std::ostream& os, const WindowGraph& g);
// "vertex color" per line.
void write_coloring(std::ostream& os, const Coloring& c);

}  // namespace cfcolor
