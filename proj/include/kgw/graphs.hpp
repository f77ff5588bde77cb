#pragma once

#include <compare>
#include <vector>

namespace kgw {

struct GraphVertex {
    int fixed_point = 0;  // coordinate point index 0..N
    int genus = 0;
    int marks = 0;
};

struct GraphEdge {
    int a = 0;  // vertex indices
    int b = 0;
    int degree = 1;
};

/// Decorated dual graph of a torus-fixed locus in the moduli of stable maps to P^N.
struct LocalizationGraph {
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    int aut_order = 1;

    int total_genus() const;   // sum of vertex genera + first Betti number
    int total_degree() const;  // sum of edge degrees
    int valence(int vertex) const;
    /// Adjacent vertices sit at distinct fixed points and indices are in range.
    bool well_formed(int N) const;

    friend bool operator==(const LocalizationGraph& a, const LocalizationGraph& b);
};

struct CatalogKey {
    int g = 0;
    int n = 0;
    int beta = 0;
    auto operator<=>(const CatalogKey&) const = default;
};

bool in_catalog(int g, int n, int beta);
std::vector<CatalogKey> catalog_keys();

/// All fixed-locus graphs for (g, n, beta) on P^N, sorted by the fixed points
/// of their vertices. Throws UnsupportedCase outside the catalog.
std::vector<LocalizationGraph> enumerate_graphs(int g, int n, int beta, int N);

}  // namespace kgw
