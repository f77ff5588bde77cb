#include "kgw/graphs.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "kgw/errors.hpp"

namespace kgw {

int LocalizationGraph::total_genus() const {
    int genus = 0;
    for (const auto& v : vertices) genus += v.genus;
    // b1 = E - V + (number of components)
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    int components = static_cast<int>(vertices.size());
    for (const auto& e : edges) {
        int ra = find(e.a), rb = find(e.b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return genus + static_cast<int>(edges.size()) - static_cast<int>(vertices.size()) + components;
}

int LocalizationGraph::total_degree() const {
    int beta = 0;
    for (const auto& e : edges) beta += e.degree;
    return beta;
}

int LocalizationGraph::valence(int vertex) const {
    int count = 0;
    for (const auto& e : edges) count += (e.a == vertex) + (e.b == vertex);
    return count;
}

bool LocalizationGraph::well_formed(int N) const {
    const int nv = static_cast<int>(vertices.size());
    for (const auto& v : vertices) {
        if (v.fixed_point < 0 || v.fixed_point > N || v.genus < 0 || v.marks < 0) return false;
    }
    for (const auto& e : edges) {
        if (e.a < 0 || e.b < 0 || e.a >= nv || e.b >= nv || e.degree < 1) return false;
        if (vertices[e.a].fixed_point == vertices[e.b].fixed_point) return false;
    }
    return aut_order >= 1;
}

bool operator==(const LocalizationGraph& a, const LocalizationGraph& b) {
    auto same_vertex = [](const GraphVertex& x, const GraphVertex& y) {
        return x.fixed_point == y.fixed_point && x.genus == y.genus && x.marks == y.marks;
    };
    auto same_edge = [](const GraphEdge& x, const GraphEdge& y) {
        return x.a == y.a && x.b == y.b && x.degree == y.degree;
    };
    return a.aut_order == b.aut_order &&
           std::equal(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(), same_vertex) &&
           std::equal(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(), same_edge);
}

namespace {

using Enumerator = std::function<std::vector<LocalizationGraph>(int N)>;

// Genus-one vertex (an M_{1,1} with the node as its marking) joined by one
// degree-one edge to a free genus-zero point. No automorphisms.
std::vector<LocalizationGraph> genus_one_degree_one(int N) {
    std::vector<LocalizationGraph> graphs;
    for (int i1 = 0; i1 <= N; ++i1) {
        for (int i2 = 0; i2 <= N; ++i2) {
            if (i1 == i2) continue;
            LocalizationGraph graph;
            graph.vertices = {{i1, 1, 0}, {i2, 0, 0}};
            graph.edges = {{0, 1, 1}};
            graph.aut_order = 1;
            graphs.push_back(std::move(graph));
        }
    }
    return graphs;
}

const std::map<CatalogKey, Enumerator>& registry() {
    static const std::map<CatalogKey, Enumerator> entries{
        {{1, 0, 1}, genus_one_degree_one},
    };
    return entries;
}

std::string missing_oracle(int g, int n, int beta) {
    if (beta >= 2) return "graphs with beta >= 2 need Euler characteristics over M_{1,2} and edge degrees >= 2";
    if (g >= 2) return "genus >= 2 vertices need Euler characteristics over M_{g,n}, g >= 2";
    if (n > 0) return "marked points need Euler characteristics over M_{g,n} with n >= 2";
    if (g == 0) return "genus-zero graph conventions for two unstable valence-one vertices are not fixed";
    return "no vertex oracle for this case";
}

}  // namespace

bool in_catalog(int g, int n, int beta) { return registry().contains(CatalogKey{g, n, beta}); }

std::vector<CatalogKey> catalog_keys() {
    std::vector<CatalogKey> keys;
    for (const auto& [key, _] : registry()) keys.push_back(key);
    return keys;
}

std::vector<LocalizationGraph> enumerate_graphs(int g, int n, int beta, int N) {
    if (N < 1) throw Error(ErrorCode::DegenerateInput, "P^N needs N >= 1");
    auto it = registry().find(CatalogKey{g, n, beta});
    if (it == registry().end()) {
        throw Error(ErrorCode::UnsupportedCase, "(g,n,beta) = (" + std::to_string(g) + "," + std::to_string(n) + "," +
                                                    std::to_string(beta) + "): " + missing_oracle(g, n, beta));
    }
    return it->second(N);
}

}  // namespace kgw
