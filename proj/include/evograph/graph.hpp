// SPDX-License-Identifier: Apache-2.0
// Connected simple graphs on vertices 1..n and their structural invariants.
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evograph/rational.hpp"

namespace evograph {

struct Edge {
    int u;
    int v;
};

class Graph {
public:
    // Throws LoopEdge, DuplicateEdge, Disconnected or OutOfRange.
    static Graph build(int n, const std::vector<Edge>& edges);

    int order() const { return n_; }
    bool adjacent(int u, int v) const { return adj_[(u - 1) * n_ + (v - 1)] != 0; }
    const std::vector<int>& neighbors(int v) const { return nbrs_[v - 1]; }
    int degree(int v) const { return static_cast<int>(nbrs_[v - 1].size()); }
    // Edges with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

private:
    int n_ = 0;
    std::vector<unsigned char> adj_;
    std::vector<std::vector<int>> nbrs_;
};

Graph build_graph(int n, const std::vector<Edge>& edges);

struct DegreeProfile {
    std::vector<int> deg;                   // deg[v-1]
    std::vector<std::vector<int>> neighbors;
};

struct TwinPartition {
    // Classes are sorted internally and ordered by smallest member.
    std::vector<std::vector<int>> classes;
};

struct Regular {
    int k;
};
struct Biregular {
    int k1;
    int k2;
    std::vector<int> part1;  // side whose vertices have degree k1
    std::vector<int> part2;
};
struct Neither {};
using RegularityClass = std::variant<Regular, Biregular, Neither>;

struct Singularity {
    bool singular;
    BigInt determinant;
};

ExactMatrix adjacency_matrix(const Graph& g);
DegreeProfile degree_profile(const Graph& g);
TwinPartition twin_partition(const Graph& g);
RegularityClass classify_regularity(const Graph& g);
Singularity is_singular(const Graph& g);
std::string describe(const RegularityClass& rc);

enum class Family { Path, Cycle, Star, CompleteBipartite, Caterpillar, Tadpole, Bull };

struct FamilySpec {
    Family family;
    std::vector<int> params;
};

// "path:5", "cycle:4", "star:3", "complete_bipartite:2,3", "kbip:2,3",
// "caterpillar:1,2,2", "cmn:2,3", "tadpole:4,3", "bull".
FamilySpec parse_family(std::string_view text);
std::string format_family(const FamilySpec& spec);
// Throws InvalidParameter.
Graph generate_family(const FamilySpec& spec);
Graph generate_family(std::string_view text);

// Edge-list text: "n m" then m lines "u v"; '#' starts a comment.
Graph parse_edge_list(std::string_view text);
std::string format_edge_list(const Graph& g);
Graph load_edge_list(const std::string& path);
// Family descriptor if it parses as one, otherwise an edge-list file path.
Graph load_graph(const std::string& input);

}  // namespace evograph
