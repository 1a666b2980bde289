// SPDX-License-Identifier: Apache-2.0
#include "evograph/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>

namespace evograph {

Graph Graph::build(int n, const std::vector<Edge>& edges) {
    if (n < 1) throw Error(ErrorCode::OutOfRange, "vertex count must be positive");
    Graph g;
    g.n_ = n;
    g.adj_.assign(static_cast<std::size_t>(n) * n, 0);
    g.nbrs_.assign(n, {});
    for (const Edge& e : edges) {
        if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
            throw Error(ErrorCode::OutOfRange,
                        "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") outside 1.." + std::to_string(n));
        if (e.u == e.v) throw Error(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(e.u));
        auto& a = g.adj_[(e.u - 1) * n + (e.v - 1)];
        if (a) throw Error(ErrorCode::DuplicateEdge,
                           "duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
        a = 1;
        g.adj_[(e.v - 1) * n + (e.u - 1)] = 1;
    }
    for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
            if (g.adjacent(u, v)) g.nbrs_[u - 1].push_back(v);

    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(1);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.nbrs_[u - 1]) {
            if (!seen[v - 1]) {
                seen[v - 1] = 1;
                ++reached;
                q.push(v);
            }
        }
    }
    if (reached != n) throw Error(ErrorCode::Disconnected, "graph is not connected");
    return g;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    for (int u = 1; u <= n_; ++u)
        for (int v : nbrs_[u - 1])
            if (u < v) out.push_back({u, v});
    return out;
}

Graph build_graph(int n, const std::vector<Edge>& edges) { return Graph::build(n, edges); }

ExactMatrix adjacency_matrix(const Graph& g) {
    const int n = g.order();
    ExactMatrix m(n, n, Rational(0));
    for (int u = 1; u <= n; ++u)
        for (int v : g.neighbors(u)) m(u - 1, v - 1) = 1;
    return m;
}

DegreeProfile degree_profile(const Graph& g) {
    DegreeProfile p;
    for (int v = 1; v <= g.order(); ++v) {
        p.deg.push_back(g.degree(v));
        p.neighbors.push_back(g.neighbors(v));
    }
    return p;
}

TwinPartition twin_partition(const Graph& g) {
    TwinPartition out;
    std::vector<int> cls(g.order(), -1);
    for (int v = 1; v <= g.order(); ++v) {
        if (cls[v - 1] >= 0) continue;
        cls[v - 1] = static_cast<int>(out.classes.size());
        out.classes.push_back({v});
        for (int w = v + 1; w <= g.order(); ++w) {
            if (cls[w - 1] < 0 && g.neighbors(w) == g.neighbors(v)) {
                cls[w - 1] = cls[v - 1];
                out.classes.back().push_back(w);
            }
        }
    }
    return out;
}

RegularityClass classify_regularity(const Graph& g) {
    const int n = g.order();
    bool uniform = true;
    for (int v = 2; v <= n; ++v) uniform = uniform && g.degree(v) == g.degree(1);
    if (uniform) return Regular{g.degree(1)};

    std::vector<int> colour(n, -1);
    colour[0] = 0;
    std::queue<int> q;
    q.push(1);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : g.neighbors(u)) {
            if (colour[v - 1] < 0) {
                colour[v - 1] = 1 - colour[u - 1];
                q.push(v);
            } else if (colour[v - 1] == colour[u - 1]) {
                return Neither{};
            }
        }
    }
    std::vector<int> side[2];
    for (int v = 1; v <= n; ++v) side[colour[v - 1]].push_back(v);
    int k[2];
    for (int s = 0; s < 2; ++s) {
        k[s] = g.degree(side[s].front());
        for (int v : side[s])
            if (g.degree(v) != k[s]) return Neither{};
    }
    if (k[0] <= k[1]) return Biregular{k[0], k[1], side[0], side[1]};
    return Biregular{k[1], k[0], side[1], side[0]};
}

Singularity is_singular(const Graph& g) {
    const int n = g.order();
    Matrix<BigInt> m(n, n, BigInt(0));
    for (int u = 1; u <= n; ++u)
        for (int v : g.neighbors(u)) m(u - 1, v - 1) = 1;
    BigInt det = bareiss_determinant(std::move(m));
    return {det == 0, det};
}

std::string describe(const RegularityClass& rc) {
    if (auto r = std::get_if<Regular>(&rc)) return "Regular(" + std::to_string(r->k) + ")";
    if (auto b = std::get_if<Biregular>(&rc))
        return "Biregular(" + std::to_string(b->k1) + "," + std::to_string(b->k2) + ")";
    return "Neither";
}

namespace {

int parse_int(std::string_view s, const std::string& context) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::Parse, "expected an integer in '" + context + "'");
    return v;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw Error(ErrorCode::InvalidParameter, message);
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
    std::string whole(text);
    auto colon = text.find(':');
    std::string name(text.substr(0, colon));
    std::vector<int> params;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (true) {
            auto comma = rest.find(',');
            params.push_back(parse_int(rest.substr(0, comma), whole));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
    }
    auto expect = [&](std::size_t count) {
        if (params.size() != count)
            throw Error(ErrorCode::Parse, "'" + name + "' takes " + std::to_string(count) + " parameter(s)");
    };
    FamilySpec spec{};
    if (name == "path") {
        expect(1);
        spec.family = Family::Path;
    } else if (name == "cycle") {
        expect(1);
        spec.family = Family::Cycle;
    } else if (name == "star") {
        expect(1);
        spec.family = Family::Star;
    } else if (name == "complete_bipartite" || name == "kbip") {
        expect(2);
        spec.family = Family::CompleteBipartite;
    } else if (name == "caterpillar" || name == "cmn") {
        if (params.empty()) throw Error(ErrorCode::Parse, "caterpillar needs at least one parameter");
        if (name == "cmn") expect(2);
        spec.family = Family::Caterpillar;
    } else if (name == "tadpole") {
        expect(2);
        spec.family = Family::Tadpole;
    } else if (name == "bull") {
        expect(0);
        spec.family = Family::Bull;
    } else {
        throw Error(ErrorCode::Parse, "unknown graph family '" + whole + "'");
    }
    spec.params = std::move(params);
    return spec;
}

std::string format_family(const FamilySpec& spec) {
    static const char* names[] = {"path", "cycle", "star", "complete_bipartite", "caterpillar", "tadpole", "bull"};
    std::string out = names[static_cast<int>(spec.family)];
    for (std::size_t i = 0; i < spec.params.size(); ++i) out += (i ? "," : ":") + std::to_string(spec.params[i]);
    return out;
}

Graph generate_family(const FamilySpec& spec) {
    const auto& p = spec.params;
    std::vector<Edge> edges;
    int n = 0;
    switch (spec.family) {
        case Family::Path:
            require(p[0] >= 1, "path needs n >= 1");
            n = p[0];
            for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
            break;
        case Family::Cycle:
            require(p[0] >= 3, "cycle needs n >= 3");
            n = p[0];
            for (int i = 1; i <= n; ++i) edges.push_back({i, i % n + 1});
            break;
        case Family::Star:
            require(p[0] >= 1, "star needs n >= 1");
            n = p[0] + 1;
            for (int i = 2; i <= n; ++i) edges.push_back({1, i});
            break;
        case Family::CompleteBipartite:
            require(p[0] >= 1 && p[1] >= 1, "complete_bipartite needs m, n >= 1");
            n = p[0] + p[1];
            for (int i = 1; i <= p[0]; ++i)
                for (int j = 1; j <= p[1]; ++j) edges.push_back({i, p[0] + j});
            break;
        case Family::Caterpillar: {
            const int len = static_cast<int>(p.size());
            for (int a : p) require(a >= 0, "caterpillar pendant counts must be non-negative");
            for (int i = 1; i < len; ++i) edges.push_back({i, i + 1});
            int next = len + 1;
            for (int i = 0; i < len; ++i)
                for (int j = 0; j < p[i]; ++j) edges.push_back({i + 1, next++});
            n = next - 1;
            break;
        }
        case Family::Tadpole:
            require(p[0] >= 3 && p[1] >= 1, "tadpole needs cycle length >= 3 and path length >= 1");
            n = p[0] + p[1];
            for (int i = 1; i <= p[0]; ++i) edges.push_back({i, i % p[0] + 1});
            edges.push_back({p[0], p[0] + 1});
            for (int j = p[0] + 1; j < n; ++j) edges.push_back({j, j + 1});
            break;
        case Family::Bull:
            n = 5;
            edges = {{1, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5}};
            break;
    }
    return Graph::build(n, edges);
}

Graph generate_family(std::string_view text) { return generate_family(parse_family(text)); }

Graph parse_edge_list(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    int n = -1;
    long m = -1;
    std::vector<Edge> edges;
    auto fail = [&](const std::string& what) {
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long a, b;
        if (!(fields >> a)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            fail("expected two integers");
        }
        if (!(fields >> b)) fail("expected two integers");
        std::string extra;
        if (fields >> extra) fail("unexpected trailing text '" + extra + "'");
        if (n < 0) {
            if (a < 1 || b < 0) fail("invalid header");
            n = static_cast<int>(a);
            m = b;
            continue;
        }
        if (static_cast<long>(edges.size()) >= m) fail("more edges than declared");
        edges.push_back({static_cast<int>(a), static_cast<int>(b)});
        if (a < 1 || a > n || b < 1 || b > n)
            throw Error(ErrorCode::OutOfRange, "line " + std::to_string(line_no) + ": vertex outside 1.." + std::to_string(n));
    }
    if (n < 0) throw Error(ErrorCode::Parse, "missing header line");
    if (static_cast<long>(edges.size()) != m)
        throw Error(ErrorCode::Parse, "declared " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
    return Graph::build(n, edges);
}

std::string format_edge_list(const Graph& g) {
    auto edges = g.edges();
    std::ostringstream out;
    out << g.order() << ' ' << edges.size() << '\n';
    for (const Edge& e : edges) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_edge_list(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

Graph load_graph(const std::string& input) {
    std::ifstream probe(input);
    if (probe) return load_edge_list(input);
    // Family descriptors never contain a path separator or an extension dot.
    if (input.find('/') != std::string::npos || input.find('.') != std::string::npos)
        throw Error(ErrorCode::Io, "cannot open '" + input + "'");
    return generate_family(input);
}

}  // namespace evograph
