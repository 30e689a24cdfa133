#include "antimagic/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "antimagic/errors.hpp"
#include "antimagic/rng.hpp"

namespace antimagic {

namespace {

bool blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::vector<int64_t> parse_ints(const std::string& line, int lineno, size_t expected) {
    std::istringstream in(line);
    std::vector<int64_t> out;
    int64_t x;
    while (in >> x) out.push_back(x);
    std::string rest;
    if (in.clear(), in >> rest)
        fail_input("line " + std::to_string(lineno) + ": trailing garbage '" + rest + "'");
    if (out.size() != expected)
        fail_input("line " + std::to_string(lineno) + ": expected " + std::to_string(expected) +
                   " integers, got " + std::to_string(out.size()));
    return out;
}

} // namespace

Graph parse_edge_list(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int64_t n = -1, m = -1;
    std::vector<Edge> edges;
    std::unordered_set<int64_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line)) continue;
        if (n < 0) {
            auto hdr = parse_ints(line, lineno, 2);
            n = hdr[0];
            m = hdr[1];
            if (n < 0 || m < 0) fail_input("line " + std::to_string(lineno) + ": negative header");
            edges.reserve(m);
            continue;
        }
        auto uv = parse_ints(line, lineno, 2);
        int64_t u = uv[0], v = uv[1];
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail_input("line " + std::to_string(lineno) + ": vertex index out of range");
        if (u == v) fail_input("line " + std::to_string(lineno) + ": self-loop");
        int64_t key = std::min(u, v) * n + std::max(u, v);
        if (!seen.insert(key).second) fail_input("line " + std::to_string(lineno) + ": duplicate edge");
        edges.push_back(Edge{static_cast<int>(u), static_cast<int>(v)});
    }
    if (n < 0) fail_input("empty edge list: missing 'n m' header");
    if (static_cast<int64_t>(edges.size()) != m)
        fail_input("header promised " + std::to_string(m) + " edges, found " +
                   std::to_string(edges.size()));
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_input("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_input("cannot open file for writing: " + path);
    out << content;
}

Graph load_edge_list(const std::string& path) { return parse_edge_list(read_file(path)); }

std::string format_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

namespace {

struct GenSpec {
    std::string name;
    std::vector<double> args;
};

GenSpec parse_spec(const std::string& spec) {
    auto open = spec.find('(');
    auto close = spec.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        fail_input("bad generator spec '" + spec + "', expected name(args)");
    GenSpec out;
    out.name = spec.substr(0, open);
    std::string args = spec.substr(open + 1, close - open - 1);
    std::istringstream in(args);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.args.push_back(std::stod(tok));
        } catch (const std::exception&) {
            fail_input("bad generator argument '" + tok + "' in spec '" + spec + "'");
        }
    }
    return out;
}

int int_arg(const GenSpec& s, size_t i) {
    if (i >= s.args.size()) fail_input("generator spec " + s.name + ": missing argument");
    return static_cast<int>(s.args[i]);
}

Graph gen_gnp(int n, double p, Rng& rng) {
    if (n < 0 || p < 0.0 || p > 1.0) fail_input("gnp: bad parameters");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.push_back(Edge{u, v});
    return Graph(n, std::move(edges));
}

// gnp base, then greedy repair: each deficient vertex gains edges to random
// non-neighbours until it reaches the target minimum degree.
Graph gen_min_degree(int n, int delta, Rng& rng) {
    if (delta >= n) fail_input("min_degree: delta must be < n");
    if (delta < 0) fail_input("min_degree: negative delta");
    double p = n > 1 ? std::min(1.0, static_cast<double>(delta) / (n - 1)) : 0.0;
    Graph base = gen_gnp(n, p, rng);
    std::vector<std::unordered_set<int>> nbr(n);
    for (const Edge& e : base.edges) {
        nbr[e.u].insert(e.v);
        nbr[e.v].insert(e.u);
    }
    std::vector<Edge> edges = base.edges;
    std::vector<int> degree(n);
    for (int v = 0; v < n; ++v) degree[v] = static_cast<int>(nbr[v].size());
    for (int v = 0; v < n; ++v) {
        while (degree[v] < delta) {
            int u = -1;
            // rejection sampling; falls back to a scan when nearly complete
            for (int attempt = 0; attempt < 64; ++attempt) {
                int cand = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
                if (cand != v && !nbr[v].count(cand)) {
                    u = cand;
                    break;
                }
            }
            if (u == -1) {
                std::vector<int> candidates;
                for (int w = 0; w < n; ++w)
                    if (w != v && !nbr[v].count(w)) candidates.push_back(w);
                if (candidates.empty()) fail_input("min_degree: vertex cannot reach target degree");
                u = candidates[rng.below(candidates.size())];
            }
            nbr[v].insert(u);
            nbr[u].insert(v);
            ++degree[v];
            ++degree[u];
            edges.push_back(Edge{std::min(u, v), std::max(u, v)});
        }
    }
    return Graph(n, std::move(edges));
}

} // namespace

Graph generate(const std::string& spec, uint64_t seed) {
    GenSpec s = parse_spec(spec);
    Rng rng(seed);
    if (s.name == "gnp") {
        if (s.args.size() != 2) fail_input("gnp expects (n,p)");
        return gen_gnp(int_arg(s, 0), s.args[1], rng);
    }
    if (s.name == "min_degree") {
        if (s.args.size() != 2) fail_input("min_degree expects (n,delta)");
        return gen_min_degree(int_arg(s, 0), int_arg(s, 1), rng);
    }
    if (s.name == "matching") {
        int k = int_arg(s, 0);
        std::vector<Edge> edges;
        for (int i = 0; i < k; ++i) edges.push_back(Edge{2 * i, 2 * i + 1});
        return Graph(2 * k, std::move(edges));
    }
    if (s.name == "stars") {
        std::vector<Edge> edges;
        int next = 0;
        for (double sz : s.args) {
            int k = static_cast<int>(sz);
            if (k < 1) fail_input("stars: sizes must be >= 1");
            int centre = next++;
            for (int i = 0; i < k; ++i) edges.push_back(Edge{centre, next++});
        }
        return Graph(next, std::move(edges));
    }
    if (s.name == "cycle") {
        int n = int_arg(s, 0);
        if (n < 3) fail_input("cycle: n must be >= 3");
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i) edges.push_back(Edge{i, (i + 1) % n});
        return Graph(n, std::move(edges));
    }
    if (s.name == "complete") {
        int n = int_arg(s, 0);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.push_back(Edge{u, v});
        return Graph(n, std::move(edges));
    }
    fail_input("unknown generator '" + s.name + "'");
}

} // namespace antimagic
