#include "hyperhet/hypergraph.hpp"

#include "hyperhet/synchrony.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace hyperhet {

namespace {

VertexSet normalized(VertexSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool intersects(const VertexSet& a, const VertexSet& b) {
    for (Vertex v : a) {
        if (std::binary_search(b.begin(), b.end(), v)) return true;
    }
    return false;
}

} // namespace

Hyperedge::Hyperedge(VertexSet t, VertexSet h) : tail(normalized(std::move(t))), head(normalized(std::move(h))) {
    if (tail.empty() || head.empty()) throw std::invalid_argument("hyperedge needs nonempty tail and head");
}

bool Hyperedge::degenerate() const { return intersects(tail, head); }

bool Hyperedge::targets(Vertex k) const { return std::binary_search(head.begin(), head.end(), k); }

Hypergraph::Hypergraph(int n, std::vector<Hyperedge> edges) : n_(n), edges_(std::move(edges)) {
    if (n < 1) throw std::invalid_argument("hypergraph needs at least one vertex");
    for (const auto& e : edges_) {
        if (e.tail.empty() || e.head.empty()) throw std::invalid_argument("hyperedge needs nonempty tail and head");
        for (const VertexSet* s : {&e.tail, &e.head}) {
            if (!std::is_sorted(s->begin(), s->end()) || std::adjacent_find(s->begin(), s->end()) != s->end()) {
                throw std::invalid_argument("hyperedge vertex sets must be sorted and duplicate-free");
            }
            for (Vertex v : *s) {
                if (v < 1 || v > n) throw std::invalid_argument("vertex id " + std::to_string(v) + " out of range");
            }
        }
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
        throw std::invalid_argument("duplicate hyperedge");
    }
}

bool Hypergraph::contains(const Hyperedge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

bool Hypergraph::is_uniform(int m) const {
    return std::all_of(edges_.begin(), edges_.end(), [m](const Hyperedge& e) { return e.order() == m; });
}

std::optional<int> Hypergraph::uniform_order() const {
    if (edges_.empty()) return std::nullopt;
    const int m = edges_.front().order();
    if (!is_uniform(m)) return std::nullopt;
    return m;
}

bool Hypergraph::is_undirected() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Hyperedge& e) { return e.undirected(); });
}

bool Hypergraph::has_degenerate_edge() const {
    return std::any_of(edges_.begin(), edges_.end(), [](const Hyperedge& e) { return e.degenerate(); });
}

std::vector<std::size_t> Hypergraph::in_edges(Vertex k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].targets(k)) out.push_back(i);
    }
    return out;
}

Partition::Partition(int n, std::vector<VertexSet> classes) : n_(n) {
    if (n < 1) throw std::invalid_argument("partition needs at least one vertex");
    class_index_.assign(static_cast<std::size_t>(n), static_cast<std::size_t>(-1));
    for (auto& c : classes) {
        c = normalized(std::move(c));
        if (c.empty()) throw std::invalid_argument("partition class is empty");
    }
    std::sort(classes.begin(), classes.end());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        for (Vertex v : classes[i]) {
            if (v < 1 || v > n) throw std::invalid_argument("partition vertex out of range");
            auto& slot = class_index_[static_cast<std::size_t>(v - 1)];
            if (slot != static_cast<std::size_t>(-1)) throw std::invalid_argument("partition classes overlap");
            slot = i;
        }
    }
    for (std::size_t slot : class_index_) {
        if (slot == static_cast<std::size_t>(-1)) throw std::invalid_argument("partition does not cover all vertices");
    }
    classes_ = std::move(classes);
}

Partition Partition::singletons(int n) {
    std::vector<VertexSet> c;
    for (Vertex v = 1; v <= n; ++v) c.push_back({v});
    return Partition(n, c);
}

Partition Partition::full(int n) {
    VertexSet all;
    for (Vertex v = 1; v <= n; ++v) all.push_back(v);
    return Partition(n, {all});
}

Partition Partition::all_but(int n, Vertex lone) {
    if (lone < 1 || lone > n) throw std::invalid_argument("vertex out of range");
    VertexSet rest;
    for (Vertex v = 1; v <= n; ++v) {
        if (v != lone) rest.push_back(v);
    }
    if (rest.empty()) return Partition(n, {{lone}});
    return Partition(n, {rest, {lone}});
}

int head_count(const Hypergraph& h, int m, Vertex k) {
    if (k < 1 || k > h.n()) throw std::invalid_argument("head_count: vertex out of range");
    int count = 0;
    for (const auto& e : h.edges()) {
        if (e.order() == m && e.targets(k)) ++count;
    }
    return count;
}

std::vector<Hyperedge> enumerate_hyperedges(int n, int max_order) {
    if (n < 1 || n > 16) throw std::invalid_argument("enumerate_hyperedges: n must be in 1..16");
    std::vector<Hyperedge> out;
    const unsigned full = (1u << n) - 1u;
    auto subset = [n](unsigned mask) {
        VertexSet s;
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) s.push_back(v + 1);
        }
        return s;
    };
    for (unsigned t = 1; t <= full; ++t) {
        const int order = std::popcount(t) + 1;
        if (order > max_order) continue;
        for (unsigned hd = 1; hd <= full; ++hd) out.emplace_back(subset(t), subset(hd));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Vertex right_neighbour(Vertex k) { return k % 3 + 1; }
Vertex left_neighbour(Vertex k) { return (k + 1) % 3 + 1; }

const std::array<std::vector<Hyperedge>, 3>& omega_sets(Vertex k) {
    // Listed by hand in the cyclic convention 1 -> 2 -> 3 -> 1; a unit test
    // regenerates them from the membership rule.
    static const std::array<std::array<std::vector<Hyperedge>, 3>, 3> table = {{
        {{
            {{{2, 3}, {1}}, {{2, 3}, {1, 2}}, {{2, 3}, {1, 3}}, {{2, 3}, {1, 2, 3}}},
            {{{1, 2}, {1}}, {{1, 2}, {1, 2}}, {{1, 2}, {1, 3}}, {{1, 2}, {1, 2, 3}}},
            {{{1, 3}, {1}}, {{1, 3}, {1, 2}}, {{1, 3}, {1, 3}}, {{1, 3}, {1, 2, 3}}},
        }},
        {{
            {{{1, 3}, {2}}, {{1, 3}, {1, 2}}, {{1, 3}, {2, 3}}, {{1, 3}, {1, 2, 3}}},
            {{{2, 3}, {2}}, {{2, 3}, {1, 2}}, {{2, 3}, {2, 3}}, {{2, 3}, {1, 2, 3}}},
            {{{1, 2}, {2}}, {{1, 2}, {1, 2}}, {{1, 2}, {2, 3}}, {{1, 2}, {1, 2, 3}}},
        }},
        {{
            {{{1, 2}, {3}}, {{1, 2}, {1, 3}}, {{1, 2}, {2, 3}}, {{1, 2}, {1, 2, 3}}},
            {{{1, 3}, {3}}, {{1, 3}, {1, 3}}, {{1, 3}, {2, 3}}, {{1, 3}, {1, 2, 3}}},
            {{{2, 3}, {3}}, {{2, 3}, {1, 3}}, {{2, 3}, {2, 3}}, {{2, 3}, {1, 2, 3}}},
        }},
    }};
    if (k < 1 || k > 3) throw std::out_of_range("omega_sets: vertex must be 1..3");
    return table[static_cast<std::size_t>(k - 1)];
}

InputProfile input_profile_3uniform(const Hypergraph& h) {
    if (h.n() != 3) throw std::invalid_argument("input profile needs exactly 3 vertices");
    if (!h.is_uniform(3)) throw std::invalid_argument("input profile needs a 3-uniform hypergraph");
    InputProfile prof{};
    for (Vertex k = 1; k <= 3; ++k) {
        const auto& om = omega_sets(k);
        int counts[3] = {0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            for (const auto& e : om[static_cast<std::size_t>(i)]) {
                if (h.contains(e)) ++counts[i];
            }
        }
        prof[static_cast<std::size_t>(k - 1)] = {counts[0], counts[1], counts[2]};
    }
    return prof;
}

QuotientHypergraph quotient_restrict(const Hypergraph& h, const Partition& p) {
    if (p.n() != h.n()) throw std::invalid_argument("partition and hypergraph sizes differ");
    if (!is_balanced(h, p)) throw std::invalid_argument("partition is not balanced; no quotient exists");
    const int nq = static_cast<int>(p.size());
    auto image = [&](const VertexSet& s) {
        std::set<Vertex> cls;
        for (Vertex v : s) cls.insert(static_cast<Vertex>(p.class_of(v)) + 1);
        return VertexSet(cls.begin(), cls.end());
    };
    std::map<Hyperedge, std::vector<int>> merged;
    for (const auto& e : h.edges()) {
        std::vector<int> hits(static_cast<std::size_t>(nq), 0);
        bool any = false;
        for (std::size_t c = 0; c < p.size(); ++c) {
            if (e.targets(p.representative(c))) {
                hits[c] = 1;
                any = true;
            }
        }
        if (!any) continue;
        auto [it, inserted] = merged.try_emplace(Hyperedge(image(e.tail), image(e.head)), std::vector<int>(static_cast<std::size_t>(nq), 0));
        for (std::size_t c = 0; c < hits.size(); ++c) it->second[c] += hits[c];
    }
    QuotientHypergraph q;
    std::vector<Hyperedge> edges;
    for (auto& [e, w] : merged) {
        edges.push_back(e);
        q.weights.push_back(w);
    }
    q.graph = Hypergraph(nq, edges);
    return q;
}

namespace catalog {

Hypergraph classical_complete() {
    std::vector<Hyperedge> e;
    for (Vertex t = 1; t <= 3; ++t) {
        for (Vertex hd = 1; hd <= 3; ++hd) e.emplace_back(VertexSet{t}, VertexSet{hd});
    }
    return Hypergraph(3, e);
}

Hypergraph two_to_one() {
    return Hypergraph(3, {{{2, 3}, {1}}, {{1, 3}, {2}}, {{1, 2}, {3}}});
}

Hypergraph pairwise_plus_two_to_one() {
    return Hypergraph(3, {{{2}, {1}}, {{3}, {2}}, {{1}, {3}}, {{2, 3}, {1}}, {{1, 3}, {2}}, {{1, 2}, {3}}});
}

Hypergraph pairwise_plus_degenerate() {
    return Hypergraph(3, {{{2}, {1}}, {{3}, {2}}, {{1}, {3}}, {{1, 3}, {1}}, {{1, 2}, {2}}, {{2, 3}, {3}}});
}

Hypergraph uniform_012() {
    return Hypergraph(3, {{{1, 3}, {1}}, {{1, 2}, {2}}, {{2, 3}, {3}}, {{1, 3}, {1, 3}}, {{1, 2}, {1, 2}}, {{2, 3}, {2, 3}}});
}

Hypergraph field_minimal() {
    return Hypergraph(3, {{{2}, {1}}, {{1}, {2}}, {{2}, {3}}, {{2, 3}, {1}}, {{1, 3}, {2}}, {{1, 2}, {3}}});
}

std::vector<Hyperedge> undirected_edges(int n) {
    std::vector<Hyperedge> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        VertexSet s;
        for (int v = 0; v < n; ++v) {
            if (mask & (1u << v)) s.push_back(v + 1);
        }
        out.emplace_back(s, s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Hypergraph complete_undirected(int n) { return Hypergraph(n, undirected_edges(n)); }

} // namespace catalog

} // namespace hyperhet
