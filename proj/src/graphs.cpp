#include "toprec/graphs.hpp"

#include "toprec/dictionary.hpp"
#include "toprec/error.hpp"
#include "toprec/psi.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace toprec {

namespace {

// Compact description used while generating: vertex genera, vertex of each leg, edge list.
struct Spec {
    std::vector<int> genus;
    std::vector<int> legv;
    std::vector<std::pair<int, int>> edges;  // u <= v

    auto tie() const { return std::tie(genus, legv, edges); }
    bool operator<(const Spec& o) const { return tie() < o.tie(); }
    bool operator==(const Spec& o) const { return tie() == o.tie(); }
};

Spec relabel(const Spec& s, const std::vector<int>& p) {  // p[old] = new
    Spec r;
    r.genus.assign(s.genus.size(), 0);
    for (size_t v = 0; v < s.genus.size(); ++v) r.genus[static_cast<size_t>(p[v])] = s.genus[v];
    for (int v : s.legv) r.legv.push_back(p[static_cast<size_t>(v)]);
    for (auto [a, b] : s.edges) {
        int x = p[static_cast<size_t>(a)], y = p[static_cast<size_t>(b)];
        r.edges.emplace_back(std::min(x, y), std::max(x, y));
    }
    std::sort(r.edges.begin(), r.edges.end());
    return r;
}

Spec canonical(const Spec& s) {
    std::vector<int> p(s.genus.size());
    std::iota(p.begin(), p.end(), 0);
    Spec best = relabel(s, p);
    while (std::next_permutation(p.begin(), p.end())) {
        Spec c = relabel(s, p);
        if (c < best) best = c;
    }
    return best;
}

bool stable_vertex(int g, int val) { return 2 * g - 2 + val > 0; }

std::vector<Spec> degenerations(const Spec& s) {
    std::vector<Spec> out;
    const int V = static_cast<int>(s.genus.size());
    for (int v = 0; v < V; ++v) {
        if (s.genus[static_cast<size_t>(v)] >= 1) {
            Spec t = s;
            --t.genus[static_cast<size_t>(v)];
            t.edges.emplace_back(v, v);
            out.push_back(t);
        }
        // ends at v: legs (kind 0, index) and edge ends (kind 1, edge index, side)
        struct End {
            int kind, idx, side;
        };
        std::vector<End> ends;
        for (size_t l = 0; l < s.legv.size(); ++l)
            if (s.legv[l] == v) ends.push_back({0, static_cast<int>(l), 0});
        for (size_t e = 0; e < s.edges.size(); ++e) {
            if (s.edges[e].first == v) ends.push_back({1, static_cast<int>(e), 0});
            if (s.edges[e].second == v) ends.push_back({1, static_cast<int>(e), 1});
        }
        const int E = static_cast<int>(ends.size());
        const int gv = s.genus[static_cast<size_t>(v)];
        for (unsigned mask = 0; mask < (1u << E); ++mask) {
            int n2 = std::popcount(mask);
            int n1 = E - n2;
            for (int g1 = 0; g1 <= gv; ++g1) {
                int g2 = gv - g1;
                if (!stable_vertex(g1, n1 + 1) || !stable_vertex(g2, n2 + 1)) continue;
                Spec t = s;
                int w = V;
                t.genus[static_cast<size_t>(v)] = g1;
                t.genus.push_back(g2);
                for (int k = 0; k < E; ++k) {
                    if (!((mask >> k) & 1u)) continue;
                    const End& en = ends[static_cast<size_t>(k)];
                    if (en.kind == 0) {
                        t.legv[static_cast<size_t>(en.idx)] = w;
                    } else {
                        auto& ed = t.edges[static_cast<size_t>(en.idx)];
                        (en.side == 0 ? ed.first : ed.second) = w;
                    }
                }
                for (auto& ed : t.edges)
                    if (ed.first > ed.second) std::swap(ed.first, ed.second);
                t.edges.emplace_back(v, w);
                out.push_back(t);
            }
        }
    }
    return out;
}

void compute_automorphisms(BareGraph& g) {
    const int V = static_cast<int>(g.genus.size());
    const int H = static_cast<int>(g.vertex.size());
    // half-edges grouped by the unordered vertex pair of their edge
    std::map<std::pair<int, int>, std::vector<int>> by_pair;  // value: half at the smaller vertex
    std::vector<bool> has_leg(static_cast<size_t>(V), false);
    for (int h = 0; h < H; ++h) {
        if (g.partner[static_cast<size_t>(h)] < 0) {
            has_leg[static_cast<size_t>(g.vertex[static_cast<size_t>(h)])] = true;
            continue;
        }
        int o = g.partner[static_cast<size_t>(h)];
        int a = g.vertex[static_cast<size_t>(h)], b = g.vertex[static_cast<size_t>(o)];
        if (a < b || (a == b && h < o)) by_pair[{a, b}].push_back(h);
    }
    std::vector<int> p(static_cast<size_t>(V));
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int v = 0; v < V && ok; ++v) {
            if (g.genus[static_cast<size_t>(p[static_cast<size_t>(v)])] != g.genus[static_cast<size_t>(v)]) ok = false;
            if (has_leg[static_cast<size_t>(v)] && p[static_cast<size_t>(v)] != v) ok = false;
        }
        if (!ok) continue;
        for (const auto& [pr, hs] : by_pair) {
            int a = p[static_cast<size_t>(pr.first)], b = p[static_cast<size_t>(pr.second)];
            auto it = by_pair.find({std::min(a, b), std::max(a, b)});
            if (it == by_pair.end() || it->second.size() != hs.size()) ok = false;
        }
        if (!ok) continue;
        // build all half-edge maps: per pair, a bijection of edges and, for loops, flips
        std::vector<std::vector<int>> partial{std::vector<int>(static_cast<size_t>(H), -1)};
        for (int h = 0; h < H; ++h)
            if (g.partner[static_cast<size_t>(h)] < 0) partial[0][static_cast<size_t>(h)] = h;
        for (const auto& [pr, hs] : by_pair) {
            int a = p[static_cast<size_t>(pr.first)], b = p[static_cast<size_t>(pr.second)];
            const auto& target = by_pair.at({std::min(a, b), std::max(a, b)});
            bool loop = pr.first == pr.second;
            std::vector<int> perm(hs.size());
            std::iota(perm.begin(), perm.end(), 0);
            std::vector<std::vector<int>> next;
            do {
                unsigned flips = loop ? (1u << hs.size()) : 1u;
                for (unsigned f = 0; f < flips; ++f)
                    for (const auto& base : partial) {
                        auto m = base;
                        for (size_t e = 0; e < hs.size(); ++e) {
                            int h = hs[e];
                            int o = g.partner[static_cast<size_t>(h)];
                            int th = target[static_cast<size_t>(perm[e])];
                            int to = g.partner[static_cast<size_t>(th)];
                            if (!loop && a > b) std::swap(th, to);  // keep the half at pr.first on p(pr.first)
                            if (loop && ((f >> e) & 1u)) std::swap(th, to);
                            m[static_cast<size_t>(h)] = th;
                            m[static_cast<size_t>(o)] = to;
                        }
                        next.push_back(std::move(m));
                    }
            } while (std::next_permutation(perm.begin(), perm.end()));
            partial = std::move(next);
        }
        for (auto& m : partial) {
            g.aut_half.push_back(m);
            g.aut_vertex.push_back(p);
        }
    } while (std::next_permutation(p.begin(), p.end()));
}

BareGraph build(const Spec& s) {
    BareGraph g;
    g.genus = s.genus;
    for (size_t l = 0; l < s.legv.size(); ++l) {
        g.vertex.push_back(s.legv[l]);
        g.partner.push_back(-1);
        g.slot.push_back(static_cast<int>(l));
    }
    for (auto [a, b] : s.edges) {
        int h = static_cast<int>(g.vertex.size());
        g.vertex.push_back(a);
        g.vertex.push_back(b);
        g.partner.push_back(h + 1);
        g.partner.push_back(h);
        g.slot.push_back(-1);
        g.slot.push_back(-1);
    }
    compute_automorphisms(g);
    return g;
}

std::mutex cache_mu;

}  // namespace

int BareGraph::edge_count() const {
    int c = 0;
    for (int p : partner)
        if (p >= 0) ++c;
    return c / 2;
}

std::string BareGraph::key() const {
    std::ostringstream os;
    os << "g";
    for (int x : genus) os << ' ' << x;
    os << " |";
    for (size_t h = 0; h < vertex.size(); ++h)
        if (partner[h] < 0) os << ' ' << vertex[h];
    os << " |";
    for (size_t h = 0; h < vertex.size(); ++h)
        if (partner[h] > static_cast<int>(h)) os << " " << vertex[h] << "-" << vertex[static_cast<size_t>(partner[h])];
    return os.str();
}

const std::vector<BareGraph>& bare_graphs(int g, int n) {
    static std::map<std::pair<int, int>, std::vector<BareGraph>> cache;
    std::lock_guard lock(cache_mu);
    auto it = cache.find({g, n});
    if (it != cache.end()) return it->second;
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) throw InvalidTarget("unstable (g,n) = (" + std::to_string(g) + "," + std::to_string(n) + ")");
    Spec start;
    start.genus = {g};
    start.legv.assign(static_cast<size_t>(n), 0);
    std::set<Spec> seen{canonical(start)};
    std::vector<Spec> frontier{*seen.begin()};
    while (!frontier.empty()) {
        std::vector<Spec> next;
        for (const auto& s : frontier)
            for (const auto& t : degenerations(s)) {
                Spec c = canonical(t);
                if (seen.insert(c).second) next.push_back(c);
            }
        frontier = std::move(next);
    }
    std::vector<BareGraph> out;
    for (const auto& s : seen) {
        // Euler characteristic: sum (g_v - 1) + |E| = g - 1
        int chi = static_cast<int>(s.edges.size());
        for (int x : s.genus) chi += x - 1;
        if (chi != g - 1) throw std::logic_error("graph with wrong genus generated");
        out.push_back(build(s));
    }
    return cache.emplace(std::make_pair(g, n), std::move(out)).first->second;
}

int DecoratedGraph::valence(int v) const {
    int c = 0;
    for (const auto& e : edges) c += (e.v1 == v) + (e.v2 == v);
    for (const auto& l : leaves) c += l.v == v;
    for (const auto& d : dilatons) c += d.v == v;
    return c;
}

std::vector<int> DecoratedGraph::labels(int v) const {
    std::vector<int> r;
    for (const auto& e : edges) {
        if (e.v1 == v) r.push_back(e.k1);
        if (e.v2 == v) r.push_back(e.k2);
    }
    for (const auto& l : leaves)
        if (l.v == v) r.push_back(l.k);
    for (const auto& d : dilatons)
        if (d.v == v) r.push_back(d.k);
    return r;
}

std::string DecoratedGraph::key() const {
    std::ostringstream os;
    os << "V";
    for (const auto& v : vertices) os << " (" << v.g << "," << v.branch + 1 << ")";
    os << " E";
    for (const auto& e : edges) os << " " << e.v1 << ":" << e.k1 << "-" << e.v2 << ":" << e.k2;
    os << " L";
    for (const auto& l : leaves) os << " " << l.slot << "@" << l.v << ":" << l.k;
    os << " D";
    for (const auto& d : dilatons) os << " " << d.v << ":" << d.k;
    return os.str();
}

long graph_aut_order(const DecoratedGraph& graph) { return graph.aut; }

namespace {

void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (total == 0) out.push_back(cur);
        return;
    }
    for (int v = 0; v <= total; ++v) {
        cur.push_back(v);
        compositions(total - v, parts - 1, cur, out);
        cur.pop_back();
    }
}

// multisets of labels >= 2 with sum (k - 1) <= budget, nondecreasing
void dilaton_sets(int budget, int minlabel, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    out.push_back(cur);
    for (int k = minlabel; k - 1 <= budget; ++k) {
        cur.push_back(k);
        dilaton_sets(budget - (k - 1), k, cur, out);
        cur.pop_back();
    }
}

struct VertexOption {
    int branch;
    std::vector<int> half_labels;  // aligned with the vertex's half-edge list
    std::vector<int> dil;
};

long factorial_l(int n) {
    long r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

}  // namespace

const std::vector<DecoratedGraph>& enumerate_graphs(int g, int n, int N) {
    static std::map<std::tuple<int, int, int>, std::vector<DecoratedGraph>> cache;
    {
        std::lock_guard lock(cache_mu);
        auto it = cache.find({g, n, N});
        if (it != cache.end()) return it->second;
    }
    const auto& bares = bare_graphs(g, n);
    std::vector<DecoratedGraph> out;
    for (const auto& bg : bares) {
        const int V = static_cast<int>(bg.genus.size());
        const int H = static_cast<int>(bg.vertex.size());
        std::vector<std::vector<int>> halves(static_cast<size_t>(V));
        for (int h = 0; h < H; ++h) halves[static_cast<size_t>(bg.vertex[static_cast<size_t>(h)])].push_back(h);
        std::vector<std::vector<VertexOption>> opts(static_cast<size_t>(V));
        for (int v = 0; v < V; ++v) {
            int val0 = static_cast<int>(halves[static_cast<size_t>(v)].size());
            int dim = 3 * bg.genus[static_cast<size_t>(v)] - 3 + val0;
            std::vector<std::vector<int>> dsets;
            std::vector<int> cur;
            dilaton_sets(dim, 2, cur, dsets);
            for (const auto& ds : dsets) {
                int used = 0;
                for (int k : ds) used += k - 1;
                std::vector<std::vector<int>> comps;
                std::vector<int> c2;
                compositions(dim - used, val0, c2, comps);
                for (const auto& c : comps)
                    for (int b = 0; b < N; ++b) opts[static_cast<size_t>(v)].push_back({b, c, ds});
            }
        }
        // serialize a decoration: branches, labels by half-edge, dilaton lists
        auto serialize = [&](const std::vector<int>& br, const std::vector<int>& lab, const std::vector<std::vector<int>>& dil) {
            std::vector<int> s = br;
            s.insert(s.end(), lab.begin(), lab.end());
            for (const auto& d : dil) {
                s.push_back(-1);
                s.insert(s.end(), d.begin(), d.end());
            }
            return s;
        };
        std::vector<size_t> choice(static_cast<size_t>(V), 0);
        while (true) {
            std::vector<int> br(static_cast<size_t>(V)), lab(static_cast<size_t>(H));
            std::vector<std::vector<int>> dil(static_cast<size_t>(V));
            for (int v = 0; v < V; ++v) {
                const auto& o = opts[static_cast<size_t>(v)][choice[static_cast<size_t>(v)]];
                br[static_cast<size_t>(v)] = o.branch;
                dil[static_cast<size_t>(v)] = o.dil;
                for (size_t k = 0; k < halves[static_cast<size_t>(v)].size(); ++k)
                    lab[static_cast<size_t>(halves[static_cast<size_t>(v)][k])] = o.half_labels[k];
            }
            auto self = serialize(br, lab, dil);
            bool minimal = true;
            long stab = 0;
            for (size_t a = 0; a < bg.aut_half.size() && minimal; ++a) {
                const auto& hm = bg.aut_half[a];
                const auto& vm = bg.aut_vertex[a];
                std::vector<int> br2(static_cast<size_t>(V)), lab2(static_cast<size_t>(H));
                std::vector<std::vector<int>> dil2(static_cast<size_t>(V));
                for (int v = 0; v < V; ++v) {
                    br2[static_cast<size_t>(vm[static_cast<size_t>(v)])] = br[static_cast<size_t>(v)];
                    dil2[static_cast<size_t>(vm[static_cast<size_t>(v)])] = dil[static_cast<size_t>(v)];
                }
                for (int h = 0; h < H; ++h) lab2[static_cast<size_t>(hm[static_cast<size_t>(h)])] = lab[static_cast<size_t>(h)];
                auto img = serialize(br2, lab2, dil2);
                if (img < self) minimal = false;
                if (img == self) ++stab;
            }
            if (minimal) {
                DecoratedGraph dg;
                for (int v = 0; v < V; ++v) dg.vertices.push_back({bg.genus[static_cast<size_t>(v)], br[static_cast<size_t>(v)]});
                for (int h = 0; h < H; ++h) {
                    int p = bg.partner[static_cast<size_t>(h)];
                    if (p < 0) {
                        dg.leaves.push_back({bg.vertex[static_cast<size_t>(h)], lab[static_cast<size_t>(h)], bg.slot[static_cast<size_t>(h)]});
                    } else if (p > h) {
                        dg.edges.push_back({bg.vertex[static_cast<size_t>(h)], lab[static_cast<size_t>(h)],
                                            bg.vertex[static_cast<size_t>(p)], lab[static_cast<size_t>(p)]});
                    }
                }
                std::sort(dg.leaves.begin(), dg.leaves.end(), [](const auto& x, const auto& y) { return x.slot < y.slot; });
                long mult = 1;
                for (int v = 0; v < V; ++v) {
                    const auto& d = dil[static_cast<size_t>(v)];
                    for (size_t s = 0; s < d.size();) {
                        size_t t = s;
                        while (t < d.size() && d[t] == d[s]) ++t;
                        mult *= factorial_l(static_cast<int>(t - s));
                        s = t;
                    }
                    for (int k : d) dg.dilatons.push_back({v, k});
                }
                dg.aut = stab * mult;
                out.push_back(std::move(dg));
            }
            int v = 0;
            while (v < V) {
                if (++choice[static_cast<size_t>(v)] < opts[static_cast<size_t>(v)].size()) break;
                choice[static_cast<size_t>(v)] = 0;
                ++v;
            }
            if (v == V) break;
        }
    }
    std::lock_guard lock(cache_mu);
    return cache.emplace(std::make_tuple(g, n, N), std::move(out)).first->second;
}

DxiKey graph_leaf_key(const DecoratedGraph& gr) {
    DxiKey k;
    for (const auto& l : gr.leaves) k.push_back({gr.vertices[static_cast<size_t>(l.v)].branch, l.k});
    return k;
}

FieldElement curve_graph_weight(const DecoratedGraph& gr, const LocalCurveData& data) {
    FieldElement w(rat(1, gr.aut));
    for (size_t v = 0; v < gr.vertices.size(); ++v) {
        const auto& vx = gr.vertices[v];
        Rational tau = intersection_number(vx.g, gr.labels(static_cast<int>(v)));
        if (sgn(tau) == 0) return {};
        int chi = 2 - 2 * vx.g - gr.valence(static_cast<int>(v));
        w *= field_pow(FieldElement(-2) * data.time(vx.branch, 1), chi) * FieldElement(tau);
    }
    for (const auto& e : gr.edges) {
        w *= checked_jump(data, gr.vertices[static_cast<size_t>(e.v1)].branch, gr.vertices[static_cast<size_t>(e.v2)].branch, e.k1, e.k2);
        if (w.is_zero()) return w;
    }
    for (const auto& d : gr.dilatons) {
        w *= checked_time(data, gr.vertices[static_cast<size_t>(d.v)].branch, d.k);
        if (w.is_zero()) return w;
    }
    return w;
}

DxiExpansion tr_graph_sum(const LocalCurveData& data, int g, int n) {
    require_valid(data);
    DxiExpansion e;
    e.g = g;
    e.n = n;
    for (const auto& gr : enumerate_graphs(g, n, data.N)) e.add(graph_leaf_key(gr), curve_graph_weight(gr, data));
    return e;
}

// ---- Givental side ----

namespace {

// (delta^{i1 i2} - sum_s R^{i1}_s(-z) R^{i2}_s(-w)) / (z + w), numerator to total degree D
Series2 edge_series(const RSeries& R, int i1, int i2, int D) {
    Series2 num(D);
    for (int s = 0; s <= D; ++s)
        for (int a = 0; a <= s; ++a) {
            int b = s - a;
            FieldElement acc = (s == 0 && i1 == i2) ? FieldElement(1) : FieldElement();
            for (int t = 0; t < R.N; ++t) acc -= R.at(a, t, i1) * R.at(b, t, i2) * FieldElement(s % 2 ? -1 : 1);
            num.set(a, b, acc);
        }
    return num.div_linear(-1);
}

}  // namespace

GiventalEvaluator::GiventalEvaluator(const RSeries& R, std::vector<FieldElement> delta, std::vector<FieldElement> unit)
    : R_(R), delta_(std::move(delta)), unit_(std::move(unit)) {
    if (static_cast<int>(delta_.size()) != R.N || static_cast<int>(unit_.size()) != R.N)
        throw InvalidTarget("Delta and unit must have N entries");
    for (const auto& d : delta_) {
        if (d.is_zero()) throw InvalidTarget("Delta_i = 0");
        sqrt_delta_.push_back(default_sqrt(d));
    }
    require_symplectic(R);
}

FieldElement GiventalEvaluator::sqrt_delta_pow(int i, int e) { return field_pow(sqrt_delta_[static_cast<size_t>(i)], e); }

FieldElement GiventalEvaluator::edge(int i1, int i2, int k1, int k2) {
    if (k1 + k2 + 1 > R_.order())
        throw InsufficientTruncation("edge weight needs R to order " + std::to_string(k1 + k2 + 1));
    auto key = std::make_pair(i1, i2);
    auto it = edge_cache_.find(key);
    if (it == edge_cache_.end()) it = edge_cache_.emplace(key, edge_series(R_, i1, i2, R_.order())).first;
    return it->second.coeff(k1, k2);
}

const std::vector<GiventalEvaluator::Core>& GiventalEvaluator::cores(int g, int n) {
    auto key = std::make_pair(g, n);
    auto it = cores_.find(key);
    if (it != cores_.end()) return it->second;
    std::vector<Core> out;
    for (const auto& gr : enumerate_graphs(g, n, R_.N)) {
        FieldElement w(rat(1, gr.aut));
        for (size_t v = 0; v < gr.vertices.size() && !w.is_zero(); ++v) {
            const auto& vx = gr.vertices[v];
            Rational tau = intersection_number(vx.g, gr.labels(static_cast<int>(v)));
            w *= FieldElement(tau) * sqrt_delta_pow(vx.branch, 2 * vx.g - 2 + gr.valence(static_cast<int>(v)));
        }
        for (const auto& e : gr.edges) {
            if (w.is_zero()) break;
            w *= edge(gr.vertices[static_cast<size_t>(e.v1)].branch, gr.vertices[static_cast<size_t>(e.v2)].branch, e.k1, e.k2);
        }
        for (const auto& d : gr.dilatons) {
            if (w.is_zero()) break;
            int b = gr.vertices[static_cast<size_t>(d.v)].branch;
            FieldElement s;
            for (int j = 0; j < R_.N; ++j) s += unit_[static_cast<size_t>(j)] * R_.at(d.k - 1, j, b);
            // [z^{k-1}] of -(R(-z))^i_1
            w *= -(s * FieldElement((d.k - 1) % 2 ? -1 : 1));
        }
        if (w.is_zero()) continue;
        Core c{w, {}};
        for (const auto& l : gr.leaves) c.leaves.emplace_back(gr.vertices[static_cast<size_t>(l.v)].branch, l.k);
        out.push_back(std::move(c));
    }
    return cores_.emplace(key, std::move(out)).first->second;
}

FieldElement GiventalEvaluator::correlator(int g, const std::vector<Insertion>& ins) {
    const int n = static_cast<int>(ins.size());
    if (g < 0 || 2 * g - 2 + n <= 0) throw InvalidTarget("unstable insertion list");
    FieldElement total;
    for (const auto& c : cores(g, n)) {
        FieldElement w = c.weight;
        for (int s = 0; s < n && !w.is_zero(); ++s) {
            auto [b, k] = c.leaves[static_cast<size_t>(s)];
            int d = ins[static_cast<size_t>(s)].d;
            if (k < d) {
                w = FieldElement();
                break;
            }
            // [z^k] (R(-z))^b_{i_s} z^d
            w *= R_.at(k - d, ins[static_cast<size_t>(s)].branch, b) * FieldElement((k - d) % 2 ? -1 : 1);
        }
        total += w;
    }
    return total;
}

FieldElement givental_graph_sum(const RSeries& R, const std::vector<FieldElement>& delta,
                                const std::vector<FieldElement>& unit, int g, const std::vector<Insertion>& insertions) {
    GiventalEvaluator ev(R, delta, unit);
    return ev.correlator(g, insertions);
}

FieldElement edge_weight(const RSeries& R, int i1, int i2, int k1, int k2) {
    if (k1 + k2 + 1 > R.order()) throw InsufficientTruncation("edge weight needs R to order " + std::to_string(k1 + k2 + 1));
    return edge_series(R, i1, i2, k1 + k2 + 1).coeff(k1, k2);
}

namespace {

DxiExpansion change_basis(const DxiExpansion& e, const RSeries& R, bool inverse) {
    // forward: dxi^i_d -> sum_{l,s} (-1)^{d-l} R_{d-l}[s][i] W^s_l
    // inverse uses R^{-1}(z) = R^T(-z): W^s_l = sum (R^T(-z))... coefficients (R_{d-l})[i][s] with sign (-1)^{d-l}(-1)^{d-l}
    DxiExpansion cur = e;
    for (int slot = 0; slot < e.n; ++slot) {
        DxiExpansion next;
        next.g = e.g;
        next.n = e.n;
        for (const auto& [key, c] : cur.terms) {
            const Leg leg = key[static_cast<size_t>(slot)];
            for (int l = 0; l <= leg.d; ++l)
                for (int s = 0; s < R.N; ++s) {
                    int k = leg.d - l;
                    if (k > R.order()) throw InsufficientTruncation("basis change needs R to order " + std::to_string(k));
                    FieldElement f = inverse ? R.at(k, leg.branch, s) : R.at(k, s, leg.branch) * FieldElement(k % 2 ? -1 : 1);
                    if (f.is_zero()) continue;
                    DxiKey nk = key;
                    nk[static_cast<size_t>(slot)] = {s, l};
                    next.add(nk, c * f);
                }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

DxiExpansion dxi_to_W(const DxiExpansion& e, const RSeries& R) { return change_basis(e, R, false); }

DxiExpansion W_to_dxi(const DxiExpansion& e, const RSeries& R) { return change_basis(e, R, true); }

}  // namespace toprec
