#pragma once

#include "toprec/curve.hpp"
#include "toprec/dictionary.hpp"
#include "toprec/forms.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace toprec {

// Stable graph without decorations. Half-edges are legs (slot >= 0) or halves of edges.
struct BareGraph {
    std::vector<int> genus;    // per vertex
    std::vector<int> vertex;   // per half-edge
    std::vector<int> partner;  // per half-edge, -1 for legs
    std::vector<int> slot;     // per half-edge, -1 for edge halves
    // automorphisms as half-edge permutations (legs fixed), with the induced vertex maps
    std::vector<std::vector<int>> aut_half;
    std::vector<std::vector<int>> aut_vertex;

    int edge_count() const;
    std::string key() const;
};

// Connected stable graphs of genus g with n legs, up to isomorphism.
const std::vector<BareGraph>& bare_graphs(int g, int n);

struct DecoratedGraph {
    struct Vertex {
        int g;
        int branch;
    };
    struct Edge {
        int v1, k1, v2, k2;
    };
    struct Leaf {
        int v, k, slot;
    };
    struct Dilaton {
        int v, k;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Leaf> leaves;      // sorted by slot
    std::vector<Dilaton> dilatons;
    long aut = 1;

    int valence(int v) const;  // all half-edges at v, dilaton leaves included
    std::vector<int> labels(int v) const;
    std::string key() const;
};

// Decorated graphs passing the per-vertex dimension gate, one per isomorphism class.
const std::vector<DecoratedGraph>& enumerate_graphs(int g, int n, int N);
long graph_aut_order(const DecoratedGraph& graph);

// Weight of one graph in the spectral-curve sum, with the dxi key of its leaves.
FieldElement curve_graph_weight(const DecoratedGraph& gr, const LocalCurveData& data);
DxiKey graph_leaf_key(const DecoratedGraph& gr);

DxiExpansion tr_graph_sum(const LocalCurveData& data, int g, int n);

struct Insertion {
    int d;
    int branch;
};

// Coefficient of prod v^{d_k, i_k} in log Z at genus g. R[row][col], upper index = column.
FieldElement givental_graph_sum(const RSeries& R, const std::vector<FieldElement>& delta,
                                const std::vector<FieldElement>& unit, int g,
                                const std::vector<Insertion>& insertions);

FieldElement edge_weight(const RSeries& R, int i1, int i2, int k1, int k2);

// dxi-coefficients to W-coefficients: dxi^i_d = sum_l (-1)^{d-l} (R_{d-l})^i_s W^s_l.
// The result reuses DxiExpansion with legs read as W^{branch}_{d}.
DxiExpansion dxi_to_W(const DxiExpansion& e, const RSeries& R);
DxiExpansion W_to_dxi(const DxiExpansion& e, const RSeries& R);

// Batch evaluator for the Givental side; caches graph cores per (g, n).
class GiventalEvaluator {
public:
    GiventalEvaluator(const RSeries& R, std::vector<FieldElement> delta, std::vector<FieldElement> unit);
    FieldElement correlator(int g, const std::vector<Insertion>& insertions);

private:
    struct Core {
        FieldElement weight;  // vertices, edges, dilatons, 1/|Aut|
        std::vector<std::pair<int, int>> leaves;  // per slot: (branch of vertex, label)
    };
    const std::vector<Core>& cores(int g, int n);
    FieldElement edge(int i1, int i2, int k1, int k2);
    FieldElement sqrt_delta_pow(int i, int e);

    RSeries R_;
    std::vector<FieldElement> delta_, unit_, sqrt_delta_;
    std::map<std::pair<int, int>, std::vector<Core>> cores_;
    std::map<std::pair<int, int>, Series2> edge_cache_;
};

}  // namespace toprec
