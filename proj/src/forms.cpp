#include "toprec/forms.hpp"

#include "toprec/error.hpp"

#include <algorithm>
#include <numeric>

namespace toprec {

void DxiExpansion::add(const DxiKey& k, const FieldElement& v) {
    if (v.is_zero()) return;
    auto it = terms.find(k);
    if (it == terms.end()) {
        terms.emplace(k, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero()) terms.erase(it);
}

FieldElement DxiExpansion::coeff(const DxiKey& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? FieldElement{} : it->second;
}

FieldElement CorrelationForm::coeff(const std::vector<int>& branches, const std::vector<int>& exps) const {
    for (int e : exps)
        if (e > T) throw InsufficientTruncation("form coefficient above truncation");
    auto it = components.find(branches);
    if (it == components.end()) return {};
    return it->second.coeff(exps);
}

void CorrelationForm::add(const std::vector<int>& branches, const std::vector<int>& exps, const FieldElement& v) {
    if (v.is_zero()) return;
    auto& ms = components[branches];
    ms.n = n;
    ms.P = P;
    ms.T = T;
    ms.add(exps, v);
    if (ms.entries.empty()) components.erase(branches);
}

size_t CorrelationForm::term_count() const {
    size_t c = 0;
    for (const auto& [b, ms] : components) c += ms.entries.size();
    return c;
}

bool operator==(const CorrelationForm& a, const CorrelationForm& b) {
    if (a.n != b.n || a.T != b.T || a.N != b.N) return false;
    if (a.components.size() != b.components.size()) return false;
    for (const auto& [k, ms] : a.components) {
        auto it = b.components.find(k);
        if (it == b.components.end() || it->second.entries != ms.entries) return false;
    }
    return true;
}

CorrelationForm empty_form(int g, int n, int N, int T) {
    CorrelationForm f;
    f.g = g;
    f.n = n;
    f.N = N;
    f.T = T;
    f.P = 6 * g - 4 + 2 * n;
    return f;
}

CorrelationForm scaled(const CorrelationForm& f, const FieldElement& c) {
    CorrelationForm r = empty_form(f.g, f.n, f.N, f.T);
    r.P = f.P;
    for (const auto& [b, ms] : f.components)
        for (const auto& [e, v] : ms.entries) r.add(b, e, v * c);
    return r;
}

namespace {

void branch_vectors(int N, int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int i = 0; i < N; ++i) {
        cur.push_back(i);
        branch_vectors(N, n, cur, out);
        cur.pop_back();
    }
}

}  // namespace

CorrelationForm evaluate(const DxiExpansion& e, const LocalCurveData& data, int T) {
    const int n = e.n;
    const int N = data.N;
    CorrelationForm out = empty_form(e.g, n, N, T);
    if (e.terms.empty()) return out;
    std::map<std::tuple<int, int, int>, Series1> cache;
    auto dxi = [&](int b, int d, int j) -> const Series1& {
        auto key = std::make_tuple(b, d, j);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, dxi_series(data, b, d, j, T)).first;
        return it->second;
    };
    std::vector<std::vector<int>> bvs;
    std::vector<int> cur;
    branch_vectors(N, n, cur, bvs);
    for (const auto& bv : bvs) {
        // state: processed exponents followed by (branch, d) pairs of the remaining slots
        std::map<std::vector<int>, FieldElement> state;
        for (const auto& [key, c] : e.terms) {
            std::vector<int> s;
            for (const auto& leg : key) {
                s.push_back(leg.branch);
                s.push_back(leg.d);
            }
            state[s] += c;
        }
        for (int slot = 0; slot < n; ++slot) {
            std::map<std::vector<int>, FieldElement> next;
            for (const auto& [s, c] : state) {
                if (c.is_zero()) continue;
                int b = s[static_cast<size_t>(slot)];
                int d = s[static_cast<size_t>(slot + 1)];
                const Series1& ser = dxi(b, d, bv[static_cast<size_t>(slot)]);
                std::vector<int> t(s.begin(), s.begin() + slot);
                t.push_back(0);
                t.insert(t.end(), s.begin() + slot + 2, s.end());
                const auto& co = ser.coeffs();
                for (size_t k = 0; k < co.size(); ++k) {
                    if (co[k].is_zero()) continue;
                    t[static_cast<size_t>(slot)] = ser.low() + static_cast<int>(k);
                    next[t] += c * co[k];
                }
            }
            state = std::move(next);
        }
        for (const auto& [s, c] : state) out.add(bv, s, c);
    }
    return out;
}

DxiExpansion expand_in_dxi(const CorrelationForm& form, const LocalCurveData& data) {
    DxiExpansion e;
    e.g = form.g;
    e.n = form.n;
    for (const auto& [bv, ms] : form.components)
        for (const auto& [exps, v] : ms.entries) {
            bool polar = true;
            for (int x : exps)
                if (x >= 0 || x % 2 != 0) polar = false;
            if (!polar) continue;
            DxiKey key;
            Rational norm = 1;
            for (size_t s = 0; s < exps.size(); ++s) {
                int d = (-exps[s] - 2) / 2;
                key.push_back({bv[s], d});
                norm *= double_factorial(2 * d + 1);
            }
            e.add(key, v / FieldElement(norm));
        }
    CorrelationForm back = evaluate(e, data, form.T);
    if (!(back == form)) {
        size_t diff = 0;
        for (const auto& [bv, ms] : form.components)
            for (const auto& [exps, v] : ms.entries)
                if (back.coeff(bv, exps) != v) ++diff;
        throw ExpansionResidual("nonzero remainder after subtracting regular tails (" + std::to_string(diff) +
                                " coefficients differ)");
    }
    return e;
}

InvariantReport check_invariants(const CorrelationForm& f) {
    InvariantReport r;
    auto fail = [&](std::string s) {
        r.ok = false;
        if (r.failures.size() < 20) r.failures.push_back(std::move(s));
    };
    const int bound = 6 * f.g - 4 + 2 * f.n;
    for (const auto& [bv, ms] : f.components)
        for (const auto& [exps, v] : ms.entries) {
            for (int x : exps) {
                if (x == -1) fail("z^-1 coefficient present");
                if (x < 0 && x % 2 != 0) fail("odd negative exponent " + std::to_string(x));
                if (-x > bound) fail("pole order " + std::to_string(-x) + " above " + std::to_string(bound));
            }
            // adjacent transpositions generate S_n
            for (size_t k = 0; k + 1 < exps.size(); ++k) {
                auto b2 = bv;
                auto e2 = exps;
                std::swap(b2[k], b2[k + 1]);
                std::swap(e2[k], e2[k + 1]);
                if (f.coeff(b2, e2) != v) {
                    fail("not symmetric");
                    break;
                }
            }
        }
    return r;
}

}  // namespace toprec
