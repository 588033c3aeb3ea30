#include "toprec/psi.hpp"

#include "toprec/error.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>

namespace toprec {

Rational IntersectionTable::value(int g, std::vector<int> ds) {
    int n = static_cast<int>(ds.size());
    if (g < 0 || 2 * g - 2 + n <= 0) throw Unstable("<...>_" + std::to_string(g) + " with " + std::to_string(n) + " points");
    for (int d : ds)
        if (d < 0) return 0;
    if (std::accumulate(ds.begin(), ds.end(), 0) != 3 * g - 3 + n) return 0;
    std::sort(ds.begin(), ds.end());
    auto key = std::make_pair(g, ds);
    {
        std::shared_lock lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Rational v = compute(g, ds);
    std::unique_lock lock(mu_);
    memo_.emplace(std::move(key), v);
    return v;
}

Rational IntersectionTable::value_or_zero(int g, std::vector<int> ds) {
    if (g < 0 || 2 * g - 2 + static_cast<int>(ds.size()) <= 0) return 0;
    return value(g, std::move(ds));
}

Rational IntersectionTable::compute(int g, const std::vector<int>& ds) {
    const int n = static_cast<int>(ds.size());
    if (g == 0 && n == 3) return 1;
    if (g == 1 && n == 1) return rat(1, 24);
    // ds sorted ascending
    if (ds.front() == 0) {
        std::vector<int> rest(ds.begin() + 1, ds.end());
        Rational s = 0;
        for (size_t j = 0; j < rest.size(); ++j) {
            if (rest[j] == 0) continue;
            auto t = rest;
            --t[j];
            s += value_or_zero(g, t);
        }
        return s;
    }
    if (ds.front() == 1) {
        std::vector<int> rest(ds.begin() + 1, ds.end());
        return Rational(2 * g - 2 + n - 1) * value_or_zero(g, rest);
    }
    const int k = ds.back() - 1;
    std::vector<int> I(ds.begin(), ds.end() - 1);
    const int m = static_cast<int>(I.size());
    Rational s = 0;
    for (int j = 0; j < m; ++j) {
        auto t = I;
        t[static_cast<size_t>(j)] = k + I[static_cast<size_t>(j)];
        s += double_factorial(2 * k + 2 * I[static_cast<size_t>(j)] + 1) / double_factorial(2 * I[static_cast<size_t>(j)] - 1) *
             value_or_zero(g, t);
    }
    Rational half = 0;
    for (int r = 0; r <= k - 1; ++r) {
        int s2 = k - 1 - r;
        Rational w = double_factorial(2 * r + 1) * double_factorial(2 * s2 + 1);
        auto t = I;
        t.push_back(r);
        t.push_back(s2);
        Rational term = value_or_zero(g - 1, t);
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<int> J{r}, K{s2};
            for (int j = 0; j < m; ++j) ((mask >> j) & 1u ? J : K).push_back(I[static_cast<size_t>(j)]);
            for (int g1 = 0; g1 <= g; ++g1) {
                Rational a = value_or_zero(g1, J);
                if (sgn(a) == 0) continue;
                term += a * value_or_zero(g - g1, K);
            }
        }
        half += w * term;
    }
    s += half / 2;
    return s / double_factorial(2 * k + 3);
}

size_t IntersectionTable::size() const {
    std::shared_lock lock(mu_);
    return memo_.size();
}

std::map<std::pair<int, std::vector<int>>, Rational> IntersectionTable::entries() const {
    std::shared_lock lock(mu_);
    return memo_;
}

void IntersectionTable::save(const std::string& path) const {
    std::vector<std::string> lines;
    {
        std::shared_lock lock(mu_);
        for (const auto& [key, v] : memo_) {
            std::ostringstream os;
            os << key.first;
            for (int d : key.second) os << ' ' << d;
            os << " : " << rational_str(v);
            lines.push_back(os.str());
        }
    }
    std::sort(lines.begin(), lines.end());
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw IoError("write failed for " + path);
}

void IntersectionTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::map<std::pair<int, std::vector<int>>, Rational> got;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto colon = line.find(" : ");
        auto bad = [&](const std::string& why) {
            return FormatError(path + ":" + std::to_string(lineno) + ": " + why);
        };
        if (colon == std::string::npos) throw bad("missing ' : '");
        std::istringstream lhs(line.substr(0, colon));
        std::vector<int> nums;
        std::string tok;
        while (lhs >> tok) {
            try {
                size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size() || v < 0) throw bad("bad integer '" + tok + "'");
                nums.push_back(v);
            } catch (const std::logic_error&) {
                throw bad("bad integer '" + tok + "'");
            }
        }
        if (nums.empty()) throw bad("missing genus");
        Rational v;
        try {
            v = parse_rational(line.substr(colon + 3));
        } catch (const ParseError& e) {
            throw bad(e.what());
        }
        int g = nums.front();
        std::vector<int> ds(nums.begin() + 1, nums.end());
        if (2 * g - 2 + static_cast<int>(ds.size()) <= 0) throw bad("unstable index");
        std::sort(ds.begin(), ds.end());
        got[{g, ds}] = v;
    }
    std::unique_lock lock(mu_);
    for (auto& [k, v] : got) memo_[k] = v;
}

IntersectionTable& psi_table() {
    static IntersectionTable table;
    return table;
}

Rational intersection_number(const TauIndex& idx) { return psi_table().value(idx.g, idx.ds); }
Rational intersection_number(int g, const std::vector<int>& ds) { return psi_table().value(g, ds); }

}  // namespace toprec
