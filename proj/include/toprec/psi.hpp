#pragma once

#include "toprec/field.hpp"

#include <map>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

namespace toprec {

struct TauIndex {
    int g = 0;
    std::vector<int> ds;
};

// Memoized <tau_{d_1} ... tau_{d_n}>_g. Reads are concurrent, inserts are synchronized.
class IntersectionTable {
public:
    // Unstable if 2g - 2 + n <= 0; zero when the dimension constraint fails.
    Rational value(int g, std::vector<int> ds);
    Rational value(const TauIndex& idx) { return value(idx.g, idx.ds); }

    // One line per entry "g d1 d2 ... : p/q", lines sorted.
    void save(const std::string& path) const;
    // Merges a cache file. FormatError on malformed content.
    void load(const std::string& path);
    size_t size() const;
    std::map<std::pair<int, std::vector<int>>, Rational> entries() const;

private:
    Rational compute(int g, const std::vector<int>& ds);
    Rational value_or_zero(int g, std::vector<int> ds);

    mutable std::shared_mutex mu_;
    std::map<std::pair<int, std::vector<int>>, Rational> memo_;
};

// Process-wide table shared by the graph sums and closed forms.
IntersectionTable& psi_table();

Rational intersection_number(const TauIndex& idx);
Rational intersection_number(int g, const std::vector<int>& ds);

}  // namespace toprec
