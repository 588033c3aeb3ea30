#include "toprec/io.hpp"

#include "toprec/error.hpp"

#include <fstream>
#include <sstream>

namespace toprec {

namespace {

Rational rational_from(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError(where + ": expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

int int_from(const Json& doc, const char* key) {
    if (!doc.contains(key)) throw ValidationError(std::string("missing key \"") + key + "\"");
    if (!doc[key].is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
    return doc[key].get<int>();
}

std::string pair_key(int i, int j) { return std::to_string(i + 1) + "," + std::to_string(j + 1); }

}  // namespace

Json field_to_json(const FieldElement& x) {
    if (x.is_rational()) return rational_str(x[0]);
    Json a = Json::array();
    for (int k = 0; k < 4; ++k) a.push_back(rational_str(x[k]));
    return a;
}

FieldElement field_from_json(const Json& j, const std::string& where) {
    if (j.is_array()) {
        if (j.size() != 4) throw ParseError(where + ": field element needs 4 components");
        return {rational_from(j[0], where), rational_from(j[1], where), rational_from(j[2], where), rational_from(j[3], where)};
    }
    return FieldElement(rational_from(j, where));
}

Json series_to_json(const Series1& s) {
    Json c = Json::array();
    for (const auto& x : s.coeffs()) c.push_back(field_to_json(x));
    Json o;
    o["low"] = s.low();
    if (s.trunc() < kExact) o["T"] = s.trunc();
    else o["T"] = "exact";
    o["coeffs"] = c;
    return o;
}

LocalCurveData curve_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("curve spec must be a JSON object");
    for (const auto& [k, v] : doc.items())
        if (k != "N" && k != "a" && k != "times" && k != "jumps" && k != "truncation")
            throw ValidationError("unknown key \"" + k + "\"");
    LocalCurveData d;
    d.N = int_from(doc, "N");
    if (d.N <= 0) throw ValidationError("N must be positive");
    const size_t N = static_cast<size_t>(d.N);

    int Ty = kExact, TB = kExact;
    if (doc.contains("truncation")) {
        const auto& t = doc["truncation"];
        if (t.is_number_integer()) {
            Ty = TB = t.get<int>();
        } else if (t.is_object()) {
            for (const auto& [k, v] : t.items()) {
                if (k != "times" && k != "jumps") throw ValidationError("unknown truncation key \"" + k + "\"");
                if (!v.is_number_integer()) throw ParseError("truncation." + k + " must be an integer");
            }
            if (t.contains("times")) Ty = t["times"].get<int>();
            if (t.contains("jumps")) TB = t["jumps"].get<int>();
        } else {
            throw ParseError("truncation must be an integer or an object");
        }
        if (Ty < 1 || TB < 0) throw ValidationError("truncation orders must be >= 1 (times) and >= 0 (jumps)");
    }

    if (doc.contains("a")) {
        if (!doc["a"].is_array() || doc["a"].size() != N) throw ValidationError("a must list N values");
        for (size_t i = 0; i < N; ++i) d.a.push_back(field_from_json(doc["a"][i], "a[" + std::to_string(i) + "]"));
    } else {
        for (size_t i = 0; i < N; ++i) d.a.emplace_back(static_cast<long>(i + 1));
    }

    if (!doc.contains("times")) throw ValidationError("missing key \"times\"");
    const auto& times = doc["times"];
    if (!times.is_array() || times.size() != N) throw ValidationError("times must hold N lists");
    for (size_t i = 0; i < N; ++i) {
        if (!times[i].is_array()) throw ParseError("times[" + std::to_string(i) + "] must be a list");
        std::vector<FieldElement> h;
        for (size_t k = 0; k < times[i].size(); ++k) {
            std::string where = "times[" + std::to_string(i) + "][" + std::to_string(k) + "]";
            if (Ty < kExact && static_cast<int>(k) + 1 > Ty) throw ValidationError(where + " lies above the times truncation");
            h.push_back(field_from_json(times[i][k], where));
        }
        if (Ty < kExact) h.resize(static_cast<size_t>(Ty));
        d.y.emplace_back(1, std::move(h), Ty);
    }

    d.jumps_exact = TB >= kExact;
    std::vector<std::vector<std::vector<std::vector<FieldElement>>>> rows(N, std::vector<std::vector<std::vector<FieldElement>>>(N));
    int extent = -1;
    if (doc.contains("jumps")) {
        const auto& jm = doc["jumps"];
        if (!jm.is_object()) throw ParseError("jumps must be an object keyed \"i,j\"");
        for (const auto& [key, table] : jm.items()) {
            int i = 0, j = 0;
            char comma = 0;
            std::istringstream ks(key);
            if (!(ks >> i >> comma >> j) || comma != ',' || !ks.eof() || i < 1 || j < 1 || i > d.N || j > d.N)
                throw ValidationError("bad jump key \"" + key + "\"");
            if (!table.is_array()) throw ParseError("jumps[\"" + key + "\"] must be a list of rows");
            auto& dst = rows[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)];
            for (size_t k = 0; k < table.size(); ++k) {
                if (!table[k].is_array()) throw ParseError("jumps[\"" + key + "\"][" + std::to_string(k) + "] must be a list");
                std::vector<FieldElement> row;
                for (size_t l = 0; l < table[k].size(); ++l) {
                    std::string where = "jumps[\"" + key + "\"][" + std::to_string(k) + "][" + std::to_string(l) + "]";
                    if (TB < kExact && static_cast<int>(k + l) > TB) throw ValidationError(where + " lies above the jumps truncation");
                    row.push_back(field_from_json(table[k][l], where));
                    extent = std::max(extent, static_cast<int>(k + l));
                }
                dst.push_back(std::move(row));
            }
        }
    }
    int D = TB < kExact ? TB : extent;
    d.B.assign(N, std::vector<Series2>(N, Series2(D)));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            auto& s = d.B[i][j];
            const auto& tb = rows[i][j];
            for (size_t k = 0; k < tb.size(); ++k)
                for (size_t l = 0; l < tb[k].size(); ++l) s.set(static_cast<int>(k), static_cast<int>(l), tb[k][l]);
            if (i == j) s.set_pole(1);
        }
    auto rep = validate_curve(d);
    if (!rep.ok) {
        std::string msg;
        for (const auto& v : rep.violations) msg += (msg.empty() ? "" : "; ") + v;
        throw ValidationError(msg);
    }
    return d;
}

Json curve_to_json(const LocalCurveData& data) {
    Json doc;
    doc["N"] = data.N;
    Json a = Json::array();
    for (const auto& x : data.a) a.push_back(field_to_json(x));
    doc["a"] = a;
    const int Ty = data.times_order();
    Json times = Json::array();
    for (const auto& s : data.y) {
        Json row = Json::array();
        int hi = Ty < kExact ? Ty : s.high();
        for (int k = 1; k <= hi; ++k) row.push_back(field_to_json(s.coeff(k)));
        times.push_back(row);
    }
    doc["times"] = times;
    const int TB = data.jumps_order();
    Json jumps = Json::object();
    for (int i = 0; i < data.N; ++i)
        for (int j = 0; j < data.N; ++j) {
            const auto& s = data.B[static_cast<size_t>(i)][static_cast<size_t>(j)];
            int D = TB < kExact ? TB : s.degree();
            std::vector<std::vector<FieldElement>> tb;
            for (int k = 0; k <= D; ++k) {
                std::vector<FieldElement> row;
                for (int l = 0; k + l <= D; ++l) row.push_back(s.coeff(k, l));
                tb.push_back(std::move(row));
            }
            if (TB >= kExact) {
                // exact data: trim trailing zeros, drop empty tables
                for (auto& row : tb)
                    while (!row.empty() && row.back().is_zero()) row.pop_back();
                while (!tb.empty() && tb.back().empty()) tb.pop_back();
                if (tb.empty()) continue;
            }
            Json t = Json::array();
            for (const auto& row : tb) {
                Json r = Json::array();
                for (const auto& x : row) r.push_back(field_to_json(x));
                t.push_back(r);
            }
            jumps[pair_key(i, j)] = t;
        }
    doc["jumps"] = jumps;
    if (Ty < kExact || TB < kExact) {
        Json t = Json::object();
        if (Ty < kExact) t["times"] = Ty;
        if (TB < kExact) t["jumps"] = TB;
        doc["truncation"] = t;
    }
    return doc;
}

LocalCurveData parse_curve_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        // byte offset into the text; report line and column
        size_t pos = std::min<size_t>(e.byte, text.size());
        size_t line = 1, col = 1;
        for (size_t p = 0; p + 1 < pos; ++p) {
            if (text[p] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
    }
    return curve_from_json(doc);
}

std::string emit_curve_text(const LocalCurveData& data) { return curve_to_json(data).dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

LocalCurveData parse_curve_file(const std::string& path) { return parse_curve_text(read_text_file(path)); }

void emit_curve_file(const LocalCurveData& data, const std::string& path) { write_text_file(path, emit_curve_text(data)); }

Json rseries_to_json(const RSeries& R) {
    Json mats = Json::array();
    for (const auto& m : R.R) {
        Json mj = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(field_to_json(x));
            mj.push_back(r);
        }
        mats.push_back(mj);
    }
    Json doc;
    doc["N"] = R.N;
    doc["R"] = mats;
    return doc;
}

Json givental_to_json(const GiventalData& gd) {
    Json doc = rseries_to_json(gd.R);
    Json d = Json::array(), u = Json::array();
    for (const auto& x : gd.delta) d.push_back(field_to_json(x));
    for (const auto& x : gd.unit) u.push_back(field_to_json(x));
    doc["delta"] = d;
    doc["unit"] = u;
    return doc;
}

GiventalData givental_from_json(const Json& doc) {
    if (!doc.is_object()) throw ParseError("R series document must be a JSON object");
    GiventalData gd;
    gd.R.N = int_from(doc, "N");
    const int N = gd.R.N;
    if (N <= 0) throw ValidationError("N must be positive");
    if (!doc.contains("R") || !doc["R"].is_array() || doc["R"].empty()) throw ValidationError("R must be a nonempty list of matrices");
    for (size_t k = 0; k < doc["R"].size(); ++k) {
        const auto& mj = doc["R"][k];
        if (!mj.is_array() || static_cast<int>(mj.size()) != N) throw ValidationError("R[" + std::to_string(k) + "] must be N x N");
        Matrix m = zero_matrix(N);
        for (int r = 0; r < N; ++r) {
            if (!mj[static_cast<size_t>(r)].is_array() || static_cast<int>(mj[static_cast<size_t>(r)].size()) != N)
                throw ValidationError("R[" + std::to_string(k) + "] must be N x N");
            for (int c = 0; c < N; ++c)
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] = field_from_json(
                    mj[static_cast<size_t>(r)][static_cast<size_t>(c)],
                    "R[" + std::to_string(k) + "][" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
        gd.R.R.push_back(std::move(m));
    }
    auto vec = [&](const char* key, FieldElement fill) {
        std::vector<FieldElement> v;
        if (!doc.contains(key)) return std::vector<FieldElement>(static_cast<size_t>(N), fill);
        if (!doc[key].is_array() || static_cast<int>(doc[key].size()) != N) throw ValidationError(std::string(key) + " must list N values");
        for (size_t i = 0; i < doc[key].size(); ++i) v.push_back(field_from_json(doc[key][i], std::string(key) + "[" + std::to_string(i) + "]"));
        return v;
    };
    gd.delta = vec("delta", FieldElement(1));
    gd.unit = vec("unit", FieldElement(1));
    return gd;
}

Json form_to_json(const CorrelationForm& f) {
    Json doc;
    doc["g"] = f.g;
    doc["n"] = f.n;
    doc["N"] = f.N;
    doc["T"] = f.T;
    Json comps = Json::array();
    for (const auto& [bv, ms] : f.components) {
        Json b = Json::array();
        for (int x : bv) b.push_back(x + 1);
        Json entries = Json::array();
        for (const auto& [e, v] : ms.entries) {
            Json rec;
            rec["exponents"] = e;
            rec["value"] = field_to_json(v);
            entries.push_back(rec);
        }
        Json c;
        c["branches"] = b;
        c["entries"] = entries;
        comps.push_back(c);
    }
    doc["components"] = comps;
    return doc;
}

Json expansion_to_json(const DxiExpansion& e, const std::string& basis) {
    Json doc;
    doc["g"] = e.g;
    doc["n"] = e.n;
    doc["basis"] = basis;
    Json terms = Json::array();
    for (const auto& [key, v] : e.terms) {
        Json legs = Json::array();
        for (const auto& l : key) legs.push_back(Json::array({l.branch + 1, l.d}));
        Json rec;
        rec["legs"] = legs;
        rec["value"] = field_to_json(v);
        terms.push_back(rec);
    }
    doc["terms"] = terms;
    return doc;
}

}  // namespace toprec
