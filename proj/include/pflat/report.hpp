#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pflat/flat_decider.hpp"

namespace pflat {

using nlohmann::json;

/// Chunked deterministic parallel map: slot i is always written by exactly
/// one worker, so results do not depend on the thread count.
template <typename F>
void parallel_for(int count, int threads, F&& fn) {
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    int workers = std::min(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

inline int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

inline json verdict_to_json(const DecisionReport& rep) {
    json j;
    j["field"] = field_tag(rep.field);
    j["n"] = rep.n;
    j["subset"] = rep.subset.indices;
    j["structure"] = structure_tag(rep.structure);
    j["dim"] = rep.dim;
    j["verdict"] = verdict_tag(rep.verdict);
    if (rep.verdict.is_flat()) {
        json w = json::array();
        for (const Rational& x : rep.verdict.witness) w.push_back(x.str());
        j["witness"] = std::move(w);
    }
    if (rep.verdict.is_not_flat()) {
        json c = json::array();
        for (const CertStep& s : rep.verdict.certificate) c.push_back(s.text);
        j["certificate"] = std::move(c);
    }
    j["checks"] = {{"autoparallel", rep.autoparallel},
                   {"homomorphism", rep.homomorphism},
                   {"oracle", oracle_mode_tag(rep.oracle_mode)}};
    return j;
}

inline std::string render_report(const DecisionReport& rep) {
    std::ostringstream os;
    os << "sl(" << rep.n << "," << (rep.field == Field::R ? "R" : "H") << ")  subset {"
       << rep.subset.str() << "}  " << structure_tag(rep.structure) << "  dim " << rep.dim
       << "\n";
    os << "  diagram:      " << rep.dynkin << "\n";
    os << "  autoparallel: " << (rep.autoparallel ? "yes" : "no")
       << "   homomorphism: " << (rep.homomorphism ? "yes" : "no")
       << "   oracle: " << oracle_mode_tag(rep.oracle_mode) << "\n";
    os << "  verdict:      " << verdict_tag(rep.verdict) << "\n";
    if (rep.verdict.is_flat()) {
        os << "  witness:      (";
        for (std::size_t i = 0; i < rep.verdict.witness.size(); ++i) {
            if (i) os << ", ";
            os << rep.verdict.witness[i];
        }
        os << ")\n";
    }
    if (rep.verdict.is_not_flat()) {
        os << "  certificate:\n";
        for (const CertStep& s : rep.verdict.certificate) os << "    " << s.text << "\n";
    }
    if (rep.verdict.kind == FlatnessVerdict::Kind::Unknown)
        os << "  reason:       " << rep.verdict.reason << "\n";
    return os.str();
}

/// Sparse JSON dump of a connection and its curvature tensors, keyed by
/// basis-element names, all values as exact rational strings.
inline json dump_tensors(const Connection& conn, const CurvaturePack& pack) {
    const Subalgebra& car = conn.carrier();
    const int m = conn.dim();
    json j;
    json basis = json::array();
    for (int p = 0; p < m; ++p) basis.push_back(car.name(p));
    j["basis"] = std::move(basis);

    json gamma_tensor = json::object();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            const CoordVec& row = conn.row(a, b);
            json entry = json::object();
            for (int c = 0; c < m; ++c)
                if (!row[c].is_zero()) entry[car.name(c)] = row[c].str();
            if (!entry.empty()) gamma_tensor[car.name(a) + "," + car.name(b)] = std::move(entry);
        }
    j["connection"] = std::move(gamma_tensor);

    auto bilinear = [&](auto&& get) {
        json out = json::object();
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                Rational v = get(a, b);
                if (!v.is_zero()) out[car.name(a) + "," + car.name(b)] = v.str();
            }
        return out;
    };
    j["ric"] = bilinear([&](int a, int b) { return pack.ric(a, b); });
    j["p"] = bilinear([&](int a, int b) { return pack.p(a, b); });
    if (pack.ricci_symmetric())
        j["gamma"] = bilinear([&](int a, int b) { return pack.gamma(a, b); });
    j["ricci_symmetric"] = pack.ricci_symmetric();
    return j;
}

/// Serialized MultiPoly: graded-lex sorted list of
/// [[exponents...], "coefficient"], leading term first.
inline json poly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        json exps = json::array();
        for (auto e : it->first) exps.push_back(static_cast<int>(e));
        terms.push_back(json::array({std::move(exps), it->second.str()}));
    }
    return terms;
}

struct EnumerationResult {
    std::vector<DecisionReport> rows;
    int flat = 0, not_flat = 0, unknown = 0;
};

/// Decide every proper subset, fanning out across threads; rows come back
/// in canonical subset order regardless of the thread count.
inline EnumerationResult enumerate_all(const Connection& canonical, Structure structure,
                                       const DecideOptions& opts, int threads) {
    const int n = canonical.carrier().model().n();
    std::vector<SimpleRootSubset> subsets = all_proper_subsets(n);
    EnumerationResult result;
    result.rows.resize(subsets.size(), DecisionReport{});
    parallel_for(static_cast<int>(subsets.size()), threads, [&](int i) {
        result.rows[i] = decide(canonical, subsets[i], structure, opts);
    });
    for (const auto& r : result.rows) {
        switch (r.verdict.kind) {
            case FlatnessVerdict::Kind::Flat: ++result.flat; break;
            case FlatnessVerdict::Kind::NotFlat: ++result.not_flat; break;
            case FlatnessVerdict::Kind::Unknown: ++result.unknown; break;
        }
    }
    return result;
}

inline std::string render_enumeration(const EnumerationResult& res) {
    std::ostringstream os;
    os << "subset            diagram           dim   verdict\n";
    for (const auto& r : res.rows) {
        std::string subset = "{" + r.subset.str() + "}";
        subset.resize(17, ' ');
        std::string diagram = r.dynkin;
        diagram.resize(17, ' ');
        std::string dim = std::to_string(r.dim);
        dim.resize(5, ' ');
        os << subset << " " << diagram << " " << dim << " " << verdict_tag(r.verdict) << "\n";
    }
    os << "total " << res.rows.size() << ": " << res.flat << " flat, " << res.not_flat
       << " not_flat, " << res.unknown << " unknown\n";
    return os.str();
}

inline json enumeration_to_json(const EnumerationResult& res) {
    json rows = json::array();
    for (const auto& r : res.rows) {
        json row = verdict_to_json(r);
        row["diagram"] = r.dynkin;
        rows.push_back(std::move(row));
    }
    return json{{"rows", std::move(rows)},
                {"summary",
                 {{"flat", res.flat}, {"not_flat", res.not_flat}, {"unknown", res.unknown}}}};
}

} // namespace pflat
