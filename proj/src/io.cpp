#include "projpart/io.hpp"

#include "projpart/error.hpp"

#include <sstream>

namespace projpart::io {

namespace {

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

json opt(const std::optional<Rational>& v) { return v ? to_json(*v) : json(nullptr); }

}  // namespace

json to_json(const Flat& flat) {
    json rows = json::array();
    for (int r = 0; r < flat.rank(); ++r) {
        json row = json::array();
        for (Elem e : flat.row(r)) row.push_back(static_cast<int>(e));
        rows.push_back(std::move(row));
    }
    return rows;
}

Flat flat_from_json(const SpacePtr& space, const json& j) {
    if (j.is_number_integer()) return flat_from_json(space, json::array({j}));
    if (!j.is_array()) fail(ErrorCode::ParseError, "a flat is an array of rows");
    const int w = space->width();
    std::vector<Elem> rows;
    int count = 0;
    for (const json& row : j) {
        if (row.is_number_integer()) {
            const auto p = row.get<long long>();
            if (p < 0 || static_cast<std::size_t>(p) >= space->num_points())
                fail(ErrorCode::ParseError, "point index " + std::to_string(p) + " out of range");
            const auto c = space->coords(static_cast<std::size_t>(p));
            rows.insert(rows.end(), c.begin(), c.end());
        } else if (row.is_array()) {
            if (static_cast<int>(row.size()) != w) fail(ErrorCode::ParseError, "coordinate row of length " + std::to_string(row.size()));
            for (const json& e : row) {
                if (!e.is_number_integer()) fail(ErrorCode::ParseError, "coordinates are integer element codes");
                const auto v = e.get<long long>();
                if (v < 0 || v >= space->q()) fail(ErrorCode::ParseError, "element code " + std::to_string(v) + " out of range");
                rows.push_back(static_cast<Elem>(v));
            }
        } else {
            fail(ErrorCode::ParseError, "a row is a point index or a coordinate vector");
        }
        ++count;
    }
    return Flat::from_rows(space, rows, count);
}

json to_json(const Factor& factor) {
    json holes = json::array();
    for (const Flat& h : factor.holes()) holes.push_back(to_json(h));
    return {{"base", to_json(factor.base())}, {"holes", holes}};
}

Factor factor_from_json(const SpacePtr& space, const json& j) {
    if (!j.is_object() || !j.contains("base")) fail(ErrorCode::ParseError, "a factor needs a base");
    std::vector<Flat> holes;
    if (j.contains("holes")) {
        if (!j["holes"].is_array()) fail(ErrorCode::ParseError, "holes must be an array");
        for (const json& h : j["holes"]) holes.push_back(flat_from_json(space, h));
    }
    auto f = Factor::try_make(flat_from_json(space, j["base"]), std::move(holes));
    if (!f) fail(ErrorCode::ParseError, "factor has no points");
    return std::move(*f);
}

json to_json(const ProductPart& part) {
    json factors = json::array();
    for (const Factor& f : part.factors) factors.push_back(to_json(f));
    return {{"factors", factors}, {"witness", part.witness ? to_json(*part.witness) : json(nullptr)}};
}

json to_json(const Partition& partition) {
    json parts = json::array();
    for (const ProductPart& p : partition.parts) parts.push_back(to_json(p));
    return {{"q", partition.q()}, {"n", partition.n()}, {"k", partition.k}, {"parts", parts}};
}

Partition partition_from_json(const json& j) {
    try {
        const int q = j.at("q").get<int>();
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        if (k < 1) fail(ErrorCode::ParseError, "k must be positive");
        Partition out{Space::make(q, n), k, {}};
        for (const json& p : j.at("parts")) {
            ProductPart part;
            for (const json& f : p.at("factors")) part.factors.push_back(factor_from_json(out.space, f));
            if (static_cast<int>(part.factors.size()) != k) fail(ErrorCode::ParseError, "part with the wrong number of factors");
            if (p.contains("witness") && !p["witness"].is_null()) part.witness = flat_from_json(out.space, p["witness"]);
            out.parts.push_back(std::move(part));
        }
        return out;
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, e.what());
    }
}

std::string partition_csv(const Partition& partition) {
    std::ostringstream os;
    os << "part,pattern,size\n";
    for (std::size_t i = 0; i < partition.parts.size(); ++i) {
        const ProductPart& p = partition.parts[i];
        os << i << ",\"" << p.pattern().str() << "\"," << p.size() << "\n";
    }
    return os.str();
}

json to_json(const VerifyReport& r) {
    return {{"ok", r.ok()},           {"disjoint", r.disjoint},     {"covering", r.covering},
            {"witnessed", r.witnessed}, {"well_formed", r.well_formed}, {"covered", r.covered},
            {"total", r.total},       {"mode", r.mode},             {"samples", r.samples},
            {"violations", r.violations}};
}

json to_json(const DependentCount& c) {
    json j = {{"count", c.count}, {"total", c.total}, {"fraction", c.fraction()}, {"mode", c.mode}};
    if (c.mode == "sampled") {
        j["sample_size"] = c.sample_size;
        j["seed"] = c.seed;
    }
    return j;
}

json to_json(const Rational& r) { return {{"exact", r.str()}, {"value", r.value()}}; }

json to_json(const DecisionTrace& trace) {
    json qs = json::array();
    for (const QueryRecord& r : trace.queries)
        qs.push_back({{"flat", to_json(r.query)}, {"answer", r.answer.yes ? json("YES") : json{{"NO", r.answer.index}}}});
    return {{"queries", qs}, {"output", trace.output ? to_json(*trace.output) : json(nullptr)}};
}

json to_json(const BoundsTable& t) {
    return {{"q", t.q},
            {"n", t.n},
            {"k", t.k},
            {"points", t.points},
            {"trivial_upper", opt(t.total)},
            {"covering_flats", t.flats},
            {"volume_lower", opt(t.volume_lower)},
            {"construction_size", opt(t.construction)},
            {"construction_estimate", opt(t.upper_estimate)},
            {"almost_flat_lower", opt(t.general_lower)},
            {"almost_flat_lower_vacuous", t.general_lower ? json(t.general_lower->num <= 0) : json(nullptr)},
            {"dependent_fraction_lower", to_json(t.dependent_lower)},
            {"dependent_fraction_upper", to_json(t.dependent_upper)}};
}

json to_json(const BenchRow& r) {
    return {{"q", r.q},
            {"n", r.n},
            {"instances", r.instances},
            {"exhaustive", r.exhaustive},
            {"mean_queries", r.mean_queries},
            {"max_queries", r.max_queries},
            {"bound", r.bound},
            {"mean_over_qn2", r.ratio},
            {"correct", r.correct}};
}

}  // namespace projpart::io
