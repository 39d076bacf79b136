// projpart: command-line experiments on product partitions of projective
// spaces over finite fields.

#include "projpart/bounds.hpp"
#include "projpart/dependence.hpp"
#include "projpart/dspan.hpp"
#include "projpart/error.hpp"
#include "projpart/experiments.hpp"
#include "projpart/io.hpp"
#include "projpart/parallel.hpp"
#include "projpart/partition.hpp"
#include "projpart/search.hpp"
#include "projpart/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace projpart;
using io::json;

namespace {

struct Options {
    int q = 2;
    int n = 2;
    int k = 0;  // 0: same as n
    std::vector<int> qs{2, 3, 4, 5};
    std::vector<int> ns{2, 3};
    std::string mode = "exhaustive";
    std::uint64_t sample_size = 100'000;
    std::uint64_t seed = 1;
    std::uint64_t samples = 1000;
    std::uint64_t budget = 5'000'000;
    std::string kind = "power";
    std::string in;
    std::string out;
    std::string partition_out;
    std::string format = "json";
    std::string points;
    std::string configs = "2x3,3x3,5x3,3x4";
    bool no_rank_pruning = false;
    int workers = 0;
};

// Result of one command: a JSON report or CSV text, plus the exit status
// of the property it checks.
struct Output {
    json report;
    std::string csv;
    bool holds = true;
};

json envelope(const std::string& command, json config, const std::string& mode, json result) {
    return {{"tool", "projpart"}, {"version", version}, {"command", command}, {"config", std::move(config)}, {"mode", mode},
            {"result", std::move(result)}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot write " + path);
    f << text;
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(ErrorCode::InvalidArgument, "cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::size_t> parse_points(const std::string& s) {
    std::vector<std::size_t> pts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t used = 0;
            const long long v = std::stoll(tok, &used);
            if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
            pts.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad point index '" + tok + "'");
        }
    }
    return pts;
}

std::vector<std::pair<int, int>> parse_configs(const std::string& s) {
    std::vector<std::pair<int, int>> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto x = tok.find('x');
        try {
            if (x == std::string::npos) throw std::invalid_argument(tok);
            out.emplace_back(std::stoi(tok.substr(0, x)), std::stoi(tok.substr(x + 1)));
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "bad configuration '" + tok + "', expected QxN");
        }
    }
    return out;
}

void no_csv(const Options& o, const std::string& command) {
    if (o.format == "csv") fail(ErrorCode::InvalidArgument, "csv output is not available for " + command);
}

// ------------------------------------------------------------ commands

Output cmd_construct(const Options& o) {
    const int k = o.k ? o.k : o.n;
    Partition p;
    std::uint64_t expected = 0;
    if (o.kind == "plane") {
        if (o.n != 2 || k != 2) fail(ErrorCode::DimOutOfRange, "the plane construction needs n = k = 2");
        p = construct_plane_partition(o.q);
        expected = static_cast<std::uint64_t>(o.q * o.q + o.q + 1) * static_cast<std::uint64_t>(o.q + 1);
    } else if (o.kind == "power") {
        p = construct_power_partition(o.q, o.n, k);
        expected = power_partition_size(o.q, o.n, k);
    } else {
        p = singleton_partition(o.q, o.n, k);
        expected = p.size();
    }
    const VerifyReport r = verify(p);
    if (!o.partition_out.empty()) write_text(o.partition_out, io::to_json(p).dump() + "\n");
    Output out;
    out.holds = r.ok() && p.size() == expected;
    out.csv = io::partition_csv(p);
    json config = {{"q", o.q}, {"n", o.n}, {"k", k}, {"kind", o.kind}};
    out.report = envelope("construct", config, r.mode,
                          {{"size", p.size()}, {"expected_size", expected}, {"verify", io::to_json(r)}, {"pass", out.holds}});
    return out;
}

Output cmd_verify(const Options& o) {
    if (o.in.empty()) fail(ErrorCode::InvalidArgument, "--in is required");
    json doc;
    try {
        doc = json::parse(read_text(o.in));
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, e.what());
    }
    const Partition p = io::partition_from_json(doc);
    VerifyOptions vo;
    vo.sample_size = o.sample_size;
    vo.seed = o.seed;
    const VerifyReport r = verify(p, vo);
    Output out;
    out.holds = r.ok();
    out.csv = io::partition_csv(p);
    json config = {{"in", o.in}, {"sample_size", o.sample_size}, {"seed", o.seed}};
    out.report = envelope("verify", config, r.mode,
                          {{"q", p.q()}, {"n", p.n()}, {"k", p.k}, {"parts", p.size()}, {"verify", io::to_json(r)}, {"pass", r.ok()}});
    return out;
}

Output cmd_bounds(const Options& o) {
    Output out;
    json rows = json::array();
    std::ostringstream csv;
    csv << "q,n,k,points,trivial_upper,covering_flats,volume_lower,construction_size,construction_estimate,"
           "almost_flat_lower,dependent_fraction_lower,dependent_fraction_upper\n";
    auto cell = [](const json& j) -> std::string {
        if (j.is_null()) return "n/a";
        if (j.is_object()) return j["exact"].get<std::string>();
        return j.dump();
    };
    for (int q : o.qs)
        for (int n : o.ns) {
            const BoundsTable t = bounds_table(q, n, o.k ? o.k : n);
            const json j = io::to_json(t);
            rows.push_back(j);
            csv << q << "," << n << "," << t.k << "," << t.points << "," << cell(j["trivial_upper"]) << "," << t.flats << ","
                << cell(j["volume_lower"]) << "," << cell(j["construction_size"]) << "," << cell(j["construction_estimate"])
                << "," << cell(j["almost_flat_lower"]) << "," << t.dependent_lower.str() << "," << t.dependent_upper.str()
                << "\n";
        }
    out.csv = csv.str();
    json config = {{"q", o.qs}, {"n", o.ns}, {"k", o.k ? json(o.k) : json("n")}};
    out.report = envelope("bounds", config, "exact", {{"rows", rows}});
    return out;
}

Output cmd_dependent(const Options& o) {
    const int k = o.k ? o.k : o.n;
    const SpacePtr space = Space::make(o.q, o.n);
    CountOptions co;
    co.allow_sampling = o.mode == "sampled";
    co.sample_size = o.sample_size;
    co.seed = o.seed;
    if (co.allow_sampling) co.exact_limit = 0;
    const std::vector<PointSet> f(k, space->full_set());
    const DependentCount c = count_dependent(space, f, co);
    const BoundsTable t = bounds_table(o.q, o.n, std::min(k, o.n + 1));
    Output out;
    json result = io::to_json(c);
    result["operation"] = "dependent";
    result["params"] = {{"q", o.q}, {"n", o.n}, {"k", k}};
    if (k == o.n) {
        const bool lo = !fraction_less(c.count, c.total, static_cast<std::uint64_t>(t.dependent_lower.num),
                                       static_cast<std::uint64_t>(t.dependent_lower.den));
        const bool hi = !fraction_less(static_cast<std::uint64_t>(t.dependent_upper.num),
                                       static_cast<std::uint64_t>(t.dependent_upper.den), c.count, c.total);
        result["bound"] = {{"lower", io::to_json(t.dependent_lower)}, {"upper", io::to_json(t.dependent_upper)}};
        result["holds"] = lo && hi;
        out.holds = c.mode == "sampled" || (lo && hi);
    }
    std::ostringstream csv;
    csv << "q,n,k,count,total,mode\n" << o.q << "," << o.n << "," << k << "," << c.count << "," << c.total << "," << c.mode << "\n";
    out.csv = csv.str();
    json config = {{"q", o.q}, {"n", o.n}, {"k", k}, {"mode", o.mode}};
    if (co.allow_sampling) {
        config["sample_size"] = o.sample_size;
        config["seed"] = o.seed;
    }
    out.report = envelope("dependent", config, c.mode, result);
    return out;
}

Output cmd_lemma_sylvester(const Options& o) {
    no_csv(o, "lemma sylvester");
    const SylvesterSweep s = sylvester_sweep(o.q, o.n);
    Output out;
    out.holds = s.ok();
    out.report = envelope("lemma sylvester", {{"q", o.q}, {"n", o.n}}, "exhaustive",
                          {{"operation", "sylvester"},
                           {"params", {{"q", o.q}, {"n", o.n}}},
                           {"families", s.families},
                           {"max_intersections", s.max_intersections},
                           {"bound", 2},
                           {"violations", s.violations},
                           {"chain_breaks", s.chain_breaks},
                           {"holds", s.ok()}});
    return out;
}

Output cmd_lemma_lines(const Options& o) {
    no_csv(o, "lemma lines");
    if (o.mode == "sampled") {
        const LinesSample s = lines_sample(o.q, o.n, o.samples, o.seed);
        json strata = json::object();
        for (const auto& [name, st] : s.strata)
            strata[name] = {{"samples", st.samples}, {"min_count", st.min_count}, {"violations", st.violations}};
        Output out;
        out.holds = s.ok();
        json config = {{"q", o.q}, {"n", o.n}, {"mode", o.mode}, {"samples", o.samples}, {"seed", o.seed}};
        out.report = envelope("lemma lines", config, "sampled",
                              {{"operation", "lines"}, {"params", {{"q", o.q}, {"n", o.n}}}, {"samples", s.samples},
                               {"seed", s.seed}, {"count", s.min_count}, {"bound", s.bound}, {"violations", s.violations},
                               {"strata", strata}, {"holds", s.ok()}});
        return out;
    }
    const LinesSweep s = lines_sweep(o.q, o.n);
    Output out;
    out.holds = s.ok();
    json result = {{"operation", "lines"},      {"params", {{"q", o.q}, {"n", o.n}}}, {"families", s.families},
                   {"count", s.min_count},      {"bound", s.bound},                   {"violations", s.violations},
                   {"minimizer", s.argmin},     {"holds", s.ok()}};
    if (s.tight_pair) result["tight_pair_count"] = *s.tight_pair;
    out.report = envelope("lemma lines", {{"q", o.q}, {"n", o.n}}, "exhaustive", result);
    return out;
}

Output cmd_lemma_gp(const Options& o) {
    no_csv(o, "lemma gp");
    const BicliqueResult r = min_biclique_partition(o.n, !o.no_rank_pruning);
    Output out;
    out.holds = r.minimum == o.n;
    out.report = envelope("lemma gp", {{"n", o.n}, {"rank_pruning", !o.no_rank_pruning}}, "exhaustive",
                          {{"operation", "gp"},
                           {"params", {{"n", o.n}}},
                           {"minimum", r.minimum},
                           {"bound", o.n},
                           {"nodes", r.nodes},
                           {"holds", out.holds}});
    return out;
}

Output cmd_lemma_surgery(const Options& o) {
    no_csv(o, "lemma surgery");
    const SurgerySweep s = surgery_sweep(o.q, o.n, o.samples, o.seed);
    Output out;
    out.holds = s.ok();
    json config = {{"q", o.q}, {"n", o.n}, {"samples", o.samples}, {"seed", o.seed}};
    out.report = envelope("lemma surgery", config, "sampled",
                          {{"operation", "surgery"},
                           {"params", {{"q", o.q}, {"n", o.n}}},
                           {"samples", s.samples},
                           {"seed", s.seed},
                           {"increased", s.increased},
                           {"not_class_union", s.not_class_union},
                           {"dependent_prefix", s.dependent_prefix},
                           {"choices", s.choices},
                           {"max_drop", s.max_drop},
                           {"holds", s.ok()}});
    return out;
}

Output cmd_lemma_almostflat(const Options& o) {
    no_csv(o, "lemma almostflat");
    const AlmostFlatSweep s = almostflat_sweep(o.q, o.n, o.samples, o.seed);
    Output out;
    out.holds = s.ok();
    auto frac = [](std::uint64_t a, std::uint64_t b) { return io::to_json(Rational::make(a, b)); };
    json config = {{"q", o.q}, {"n", o.n}, {"samples", o.samples}, {"seed", o.seed}};
    out.report = envelope("lemma almostflat", config, "sampled",
                          {{"operation", "almostflat"},
                           {"params", {{"q", o.q}, {"n", o.n}}},
                           {"samples", s.samples},
                           {"seed", s.seed},
                           {"bound", frac(s.bound_num, s.bound_den)},
                           {"min_direct_fraction", frac(s.min_direct_count, s.min_direct_total)},
                           {"min_pipeline_fraction", frac(s.min_pipeline_count, s.min_pipeline_total)},
                           {"pipeline_tighter", s.pipeline_tighter},
                           {"direct_failures", s.direct_failures},
                           {"pipeline_failures", s.pipeline_failures},
                           {"failures", s.failures},
                           {"holds", s.ok()}});
    return out;
}

Output cmd_lemma_claims(const Options& o) {
    no_csv(o, "lemma quotient-claims");
    const ClaimsReport r = quotient_claims(o.q, o.n);
    Output out;
    out.holds = r.ok();
    out.report = envelope("lemma quotient-claims", {{"q", o.q}, {"n", o.n}}, "exhaustive",
                          {{"operation", "quotient-claims"},
                           {"params", {{"q", o.q}, {"n", o.n}}},
                           {"invariance", {{"checked", r.invariance_checked}, {"violations", r.invariance_violations}}},
                           {"intersection_size", {{"checked", r.intersection_checked}, {"violations", r.intersection_violations}}},
                           {"class_property", {{"checked", r.class_checked}, {"violations", r.class_violations}}},
                           {"counterexamples", r.counterexamples},
                           {"holds", r.ok()}});
    return out;
}

Output cmd_dspan_solve(const Options& o) {
    no_csv(o, "dspan solve");
    const SpacePtr space = Space::make(o.q, o.n);
    const Instance inst{space, parse_points(o.points)};
    for (std::size_t p : inst.points)
        if (p >= space->num_points()) fail(ErrorCode::InvalidArgument, "point index " + std::to_string(p) + " out of range");
    if (static_cast<int>(inst.points.size()) != o.n) fail(ErrorCode::InvalidArgument, "an instance has exactly n points");
    const DecisionTrace t = solve(inst);
    json part = json::array();
    for (const Factor& f : induced_part(t)) part.push_back(io::to_json(f));
    const bool correct = t.output && std::all_of(inst.points.begin(), inst.points.end(), [&](std::size_t p) { return t.output->contains(p); });
    Output out;
    out.holds = correct;
    json config = {{"q", o.q}, {"n", o.n}, {"points", inst.points}};
    out.report = envelope("dspan solve", config, "exact",
                          {{"trace", io::to_json(t)},
                           {"queries", t.size()},
                           {"bound", query_bound(o.q, o.n)},
                           {"induced_part", part},
                           {"correct", correct}});
    return out;
}

Output cmd_dspan_sweep(const Options& o) {
    const LeafPartition lp = leaf_partition(o.q, o.n);
    const LeafStructure& st = lp.structure;
    if (!o.partition_out.empty()) write_text(o.partition_out, io::to_json(lp.partition).dump() + "\n");
    Output out;
    out.holds = st.solver_correct && st.verify.ok() && st.holes_within_trace && st.inside_output &&
                st.max_queries <= query_bound(o.q, o.n) && st.general_bound_holds.value_or(true);
    out.csv = io::partition_csv(lp.partition);
    json sizes = json::array();
    for (const auto& [size, count] : st.leaf_sizes) sizes.push_back({{"size", size}, {"leaves", count}});
    out.report = envelope("dspan sweep", {{"q", o.q}, {"n", o.n}}, "exhaustive",
                          {{"instances", st.instances},
                           {"leaves", st.leaves},
                           {"distinct_traces", st.distinct_traces},
                           {"max_queries", st.max_queries},
                           {"mean_queries", st.mean_queries},
                           {"query_bound", query_bound(o.q, o.n)},
                           {"max_holes", st.max_holes},
                           {"holes_within_trace", st.holes_within_trace},
                           {"solver_correct", st.solver_correct},
                           {"inside_output_flat", st.inside_output},
                           {"all_almost_flat", st.all_almost_flat},
                           {"non_almost_flat", st.non_almost_flat},
                           {"almost_flat_lower_bound_holds", st.general_bound_holds ? json(*st.general_bound_holds) : json(nullptr)},
                           {"leaf_sizes", sizes},
                           {"verify", io::to_json(st.verify)},
                           {"pass", out.holds}});
    return out;
}

Output cmd_dspan_bench(const Options& o) {
    Output out;
    json rows = json::array();
    std::ostringstream csv;
    csv << "q,n,mean_queries,max_queries,bound\n";
    double lo = 0, hi = 0, constant = 0;
    for (auto [q, n] : parse_configs(o.configs)) {
        const BenchRow r = bench(q, n, o.samples, o.seed);
        rows.push_back(io::to_json(r));
        out.holds = out.holds && r.correct && r.max_queries <= r.bound;
        lo = rows.size() == 1 ? r.ratio : std::min(lo, r.ratio);
        hi = std::max(hi, r.ratio);
        constant = std::max(constant, static_cast<double>(r.max_queries) / (static_cast<double>(q) * n * n));
        char mean[32];
        std::snprintf(mean, sizeof mean, "%.4f", r.mean_queries);
        csv << q << "," << n << "," << mean << "," << r.max_queries << "," << r.bound << "\n";
    }
    out.csv = csv.str();
    json config = {{"configs", o.configs}, {"samples", o.samples}, {"seed", o.seed}};
    out.report = envelope("dspan bench", config, "sampled",
                          {{"rows", rows},
                           {"max_queries_over_qn2", constant},
                           {"mean_ratio_spread", lo > 0 ? hi / lo : 0.0},
                           {"within_factor_2", lo > 0 && hi <= 2 * lo}});
    return out;
}

Output cmd_search(const Options& o) {
    no_csv(o, "search");
    const SearchResult r = search_min_partition(o.budget);
    if (!o.partition_out.empty()) write_text(o.partition_out, io::to_json(r.partition).dump() + "\n");
    const VerifyReport v = verify(r.partition);
    Output out;
    out.holds = v.ok();
    out.report = envelope("search", {{"q", 2}, {"n", 2}, {"k", 2}, {"budget", o.budget}}, "exhaustive",
                          {{"interval", {r.lower, r.best}},
                           {"lower", r.lower},
                           {"best_found", r.best},
                           {"complete", r.complete},
                           {"nodes", r.nodes},
                           {"candidate_parts", r.candidates},
                           {"best_verify", io::to_json(v)}});
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Product partitions of finite projective spaces: constructions, checks and the DSPAN game"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--out", o.out, "Write the report to this file instead of stdout");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--workers", o.workers, "Worker threads (default: $PROJPART_WORKERS or hardware)")->check(CLI::PositiveNumber);

    auto add_qn = [&](CLI::App* c, bool k) {
        c->add_option("--q", o.q, "Field size (prime power)");
        c->add_option("--n", o.n, "Projective dimension");
        if (k) c->add_option("--k", o.k, "Tuple length (default n)");
    };
    std::function<Output(const Options&)> run;

    auto* construct = app.add_subcommand("construct", "Build a partition and verify it");
    add_qn(construct, true);
    construct->add_option("--kind", o.kind, "plane | power | singleton")->check(CLI::IsMember({"plane", "power", "singleton"}));
    construct->add_option("--partition-out", o.partition_out, "Write the partition JSON here");
    construct->callback([&] { run = cmd_construct; });

    auto* ver = app.add_subcommand("verify", "Verify a partition file");
    ver->add_option("--in", o.in, "Partition JSON")->required();
    ver->add_option("--sample-size", o.sample_size, "Sampled membership checks above the exact limit");
    ver->add_option("--seed", o.seed, "Sampling seed");
    ver->callback([&] { run = cmd_verify; });

    auto* bounds = app.add_subcommand("bounds", "Table of size bounds");
    bounds->add_option("--q", o.qs, "Field sizes")->delimiter(',');
    bounds->add_option("--n", o.ns, "Dimensions")->delimiter(',');
    bounds->add_option("--k", o.k, "Tuple length (default n)");
    bounds->callback([&] { run = cmd_bounds; });

    auto* dep = app.add_subcommand("dependent", "Dependent tuples of (F_qP^n)^k");
    add_qn(dep, true);
    dep->add_option("--mode", o.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    dep->add_option("--sample-size", o.sample_size, "Samples in sampled mode");
    auto* dep_seed = dep->add_option("--seed", o.seed, "Seed (required in sampled mode)");
    dep->callback([&] {
        if (o.mode == "sampled" && dep_seed->count() == 0) fail(ErrorCode::InvalidArgument, "sampled mode needs --seed");
        run = cmd_dependent;
    });

    auto* lemma = app.add_subcommand("lemma", "Finite checks of the lemmas");
    lemma->require_subcommand(1);
    auto* syl = lemma->add_subcommand("sylvester", "Line meeting the others in at most two points");
    add_qn(syl, false);
    syl->callback([&] { run = cmd_lemma_sylvester; });
    auto* lines = lemma->add_subcommand("lines", "Dependent tuples in products of almost-lines");
    add_qn(lines, false);
    lines->add_option("--mode", o.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    lines->add_option("--samples", o.samples, "Families in sampled mode");
    lines->add_option("--seed", o.seed, "Seed");
    lines->callback([&] { run = cmd_lemma_lines; });
    auto* gp = lemma->add_subcommand("gp", "Biclique partitions of K_{n,n} minus a matching");
    gp->add_option("--n", o.n, "Side size");
    gp->add_flag("--no-rank-pruning", o.no_rank_pruning, "Search without the rank bound");
    gp->callback([&] { run = cmd_lemma_gp; });
    auto* surgery = lemma->add_subcommand("surgery", "Surgery never raises the dependent fraction");
    add_qn(surgery, false);
    surgery->add_option("--samples", o.samples, "Random parts");
    surgery->add_option("--seed", o.seed, "Seed");
    surgery->callback([&] { run = cmd_lemma_surgery; });
    auto* af = lemma->add_subcommand("almostflat", "Dependent fraction of non-dominated almost-flat parts");
    add_qn(af, false);
    af->add_option("--samples", o.samples, "Random parts");
    af->add_option("--seed", o.seed, "Seed");
    af->callback([&] { run = cmd_lemma_almostflat; });
    auto* claims = lemma->add_subcommand("quotient-claims", "Quotient invariance, intersection sizes, class property");
    add_qn(claims, false);
    claims->callback([&] { run = cmd_lemma_claims; });

    auto* dspan = app.add_subcommand("dspan", "The DSPAN oracle game");
    dspan->require_subcommand(1);
    auto* solve_cmd = dspan->add_subcommand("solve", "Solve one instance and print its trace");
    add_qn(solve_cmd, false);
    solve_cmd->add_option("--points", o.points, "Comma-separated point indices")->required();
    solve_cmd->callback([&] { run = cmd_dspan_solve; });
    auto* sweep = dspan->add_subcommand("sweep", "Solve every instance and check the leaf partition");
    add_qn(sweep, false);
    sweep->add_option("--partition-out", o.partition_out, "Write the leaf partition JSON here");
    sweep->callback([&] { run = cmd_dspan_sweep; });
    auto* benchc = dspan->add_subcommand("bench", "Query counts against q n^2");
    benchc->add_option("--configs", o.configs, "Comma-separated QxN list");
    benchc->add_option("--samples", o.samples, "Instances per configuration when not exhaustive")->default_val(2000);
    benchc->add_option("--seed", o.seed, "Seed");
    benchc->callback([&] { run = cmd_dspan_bench; });

    auto* search = app.add_subcommand("search", "Branch and bound for small partitions at q = 2, k = n = 2");
    search->add_option("--budget", o.budget, "Node budget");
    search->add_option("--partition-out", o.partition_out, "Write the best partition JSON here");
    search->callback([&] { run = cmd_search; });

    auto error_record = [](std::string_view code, const std::string& message) {
        std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
        return 2;
    };

    try {
        app.parse(argc, argv);
        if (o.workers > 0) set_worker_count(o.workers);
        const Output out = run(o);
        const std::string text = o.format == "csv" ? out.csv : out.report.dump(2) + "\n";
        if (o.format == "csv" && text.empty()) fail(ErrorCode::InvalidArgument, "csv output is not available for this command");
        if (o.out.empty())
            std::cout << text;
        else
            write_text(o.out, text);
        return out.holds ? 0 : 1;
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return error_record("UsageError", e.what());
    } catch (const Error& e) {
        return error_record(error_code_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return error_record("InternalError", e.what());
    }
}
