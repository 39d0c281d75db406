/**
 * spartlab: single executable exposing the library as subcommands.
 *
 * Exit codes: 0 success, 2 input validation failure (including unknown
 * flags), 3 budget exhaustion.  Outputs are JSON or CSV documents carrying a
 * schema tag and the generating manifest (command, parameters, library
 * version, input hashes); rerunning a manifest reproduces the bytes exactly.
 */

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sparts/arith.hpp"
#include "sparts/congruence.hpp"
#include "sparts/decomp.hpp"
#include "sparts/density.hpp"
#include "sparts/effective.hpp"
#include "sparts/extremal.hpp"
#include "sparts/io.hpp"
#include "sparts/lattice.hpp"
#include "sparts/numfield.hpp"
#include "sparts/poly.hpp"

using namespace sparts;
using io::Json;

namespace {

/// Writes a finished document to --out (or stdout when the path is empty).
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    SPARTS_CHECK(out.good(), "cannot open output file: " + out_path);
    out << text;
    SPARTS_CHECK(out.good(), "write failed: " + out_path);
}

std::string json_doc(Json manifest, Json payload) {
    payload["schema"] = io::kSchemaTag;
    payload["manifest"] = std::move(manifest);
    return payload.dump(2) + "\n";
}

Json json_opt_double(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::string csv_opt_double(const std::optional<double>& v) {
    return v ? io::format_double(*v) : std::string();
}

// ---------------------------------------------------------------------------
// spart
// ---------------------------------------------------------------------------

struct SpartOpts {
    std::string m, primes, out;
};

void run_spart(const SpartOpts& o) {
    Int m = io::int_from_dec(o.m);
    PrimeSet S(io::parse_i64_list(o.primes));
    SPartSplit sp = s_split(m, S);
    Json manifest = io::make_manifest("spart", Json{{"m", o.m}, {"primes", o.primes}});
    Json payload;
    payload["s_part"] = io::to_dec(sp.s_part);
    payload["cofactor"] = io::to_dec(sp.cofactor);
    payload["exponents"] = sp.exponents;
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

// ---------------------------------------------------------------------------
// density
// ---------------------------------------------------------------------------

struct DensityOpts {
    std::string coeffs, primes, eps, bmax, out;
    unsigned grid = 1;
};

void run_density(const DensityOpts& o, bool binary) {
    PrimeSet S(io::parse_i64_list(o.primes));
    Rat eps = io::rat_from_frac(o.eps);
    Int bmax = io::int_from_dec(o.bmax);
    Json manifest = io::make_manifest(binary ? "density binary" : "density poly",
                                      Json{{"coeffs", o.coeffs},
                                           {"primes", o.primes},
                                           {"eps", o.eps},
                                           {"bmax", o.bmax},
                                           {"grid", o.grid}});
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
    if (o.grid <= 1) {
        // Single-point mode: exact count only, no growth model attached.
        std::uint64_t count =
            binary ? count_N_binary(BinaryForm(io::parse_int_list(o.coeffs)), S, eps, bmax)
                   : count_N_poly(IntPoly(io::parse_int_list(o.coeffs)), S, eps, bmax);
        rows.push_back({io::to_dec(bmax), std::to_string(count), "", ""});
    } else {
        std::vector<Int> grid = make_geometric_grid(bmax, o.grid);
        CountReport rep =
            binary ? asymptotic_report(BinaryForm(io::parse_int_list(o.coeffs)), S, eps, grid)
                   : asymptotic_report(IntPoly(io::parse_int_list(o.coeffs)), S, eps, grid);
        for (std::size_t i = 0; i < rep.grid.size(); ++i) {
            rows.push_back({io::to_dec(rep.grid[i]), std::to_string(rep.counts[i]),
                            io::format_double(rep.model_values[i]),
                            rep.finiteness_mode ? ""
                                                : io::format_double(rep.ratios[i])});
        }
        notes.push_back("qualifying_primes=" + std::to_string(rep.s_prime));
        if (rep.finiteness_mode)
            notes.push_back(std::string("tail_constant=") +
                            (rep.tail_constant ? "true" : "false"));
        else
            notes.push_back("tail_ratio_min=" + io::format_double(rep.tail_ratio_min) +
                            " tail_ratio_max=" + io::format_double(rep.tail_ratio_max));
    }
    emit(io::make_csv(io::manifest_hash(manifest), notes,
                      {"B", "count", "model", "ratio"}, rows),
         o.out);
}

// ---------------------------------------------------------------------------
// hensel
// ---------------------------------------------------------------------------

struct HenselOpts {
    std::string coeffs, prime, out;
    unsigned kmax = 8;
    bool binary = false;
    std::int64_t budget = 4000000;
};

void run_hensel(const HenselOpts& o) {
    Int p = io::int_from_dec(o.prime);
    Json manifest = io::make_manifest("hensel", Json{{"coeffs", o.coeffs},
                                                     {"prime", o.prime},
                                                     {"kmax", o.kmax},
                                                     {"binary", o.binary}});
    StabilizationReport rep =
        o.binary ? stabilization_report(BinaryForm(io::parse_int_list(o.coeffs)), p,
                                        o.kmax, o.budget)
                 : stabilization_report(IntPoly(io::parse_int_list(o.coeffs)), p,
                                        o.kmax, o.budget);
    Json rows = Json::array();
    for (std::size_t i = 0; i < rep.counts.size(); ++i) {
        Json row;
        row["k"] = i + 1;
        row["count"] = rep.counts[i];
        if (i < rep.per_branch.size() && !rep.per_branch[i].empty()) {
            Json pb;
            for (const auto& [residue, count] : rep.per_branch[i])
                pb[std::to_string(residue)] = count;
            row["per_branch"] = std::move(pb);
        }
        rows.push_back(std::move(row));
    }
    Json payload;
    payload["g_p"] = rep.g_p;
    payload["stable"] = rep.stable;
    payload["rows"] = std::move(rows);
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

// ---------------------------------------------------------------------------
// lattice
// ---------------------------------------------------------------------------

struct LatticeOpts {
    std::string form = "1,0,1";  // X^2 + Y^2
    std::string x0, y0, h, b, m, out;
    bool prim = false;
    double area_tol = 1e-6;
    double budget = 5e8;
};

void run_lattice(const LatticeOpts& o) {
    ClassLattice L = class_lattice(io::int_from_dec(o.x0), io::int_from_dec(o.y0),
                                   io::int_from_dec(o.h));
    RegionSpec R{BinaryForm(io::parse_int_list(o.form)), io::rat_from_frac(o.b),
                 io::rat_from_frac(o.m)};
    Json manifest = io::make_manifest(
        "lattice", Json{{"form", o.form},
                        {"x0", o.x0},
                        {"y0", o.y0},
                        {"h", o.h},
                        {"b", o.b},
                        {"m", o.m},
                        {"prim", o.prim}});
    RegionCount rc = count_region_points(R, L, o.prim, o.area_tol, o.budget);
    double Bd = to_double(R.B);
    double normalized = std::abs(rc.error_observed) / (Bd * std::log(3.0 * Bd));
    std::vector<std::vector<std::string>> rows = {
        {io::to_frac(R.B), io::to_frac(R.M), io::to_dec(L.h),
         std::to_string(rc.count), io::format_double(rc.main_term),
         io::format_double(rc.error_observed), io::format_double(normalized)}};
    emit(io::make_csv(io::manifest_hash(manifest), {},
                      {"B", "M", "h", "count", "main_term", "error", "normalized_error"},
                      rows),
         o.out);
}

// ---------------------------------------------------------------------------
// extremal
// ---------------------------------------------------------------------------

struct ExtremalOpts {
    std::string mode, coeffs, prime, q, pairs, out;
    unsigned kmax = 10;
    std::int64_t budget = 4000000;
};

void run_extremal(const ExtremalOpts& o) {
    Json manifest = io::make_manifest("extremal", Json{{"mode", o.mode},
                                                       {"coeffs", o.coeffs},
                                                       {"prime", o.prime},
                                                       {"q", o.q},
                                                       {"pairs", o.pairs},
                                                       {"kmax", o.kmax}});
    std::vector<TowerEntry> tower;
    if (o.mode == "hensel") {
        tower = hensel_tower_poly(IntPoly(io::parse_int_list(o.coeffs)),
                                  io::int_from_dec(o.prime), o.kmax, o.budget);
    } else if (o.mode == "minkowski") {
        tower = minkowski_tower_binary(BinaryForm(io::parse_int_list(o.coeffs)),
                                       io::int_from_dec(o.prime), o.kmax, o.budget);
    } else if (o.mode == "split") {
        SPARTS_CHECK(!o.q.empty() && !o.pairs.empty(),
                     "split mode needs --q and --pairs");
        tower = split_pair_tower_binary(BinaryForm(io::parse_int_list(o.coeffs)),
                                        io::int_from_dec(o.prime), io::int_from_dec(o.q),
                                        io::parse_pair_list(o.pairs));
    } else {
        throw validation_error("unknown tower mode: " + o.mode);
    }
    Json rows = Json::array();
    for (const TowerEntry& e : tower) {
        Json row;
        row["k"] = e.k;
        row["l"] = e.l;
        row["x"] = io::to_dec(e.x);
        row["y"] = io::to_dec(e.y);
        row["is_pair"] = e.is_pair;
        row["value"] = io::to_dec(e.value);
        row["s_part"] = io::to_dec(e.s_part);
        row["ratio_log"] = e.ratio_log;
        rows.push_back(std::move(row));
    }
    Json payload;
    payload["mode"] = o.mode;
    payload["entries"] = std::move(rows);
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

// ---------------------------------------------------------------------------
// decomp
// ---------------------------------------------------------------------------

struct DecompOpts {
    std::string input, out, subspace;
    std::vector<std::string> pool;
    unsigned seed = 0;
};

struct LoadedForm {
    DecomposableForm form;
    Json manifest;
};

LoadedForm load_form(const char* verb, const DecompOpts& o, Json extra = Json::object()) {
    std::string text = io::read_file(o.input);
    Json params = std::move(extra);
    params["input"] = o.input;
    Json manifest = io::make_manifest(std::string("decomp ") + verb, std::move(params),
                                      Json{{o.input, io::fnv1a64_hex(text)}});
    return LoadedForm{io::decomp_from_json(Json::parse(text)), std::move(manifest)};
}

std::vector<std::vector<Rat>> chosen_basis(const DecompOpts& o, unsigned vars) {
    return o.subspace.empty() ? io::standard_basis(vars) : io::parse_basis(o.subspace);
}

Json subsets_json(const std::vector<std::vector<unsigned>>& sets) {
    Json out = Json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

Json edges_json(const std::vector<std::pair<unsigned, unsigned>>& edges) {
    Json out = Json::array();
    for (const auto& [a, b] : edges) out.push_back(Json::array({a, b}));
    return out;
}

void run_decomp_check(const DecompOpts& o) {
    LoadedForm lf = load_form("check", o);
    Json payload;
    payload["valid"] = true;
    payload["factor_count"] = lf.form.factor_count();
    payload["degree"] = lf.form.degree();
    payload["vars"] = lf.form.vars();
    payload["group_order"] = lf.form.group().images.size();
    payload["field_degree"] = lf.form.field().degree();
    payload["irreducibility_certified"] = lf.form.field().irreducibility_certified();
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_graph(const DecompOpts& o) {
    LoadedForm lf = load_form("graph", o, Json{{"subspace", o.subspace}});
    FactorGraph fg = factor_graph(lf.form);
    Json payload;
    payload["edges"] = edges_json(fg.edges);
    payload["component"] = fg.component;
    payload["component_count"] = fg.component_count;
    payload["triangularly_connected"] = fg.triangularly_connected;
    if (!o.subspace.empty()) {
        DependenceGraph dg = dependence_graph(lf.form, io::parse_basis(o.subspace));
        Json dj;
        dj["minimal_dependent_sets"] = subsets_json(dg.minimal_dependent_sets);
        dj["edges"] = edges_json(dg.edges);
        dj["component_count"] = dg.component_count;
        dj["connected"] = dg.connected;
        payload["dependence_graph"] = std::move(dj);
    }
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_conditions(const DecompOpts& o) {
    LoadedForm lf = load_form("conditions", o);
    EffectiveConditions eff = check_effective_conditions(lf.form);
    Json payload;
    payload["full_rank"] = eff.full_rank;
    payload["components_span_last"] = eff.components_span_last;
    payload["component_count"] = eff.component_count;
    payload["finiteness_criterion"] = check_finiteness_condition(lf.form);
    payload["nonvanishing"] = check_nonvanishing(lf.form);
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_qvalues(const DecompOpts& o) {
    LoadedForm lf = load_form("qvalues", o, Json{{"subspace", o.subspace}});
    QValuesResult q = q_values(lf.form, chosen_basis(o, lf.form.vars()));
    Json reports = Json::array();
    for (const SubsetReport& rep : q.reports) {
        Json r;
        r["subset"] = rep.subset;
        r["gal_proper"] = rep.gal_proper;
        r["rank_on_subspace"] = rep.rank_on_subspace;
        r["q"] = rep.q_value ? Json(io::to_frac(*rep.q_value)) : Json(nullptr);
        r["critical"] = rep.critical;
        r["minimal_critical"] = rep.minimal_critical;
        reports.push_back(std::move(r));
    }
    Json payload;
    payload["q_full_set"] = io::to_frac(q.q_full_set);
    payload["q_proper_max"] =
        q.q_proper_max ? Json(io::to_frac(*q.q_proper_max)) : Json(nullptr);
    if (!q.diagnostic.empty()) payload["diagnostic"] = q.diagnostic;
    payload["reports"] = std::move(reports);
    payload["critical_sets"] = subsets_json(q.critical_sets);
    payload["minimal_critical_sets"] = subsets_json(q.minimal_critical_sets);
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_cf(const DecompOpts& o) {
    Json pool_param = Json::array();
    for (const std::string& s : o.pool) pool_param.push_back(s);
    LoadedForm lf = load_form("cf", o, Json{{"pool", std::move(pool_param)}});
    std::vector<std::vector<std::vector<Rat>>> user_pool;
    for (const std::string& s : o.pool) user_pool.push_back(io::parse_basis(s));
    COfFResult c = c_of_F(lf.form, user_pool);
    Json scores = Json::array();
    for (const SubspaceScore& sc : c.scores) {
        Json basis = Json::array();
        for (const auto& row : sc.basis) {
            Json r = Json::array();
            for (const Rat& x : row) r.push_back(io::to_frac(x));
            basis.push_back(std::move(r));
        }
        Json s;
        s["basis"] = std::move(basis);
        s["ratio"] = sc.ratio ? Json(io::to_frac(*sc.ratio)) : Json(nullptr);
        s["witness_subset"] = sc.witness_subset;
        scores.push_back(std::move(s));
    }
    Json payload;
    payload["c_lower"] = io::to_frac(c.value);
    payload["exact"] = c.exact;
    payload["witness_index"] = c.witness_index;
    payload["scores"] = std::move(scores);
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_chain(const DecompOpts& o) {
    LoadedForm lf =
        load_form("chain", o, Json{{"subspace", o.subspace}, {"seed", o.seed}});
    RankChain chain = rank_chain(lf.form, chosen_basis(o, lf.form.vars()), o.seed);
    Json payload;
    payload["sets"] = subsets_json(chain.sets);
    payload["union_ranks"] = chain.union_ranks;
    emit(json_doc(std::move(lf.manifest), std::move(payload)), o.out);
}

void run_decomp_discform(const DecompOpts& o) {
    std::string text = io::read_file(o.input);
    Json manifest = io::make_manifest("decomp discform", Json{{"input", o.input}},
                                      Json{{o.input, io::fnv1a64_hex(text)}});
    Json j = Json::parse(text);
    io::check_schema(j);
    NumberField K = io::field_from_json(io::need(j, "field"));
    AutomorphismGroup group = io::group_from_json(K, io::need(j, "automorphisms"));
    const Json& rows = io::need(j, "images");
    SPARTS_CHECK(rows.is_array() && !rows.empty(),
                 "images must be a non-empty array of embedding rows");
    std::vector<std::vector<FieldElement>> images;
    for (const Json& row : rows) {
        SPARTS_CHECK(row.is_array(), "each embedding row must be an array");
        std::vector<FieldElement> r;
        for (const Json& cell : row) r.push_back(io::element_from_json(K, cell));
        images.push_back(std::move(r));
    }
    DecomposableForm F = discriminant_form(K, group, images);
    Json payload = io::decomp_to_json(F);
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

// ---------------------------------------------------------------------------
// effective
// ---------------------------------------------------------------------------

struct EffectiveOpts {
    std::string primes, f0, input, coeffs, from, to, out;
    unsigned degree = 1;
    double base = 2.0;
    double kappa_exp = 0.5;
    double c5 = 1.0;
    bool chain = false;
    std::int64_t trial_bound = 100000;
};

void run_eff_kappa(const EffectiveOpts& o) {
    Json manifest = io::make_manifest(
        "effective kappa",
        Json{{"primes", o.primes}, {"degree", o.degree}, {"base", o.base}});
    KappaResult k =
        kappa(KappaParams{PrimeSet(io::parse_i64_list(o.primes)), o.degree, o.base});
    Json payload;
    payload["product_form"] = k.product_form;
    payload["simplified_form"] = k.simplified_form;
    payload["max_prime"] = k.max_prime;
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

void run_eff_fit(const EffectiveOpts& o) {
    std::string text = io::read_file(o.input);
    Json manifest =
        io::make_manifest("effective fit", Json{{"input", o.input}, {"kappa", o.kappa_exp}},
                          Json{{o.input, io::fnv1a64_hex(text)}});
    Json j = Json::parse(text);
    io::check_schema(j);
    const Json& values = io::need(j, "values");
    SPARTS_CHECK(values.is_array(), "values must be an array");
    std::vector<std::pair<Int, Int>> sample;
    for (const Json& v : values)
        sample.emplace_back(io::int_from_json(io::need(v, "value")),
                            io::int_from_json(io::need(v, "s_part")));
    SPartFit fit = spart_bound_fit(sample, o.kappa_exp);
    Json payload;
    payload["constant"] = fit.constant;
    payload["empty_sample"] = fit.empty_sample;
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

void run_eff_cor2(const EffectiveOpts& o) {
    Json manifest = io::make_manifest(
        "effective cor2",
        Json{{"f0", o.f0}, {"degree", o.degree}, {"c5", o.c5},
             {"trial_bound", o.trial_bound}});
    Cor2Result r = cor2_check(io::int_from_dec(o.f0), o.degree, o.c5, o.trial_bound);
    Json payload;
    payload["greatest_prime"] = io::to_dec(r.greatest_prime);
    payload["prime_count"] = r.prime_count;
    payload["power_lhs"] = r.power_lhs;
    payload["log_f0"] = r.log_f0;
    payload["power_margin"] = r.power_margin;
    payload["branch"] =
        r.branch == Cor2Branch::root_of_log ? "root_of_log" : "iterated_logs";
    payload["branch_value"] = json_opt_double(r.branch_value);
    payload["branch_margin"] = json_opt_double(r.branch_margin);
    emit(json_doc(std::move(manifest), std::move(payload)), o.out);
}

void run_eff_radical(const EffectiveOpts& o) {
    Json manifest = io::make_manifest(
        "effective radical",
        Json{{"coeffs", o.coeffs}, {"from", o.from}, {"to", o.to},
             {"chain", o.chain}, {"trial_bound", o.trial_bound}});
    RadicalGrowthReport rep =
        radical_growth_report(IntPoly(io::parse_int_list(o.coeffs)),
                              io::int_from_dec(o.from), io::int_from_dec(o.to), o.chain,
                              o.trial_bound);
    std::vector<std::vector<std::string>> rows;
    for (const RadicalRow& r : rep.rows) {
        const char* status = "ok";
        switch (r.status) {
            case RadicalRowStatus::ok: status = "ok"; break;
            case RadicalRowStatus::skipped_small_x: status = "small_x"; break;
            case RadicalRowStatus::skipped_zero_value: status = "zero_value"; break;
            case RadicalRowStatus::skipped_budget: status = "budget"; break;
        }
        bool ok = r.status == RadicalRowStatus::ok;
        rows.push_back({io::to_dec(r.x), io::to_dec(r.value), status,
                        ok ? io::to_dec(r.radical) : "",
                        ok ? std::to_string(r.prime_count) : "",
                        ok ? io::format_double(r.log_radical) : "",
                        ok ? io::format_double(r.log2_x) : "",
                        ok ? io::format_double(r.two_log_ratio) : "",
                        csv_opt_double(r.three_log_comparator),
                        csv_opt_double(r.three_log_ratio),
                        csv_opt_double(r.chain_lhs), csv_opt_double(r.chain_rhs)});
    }
    std::vector<std::string> notes = {
        "two_log_fit=" + (rep.two_log_fit ? io::format_double(*rep.two_log_fit) : "none"),
        "three_log_fit=" +
            (rep.three_log_fit ? io::format_double(*rep.three_log_fit) : "none"),
        "skipped=" + std::to_string(rep.skipped)};
    emit(io::make_csv(io::manifest_hash(manifest), notes,
                      {"x", "value", "status", "radical", "prime_count", "log_radical",
                       "log2_x", "two_log_ratio", "three_log_comparator",
                       "three_log_ratio", "chain_lhs", "chain_rhs"},
                      rows),
         o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact S-part computations for polynomials, binary forms, and "
                 "decomposable forms"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads,
                   "parallelism degree (accepted for compatibility; execution is "
                   "sequential and results are degree-independent)");

    SpartOpts sp;
    CLI::App* spart = app.add_subcommand("spart", "S-part split of one integer");
    spart->add_option("--m", sp.m, "non-zero integer")->required();
    spart->add_option("--primes", sp.primes, "comma-separated primes")->required();
    spart->add_option("--out", sp.out, "output path (default stdout)");
    spart->callback([&] { run_spart(sp); });

    DensityOpts de;
    CLI::App* density = app.add_subcommand("density", "qualifying-value counting");
    density->require_subcommand(1);
    for (bool binary : {false, true}) {
        CLI::App* kind = density->add_subcommand(
            binary ? "binary" : "poly",
            binary ? "binary form F(x, y), box max(|x|,|y|) <= B"
                   : "polynomial f(x), |x| <= B");
        kind->add_option("--coeffs", de.coeffs,
                         binary ? "coefficients of X^n, X^(n-1)Y, ..., Y^n"
                                : "coefficients c0, c1, ... of c0 + c1 x + ...")
            ->required();
        kind->add_option("--primes", de.primes, "comma-separated primes")->required();
        kind->add_option("--eps", de.eps, "exponent u/v of the qualifying condition")
            ->required();
        kind->add_option("--bmax", de.bmax, "largest box bound")->required();
        kind->add_option("--grid", de.grid,
                         "geometric grid points ending at bmax (default 1: single count)");
        kind->add_option("--out", de.out, "output path (default stdout)");
        kind->callback([&de, binary] { run_density(de, binary); });
    }

    HenselOpts he;
    CLI::App* hensel =
        app.add_subcommand("hensel", "root counts modulo prime powers, stabilization");
    hensel->add_option("--coeffs", he.coeffs, "polynomial or form coefficients")
        ->required();
    hensel->add_option("--prime", he.prime, "prime modulus")->required();
    hensel->add_option("--kmax", he.kmax, "largest exponent (default 8)");
    hensel->add_flag("--binary", he.binary, "treat coefficients as a binary form");
    hensel->add_option("--budget", he.budget, "work budget");
    hensel->add_option("--out", he.out, "output path (default stdout)");
    hensel->callback([&] { run_hensel(he); });

    LatticeOpts la;
    CLI::App* lattice =
        app.add_subcommand("lattice", "class-lattice point counts in a region");
    lattice->add_option("--form", la.form, "binary form (default 1,0,1 = X^2+Y^2)");
    lattice->add_option("--x0", la.x0, "anchor x (primitive pair)")->required();
    lattice->add_option("--y0", la.y0, "anchor y (primitive pair)")->required();
    lattice->add_option("--modulus", la.h, "lattice modulus h")->required();
    lattice->add_option("--b", la.b, "box bound B")->required();
    lattice->add_option("--m", la.m, "value bound M")->required();
    lattice->add_flag("--prim", la.prim, "count primitive points only");
    lattice->add_option("--area-tol", la.area_tol, "area integration tolerance");
    lattice->add_option("--budget", la.budget, "enumeration budget for B*h");
    lattice->add_option("--out", la.out, "output path (default stdout)");
    lattice->callback([&] { run_lattice(la); });

    ExtremalOpts ex;
    CLI::App* extremal = app.add_subcommand("extremal", "sequences with large S-parts");
    extremal->add_option("--mode", ex.mode, "hensel | minkowski | split")->required();
    extremal->add_option("--coeffs", ex.coeffs, "polynomial or form coefficients")
        ->required();
    extremal->add_option("--prime", ex.prime, "first prime")->required();
    extremal->add_option("--q", ex.q, "second prime (split mode)");
    extremal->add_option("--pairs", ex.pairs, "exponent pairs k:l,... (split mode)");
    extremal->add_option("--kmax", ex.kmax, "tower height (default 10)");
    extremal->add_option("--budget", ex.budget, "work budget");
    extremal->add_option("--out", ex.out, "output path (default stdout)");
    extremal->callback([&] { run_extremal(ex); });

    DecompOpts dc;
    CLI::App* decomp = app.add_subcommand("decomp", "decomposable-form structure");
    decomp->require_subcommand(1);
    auto add_decomp = [&](const char* name, const char* help, auto fn,
                          bool subspace = false, bool pool = false, bool seed = false) {
        CLI::App* verb = decomp->add_subcommand(name, help);
        verb->add_option("--input", dc.input, "decomposable-form JSON file")->required();
        if (subspace)
            verb->add_option("--subspace", dc.subspace,
                             "basis rows \"a,b;c,d\" (default: the full space)");
        if (pool)
            verb->add_option("--subspace", dc.pool,
                             "extra pool subspace (repeatable, rows \"a,b;c,d\")");
        if (seed) verb->add_option("--seed", dc.seed, "index of the seed factor");
        verb->add_option("--out", dc.out, "output path (default stdout)");
        verb->callback([&dc, fn] { fn(dc); });
    };
    add_decomp("check", "validate a factorization file", run_decomp_check);
    add_decomp("graph", "factor graph (and dependence graph with --subspace)",
               run_decomp_graph, /*subspace=*/true);
    add_decomp("conditions", "effective + finiteness + non-vanishing conditions",
               run_decomp_conditions);
    add_decomp("qvalues", "subset ranks and q-values on a subspace", run_decomp_qvalues,
               /*subspace=*/true);
    add_decomp("cf", "subspace invariant c(F) over the standard pool", run_decomp_cf,
               /*subspace=*/false, /*pool=*/true);
    add_decomp("chain", "rank chain from a seed factor", run_decomp_chain,
               /*subspace=*/true, /*pool=*/false, /*seed=*/true);
    add_decomp("discform", "discriminant form from embedding images", run_decomp_discform);

    EffectiveOpts ef;
    CLI::App* effective = app.add_subcommand("effective", "exponents, fits, reports");
    effective->require_subcommand(1);

    CLI::App* ekappa = effective->add_subcommand("kappa", "exponent formula");
    ekappa->add_option("--primes", ef.primes, "comma-separated primes")->required();
    ekappa->add_option("--degree", ef.degree, "field degree (default 1)");
    ekappa->add_option("--base", ef.base, "base constant > 1 (default 2)");
    ekappa->add_option("--out", ef.out, "output path (default stdout)");
    ekappa->callback([&] { run_eff_kappa(ef); });

    CLI::App* efit = effective->add_subcommand("fit", "smallest bound constant over a sample");
    efit->add_option("--input", ef.input, "JSON file with values[]")->required();
    efit->add_option("--kappa", ef.kappa_exp, "exponent in (0,1) (default 0.5)");
    efit->add_option("--out", ef.out, "output path (default stdout)");
    efit->callback([&] { run_eff_fit(ef); });

    CLI::App* ecor2 = effective->add_subcommand("cor2", "greatest-prime-factor margins");
    ecor2->add_option("--f0", ef.f0, "integer with |F0| >= 3")->required();
    ecor2->add_option("--degree", ef.degree, "field degree (default 1)");
    ecor2->add_option("--c5", ef.c5, "comparator constant (default 1)");
    ecor2->add_option("--trial-bound", ef.trial_bound, "factorization trial bound");
    ecor2->add_option("--out", ef.out, "output path (default stdout)");
    ecor2->callback([&] { run_eff_cor2(ef); });

    CLI::App* erad = effective->add_subcommand("radical", "radical growth table");
    erad->add_option("--coeffs", ef.coeffs, "polynomial coefficients c0, c1, ...")
        ->required();
    erad->add_option("--from", ef.from, "first x")->required();
    erad->add_option("--to", ef.to, "last x")->required();
    erad->add_flag("--chain", ef.chain, "include the intermediate-inequality columns");
    erad->add_option("--trial-bound", ef.trial_bound, "factorization trial bound");
    erad->add_option("--out", ef.out, "output path (default stdout)");
    erad->callback([&] { run_eff_radical(ef); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);  // prints help or the usage error
        return rc == 0 ? 0 : 2;
    } catch (const budget_error& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
