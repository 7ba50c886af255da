// Command-line surface. dispatch() is pure in its arguments: it returns the
// payload (stdout), diagnostics (stderr), and exit code without touching the
// process, which keeps the whole surface unit-testable.
//
// Exit codes: 0 success/affirmative, 1 negative verdict, 2 input error.
#pragma once

#include "aeset/json_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace aeset {

struct CommandResult {
    int exit_code = 0;
    std::string payload;      // JSON document for stdout
    std::string diagnostics;  // human-readable notes for stderr
};

namespace cli_detail {

inline Bipartition parse_bipartition(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos || x == 0 || x + 1 == text.size())
        throw std::invalid_argument("bipartition must look like D1xD2, e.g. 2x3");
    int d1 = 0, d2 = 0;
    try {
        std::size_t used = 0;
        d1 = std::stoi(text.substr(0, x), &used);
        if (used != x) throw std::invalid_argument("");
        std::string rest = text.substr(x + 1);
        d2 = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bipartition must look like D1xD2, e.g. 2x3");
    }
    return Bipartition{d1, d2};
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("malformed JSON in ") + path + ": " + e.what());
    }
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

inline std::vector<Vec> seeded_basis(int d, std::uint64_t seed) {
    Mat u = haar_unitary(d, seed).matrix();
    std::vector<Vec> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) basis.push_back(u.col(c));
    return basis;
}

inline Json image_defects(const Unitary& u, const std::vector<Vec>& states, Bipartition bip) {
    Json out = Json::array();
    for (const Vec& s : states) out.push_back(product_defect(u.apply(s), bip));
    return out;
}

}  // namespace cli_detail

namespace cli_detail {

// The three base-2 polynomials with their isolated real roots, plus the
// merged value set the five-state construction must avoid.
inline CommandResult run_table1(double tol) {
    static constexpr int kPairings[3][4] = {{1, 2, 3, 4}, {1, 3, 2, 4}, {1, 4, 2, 3}};
    Json polys = Json::array();
    bool counts_ok = true;
    for (const auto& idx : kPairings) {
        SparsePoly f = poly_f_pair(2, idx[0], idx[1], idx[2], idx[3]);
        std::vector<RealRoot> roots = real_roots(f, tol);
        Json jp;
        jp["indices"] = std::vector<int>(idx, idx + 4);
        jp["terms"] = to_json(f);
        Json jr = Json::array();
        for (const RealRoot& r : roots) jr.push_back(to_json(r));
        jp["roots"] = std::move(jr);
        jp["root_count"] = roots.size();
        counts_ok = counts_ok && roots.size() == 7;
        polys.push_back(std::move(jp));
    }
    std::vector<double> values = excluded_values(2);
    Json out;
    out["polynomials"] = std::move(polys);
    out["excluded_values"] = values;
    out["union_count"] = values.size();
    bool union_ok = values.size() == 15;
    std::string diag;
    if (!counts_ok) diag += "expected 7 distinct real roots per polynomial\n";
    if (!union_ok) diag += "expected the root union to contain 15 distinct values\n";
    return {(counts_ok && union_ok) ? 0 : 1, render(out), diag};
}

}  // namespace cli_detail

inline CommandResult dispatch(std::vector<std::string> args) {
    using cli_detail::render;

    CLI::App app{"Absolutely entangled state sets: constructions, checks, and falsifier"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "Build candidate state families");
    construct->require_subcommand(1);

    int thm1_d = 0;
    std::vector<double> thm1_a, thm1_b;
    std::uint64_t thm1_seed = 0;
    auto* thm1 = construct->add_subcommand("thm1", "d-state family phi_i = a_i xi_1 + b_i xi_i");
    thm1->add_option("--d", thm1_d, "composite dimension >= 4")->required();
    thm1->add_option("--a", thm1_a, "d-1 comma-separated reals")->required()->delimiter(',');
    thm1->add_option("--b", thm1_b, "d-1 comma-separated reals")->required()->delimiter(',');
    auto* thm1_seed_opt =
        thm1->add_option("--seed", thm1_seed, "use a seeded random orthonormal basis");

    double ex1_x = 0.0;
    auto* ex1 = construct->add_subcommand("ex1", "five-state ladder family in dimension 4");
    ex1->add_option("--x", ex1_x, "ladder parameter in (0,1)")->required();

    int thm2_n = 0, thm2_p = 0;
    double thm2_x = 0.0;
    auto* thm2 = construct->add_subcommand("thm2", "2n+1-state ladder family in dimension 2n");
    thm2->add_option("--n", thm2_n, "half dimension, >= 2")->required();
    thm2->add_option("--p", thm2_p, "ladder base, >= 7")->required();
    thm2->add_option("--x", thm2_x, "ladder parameter in (0,1)")->required();

    // check prop1
    auto* check = app.add_subcommand("check", "Verify necessary conditions");
    check->require_subcommand(1);
    std::string check_input, check_bip;
    double check_tol = kRankTol;
    auto* check_p1 = check->add_subcommand(
        "prop1", "every leave-one-out family must span at least d2+1 dimensions");
    check_p1->add_option("--input", check_input, "state set JSON file")->required();
    check_p1->add_option("--bipartition", check_bip, "D1xD2")->required();
    check_p1->add_option("--tol", check_tol, "numeric rank tolerance");

    // embed prop2
    auto* embed = app.add_subcommand("embed", "Construct product-mapping unitaries");
    embed->require_subcommand(1);
    std::string embed_input, embed_bip;
    auto* embed_p2 = embed->add_subcommand(
        "prop2", "map orthogonal low-rank parts into disjoint product blocks");
    embed_p2->add_option("--input", embed_input, "partitioned set JSON file")->required();
    embed_p2->add_option("--bipartition", embed_bip, "D1xD2")->required();

    // witness prop1
    auto* witness = app.add_subcommand("witness", "Exhibit product mappings from rank defects");
    witness->require_subcommand(1);
    std::string wit_input, wit_bip;
    int wit_index = 0;
    auto* wit_p1 = witness->add_subcommand(
        "prop1", "product mapping when one leave-one-out span has dimension <= d2");
    wit_p1->add_option("--input", wit_input, "state set JSON file")->required();
    wit_p1->add_option("--index", wit_index, "1-based index of the distinguished state")
        ->required();
    wit_p1->add_option("--bipartition", wit_bip, "D1xD2")->required();

    // poly
    auto* poly = app.add_subcommand("poly", "Exact sparse ladder polynomials");
    poly->require_subcommand(1);
    int pair_p = 0;
    std::vector<int> pair_indices;
    bool pair_roots = false;
    auto* poly_pair = poly->add_subcommand("pair", "four-index polynomial f_{ij|kl}");
    poly_pair->add_option("--p", pair_p, "ladder base >= 2")->required();
    poly_pair->add_option("--indices", pair_indices, "I,J,K,L distinct positive")
        ->required()
        ->delimiter(',');
    poly_pair->add_flag("--roots", pair_roots, "also isolate all real roots");

    int gen_p = 0;
    std::vector<int> gen_h, gen_g;
    auto* poly_gen = poly->add_subcommand("general", "block-index generalization");
    poly_gen->set_help_flag("--help", "print usage");  // frees -h for the --h index list
    poly_gen->add_option("--p", gen_p, "ladder base >= 7")->required();
    poly_gen->add_option("--h", gen_h, "first index list")->required()->delimiter(',');
    poly_gen->add_option("--g", gen_g, "second index list")->required()->delimiter(',');

    // table1
    double table_tol = 1e-9;
    auto* table1 = app.add_subcommand("table1", "real roots of the three base-2 polynomials");
    table1->add_option("--tol", table_tol, "root enclosure width");

    // excluded
    int excl_p = 2;
    auto* excluded = app.add_subcommand("excluded", "parameter values the constructions avoid");
    excluded->add_option("--p", excl_p, "ladder base")->required();

    // search
    std::string search_input, search_bip;
    int search_restarts = 0;
    std::uint64_t search_seed = 0;
    double search_tol = 1e-6;
    auto* search =
        app.add_subcommand("search", "multi-start product-mapping search over unitaries");
    search->add_option("--input", search_input, "state set JSON file")->required();
    search->add_option("--bipartition", search_bip, "D1xD2")->required();
    search->add_option("--restarts", search_restarts, "number of random restarts")->required();
    search->add_option("--seed", search_seed, "master seed")->required();
    search->add_option("--tol", search_tol, "objective threshold for a mapping claim");

    // feng
    auto* feng = app.add_subcommand("feng", "canonical form of product bases of C^2 x C^n");
    feng->require_subcommand(1);
    int fgen_n = 0;
    std::vector<int> fgen_partition;
    std::uint64_t fgen_seed = 0;
    auto* feng_gen = feng->add_subcommand("gen", "sample a random basis in canonical form");
    feng_gen->add_option("--n", fgen_n, "B-side dimension")->required();
    feng_gen->add_option("--partition", fgen_partition, "block sizes summing to n")
        ->required()
        ->delimiter(',');
    feng_gen->add_option("--seed", fgen_seed, "sampling seed")->required();

    std::string fdec_input;
    auto* feng_dec = feng->add_subcommand("decompose", "recover block structure from states");
    feng_dec->add_option("--input", fdec_input, "state set JSON file")->required();

    std::string fval_input;
    auto* feng_val = feng->add_subcommand("validate", "check the four block conditions");
    feng_val->add_option("--input", fval_input, "Feng basis JSON file")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        return {0, render(Json{{"usage", app.help()}}), ""};
    } catch (const CLI::CallForAllHelp&) {
        return {0, render(Json{{"usage", app.help("", CLI::AppFormatMode::All)}}), ""};
    } catch (const CLI::ParseError& e) {
        return {2, "", std::string(e.what()) + "\n" + app.help()};
    }

    try {
        if (thm1->parsed()) {
            std::vector<Complex> a(thm1_a.begin(), thm1_a.end());
            std::vector<Complex> b(thm1_b.begin(), thm1_b.end());
            std::vector<Vec> basis;
            if (thm1_seed_opt->count() > 0)
                basis = cli_detail::seeded_basis(thm1_d, thm1_seed);
            StateSet set = theorem1_set({thm1_d, std::move(a), std::move(b), std::move(basis)});
            return {0, render(to_json(set)), ""};
        }
        if (ex1->parsed()) {
            std::vector<std::string> warnings;
            StateSet set = example1_set(ex1_x, {}, &warnings);
            std::string diag;
            for (const std::string& w : warnings) diag += w + "\n";
            return {0, render(to_json(set)), diag};
        }
        if (thm2->parsed()) {
            std::vector<std::string> warnings;
            StateSet set = theorem2_set(thm2_n, thm2_p, thm2_x, {}, &warnings);
            std::string diag;
            for (const std::string& w : warnings) diag += w + "\n";
            return {0, render(to_json(set)), diag};
        }
        if (check_p1->parsed()) {
            StateSet set = state_set_from_json(cli_detail::load_json(check_input));
            Bipartition bip = cli_detail::parse_bipartition(check_bip);
            Prop1Report report = prop1_check(set, bip, check_tol);
            return {report.pass ? 0 : 1, render(to_json(report)), ""};
        }
        if (embed_p2->parsed()) {
            Bipartition bip = cli_detail::parse_bipartition(embed_bip);
            PartitionedSet pset =
                partitioned_set_from_json(cli_detail::load_json(embed_input), bip);
            Unitary u = prop2_embed_unitary(pset);
            std::vector<Vec> all;
            for (const StateSet& part : pset.parts)
                for (const Vec& s : part.states()) all.push_back(s);
            Json out;
            out["unitary"] = to_json(u.matrix());
            out["image_defects"] = cli_detail::image_defects(u, all, bip);
            return {0, render(out), ""};
        }
        if (wit_p1->parsed()) {
            StateSet set = state_set_from_json(cli_detail::load_json(wit_input));
            Bipartition bip = cli_detail::parse_bipartition(wit_bip);
            if (wit_index < 1 || wit_index > set.size())
                throw std::invalid_argument("--index must be between 1 and the set size");
            Unitary u = prop1_witness_unitary(set, wit_index - 1, bip);
            Json out;
            out["unitary"] = to_json(u.matrix());
            out["image_defects"] = cli_detail::image_defects(u, set.states(), bip);
            return {0, render(out), ""};
        }
        if (poly_pair->parsed()) {
            if (pair_indices.size() != 4)
                throw std::invalid_argument("--indices needs exactly four entries");
            SparsePoly f = poly_f_pair(pair_p, pair_indices[0], pair_indices[1], pair_indices[2],
                                       pair_indices[3]);
            Json out;
            out["p"] = pair_p;
            out["indices"] = pair_indices;
            out["terms"] = to_json(f);
            if (pair_roots) {
                Json roots = Json::array();
                for (const RealRoot& r : real_roots(f)) roots.push_back(to_json(r));
                out["roots"] = std::move(roots);
            }
            return {0, render(out), ""};
        }
        if (poly_gen->parsed()) {
            SparsePoly f = poly_f_general({gen_h, gen_g, gen_p});
            Json out;
            out["p"] = gen_p;
            out["h"] = gen_h;
            out["g"] = gen_g;
            out["terms"] = to_json(f);
            return {0, render(out), ""};
        }
        if (table1->parsed()) return cli_detail::run_table1(table_tol);
        if (excluded->parsed()) {
            std::vector<double> values = excluded_values(excl_p);
            Json out;
            out["p"] = excl_p;
            out["values"] = values;
            out["count"] = values.size();
            bool miscount = (excl_p == 2 && values.size() != 15);
            return {miscount ? 1 : 0, render(out),
                    miscount ? "expected 15 distinct excluded values for p = 2\n" : ""};
        }
        if (search->parsed()) {
            StateSet set = state_set_from_json(cli_detail::load_json(search_input));
            Bipartition bip = cli_detail::parse_bipartition(search_bip);
            SearchConfig cfg;
            cfg.restarts = search_restarts;
            cfg.seed = search_seed;
            cfg.objective_tol = search_tol;
            SearchReport report = minimize_over_unitaries(set, bip, cfg);
            bool found = report.verdict == Verdict::ProductMappingFound;
            return {found ? 0 : 1, render(to_json(report)), ""};
        }
        if (feng_gen->parsed()) {
            FengBasis fb = feng_generate(fgen_n, fgen_partition, fgen_seed);
            return {0, render(to_json(fb)), ""};
        }
        if (feng_dec->parsed()) {
            StateSet set = state_set_from_json(cli_detail::load_json(fdec_input));
            FengBasis fb = feng_decompose(set.states());
            Json out;
            out["basis"] = to_json(fb);
            out["partition"] = fb.partition();
            return {0, render(out), ""};
        }
        if (feng_val->parsed()) {
            FengBasis fb = feng_basis_from_json(cli_detail::load_json(fval_input));
            FengReport report = feng_validate(fb);
            return {report.pass() ? 0 : 1, render(to_json(report)), ""};
        }
    } catch (const std::exception& e) {
        return {2, "", std::string(e.what()) + "\n"};
    }
    return {2, "", "no subcommand selected\n" + app.help()};
}

}  // namespace aeset
