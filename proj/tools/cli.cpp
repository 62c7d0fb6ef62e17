#include "cfcolor/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "cfcolor/cayley.hpp"
#include "cfcolor/cf.hpp"
#include "cfcolor/errors.hpp"
#include "cfcolor/kernels.hpp"
#include "cfcolor/lacunary.hpp"
#include "cfcolor/padic_projective.hpp"
#include "cfcolor/witness.hpp"

namespace cfcolor {

namespace {

using Json = nlohmann::ordered_json;

enum class Format { Text, Csv, Json };

Int parse_int(const std::string& name, const std::string& text) {
    Int v;
    if (text.empty() || v.set_str(text, 10) != 0) {
        throw PreconditionError("--" + name + " expects an integer, got '" + text + "'");
    }
    return v;
}

struct SurdArgs {
    std::string P = "0";
    std::string D = "0";
    std::string Q = "1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--P", P, "P in (P + sqrt(D))/Q")->required();
        cmd->add_option("--D", D, "D >= 0")->required();
        cmd->add_option("--Q", Q, "Q != 0")->default_val("1");
    }

    Surd value() const {
        Int d = parse_int("D", D);
        Int q = parse_int("Q", Q);
        require(d >= 0, "--D must be non-negative, got " + d.get_str());
        require(q != 0, "--Q must be nonzero");
        return Surd(parse_int("P", P), d, q);
    }
};

std::vector<Int> parse_list(const std::string& name, const std::vector<std::string>& items) {
    std::vector<Int> out;
    for (const auto& s : items) out.push_back(parse_int(name, s));
    return out;
}

Json digits_json(const std::vector<Int>& v) {
    Json arr = Json::array();
    for (const auto& d : v) arr.push_back(d.get_str());
    return arr;
}

Json enclosure_json(const Enclosure& e) { return Json::array({e.lo_str(), e.hi_str()}); }

std::string enclosure_text(const Enclosure& e) { return "[" + e.lo_str() + ", " + e.hi_str() + "]"; }

Rat parse_rat(const std::string& name, const std::string& text) {
    try {
        return Rat::parse(text);
    } catch (const PreconditionError&) {
        throw PreconditionError("--" + name + " expects a rational a or a/b, got '" + text + "'");
    }
}

// ---------------------------------------------------------------- handlers

void cmd_cf_expand(std::ostream& os, Format fmt, const Surd& x) {
    CFExpansion cf = cf_expand(x);
    ensure(cf_value(cf) == x, "expansion does not reproduce its input");
    switch (fmt) {
        case Format::Text:
            os << cf.str() << '\n';
            break;
        case Format::Csv:
            os << "part,index,digit\n";
            for (std::size_t i = 0; i < cf.r(); ++i) os << "preperiod," << i + 1 << ',' << cf.preperiod()[i].get_str() << '\n';
            for (std::size_t i = 0; i < cf.s(); ++i) os << "period," << i + 1 << ',' << cf.period()[i].get_str() << '\n';
            break;
        case Format::Json: {
            Json j;
            j["preperiod"] = digits_json(cf.preperiod());
            j["period"] = digits_json(cf.period());
            os << j.dump() << '\n';
            break;
        }
    }
}

void cmd_convergents(std::ostream& os, Format fmt, const Surd& x, std::size_t kmax) {
    CFExpansion cf = cf_expand(x);
    auto conv = convergents(cf, kmax);
    for (const auto& c : conv) ensure(check_quality(x, cf, c.k), "convergent misses |x - p/q| <= 1/(q q')");
    if (fmt == Format::Csv) os << "k,p,q\n";
    Json arr = Json::array();
    for (const auto& c : conv) {
        if (fmt == Format::Text) os << c.k << ' ' << c.p.get_str() << ' ' << c.q.get_str() << '\n';
        if (fmt == Format::Csv) os << c.k << ',' << c.p.get_str() << ',' << c.q.get_str() << '\n';
        if (fmt == Format::Json) arr.push_back({{"k", c.k}, {"p", c.p.get_str()}, {"q", c.q.get_str()}});
    }
    if (fmt == Format::Json) os << arr.dump() << '\n';
}

void cmd_lacunary_params(std::ostream& os, Format fmt, const Rat& lambda) {
    auto params = choose_params(lambda);
    switch (fmt) {
        case Format::Text:
            os << "K=" << params.K << " delta=" << params.delta.fraction_str() << " N=" << params.N.get_str() << '\n';
            break;
        case Format::Csv:
            os << "lambda,K,delta,N\n"
               << lambda.fraction_str() << ',' << params.K << ',' << params.delta.fraction_str() << ','
               << params.N.get_str() << '\n';
            break;
        case Format::Json: {
            Json j;
            j["lambda"] = lambda.fraction_str();
            j["K"] = params.K;
            j["delta"] = params.delta.fraction_str();
            j["N"] = params.N.get_str();
            os << j.dump() << '\n';
            break;
        }
    }
}

void cmd_lacunary_construct(std::ostream& os, Format fmt, const LacunarySeq& raw, std::size_t stages) {
    LacunarySeq seq = densify(raw);
    auto params = choose_params(seq.lambda());
    Construction c = construct(seq, params, stages);
    Rat mid = c.interval.midpoint();
    ensure(verify_avoidance(mid, seq, c.covered, params.N), "midpoint fails ||n_k x|| > 1/N");

    switch (fmt) {
        case Format::Text:
            os << "terms " << seq.size() << " after densifying, K=" << params.K
               << " delta=" << params.delta.fraction_str() << " N=" << params.N.get_str() << '\n'
               << "covered k <= " << c.covered << '\n'
               << "interval (" << c.interval.lo.fraction_str() << ", " << c.interval.hi.fraction_str() << ")\n"
               << "midpoint " << mid.fraction_str() << '\n';
            break;
        case Format::Csv:
            write_trace_csv(os, c);
            break;
        case Format::Json: {
            write_trace_jsonl(os, c);
            Json j;
            j["terms"] = digits_json(seq.terms());
            j["K"] = params.K;
            j["delta"] = params.delta.fraction_str();
            j["N"] = params.N.get_str();
            j["covered"] = c.covered;
            j["interval"] = Json::array({c.interval.lo.fraction_str(), c.interval.hi.fraction_str()});
            j["midpoint"] = mid.fraction_str();
            os << Json{{"result", j}}.dump() << '\n';
            break;
        }
    }
}

void cmd_cayley_chi(std::ostream& os, Format fmt, const GenSet& gens, std::size_t M, const Int& first,
                    std::uint64_t budget) {
    auto g = window_graph(gens, M, first);
    int chi = chromatic_number(g, budget);
    int clique = clique_lower_bound(gens, M);
    ensure(clique <= chi, "clique larger than the chromatic number");
    switch (fmt) {
        case Format::Text:
            os << chi << '\n';
            break;
        case Format::Csv:
            os << "vertices,edges,chi,clique\n" << g.size << ',' << g.edges.size() << ',' << chi << ',' << clique << '\n';
            break;
        case Format::Json:
            os << Json{{"vertices", g.size}, {"edges", g.edges.size()}, {"chi", chi}, {"clique", clique}}.dump()
               << '\n';
            break;
    }
}

void cmd_cayley_color(std::ostream& os, Format fmt, const GenSet& gens, const Surd& alpha, const Int& N,
                      std::size_t M, const Int& first, bool edges) {
    Coloring c = rotation_coloring(gens, alpha, N, M, first);
    auto g = window_graph(gens, M, first);
    ensure(c.verified && is_proper(g, c), "rotation coloring is not proper");
    if (fmt == Format::Text) {
        if (edges) write_edge_list(os, g);
        else write_coloring(os, c);
        return;
    }
    if (fmt == Format::Csv) {
        if (edges) {
            os << "u,v\n";
            for (auto [u, v] : g.edges) os << g.label(u).get_str() << ',' << g.label(v).get_str() << '\n';
        } else {
            os << "vertex,color\n";
            for (std::size_t i = 0; i < c.colors.size(); ++i) os << g.label(i).get_str() << ',' << c.colors[i] << '\n';
        }
        return;
    }
    Json j;
    j["first"] = first.get_str();
    j["num_colors"] = c.num_colors;
    if (edges) {
        Json arr = Json::array();
        for (auto [u, v] : g.edges) arr.push_back({g.label(u).get_str(), g.label(v).get_str()});
        j["edges"] = arr;
    } else {
        j["colors"] = c.colors;
    }
    os << j.dump() << '\n';
}

void cmd_dirichlet(std::ostream& os, Format fmt, const Surd& alpha, const Int& M) {
    auto w = dirichlet_witness(alpha, M);
    ensure(cmp_surd_rat(w.value, Rat(Int(1), M)) != std::strong_ordering::greater, "Dirichlet witness too far");
    Enclosure v = Enclosure::of(w.value);
    switch (fmt) {
        case Format::Text:
            os << "m=" << w.m.get_str() << " ||m alpha||=" << w.value.str() << ' ' << enclosure_text(v) << '\n';
            break;
        case Format::Csv:
            os << "M,m,value,value_lo,value_hi\n"
               << M.get_str() << ',' << w.m.get_str() << ',' << w.value.str() << ',' << v.lo_str() << ','
               << v.hi_str() << '\n';
            break;
        case Format::Json:
            os << Json{{"M", M.get_str()}, {"m", w.m.get_str()}, {"value", w.value.str()},
                       {"enclosure", enclosure_json(v)}}.dump()
               << '\n';
            break;
    }
}

std::vector<PrimitiveVector> random_points(std::size_t count, std::uint64_t seed, long bound) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<long> coord(-bound, bound);
    std::vector<PrimitiveVector> out;
    out.reserve(count);
    while (out.size() < count) {
        Int a = coord(gen), b = coord(gen), g;
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (g == 1) out.emplace_back(a, b);
    }
    return out;
}

void cmd_padic_cover(std::ostream& os, Format fmt, const Int& p, std::uint64_t N, std::size_t samples,
                     std::uint64_t seed, long bound) {
    CoverSpec cover = build_cover(p, N);
    const Int pk = ipow(p, cover.k);
    const Int expected = cover.k == 0 ? Int(1) : Int(pk + pk / p);
    ensure(Int(cover.centers.size()) == expected, "cover size differs from p^k + p^(k-1)");
    ensure(Int(cover.centers.size()) <= 2 * pk && 2 * pk < 2 * p * Int(N), "cover exceeds 2p^k < 2pN");

    CoverCheck check;
    if (samples > 0) {
        require(bound >= 1, "--bound must be positive");
        auto pts = random_points(samples, seed, bound);
        int threads = threads_from_env();
        check = threads > 1 ? cover_check_parallel(cover, pts, threads) : cover_check_serial(cover, pts);
        ensure(check.failures == 0 && check.outside == 0, "a sample point is not covered");
    }

    switch (fmt) {
        case Format::Text:
            write_cover(os, cover);
            if (samples > 0) os << "# checked=" << check.checked << " uncovered=0\n";
            break;
        case Format::Csv:
            os << "n1,n2\n";
            for (const auto& c : cover.centers) os << c.n1().get_str() << ',' << c.n2().get_str() << '\n';
            break;
        case Format::Json: {
            Json j;
            j["p"] = p.get_str();
            j["N"] = N;
            j["k"] = cover.k;
            j["count"] = cover.centers.size();
            Json arr = Json::array();
            for (const auto& c : cover.centers) arr.push_back({c.n1().get_str(), c.n2().get_str()});
            j["centers"] = arr;
            if (samples > 0) j["checked"] = check.checked;
            os << j.dump() << '\n';
            break;
        }
    }
}

void cmd_witness_sweep(std::ostream& os, Format fmt, const Surd& alpha, const Int& p, std::uint64_t Nmax) {
    CFExpansion cf = cf_expand(alpha);
    auto summary = liminf_certificate(alpha, cf, p, Nmax, threads_from_env());
    ensure(complete_subgraph_check(build_period_matrices(cf), std::min<std::uint64_t>(Nmax, 64)),
           "B^-1 A^i B do not form a complete graph");
    ensure(summary.holds, "max n|n|_p||n alpha|| log n exceeds 8 b^2 p log C");

    switch (fmt) {
        case Format::Csv:
            write_sweep_csv_header(os);
            for (const auto& rec : summary.records) write_sweep_csv_row(os, rec);
            break;
        case Format::Json: {
            for (const auto& rec : summary.records) write_witness_jsonl(os, rec);
            Json s;
            s["records"] = summary.records.size();
            Json skipped = Json::array();
            for (auto N : summary.skipped) skipped.push_back(N);
            s["skipped"] = skipped;
            if (summary.max_product_log) s["maxProductLog"] = enclosure_json(*summary.max_product_log);
            s["bound"] = enclosure_json(summary.bound);
            s["holds"] = summary.holds;
            os << Json{{"summary", s}}.dump() << '\n';
            break;
        }
        case Format::Text: {
            os << cf.str() << " p=" << p.get_str() << '\n';
            for (const auto& rec : summary.records) {
                rec.validate();
                os << "N=" << rec.N << " i=" << rec.i << " nN=" << rec.n_N.get_str()
                   << " |nN|_p=" << rec.padic.value().str() << " product=" << enclosure_text(rec.product_enc)
                   << " productLog=" << enclosure_text(rec.product_log) << '\n';
            }
            for (auto N : summary.skipped) os << "N=" << N << " skipped (nN = 0)\n";
            if (summary.max_product_log) os << "max productLog " << enclosure_text(*summary.max_product_log) << '\n';
            os << "bound 8 b^2 p log C " << enclosure_text(summary.bound) << '\n';
            break;
        }
    }
}

void cmd_brute_inf(std::ostream& os, Format fmt, const Surd& alpha, const Int& p, std::uint64_t nmax,
                   bool weighted) {
    auto r = brute_force_inf(alpha, p, nmax, weighted, threads_from_env());
    switch (fmt) {
        case Format::Text:
            os << "n=" << r.n.get_str() << " value=" << enclosure_text(r.value) << '\n';
            break;
        case Format::Csv:
            os << "nmax,weighted,n,value_lo,value_hi\n"
               << nmax << ',' << (weighted ? 1 : 0) << ',' << r.n.get_str() << ',' << r.value.lo_str() << ','
               << r.value.hi_str() << '\n';
            break;
        case Format::Json:
            os << Json{{"nmax", nmax}, {"weighted", weighted}, {"n", r.n.get_str()},
                       {"product", r.product.str()}, {"value", enclosure_json(r.value)}}.dump()
               << '\n';
            break;
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact continued fractions, Cayley-graph colorings and p-adic Littlewood witnesses"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string output;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "json | csv | text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->default_val("text");
        cmd->add_option("--output", output, "write results here instead of stdout");
    };

    SurdArgs surd;
    std::string prime = "2", lambda = "2", first = "0", modulus = "1", colors = "1";
    std::size_t kmax = 10, stages = 1, window = 12, samples = 0;
    std::uint64_t Nmax = 1024, nmax = 1000, cover_N = 1, seed = 1, budget = kDefaultColoringBudget;
    std::uint64_t power_base = 0, count = 0;
    long bound = 1000000;
    bool weighted = false, edges = false;
    std::vector<std::string> terms, gens;

    auto* cf_cmd = app.add_subcommand("cf-expand", "continued fraction of a surd in (0,1)");
    surd.attach(cf_cmd);
    add_common(cf_cmd);

    auto* conv_cmd = app.add_subcommand("convergents", "convergents p_k/q_k, k = 1..kmax");
    surd.attach(conv_cmd);
    conv_cmd->add_option("--kmax", kmax)->default_val("10");
    add_common(conv_cmd);

    auto* lp_cmd = app.add_subcommand("lacunary-params", "K, delta and N for a lacunarity constant");
    lp_cmd->add_option("--lambda", lambda, "rational > 1, e.g. 3/2")->required();
    add_common(lp_cmd);

    auto* lc_cmd = app.add_subcommand("lacunary-construct", "nested-interval certificate");
    lc_cmd->add_option("--lambda", lambda, "rational > 1")->required();
    auto* terms_opt = lc_cmd->add_option("--terms", terms, "comma-separated n_1, n_2, ...")->delimiter(',');
    auto* base_opt = lc_cmd->add_option("--power-base", power_base, "use n_k = base^k");
    lc_cmd->add_option("--count", count, "number of terms with --power-base")->needs(base_opt);
    terms_opt->excludes(base_opt);
    lc_cmd->add_option("--stages", stages, "refinement stages, each covering K more terms")->default_val("1");
    add_common(lc_cmd);

    auto* chi_cmd = app.add_subcommand("cayley-chi", "exact chromatic number of a window");
    chi_cmd->add_option("--gens", gens, "comma-separated generators")->delimiter(',')->required();
    chi_cmd->add_option("--window", window, "vertices first..first+window")->default_val("12");
    chi_cmd->add_option("--first", first)->default_val("0");
    chi_cmd->add_option("--budget", budget, "search node budget");
    add_common(chi_cmd);

    auto* color_cmd = app.add_subcommand("cayley-color", "rotation coloring m -> floor(N frac(m alpha)) + 1");
    color_cmd->add_option("--gens", gens)->delimiter(',')->required();
    surd.attach(color_cmd);
    color_cmd->add_option("--N", colors, "number of colors")->required();
    color_cmd->add_option("--window", window)->default_val("12");
    color_cmd->add_option("--first", first)->default_val("0");
    color_cmd->add_flag("--edges", edges, "emit the window's edge list instead");
    add_common(color_cmd);

    auto* dir_cmd = app.add_subcommand("dirichlet", "smallest m <= M with ||m alpha|| <= 1/M");
    surd.attach(dir_cmd);
    dir_cmd->add_option("--M", modulus, "search bound, M >= 1")->required();
    add_common(dir_cmd);

    auto* cover_cmd = app.add_subcommand("padic-cover", "ball centers covering the projective line at scale N");
    cover_cmd->add_option("--p", prime, "prime")->required();
    cover_cmd->add_option("--N", cover_N)->required();
    cover_cmd->add_option("--check-points", samples, "verify this many random points");
    cover_cmd->add_option("--seed", seed)->default_val("1");
    cover_cmd->add_option("--bound", bound, "coordinate bound for random points");
    add_common(cover_cmd);

    auto* sweep_cmd = app.add_subcommand("witness-sweep", "witnesses n_N for N = 2, 4, ..., Nmax");
    surd.attach(sweep_cmd);
    sweep_cmd->add_option("--p", prime, "prime")->required();
    sweep_cmd->add_option("--Nmax", Nmax, "largest N in the sweep")->default_val("1024");
    add_common(sweep_cmd);

    auto* bf_cmd = app.add_subcommand("brute-inf", "minimum of n |n|_p ||n alpha|| over n <= nmax");
    surd.attach(bf_cmd);
    bf_cmd->add_option("--p", prime, "prime")->required();
    bf_cmd->add_option("--nmax", nmax)->default_val("1000");
    bf_cmd->add_flag("--weighted", weighted, "multiply by log n");
    add_common(bf_cmd);

    std::vector<std::string> argv_store{"cfcolor"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    const Format fmt = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;

    try {
        std::ostringstream buf;
        if (cf_cmd->parsed()) {
            cmd_cf_expand(buf, fmt, surd.value());
        } else if (conv_cmd->parsed()) {
            cmd_convergents(buf, fmt, surd.value(), kmax);
        } else if (lp_cmd->parsed()) {
            cmd_lacunary_params(buf, fmt, parse_rat("lambda", lambda));
        } else if (lc_cmd->parsed()) {
            Rat lam = parse_rat("lambda", lambda);
            if (power_base > 0) {
                require(count >= 1, "--power-base needs --count");
                Int b(static_cast<unsigned long>(power_base));
                auto seq = LacunarySeq::from_generator([&](std::size_t k) { return ipow(b, k); }, count, lam);
                cmd_lacunary_construct(buf, fmt, seq, stages);
            } else {
                require(!terms.empty(), "give --terms or --power-base");
                cmd_lacunary_construct(buf, fmt, LacunarySeq(parse_list("terms", terms), lam), stages);
            }
        } else if (chi_cmd->parsed()) {
            cmd_cayley_chi(buf, fmt, GenSet(parse_list("gens", gens)), window, parse_int("first", first), budget);
        } else if (color_cmd->parsed()) {
            cmd_cayley_color(buf, fmt, GenSet(parse_list("gens", gens)), surd.value(), parse_int("N", colors),
                             window, parse_int("first", first), edges);
        } else if (dir_cmd->parsed()) {
            cmd_dirichlet(buf, fmt, surd.value(), parse_int("M", modulus));
        } else if (cover_cmd->parsed()) {
            cmd_padic_cover(buf, fmt, parse_int("p", prime), cover_N, samples, seed, bound);
        } else if (sweep_cmd->parsed()) {
            cmd_witness_sweep(buf, fmt, surd.value(), parse_int("p", prime), Nmax);
        } else if (bf_cmd->parsed()) {
            cmd_brute_inf(buf, fmt, surd.value(), parse_int("p", prime), nmax, weighted);
        }

        // Nothing is written until every record has passed its checks.
        if (output.empty()) {
            out << buf.str();
        } else {
            std::ofstream file(output, std::ios::binary);
            require(static_cast<bool>(file), "cannot open --output " + output);
            file << buf.str();
            require(static_cast<bool>(file), "failed writing --output " + output);
        }
        return 0;
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << '\n';
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace cfcolor
