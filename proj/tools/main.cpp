#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "takagi/expectation.hpp"
#include "takagi/levelsets.hpp"

using json = nlohmann::ordered_json;
using namespace takagi;

namespace {

struct OutputOpts {
    std::string format; // "json", "csv" or "text"
    std::string path;   // empty = stdout
    bool as_float = false;
};

std::string fmt_q(const Rational& q, bool as_float) {
    if (!as_float) return q.get_str();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", q.get_d());
    return buf;
}

void emit(const OutputOpts& opts, const std::string& text) {
    if (opts.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.path);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.path);
    out << text;
}

void emit_json(const OutputOpts& opts, const json& j) {
    emit(opts, j.dump(2) + "\n");
}

int require_even(int r) {
    if (r < 2 || r % 2 != 0)
        throw CLI::ValidationError("--r", "base must be an even integer >= 2");
    return r;
}

// ---------------------------------------------------------------- eval

int cmd_eval(int r, const std::string& xstr, int depth, const OutputOpts& opts) {
    require_even(r);
    const Rational x = parse_rational(xstr);
    if (x < 0 || x > 1) throw CLI::ValidationError("--x", "x must lie in [0, 1]");

    bool radic_input = true;
    RAdic xr;
    try {
        xr = RAdic::from_rational(r, x);
    } catch (const std::invalid_argument&) {
        radic_input = false;
    }

    if (radic_input) {
        const Rational v = eval_exact(xr);
        if (opts.format == "json") {
            emit_json(opts,
                      json{{"r", r}, {"x", fmt_q(x, false)}, {"exact", fmt_q(v, opts.as_float)}});
        } else {
            emit(opts, fmt_q(v, opts.as_float) + "\n");
        }
        return 0;
    }
    const Rational partial = eval_partial(x, depth, r);
    const Rational bound = partial_tail_bound(depth, r);
    if (opts.format == "json") {
        emit_json(opts, json{{"r", r},
                             {"x", fmt_q(x, false)},
                             {"depth", depth},
                             {"partial", fmt_q(partial, opts.as_float)},
                             {"tail_bound", fmt_q(bound, opts.as_float)}});
    } else {
        emit(opts, "partial=" + fmt_q(partial, opts.as_float) +
                       " tail_bound=" + fmt_q(bound, opts.as_float) + "\n");
    }
    return 0;
}

// ---------------------------------------------------------- graph-data

int cmd_graph_data(int r, int depth, int humps_order, const OutputOpts& opts) {
    require_even(r);
    if (depth < 0 || pow_int(r, static_cast<unsigned long>(std::max(depth, 0))) > (Int(1) << 20))
        throw CLI::ValidationError("--depth", "grid too large (cap r^depth <= 2^20)");

    const Int total = pow_int(r, static_cast<unsigned long>(depth));
    std::vector<Hump> humps;
    if (humps_order >= 0)
        for (int m = 0; m <= humps_order; ++m)
            for (const RAdic& x0 : enumerate_balanced(r, m))
                humps.push_back(make_hump(x0));

    if (opts.format == "json") {
        json points = json::array();
        for (Int j = 0; j <= total; ++j) {
            const RAdic x(r, j, depth);
            points.push_back(
                {fmt_q(x.value(), opts.as_float), fmt_q(eval_exact(x), opts.as_float)});
        }
        json hj = json::array();
        for (const Hump& h : humps)
            hj.push_back({{"order", h.order},
                          {"generation", h.generation},
                          {"leading", h.leading},
                          {"x_lo", fmt_q(h.x_lo, opts.as_float)},
                          {"x_hi", fmt_q(h.x_hi, opts.as_float)},
                          {"y_lo", fmt_q(h.y_interval.lo, opts.as_float)},
                          {"y_hi", fmt_q(h.y_interval.hi, opts.as_float)}});
        json out{{"r", r}, {"depth", depth}, {"points", points}};
        if (humps_order >= 0) out["humps"] = hj;
        emit_json(opts, out);
        return 0;
    }

    std::string csv = "x,y\n";
    for (Int j = 0; j <= total; ++j) {
        const RAdic x(r, j, depth);
        csv += fmt_q(x.value(), opts.as_float) + "," + fmt_q(eval_exact(x), opts.as_float) + "\n";
    }
    if (humps_order >= 0) {
        csv += "\nx_lo,x_hi,y_lo,y_hi,order,generation,leading\n";
        for (const Hump& h : humps)
            csv += fmt_q(h.x_lo, opts.as_float) + "," + fmt_q(h.x_hi, opts.as_float) + "," +
                   fmt_q(h.y_interval.lo, opts.as_float) + "," +
                   fmt_q(h.y_interval.hi, opts.as_float) + "," + std::to_string(h.order) + "," +
                   std::to_string(h.generation) + "," + (h.leading ? "1" : "0") + "\n";
    }
    emit(opts, csv);
    return 0;
}

// -------------------------------------------------------------- census

int cmd_census(int r, int order, const OutputOpts& opts) {
    require_even(r);
    if (order < 0 || order > 512)
        throw CLI::ValidationError("--order", "order outside [0, 512]");

    if (opts.format == "json") {
        json rows = json::array();
        for (int m = 0; m <= order; ++m) {
            const Census c = census(r, m);
            for (const CensusRow& row : c.rows)
                rows.push_back({{"r", row.r},
                                {"m", row.m},
                                {"n", row.n},
                                {"count_leading", row.count.get_str()},
                                {"count_humps_total", c.total_humps.get_str()}});
        }
        emit_json(opts, json{{"r", r}, {"max_order", order}, {"rows", rows}});
        return 0;
    }
    std::string csv = "r,m,n,count_leading,count_humps_total\n";
    for (int m = 0; m <= order; ++m) {
        const Census c = census(r, m);
        for (const CensusRow& row : c.rows)
            csv += std::to_string(row.r) + "," + std::to_string(row.m) + "," +
                   std::to_string(row.n) + "," + row.count.get_str() + "," +
                   c.total_humps.get_str() + "\n";
    }
    emit(opts, csv);
    return 0;
}

// ------------------------------------------------------------ levelset

int cmd_levelset(int r, const std::string& ystr, int depth, const OutputOpts& opts) {
    require_even(r);
    if (depth < 0 || depth > 24) throw CLI::ValidationError("--depth", "depth outside [0, 24]");
    const Rational y = parse_rational(ystr);
    const LevelSetReport rep = solve_level_set(r, y, depth);
    const Int den = pow_int(r, static_cast<unsigned long>(depth));

    if (opts.format == "csv") {
        std::string csv = "cell_num,cell_den\n";
        for (const Int& j : rep.cells) csv += j.get_str() + "," + den.get_str() + "\n";
        emit(opts, csv);
        return 0;
    }
    json cells = json::array();
    for (const Int& j : rep.cells) cells.push_back({j.get_str(), den.get_str()});
    emit_json(opts, json{{"y", fmt_q(rep.y, opts.as_float)},
                         {"r", rep.r},
                         {"depth", rep.depth},
                         {"cells", cells},
                         {"components", rep.components},
                         {"certified_empty", rep.certified_empty}});
    return 0;
}

// ---------------------------------------------------------------- nloc

int cmd_nloc(int r, const std::string& ystr, int max_order, const OutputOpts& opts) {
    require_even(r);
    if (max_order < 0 || max_order > 16)
        throw CLI::ValidationError("--M", "truncation order outside [0, 16]");
    const Rational y = parse_rational(ystr);
    const NLocReport rep = n_loc_truncated(r, y, max_order);

    if (opts.format == "csv") {
        std::string csv = "x0,order,generation,trunc_lo,trunc_hi\n";
        for (const Hump& h : rep.contributing)
            csv += fmt_q(h.x_lo, opts.as_float) + "," + std::to_string(h.order) + "," +
                   std::to_string(h.generation) + "," + fmt_q(h.trunc_y.lo, opts.as_float) + "," +
                   fmt_q(h.trunc_y.hi, opts.as_float) + "\n";
        emit(opts, csv);
        return 0;
    }
    json contributing = json::array();
    for (const Hump& h : rep.contributing)
        contributing.push_back({{"x0", fmt_q(h.x_lo, opts.as_float)},
                                {"order", h.order},
                                {"generation", h.generation},
                                {"trunc_lo", fmt_q(h.trunc_y.lo, opts.as_float)},
                                {"trunc_hi", fmt_q(h.trunc_y.hi, opts.as_float)},
                                {"prob", fmt_q(h.prob, opts.as_float)}});
    emit_json(opts, json{{"y", fmt_q(rep.y, opts.as_float)},
                         {"r", rep.r},
                         {"max_order", rep.max_order},
                         {"count", rep.count},
                         {"contributing", contributing}});
    return 0;
}

// -------------------------------------------------------------- series

int cmd_series(int r, int M, const OutputOpts& opts) {
    require_even(r);
    if (M < 0 || M > 100000) throw CLI::ValidationError("--M", "M outside [0, 100000]");

    if (opts.format == "csv") {
        // convergence trace at power-of-two checkpoints
        std::string csv = "M,partial,tail_bound\n";
        int cp = 0;
        while (true) {
            const int point = std::min(cp, M);
            const SeriesReport rep = expected_nloc_series(r, point);
            csv += std::to_string(point) + "," + fmt_q(rep.partial, opts.as_float) + "," +
                   fmt_q(rep.tail_bound, opts.as_float) + "\n";
            if (point == M) break;
            cp = cp == 0 ? 1 : cp * 2;
        }
        emit(opts, csv);
        return 0;
    }
    const SeriesReport rep = expected_nloc_series(r, M);
    emit_json(opts, json{{"r", rep.r},
                         {"M", rep.M},
                         {"partial", fmt_q(rep.partial, opts.as_float)},
                         {"closed_form", fmt_q(rep.closed_form, opts.as_float)},
                         {"tail_bound", fmt_q(rep.tail_bound, opts.as_float)}});
    return 0;
}

// ------------------------------------------------------------------ mc

int cmd_mc(int r, int M, long samples, std::uint64_t seed, const OutputOpts& opts) {
    require_even(r);
    if (M < 0 || M > 16) throw CLI::ValidationError("--M", "truncation order outside [0, 16]");
    if (samples < 1 || samples > 100000000)
        throw CLI::ValidationError("--samples", "samples outside [1, 1e8]");
    const MCReport rep = monte_carlo_nloc(r, M, samples, seed);
    emit_json(opts, json{{"r", rep.r},
                         {"M", rep.M},
                         {"samples", rep.samples},
                         {"seed", rep.seed},
                         {"mean", rep.mean},
                         {"std_error", rep.std_error},
                         {"exact_truncated_mean", fmt_q(rep.exact_truncated_mean, opts.as_float)}});
    return 0;
}

// -------------------------------------------------------------- verify

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

void check_identities(std::vector<Check>& out, int r, long trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(r));
    auto rand_radic = [&](int max_depth) {
        const int n = static_cast<int>(rng() % static_cast<unsigned>(max_depth + 1));
        return RAdic(r, Int(static_cast<unsigned long>(rng())) % (pow_int(r, n) + 1), n);
    };

    long bad_sym = 0, bad_aff = 0, bad_flip = 0, bad_equiv = 0;
    for (long t = 0; t < trials; ++t) {
        const RAdic x = rand_radic(10);
        const RAdic mirror(r, pow_int(r, x.depth()) - x.numerator(), x.depth());
        if (eval_exact(x) != eval_exact(mirror)) ++bad_sym;
    }
    for (long t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const Int k = Int(static_cast<unsigned long>(rng())) % pow_int(r, n);
        const int ud = static_cast<int>(rng() % 6);
        const Int unum = Int(static_cast<unsigned long>(rng())) % (pow_int(r, ud) + 1);
        const RAdic u(r, unum, ud);
        const RAdic x(r, k * pow_int(r, ud) + unum, n + ud);
        const int slope = expand(k, n, r).deficiency(n);
        const Rational rhs = eval_exact(RAdic(r, k, n)) + rational_pow(r, -n) * eval_exact(u) +
                             Rational(slope) * u.value() * rational_pow(r, -n);
        if (eval_exact(x) != rhs) ++bad_aff;
    }
    for (long t = 0; t < trials; ++t) {
        const int m = 1 + static_cast<int>(rng() % 3);
        std::vector<int> digits;
        for (int i = 0; i < 2 * m; ++i)
            digits.push_back(static_cast<int>(rng() % static_cast<unsigned>(r / 2)) +
                             (i % 2 == 0 ? 0 : r / 2));
        std::shuffle(digits.begin(), digits.end(), rng);
        const RAdic x0 = RAdic::from_digits(DigitString(r, digits));
        const int td = static_cast<int>(rng() % 5);
        const Rational t_off =
            Rational(Int(static_cast<unsigned long>(rng())) % (pow_int(r, td) + 1),
                     pow_int(r, td)) *
            rational_pow(r, -2 * m);
        const Rational a = x0.value() + t_off;
        const Rational b = x0.value() + rational_pow(r, -2 * m) - t_off;
        if (eval_exact(RAdic::from_rational(r, a)) != eval_exact(RAdic::from_rational(r, b)))
            ++bad_flip;
    }
    for (long t = 0; t < trials / 4; ++t) {
        const RAdic x = rand_radic(10);
        const Rational v = eval_exact(x);
        for (const RAdic& y : local_class(x))
            if (!local_equiv(x, y) || eval_exact(y) != v) ++bad_equiv;
    }
    auto push = [&](const std::string& name, long bad) {
        out.push_back({name + " (r=" + std::to_string(r) + ")", bad == 0,
                       bad == 0 ? "all exact" : std::to_string(bad) + " failures"});
    };
    push("symmetry", bad_sym);
    push("self_affinity", bad_aff);
    push("interval_flip", bad_flip);
    push("equiv_value", bad_equiv);
}

void check_counts(std::vector<Check>& out) {
    bool enum_ok = true;
    for (int m = 0; m <= 7 && enum_ok; ++m) {
        if (Int(static_cast<long>(enumerate_balanced(2, m).size())) != binomial(2l * m, m))
            enum_ok = false;
        Int leading_total = 0;
        for (int n = 0; n <= m; ++n) {
            const Int c = count_leading_mn(2, m, n);
            if (Int(static_cast<long>(enumerate_leading(2, m, n).size())) != c) enum_ok = false;
            leading_total += c;
        }
        if (leading_total != catalan(m)) enum_ok = false;
    }
    out.push_back({"enumeration_matches_formulas_r2", enum_ok, "orders 0..7"});

    bool rec_ok = true;
    for (int m = 1; m <= 30; ++m) {
        for (int n = 1; n <= m; ++n)
            if (count_leading_mn(2, m + 1, n + 2) + count_leading_mn(2, m, n) !=
                count_leading_mn(2, m + 1, n + 1))
                rec_ok = false;
        if (count_leading_mn(2, m, m) != 1) rec_ok = false;
    }
    out.push_back({"recurrence_and_diagonal", rec_ok, "orders 1..30"});

    bool scale_ok = true;
    for (int m = 0; m <= 3; ++m)
        for (int n = 1; n <= m; ++n)
            if (Int(static_cast<long>(enumerate_leading(4, m, n).size())) !=
                pow_int(2, static_cast<unsigned long>(2 * m - n)) * count_leading_mn(2, m, n))
                scale_ok = false;
    out.push_back({"scaling_r4", scale_ok, "orders 0..3"});
}

void check_series(std::vector<Check>& out, int r, int M) {
    const SeriesReport rep = expected_nloc_series(r, M);
    out.push_back({"series_bracketing",
                   rep.partial <= rep.closed_form &&
                       rep.closed_form <= rep.partial + rep.tail_bound,
                   "partial <= (r+1)/r <= partial + tail at M=" + std::to_string(M)});
    const Rational gap = rep.closed_form - rep.partial;
    out.push_back({"series_within_tail", gap <= rep.tail_bound,
                   "gap " + std::to_string(gap.get_d())});
    const auto sn = s_n_partials(std::min(6, M), M);
    bool sn_ok = true;
    for (const Rational& s : sn)
        if (s > 1) sn_ok = false;
    out.push_back({"s_n_below_limit", sn_ok, "n <= " + std::to_string(sn.size() - 1)});
}

void check_mc(std::vector<Check>& out, int r, int M, long samples, std::uint64_t seed) {
    const MCReport rep = monte_carlo_nloc(r, M, samples, seed);
    const double z = rep.std_error > 0
                         ? std::fabs(rep.mean - rep.exact_truncated_mean.get_d()) / rep.std_error
                         : 0.0;
    out.push_back({"mc_z_score", z <= 4.0, "z = " + std::to_string(z)});
    const MCReport again = monte_carlo_nloc(r, M, samples, seed);
    out.push_back({"mc_deterministic", rep.mean == again.mean && rep.std_error == again.std_error,
                   "fixed seed reproduces"});
}

int cmd_verify(const std::string& suite, int r, int M, long samples, std::uint64_t seed,
               const OutputOpts& opts) {
    std::vector<Check> checks;
    const bool all = suite == "all";
    if (suite == "identities" || all) {
        if (r > 0)
            check_identities(checks, require_even(r), samples > 0 ? samples : 2000, seed);
        else
            for (int rr : {2, 4, 6, 10})
                check_identities(checks, rr, samples > 0 ? samples : 2000, seed);
    }
    if (suite == "counts" || all) check_counts(checks);
    if (suite == "series" || all)
        check_series(checks, r > 0 ? require_even(r) : 2, M > 0 ? M : 1024);
    if (suite == "mc" || all)
        check_mc(checks, r > 0 ? require_even(r) : 2, M >= 0 ? std::min(M, 8) : 2,
                 samples > 0 ? samples : 20000, seed);
    if (checks.empty()) throw CLI::ValidationError("suite", "unknown suite: " + suite);

    int failed = 0;
    json rows = json::array();
    for (const Check& c : checks) {
        if (!c.pass) ++failed;
        rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    emit_json(opts, json{{"suite", suite},
                         {"checks", rows},
                         {"passed", static_cast<int>(checks.size()) - failed},
                         {"failed", failed}});
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation, hump combinatorics, level-set enclosures and "
                 "expectation series for the Takagi-van der Waerden functions"};
    app.require_subcommand(1);

    int r = 0, depth = -1, order = 4, M = -1, humps_order = -1, threads = 0;
    long samples = -1;
    std::uint64_t seed = 1;
    std::string xstr, ystr, suite;
    OutputOpts opts;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--out", opts.path, "write output to a file");
        sub->add_flag("--float", opts.as_float, "render numbers as decimals");
        sub->add_option("--threads", threads, "OpenMP thread count (0 = default)");
    };

    CLI::App* eval = app.add_subcommand("eval", "exact T_r at an r-adic point");
    eval->add_option("--r", r, "base")->required();
    eval->add_option("--x", xstr, "point, as p/q or a decimal")->required();
    eval->add_option("--depth", depth, "partial-sum depth for non-r-adic x");
    add_common(eval);

    CLI::App* graph = app.add_subcommand("graph-data", "grid samples of the graph");
    graph->add_option("--r", r, "base")->required();
    graph->add_option("--depth", depth, "grid depth")->required();
    graph->add_option("--humps", humps_order, "also emit hump rectangles up to this order");
    add_common(graph);

    CLI::App* cen = app.add_subcommand("census", "hump counts by order and generation");
    cen->add_option("--r", r, "base")->required();
    cen->add_option("--order", order, "maximum order")->required();
    add_common(cen);

    CLI::App* lvl = app.add_subcommand("levelset", "certified level-set enclosure");
    lvl->add_option("--r", r, "base")->required();
    lvl->add_option("--y", ystr, "level, as p/q")->required();
    lvl->add_option("--depth", depth, "refinement depth");
    add_common(lvl);

    CLI::App* nl = app.add_subcommand("nloc", "truncated local-level-set count");
    nl->add_option("--r", r, "base")->required();
    nl->add_option("--y", ystr, "level, as p/q")->required();
    nl->add_option("--M", M, "truncation order");
    add_common(nl);

    CLI::App* ser = app.add_subcommand("series", "expectation series report");
    ser->add_option("--r", r, "base")->required();
    ser->add_option("--M", M, "truncation order");
    add_common(ser);

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo estimate of the truncated count");
    mc->add_option("--r", r, "base")->required();
    mc->add_option("--M", M, "truncation order");
    mc->add_option("--samples", samples, "sample count");
    mc->add_option("--seed", seed, "random seed");
    add_common(mc);

    CLI::App* ver = app.add_subcommand("verify", "run an invariant suite");
    ver->add_option("suite", suite, "identities|counts|series|mc|all")->required();
    ver->add_option("--r", r, "base (0 = suite default)");
    ver->add_option("--M", M, "series/mc truncation order");
    ver->add_option("--samples", samples, "trial count");
    ver->add_option("--seed", seed, "random seed");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto fmt_default = [&](const char* d) {
        if (opts.format.empty()) opts.format = d;
    };
    try {
        if (threads > 0) omp_set_num_threads(threads);
        if (eval->parsed()) {
            fmt_default("text");
            return cmd_eval(r, xstr, depth < 0 ? 64 : depth, opts);
        }
        if (graph->parsed()) {
            fmt_default("csv");
            return cmd_graph_data(r, depth, humps_order, opts);
        }
        if (cen->parsed()) {
            fmt_default("csv");
            return cmd_census(r, order, opts);
        }
        if (lvl->parsed()) {
            fmt_default("json");
            return cmd_levelset(r, ystr, depth < 0 ? 8 : depth, opts);
        }
        if (nl->parsed()) {
            fmt_default("json");
            return cmd_nloc(r, ystr, M < 0 ? 6 : M, opts);
        }
        if (ser->parsed()) {
            fmt_default("json");
            return cmd_series(r, M < 0 ? 1024 : M, opts);
        }
        if (mc->parsed()) {
            fmt_default("json");
            return cmd_mc(r, M < 0 ? 2 : M, samples < 0 ? 100000 : samples, seed, opts);
        }
        if (ver->parsed()) {
            fmt_default("json");
            return cmd_verify(suite, r, M, samples, seed, opts);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
