#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "proglab/counting.hpp"
#include "proglab/expsum.hpp"
#include "proglab/gowers.hpp"
#include "proglab/nil.hpp"
#include "proglab/verify.hpp"

using namespace proglab;

namespace {

struct Globals {
    uint64_t seed = 1;
    std::string out;
    std::string format = "json";
    int workers = 0;
    int64_t budget_ms = -1;
    bool deterministic = false;
};

// What a subcommand hands back: the payload, an optional CSV body and
// whether every assertion it made held.
struct Outcome {
    json result;
    std::string csv;
    bool passed = true;
};

std::string report_csv(const Report& r) {
    std::ostringstream os;
    os << "check,passed,measured,threshold\n";
    for (const auto& c : r.checks) {
        auto cell = [](const json& j) {
            std::string s = j.is_null() ? "" : j.dump();
            if (s.find_first_of(",\"") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        };
        os << c.name << ',' << (c.passed ? 1 : 0) << ',' << cell(c.measured) << ',' << cell(c.threshold) << '\n';
    }
    return os.str();
}

Outcome from_report(const Report& r) { return {r.to_json(), report_csv(r), r.passed()}; }

std::string members_csv(const IntervalSet& S) {
    std::ostringstream os;
    os << "member\n";
    for (int64_t x : S.members()) os << x << '\n';
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale experiments on polynomial progressions, Gowers norms, exponential sums and nilsequences"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    Globals g;
    app.add_option("--seed", g.seed, "Root seed for every random stream");
    app.add_option("--out", g.out, "Write the report here instead of stdout");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--workers", g.workers, "OpenMP threads (0 = runtime default); results do not depend on it")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--budget-ms", g.budget_ms, "Work budget per evaluation; falls back to PROGLAB_BUDGET_MS")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--deterministic", g.deterministic, "Report elapsed_ms as 0 so reruns are byte-identical");

    json params = json::object();
    std::function<Outcome()> run;

    // verify-all
    auto* va = app.add_subcommand("verify-all", "Run the property suites of every module.\n"
                                                "CSV columns: check,passed,measured,threshold");
    std::string module = "all";
    va->add_option("--module", module, "Restrict to one module")
        ->check(CLI::IsMember({"all", "arith", "signal", "gowers", "counting", "expsum", "nil"}));
    va->callback([&] {
        params = {{"module", module}};
        run = [&] {
            const std::map<std::string, Report (*)(uint64_t)> suites = {
                {"all", verify_all},         {"arith", verify_arith},   {"signal", verify_signal},
                {"gowers", verify_gowers},   {"counting", verify_counting}, {"expsum", verify_expsum},
                {"nil", verify_nil}};
            return from_report(suites.at(module)(g.seed));
        };
    });

    // count
    auto* ct = app.add_subcommand("count", "Counting operators on a random subset of [N].\n"
                                           "CSV columns: quantity,re,im");
    int64_t ct_N = 1024;
    int ct_w = 2;
    double ct_density = 0.3;
    ct->add_option("--N", ct_N, "Interval length")->check(CLI::Range(int64_t{3}, int64_t{1} << 24));
    ct->add_option("--w", ct_w, "W = product of primes <= w")->check(CLI::Range(2, 13));
    ct->add_option("--density", ct_density, "Inclusion probability")->check(CLI::Range(0.0, 1.0));
    ct->callback([&] {
        params = {{"N", ct_N}, {"w", ct_w}, {"density", ct_density}};
        run = [&] {
            Rng rng(g.seed);
            auto S = random_subset(ct_N, ct_density, rng);
            ZFunc f = S.indicator();
            auto ctx = ArithCtx::make(ct_N, ct_w);
            auto cr = lambda_diff(f, f, f, ctx);
            auto st = stashing_check(f, f, f, ctx, 1);
            Outcome o;
            o.result = {{"set_size", S.size()}, {"W", ctx.W}, {"M", ctx.M}, {"counts", cr.to_json()},
                        {"configs", enumerate_configs(S)}, {"stashing", st.to_json()}};
            o.passed = st.passed();
            std::ostringstream os;
            os.precision(17);
            os << "quantity,re,im\n";
            for (auto [name, z] : {std::pair{"lambda_w", cr.lambda_w}, std::pair{"lambda_model", cr.lambda_model},
                                   std::pair{"lambda_diff", cr.lambda_diff}})
                os << name << ',' << z.real() << ',' << z.imag() << '\n';
            o.csv = os.str();
            return o;
        };
    });

    // norms
    auto* nm = app.add_subcommand("norms", "U^k powers over [L] of a test function on [1, N].\n"
                                           "CSV columns: k,power,norm");
    int64_t nm_N = 256, nm_L = 16;
    int nm_k = 2;
    std::string nm_kind = "random";
    double nm_beta = 0.1;
    nm->add_option("--N", nm_N, "Support length")->check(CLI::Range(int64_t{1}, int64_t{1} << 20));
    nm->add_option("--L", nm_L, "Shift set [L]")->check(CLI::Range(int64_t{1}, int64_t{1} << 16));
    nm->add_option("--k", nm_k, "Largest k")->check(CLI::Range(1, 4));
    nm->add_option("--func", nm_kind, "random | indicator | modulated")
        ->check(CLI::IsMember({"random", "indicator", "modulated"}));
    nm->add_option("--beta", nm_beta, "Frequency for --func modulated");
    nm->callback([&] {
        params = {{"N", nm_N}, {"L", nm_L}, {"k", nm_k}, {"func", nm_kind}, {"beta", nm_beta}};
        run = [&] {
            ZFunc f = ZFunc::indicator(1, nm_N);
            if (nm_kind == "modulated") f = f.modulated(nm_beta);
            if (nm_kind == "random") {
                Rng rng(g.seed);
                f = ZFunc::from_fn(1, nm_N, [&](int64_t) { return std::polar(1.0, kTwoPi * rng.uniform()); });
            }
            const ShiftSet Q = interval_set(nm_L);
            Outcome o;
            json rows = json::array();
            std::ostringstream os;
            os.precision(17);
            os << "k,power,norm\n";
            for (int k = 1; k <= nm_k; ++k) {
                const double p = uk_norm_pow(f, Q, k);
                const double n = std::pow(std::max(p, 0.0), 1.0 / static_cast<double>(1 << k));
                rows.push_back({{"k", k}, {"power", p}, {"norm", n}});
                os << k << ',' << p << ',' << n << '\n';
            }
            auto sup = fourier_sup(f, 4 * f.length());
            o.result = {{"norms", rows}, {"fourier_sup", {{"theta", sup.theta_star}, {"value", sup.value}}}};
            o.csv = os.str();
            return o;
        };
    });

    // expsum
    auto* es = app.add_subcommand("expsum", "Weyl sums and exact moments for P_r(x) = W^2 x^2 + (2Wr + 1) x.\n"
                                            "JSON: MomentResult {W, r, T, order, exact, quadrature, ratio}, ratio = "
                                            "exact W^2 / (2T)^(order-2).\nCSV columns: theta,re,im,abs");
    int64_t es_W = 2, es_r = 1, es_T = 40, es_points = 64;
    int es_order = 4;
    double es_eps = 0.1;
    es->add_option("--W", es_W)->check(CLI::Range(int64_t{1}, int64_t{30030}));
    es->add_option("--r", es_r)->check(CLI::PositiveNumber);
    es->add_option("--T", es_T)->check(CLI::NonNegativeNumber);
    es->add_option("--order", es_order)->check(CLI::IsMember({2, 4, 6}));
    es->add_option("--points", es_points, "Equally spaced theta samples for the CSV")->check(CLI::Range(1, 1 << 20));
    es->add_option("--epsilon", es_eps, "Arc level for the per-theta labels")->check(CLI::Range(1e-6, 0.499));
    es->callback([&] {
        params = {{"W", es_W}, {"r", es_r}, {"T", es_T}, {"order", es_order}, {"points", es_points},
                  {"epsilon", es_eps}};
        run = [&] {
            if (es_r > es_W) throw Error("expsum: need 1 <= r <= W");
            Outcome o;
            const auto exact = moment_exact(es_W, es_r, es_T, es_order);
            json mr = {{"W", es_W}, {"r", es_r}, {"T", es_T}, {"order", es_order}, {"exact", exact}};
            const int64_t grid = min_moment_grid(es_W, es_r, es_T);
            double quad = -1;
            if (static_cast<double>(grid) * (es_order / 2) <= 2e8) {
                quad = moment_quadrature(es_W, es_r, es_T, es_order, grid);
                mr["quadrature"] = quad;
                o.passed = std::fabs(quad - static_cast<double>(exact)) <= 1e-6 * static_cast<double>(exact);
            } else {
                mr["quadrature"] = nullptr;
            }
            mr["ratio"] = static_cast<double>(exact) * static_cast<double>(es_W * es_W) /
                          std::pow(2.0 * static_cast<double>(std::max<int64_t>(es_T, 1)), es_order - 2);
            json samples = json::array();
            std::ostringstream os;
            os.precision(17);
            os << "theta,re,im,abs\n";
            for (int64_t i = 0; i < es_points; ++i) {
                const double th = static_cast<double>(i) / static_cast<double>(es_points);
                const cplx s = weyl_sum(es_W, es_r, th, es_T);
                os << th << ',' << s.real() << ',' << s.imag() << ',' << std::abs(s) << '\n';
                samples.push_back({{"theta", th},
                                   {"abs", std::abs(s)},
                                   {"arc", arc_decompose(th, std::max<int64_t>(es_T, 1), es_eps).to_json()}});
            }
            o.result = {{"moment", mr}, {"samples", samples}};
            o.csv = os.str();
            return o;
        };
    });

    // nil
    auto* nl = app.add_subcommand("nil", "Orbit constraint for a random Heisenberg polynomial sequence.\n"
                                         "CSV columns: check,passed,measured,threshold");
    int64_t nl_x = 1, nl_y = 1;
    nl->add_option("--x", nl_x)->check(CLI::Range(int64_t{-1000000}, int64_t{1000000}));
    nl->add_option("--y", nl_y)->check(CLI::Range(int64_t{-1000000}, int64_t{1000000}));
    nl->callback([&] {
        params = {{"x", nl_x}, {"y", nl_y}};
        run = [&] {
            const NilGroup G = NilGroup::heisenberg();
            Rng rng(g.seed);
            auto q = [&] {
                mpq_class v(static_cast<long>(rng.uniform_int(-20, 20)), static_cast<unsigned long>(rng.uniform_int(1, 9)));
                v.canonicalize();
                return v;
            };
            PolySeq2 s{{q(), q(), q()}, {q(), q(), q()}, {0, 0, q()}};
            Report r;
            r.name = "nil";
            r.check("constraint", constraint_check(G, s, nl_x, nl_y), json{{"x", nl_x}, {"y", nl_y}});
            auto v = vertical_freq_system(1);
            r.check("vertical_system", v[0] == -9 && v[1] == 8 && v[2] == 2,
                    json{v[0].get_str(), v[1].get_str(), v[2].get_str()});
            r.absorb(flag_span_check());
            auto t = tau(nl_x, nl_y);
            r.data = {{"sequence", polyseq_to_json(G, s)}, {"tau", t}};
            return from_report(r);
        };
    });

    // search
    auto* se = app.add_subcommand("search", "Largest subset of [N] free of (x, x + y^2 - 1, x + 2(y^2 - 1)), y != +-1.\n"
                                            "CSV columns: member");
    int64_t se_N = 7;
    std::string se_method = "branch-and-bound";
    se->add_option("--N", se_N)->check(CLI::Range(int64_t{1}, int64_t{64}));
    se->add_option("--method", se_method)->check(CLI::IsMember({"exhaustive", "branch-and-bound"}));
    se->callback([&] {
        params = {{"N", se_N}, {"method", se_method}};
        run = [&] {
            auto m = se_method == "exhaustive" ? SearchMethod::exhaustive : SearchMethod::branch_and_bound;
            auto r = max_free_subset(se_N, m);
            Outcome o;
            o.result = {{"N", se_N}, {"size", r.size}, {"witness", r.witness.members()}, {"nodes", r.nodes}};
            o.passed = enumerate_configs(r.witness) == 0;
            o.csv = members_csv(r.witness);
            return o;
        };
    });

    // transfer
    auto* tr = app.add_subcommand("transfer", "Median |Lambda~| / N^2 across w in {2,3,5,7} on random sets.\n"
                                              "CSV columns: w,W,median");
    int64_t tr_N = 16384;
    double tr_density = 0.3;
    int tr_seeds = 20;
    tr->add_option("--N", tr_N)->check(CLI::Range(int64_t{16}, int64_t{1} << 22));
    tr->add_option("--density", tr_density)->check(CLI::Range(0.0, 1.0));
    tr->add_option("--seeds", tr_seeds)->check(CLI::Range(1, 1000));
    tr->callback([&] {
        params = {{"N", tr_N}, {"density", tr_density}, {"seeds", tr_seeds}};
        run = [&] {
            auto r = transfer_suite(tr_N, tr_density, tr_seeds, g.seed);
            Outcome o = from_report(r);
            std::ostringstream os;
            os.precision(17);
            os << "w,W,median\n";
            for (const auto& row : r.data["rows"]) os << row["w"] << ',' << row["W"] << ',' << row["median"].get<double>() << '\n';
            o.csv = os.str();
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (g.workers > 0) set_worker_count(g.workers);
    if (g.budget_ms >= 0) set_work_budget_ms(static_cast<uint64_t>(g.budget_ms));

    const std::string sub = app.get_subcommands().front()->get_name();
    json config = {{"subcommand", sub}, {"params", params}, {"seed", g.seed}, {"format", g.format}};
    if (g.budget_ms >= 0) config["budget_ms"] = g.budget_ms;

    Outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        outcome = run();
    } catch (const BudgetExceeded& e) {
        std::cerr << "proglab: " << e.what() << " (raise --budget-ms)\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "proglab: " << e.what() << '\n';
        return 2;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    std::string body;
    if (g.format == "csv") {
        body = outcome.csv;
    } else {
        json doc = {{"schema", kSchema},
                    {"version", kVersion},
                    {"config", config},
                    {"elapsed_ms", g.deterministic ? 0.0 : ms},
                    {"passed", outcome.passed},
                    {"result", outcome.result}};
        body = doc.dump(2) + "\n";
    }
    if (g.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream os(g.out, std::ios::binary);
        if (!os) {
            std::cerr << "proglab: cannot write " << g.out << '\n';
            return 2;
        }
        os << body;
    }
    if (sub == "verify-all") {
        const auto& checks = outcome.result["checks"];
        size_t bad = 0;
        for (const auto& c : checks) bad += c["passed"].get<bool>() ? 0 : 1;
        std::cerr << (bad == 0 ? "PASS" : "FAIL") << ' ' << checks.size() - bad << '/' << checks.size()
                  << " checks\n";
    }
    return outcome.passed ? 0 : 1;
}
