#include "qxsort/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qxsort/analysis.hpp"
#include "qxsort/config.hpp"
#include "qxsort/instrument.hpp"
#include "qxsort/verify.hpp"

namespace qxsort::cli {
namespace {

using instrument::AlgoKind;
using instrument::Algorithm;
using Row = std::vector<std::string>;

enum class Format { Table, Csv };

std::size_t parse_size(const std::string& s, const char* what) {
    auto number = [&](std::string_view t) {
        std::size_t v = 0;
        const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || p != t.data() + t.size()) throw UsageError(fmt::format("invalid {}: '{}'", what, s));
        return v;
    };
    const auto caret = s.find('^');
    if (caret == std::string::npos) return number(s);
    const std::size_t b = number(std::string_view(s).substr(0, caret));
    const std::size_t e = number(std::string_view(s).substr(caret + 1));
    if (b != 2 || e > 40) throw UsageError(fmt::format("invalid {}: '{}' (only 2^e with e <= 40)", what, s));
    return std::size_t{1} << e;
}

Alpha parse_alpha(const std::string& s) {
    if (s == "1") return Alpha::one();
    if (s == "1/2" || s == "0.5") return Alpha::half();
    if (s == "1/4" || s == "0.25") return Alpha::quarter();
    throw UsageError("alpha must be 1, 1/2 or 1/4, got '" + s + "'");
}

XAlgo parse_x(const std::string& s) {
    for (XAlgo x : {XAlgo::MergesortPingPongFull, XAlgo::MergesortPingPongHalf, XAlgo::MergesortReinhardt,
                    XAlgo::MergesortSimpleSwap, XAlgo::MergesortBoustrophedonic, XAlgo::ExternalHeapsort})
        if (to_string(x) == s) return x;
    throw UsageError("unknown X algorithm '" + s + "'");
}

PivotStrategy parse_pivot(std::string s) {
    bool mom = false;
    if (s.size() > 4 && s.ends_with("+mom")) {
        mom = true;
        s.resize(s.size() - 4);
    }
    PivotStrategy p;
    if (s == "sqrt")
        p = PivotStrategy::sqrt_n(true);
    else if (s == "sqrt-exact")
        p = PivotStrategy::sqrt_n(false);
    else if (s.starts_with("mo"))
        p = PivotStrategy::fixed(parse_size(s.substr(2), "pivot sample size"));
    else
        throw UsageError("unknown pivot strategy '" + s + "' (moK, sqrt, sqrt-exact, optional +mom)");
    if (mom) p.fallback = Fallback{};
    return p;
}

BaseCase parse_base(const std::string& s) {
    if (s == "none") return BaseCase::none();
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw UsageError("base case must be none or NAME:SIZE, got '" + s + "'");
    const std::string name = s.substr(0, colon), arg = s.substr(colon + 1);
    const bool log = arg.starts_with("log");
    const std::size_t v = parse_size(log ? arg.substr(3) : arg, "base case size");
    if (log && (v == 0 || v > 1u << 20)) throw UsageError("invalid log scale in '" + s + "'");
    const auto scale = static_cast<unsigned>(v);
    if (name == "straight" && !log) return BaseCase::straight(v);
    if (name == "binary") return log ? BaseCase::binary_log(scale) : BaseCase::binary(v);
    if (name == "mi" || name == "mi-simple") {
        const bool simple = name == "mi-simple";
        return log ? BaseCase::merge_insertion_log(scale, simple) : BaseCase::merge_insertion(v, simple);
    }
    throw UsageError("unknown base case '" + s + "'");
}

instrument::InputSpec parse_input(const std::string& s) {
    using instrument::InputKind;
    if (s == "random") return {InputKind::RandomPermutation};
    if (s == "sorted") return {InputKind::Sorted};
    if (s == "reversed") return {InputKind::Reversed};
    if (s == "organ-pipe") return {InputKind::Adversarial};
    if (s.starts_with("few:")) return {InputKind::FewDistinct, parse_size(s.substr(4), "number of distinct values")};
    throw UsageError("unknown input kind '" + s + "' (random, sorted, reversed, organ-pipe, few:D)");
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void emit(std::ostream& os, Format f, const Row& header, const std::vector<Row>& rows) {
    if (f == Format::Csv) {
        auto line = [&](const Row& r) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
            os << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return;
    }
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        w[i] = header[i].size();
        for (const auto& r : rows) w[i] = std::max(w[i], r[i].size());
    }
    auto line = [&](const Row& r) {
        std::string s;
        for (std::size_t i = 0; i < r.size(); ++i) s += fmt::format("{}{:>{}}", i ? "  " : "", r[i], w[i]);
        os << s << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

// Common --seed/--format/--out handling.
struct Common {
    std::uint64_t seed = 1;
    std::string format = "table";
    std::string out;

    void add_to(CLI::App* app, std::uint64_t default_seed) {
        seed = default_seed;
        app->add_option("--seed", seed, "Base seed")->capture_default_str();
        app->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv"}))
            ->capture_default_str();
        app->add_option("--out", out, "Output file (default: standard output)");
    }
    Format fmt() const { return format == "csv" ? Format::Csv : Format::Table; }
};

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

// bench ---------------------------------------------------------------

struct BenchArgs {
    Common common;
    std::vector<std::string> algos{"qms"}, xs, alphas, pivots{"mo3"}, bases, ns;
    std::string trials = "100", input = "random";
    bool no_counting = false, log_cost = false;
};

struct GridPoint {
    Algorithm algo;
    std::string alpha = "-", pivot = "-", base = "-";
};

std::vector<GridPoint> bench_grid(const BenchArgs& a) {
    std::vector<std::string> bases = a.bases;
    if (bases.empty()) bases.push_back(a.no_counting ? "straight:42" : "none");
    std::vector<GridPoint> grid;
    for (const auto& name : a.algos) {
        if (name == "qms" || name == "qhs") {
            std::vector<XAlgo> xs;
            if (name == "qhs") {
                if (!a.xs.empty()) throw UsageError("--x does not apply to qhs");
                xs.push_back(XAlgo::ExternalHeapsort);
            } else if (a.xs.empty()) {
                xs.push_back(XAlgo::MergesortPingPongHalf);
            } else {
                for (const auto& s : a.xs) {
                    const XAlgo x = parse_x(s);
                    if (!is_mergesort(x)) throw UsageError("qms needs a Mergesort variant for --x; use qhs");
                    xs.push_back(x);
                }
            }
            for (XAlgo x : xs) {
                std::vector<Alpha> as;
                if (a.alphas.empty())
                    as.push_back(required_alpha(x));
                else
                    for (const auto& s : a.alphas) as.push_back(parse_alpha(s));
                for (Alpha al : as)
                    for (const auto& p : a.pivots)
                        for (const auto& b : bases) {
                            GridPoint g;
                            g.algo.kind = AlgoKind::QuickXsort;
                            g.algo.config = counting_config(x, al, parse_pivot(p));
                            g.algo.config.base_case = parse_base(b);
                            g.algo.config.counting_mode = !a.no_counting;
                            try {
                                g.algo.config.validate();
                            } catch (const ConfigError& e) {
                                throw UsageError(e.what());
                            }
                            g.alpha = to_string(al);
                            g.pivot = to_string(g.algo.config.pivot);
                            g.base = to_string(g.algo.config.base_case);
                            grid.push_back(std::move(g));
                        }
            }
            continue;
        }
        GridPoint g;
        g.algo.config.counting_mode = !a.no_counting;
        g.algo.config.base_case = BaseCase::none();
        if (name == "mergesort") {
            g.algo.kind = AlgoKind::Mergesort;
            for (const auto& b : bases) {
                GridPoint h = g;
                h.algo.config.base_case = parse_base(b);
                h.base = to_string(h.algo.config.base_case);
                grid.push_back(h);
            }
            continue;
        }
        if (name == "insertion")
            g.algo.kind = AlgoKind::BinaryInsertion;
        else if (name == "straight-insertion")
            g.algo.kind = AlgoKind::StraightInsertion;
        else if (name == "mi" || name == "mi-simple") {
            g.algo.kind = AlgoKind::MergeInsertion;
            g.algo.simplified = name == "mi-simple";
        } else
            throw UsageError("unknown algorithm '" + name + "'");
        grid.push_back(g);
    }
    return grid;
}

int cmd_bench(const BenchArgs& a, std::ostream& os) {
    if (a.ns.empty()) throw UsageError("--n needs at least one size");
    std::vector<std::size_t> ns;
    for (const auto& s : a.ns) {
        const std::size_t n = parse_size(s, "n");
        if (n == 0) throw UsageError("n must be at least 1");
        ns.push_back(n);
    }
    const bool exhaustive = a.trials == "exhaustive";
    std::size_t trials = 0;
    if (exhaustive) {
        for (std::size_t n : ns)
            if (n > 9) throw UsageError("--trials exhaustive is limited to n <= 9");
    } else {
        trials = parse_size(a.trials, "trial count");
        if (trials == 0) throw UsageError("--trials must be positive or 'exhaustive'");
    }
    if (exhaustive && (a.log_cost || a.input != "random"))
        throw UsageError("--trials exhaustive enumerates permutations; --input and --log-cost do not apply");
    const auto spec = parse_input(a.input);
    if (spec.kind == instrument::InputKind::FewDistinct && spec.distinct == 0)
        throw UsageError("few:D needs D >= 1");
    const auto grid = bench_grid(a);

    instrument::RunOptions opt;
    opt.log_cost = a.log_cost;
    std::vector<Row> rows;
    for (const auto& g : grid)
        for (std::size_t n : ns) {
            const auto s = exhaustive ? instrument::run_exhaustive(g.algo, n)
                                      : instrument::run_trials(g.algo, n, trials, a.common.seed, spec, opt);
            rows.push_back({g.algo.name(), g.alpha, g.pivot, g.base, std::to_string(n), std::to_string(s.trials),
                            exhaustive ? "-" : std::to_string(a.common.seed), fmt::format("{:.4f}", s.mean_comparisons),
                            fmt::format("{:.4f}", s.stddev_comparisons), fmt::format("{:.6f}", s.b_estimate),
                            fmt::format("{:.4f}", s.mean_swaps)});
        }
    emit(os, a.common.fmt(),
         {"algo", "alpha", "pivot", "base_case", "n", "trials", "seed", "mean_comps", "stddev_comps", "b_emp",
          "mean_swaps"},
         rows);
    return 0;
}

// theory --------------------------------------------------------------

struct TheoryArgs {
    Common common;
    std::vector<std::size_t> ks{3};
    std::vector<std::string> alphas{"1/2"};
    std::string grid;
    // linear-term range of X; default: top-down Mergesort
    std::vector<double> bx{-1.2645, -1.2408};
};

int cmd_theory(TheoryArgs a, std::ostream& os) {
    if (a.grid == "paper") {
        a.ks = {1, 3, 5, 7, 21};
        a.alphas = {"1", "1/2", "1/4"};
    }
    if (a.bx.size() != 2 || a.bx[0] > a.bx[1]) throw UsageError("--bx needs LO HI with LO <= HI");
    std::vector<Row> rows;
    for (const auto& s : a.alphas) {
        const Alpha al = parse_alpha(s);
        for (std::size_t k : a.ks) {
            if (k % 2 == 0) throw UsageError("k must be odd");
            const double q = analysis::penalty_q(k, al);
            const auto ref = analysis::variance_coefficient_reference(k, al);
            rows.push_back({std::to_string(k), to_string(al), fmt::format("{:.5f}", q),
                            fmt::format("{:.4f}", a.bx[0] + q), fmt::format("{:.4f}", a.bx[1] + q),
                            fmt::format("{:.5f}", analysis::variance_H(k, al)),
                            ref ? fmt::format("{:.5f}", ref->c0) : "no reference",
                            ref ? fmt::format("{:.4f}", ref->c1) : "no reference"});
        }
    }
    emit(os, a.common.fmt(), {"k", "alpha", "q", "b_pred_lo", "b_pred_hi", "H", "var_c0", "var_c1"}, rows);
    return 0;
}

// tabulate ------------------------------------------------------------

struct TabulateArgs {
    Common common;
    std::string x = "pingpong-half", alpha, pivot = "mo3", base = "none", heap = "average", N;
    std::size_t every = 1;
    bool force = false;
};

int cmd_tabulate(const TabulateArgs& a, std::ostream& os) {
    const std::size_t N = parse_size(a.N, "N");
    if (N > (1u << 14) && !a.force) throw UsageError("N above 2^14 needs --force");
    if (a.every == 0) throw UsageError("--every must be positive");
    const XAlgo x = parse_x(a.x);
    SortConfig cfg = counting_config(x, a.alpha.empty() ? required_alpha(x) : parse_alpha(a.alpha), parse_pivot(a.pivot));
    cfg.base_case = parse_base(a.base);
    const auto mode = a.heap == "best" ? analysis::HeapMode::Best
                      : a.heap == "worst" ? analysis::HeapMode::Worst
                                          : analysis::HeapMode::Average;
    analysis::CostTables t;
    try {
        cfg.validate();
        const std::size_t w = cfg.threshold(N);
        if (N < w) throw UsageError(fmt::format("N must be at least the base-case threshold {}", w));
        t = analysis::tabulate_variance(cfg, N, analysis::x_model_for(cfg, N, mode), analysis::base_model_for(cfg, N));
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    if (a.common.fmt() == Format::Csv) {
        analysis::write_csv(t, os, a.every);
        return 0;
    }
    std::vector<Row> rows;
    for (std::size_t n = 1; n <= N; ++n) {
        if (n % a.every != 0 && n != N) continue;
        const double nd = static_cast<double>(n);
        rows.push_back({std::to_string(n), fmt::format("{:.6f}", t.c[n]),
                        fmt::format("{:.6f}", std::sqrt(std::max(0.0, t.variance(n))) / nd),
                        fmt::format("{:.6f}", (t.c[n] - nd * std::log2(nd)) / nd)});
    }
    emit(os, Format::Table, {"n", "c", "sd_over_n", "b"}, rows);
    return 0;
}

// verify --------------------------------------------------------------

struct VerifyArgs {
    Common common;
    std::vector<std::string> only;
};

int cmd_verify(const VerifyArgs& a, std::ostream& os) {
    const bool csv = a.common.fmt() == Format::Csv;
    if (csv) os << "id,pass,detail\n";
    std::vector<std::string> only = a.only;
    std::vector<verify::CriterionResult> results;
    try {
        results = verify::run(only, a.common.seed, [&](const verify::CriterionResult& r) {
            if (csv)
                os << r.id << ',' << (r.pass ? "true" : "false") << ',' << csv_cell(r.detail) << '\n';
            else
                os << verify::format_line(r) << '\n';
            os.flush();
        });
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.pass; });
    if (!csv) os << fmt::format("{} of {} criteria passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"QuickXsort benchmarks, exact analysis and acceptance checks", "qxsort"};
    app.require_subcommand(1);

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Count comparisons over random trials");
    bench.common.add_to(b, 1);
    b->add_option("--algo", bench.algos, "qms, qhs, mergesort, insertion, straight-insertion, mi, mi-simple")
        ->capture_default_str();
    b->add_option("--x", bench.xs, "Mergesort variant for qms");
    b->add_option("--alpha", bench.alphas, "Buffer fraction: 1, 1/2, 1/4 (default: what X needs)");
    b->add_option("--pivot", bench.pivots, "moK, sqrt, sqrt-exact; suffix +mom adds the fallback")
        ->capture_default_str();
    b->add_option("--base", bench.bases, "none, straight:W, binary:W|logS, mi:W|logS, mi-simple:W|logS");
    b->add_option("--n", bench.ns, "Input sizes (2^e accepted)");
    b->add_option("--trials", bench.trials, "Trial count or 'exhaustive' (n <= 9)")->capture_default_str();
    b->add_option("--input", bench.input, "random, sorted, reversed, organ-pipe, few:D")->capture_default_str();
    b->add_flag("--no-counting", bench.no_counting, "Use the practical configuration (straight insertion base cases)");
    b->add_flag("--log-cost", bench.log_cost, "Comparator evaluates a logarithm");

    TheoryArgs theory;
    auto* t = app.add_subcommand("theory", "Penalty q, predicted linear term and variance constants");
    theory.common.add_to(t, 1);
    t->add_option("--k", theory.ks, "Odd sample sizes")->capture_default_str();
    t->add_option("--alpha", theory.alphas, "Buffer fractions")->capture_default_str();
    t->add_option("--grid", theory.grid, "'paper' selects k in {1,3,5,7,21} and alpha in {1,1/2,1/4}")
        ->check(CLI::IsMember({"paper"}));
    t->add_option("--bx", theory.bx, "Linear-term range LO HI of X")->expected(2)->capture_default_str();

    TabulateArgs tab;
    auto* tb = app.add_subcommand("tabulate", "Exact mean and deviation from the recurrence");
    tab.common.add_to(tb, 1);
    tb->add_option("--N", tab.N, "Largest n")->required();
    tb->add_option("--x", tab.x, "X algorithm")->capture_default_str();
    tb->add_option("--alpha", tab.alpha, "Buffer fraction (default: what X needs)");
    tb->add_option("--pivot", tab.pivot, "moK or sqrt-exact")->capture_default_str();
    tb->add_option("--base", tab.base, "none, straight:W, binary:W")->capture_default_str();
    tb->add_option("--heap", tab.heap, "ExternalHeapsort construction model")
        ->check(CLI::IsMember({"best", "average", "worst"}))
        ->capture_default_str();
    tb->add_option("--every", tab.every, "Print every k-th row")->capture_default_str();
    tb->add_flag("--force", tab.force, "Allow N above 2^14");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "Run the acceptance checks");
    ver.common.add_to(v, 0);
    v->add_option("--only", ver.only, "Criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    try {
        auto dispatch = [&](const Common& c, auto&& fn) {
            Output o(c.out, out);
            return fn(o.get());
        };
        if (b->parsed()) return dispatch(bench.common, [&](std::ostream& os) { return cmd_bench(bench, os); });
        if (t->parsed()) return dispatch(theory.common, [&](std::ostream& os) { return cmd_theory(theory, os); });
        if (tb->parsed()) return dispatch(tab.common, [&](std::ostream& os) { return cmd_tabulate(tab, os); });
        return dispatch(ver.common, [&](std::ostream& os) { return cmd_verify(ver, os); });
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qxsort::cli
