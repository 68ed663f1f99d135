// Command-line surface: exact counts, oracle verification, series dumps,
// moment statistics and uniform sampling for k-plane and k-noncrossing
// trees.  Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 internal inconsistency.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ktrees/enumerate.hpp"
#include "ktrees/exact.hpp"
#include "ktrees/formulas.hpp"
#include "ktrees/sampler.hpp"
#include "ktrees/series.hpp"
#include "ktrees/trees.hpp"

namespace {

using ktrees::Family;
using ktrees::Integer;
using ktrees::LabelComposition;
using ktrees::Rational;
using nlohmann::json;

constexpr int kMaxSeriesOrder = 12;

// Test hook: when KTREES_FAULT_INJECT names a site, that site perturbs its
// redundant computation by one, so the failure-reporting paths (exit codes
// 1 and 3) can be exercised end to end.  Off unless the variable is set.
bool fault_on(std::string_view site) {
    const char* value = std::getenv("KTREES_FAULT_INJECT");
    return value != nullptr && std::string_view(value) == site;
}

std::string rational_text(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

json rational_json(const Rational& q) {
    return json{{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

Family parse_family(const std::string& name) {
    if (name == "plane") return Family::plane;
    if (name == "noncrossing") return Family::noncrossing;
    throw ktrees::InvalidParams("unknown family '" + name + "'");
}

std::string family_name(Family family) {
    return family == Family::plane ? "plane" : "noncrossing";
}

void emit(const std::string& text) { std::cout << text; }

void emit_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string join_longs(const std::vector<long>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

std::vector<long> parse_labels(const std::string& raw, int k) {
    std::vector<long> counts;
    std::stringstream stream(raw);
    std::string item;
    while (std::getline(stream, item, ',')) {
        std::size_t used = 0;
        long value = 0;
        try {
            value = std::stol(item, &used);
        } catch (const std::exception&) {
            throw ktrees::InvalidParams("--labels: '" + item + "' is not an integer");
        }
        if (used != item.size())
            throw ktrees::InvalidParams("--labels: '" + item + "' is not an integer");
        if (value < 0) throw ktrees::InvalidParams("--labels: counts must be nonnegative");
        counts.push_back(value);
    }
    if (static_cast<int>(counts.size()) != k)
        throw ktrees::InvalidParams("--labels: expected exactly " + std::to_string(k) +
                                    " comma-separated counts");
    return counts;
}

struct CountArgs {
    std::string family_name;
    int k = 0;
    std::optional<long> n;
    std::optional<int> root;
    std::optional<std::string> labels;
    bool check = false;
    std::string format = "text";
};

int cmd_count(const CountArgs& args) {
    const Family family = parse_family(args.family_name);
    const int k = args.k;
    json doc{{"command", "count"}, {"family", family_name(family)}, {"k", k}};

    Integer value;
    std::optional<LabelComposition> comp;
    long n = 0;
    if (args.labels) {
        comp = LabelComposition(k, parse_labels(*args.labels, k));
        n = comp->n();
        if (n < 1) throw ktrees::InvalidParams("--labels: counts must sum to at least 1");
        if (args.n && *args.n != n)
            throw ktrees::InvalidParams("--n disagrees with the sum of --labels");
        doc["labels"] = comp->counts;
    } else {
        if (!args.n) throw ktrees::InvalidParams("count: need --n or --labels");
        n = *args.n;
    }
    doc["n"] = n;

    if (comp && args.root) {
        value = family == Family::plane ? ktrees::thm1_root(*args.root, *comp)
                                        : ktrees::thm2_root(*args.root, *comp);
    } else if (comp) {
        value = family == Family::plane ? ktrees::thm1_total(*comp) : ktrees::thm2_total(*comp);
    } else if (args.root) {
        value = family == Family::plane ? ktrees::root_plane(k, n, *args.root)
                                        : ktrees::root_nc(k, n, *args.root);
    } else {
        value = family == Family::plane ? ktrees::total_plane(k, n) : ktrees::total_nc(k, n);
    }
    if (args.root) doc["root"] = *args.root;

    if (args.check) {
        // Redundant aggregation: per-root counts must add up to the totals
        // of the same family.
        Integer lhs = 0, rhs = 0;
        if (comp) {
            for (int h = 1; h <= k; ++h)
                lhs += family == Family::plane ? ktrees::thm1_root(h, *comp)
                                               : ktrees::thm2_root(h, *comp);
            rhs = family == Family::plane ? ktrees::thm1_total(*comp) : ktrees::thm2_total(*comp);
        } else {
            for (int h = 1; h <= k; ++h)
                lhs += family == Family::plane ? ktrees::root_plane(k, n, h)
                                               : ktrees::root_nc(k, n, h);
            rhs = family == Family::plane ? ktrees::total_plane(k, n) : ktrees::total_nc(k, n);
        }
        if (fault_on("count_check")) lhs += 1;
        if (lhs != rhs)
            throw ktrees::InconsistencyError("count cross-check failed: per-root sum " +
                                             lhs.str() + " != total " + rhs.str());
    }

    doc["value"] = value.str();
    if (args.format == "json") {
        emit_json(doc);
    } else if (args.format == "csv") {
        emit("value\n" + value.str() + "\n");
    } else {
        emit(value.str() + "\n");
    }
    return 0;
}

struct VerifyArgs {
    std::string family_name;
    int k = 0;
    long max_n = 0;
    std::string format = "text";
};

int cmd_verify(const VerifyArgs& args) {
    const Family family = parse_family(args.family_name);
    const int k = args.k;
    if (args.max_n < 1) throw ktrees::InvalidParams("verify: --max-n must be >= 1");
    const long cap = family == Family::plane ? ktrees::plane_enumeration_cap()
                                             : ktrees::noncrossing_enumeration_cap();
    if (args.max_n > cap)
        throw ktrees::LimitExceeded("verify: --max-n exceeds the oracle cap " +
                                    std::to_string(cap));

    struct Counterexample {
        long n = 0;
        int root = 0; // 0 means the totals row
        std::vector<long> labels;
        Integer oracle, formula;
    };
    std::optional<Counterexample> bad;
    json per_n = json::array();
    std::string text;

    for (long n = 1; n <= args.max_n && !bad; ++n) {
        ktrees::RefinedCounts oracle = family == Family::plane
                                           ? ktrees::count_refined_plane(k, static_cast<int>(n))
                                           : ktrees::count_refined_noncrossing(k, static_cast<int>(n));
        if (fault_on("verify_oracle") && n == args.max_n && !oracle.empty())
            oracle.begin()->second += 1;

        Integer tree_count = 0;
        for (const auto& [key, c] : oracle) tree_count += c;

        long compositions = 0;
        Integer family_total = 0;
        std::vector<Integer> family_roots(static_cast<std::size_t>(k) + 1, 0);
        ktrees::for_each_composition(k, n, [&](const LabelComposition& comp) {
            if (bad) return;
            ++compositions;
            Integer oracle_total = 0;
            for (int h = 1; h <= k; ++h) {
                Integer formula = family == Family::plane ? ktrees::thm1_root(h, comp)
                                                          : ktrees::thm2_root(h, comp);
                auto it = oracle.find({h, comp});
                Integer observed = it == oracle.end() ? Integer(0) : it->second;
                oracle_total += observed;
                family_roots[static_cast<std::size_t>(h)] += observed;
                if (observed != formula) {
                    bad = Counterexample{n, h, comp.counts, observed, formula};
                    return;
                }
            }
            Integer formula_total = family == Family::plane ? ktrees::thm1_total(comp)
                                                            : ktrees::thm2_total(comp);
            family_total += oracle_total;
            if (oracle_total != formula_total)
                bad = Counterexample{n, 0, comp.counts, oracle_total, formula_total};
        });

        if (!bad) {
            // Aggregates: the oracle grand total and per-root marginals must
            // match the summed closed forms.
            Integer total_formula =
                family == Family::plane ? ktrees::total_plane(k, n) : ktrees::total_nc(k, n);
            if (family_total != total_formula)
                bad = Counterexample{n, 0, {}, family_total, total_formula};
            for (int h = 1; h <= k && !bad; ++h) {
                Integer root_formula = family == Family::plane ? ktrees::root_plane(k, n, h)
                                                               : ktrees::root_nc(k, n, h);
                if (family_roots[static_cast<std::size_t>(h)] != root_formula)
                    bad = Counterexample{n, h, {}, family_roots[static_cast<std::size_t>(h)],
                                         root_formula};
            }
        }

        const bool row_ok = !bad;
        per_n.push_back(json{{"n", n},
                             {"compositions", compositions},
                             {"trees", tree_count.str()},
                             {"ok", row_ok}});
        text += "n=" + std::to_string(n) + " compositions=" + std::to_string(compositions) +
                " trees=" + tree_count.str() + (row_ok ? " ok" : " MISMATCH") + "\n";
    }

    json doc{{"command", "verify"},
             {"family", family_name(family)},
             {"k", k},
             {"max_n", args.max_n},
             {"per_n", per_n},
             {"ok", !bad}};
    if (bad) {
        doc["counterexample"] = json{{"family", family_name(family)},
                                     {"k", k},
                                     {"n", bad->n},
                                     {"root", bad->root},
                                     {"labels", bad->labels},
                                     {"oracle", bad->oracle.str()},
                                     {"formula", bad->formula.str()}};
        text += "counterexample family=" + family_name(family) + " k=" + std::to_string(k) +
                " n=" + std::to_string(bad->n) + " root=" + std::to_string(bad->root) +
                " labels=" + join_longs(bad->labels, ',') + " oracle=" + bad->oracle.str() +
                " formula=" + bad->formula.str() + "\n";
    }
    text += "verify family=" + family_name(family) + " k=" + std::to_string(k) +
            " max_n=" + std::to_string(args.max_n) + ": " + (bad ? "FAIL" : "OK") + "\n";

    if (args.format == "json") {
        emit_json(doc);
    } else if (args.format == "csv") {
        std::string csv = "n,compositions,trees,ok\n";
        for (const auto& row : per_n) {
            csv += std::to_string(row["n"].get<long>()) + "," +
                   std::to_string(row["compositions"].get<long>()) + "," +
                   row["trees"].get<std::string>() + "," +
                   (row["ok"].get<bool>() ? "true" : "false") + "\n";
        }
        emit(csv);
    } else {
        emit(text);
    }
    return bad ? 1 : 0;
}

struct SeriesArgs {
    std::string family_name;
    int k = 0;
    int order = 0;
    std::string target;
    std::string format = "text";
};

int cmd_series(const SeriesArgs& args) {
    const Family family = parse_family(args.family_name);
    const int k = args.k;
    if (args.order < 1 || args.order > kMaxSeriesOrder)
        throw ktrees::InvalidParams("series: --order must lie in [1, " +
                                    std::to_string(kMaxSeriesOrder) + "]");

    std::vector<ktrees::SeriesTerm> rows;
    if (args.target == "P" || args.target == "N") {
        const bool plane_target = args.target == "P";
        if (plane_target != (family == Family::plane))
            throw ktrees::InvalidParams("series: --target " + args.target +
                                        " does not belong to family " + family_name(family));
        auto system = plane_target ? ktrees::solve_plane_system(k, args.order)
                                   : ktrees::solve_nc_system(k, args.order);
        for (int r = 1; r <= k; ++r) {
            auto part = ktrees::dump_series(args.target + std::to_string(r),
                                            system[static_cast<std::size_t>(r) - 1]);
            rows.insert(rows.end(), part.begin(), part.end());
        }
    } else if (args.target == "A" || args.target == "B") {
        const bool plane_target = args.target == "A";
        if (plane_target != (family == Family::plane))
            throw ktrees::InvalidParams("series: --target " + args.target +
                                        " does not belong to family " + family_name(family));
        auto series = plane_target ? ktrees::solve_A(k, args.order) : ktrees::solve_B(k, args.order);
        rows = ktrees::dump_series(args.target, series);
    } else {
        throw ktrees::InvalidParams("series: --target must be one of P, N, A, B");
    }

    json doc{{"command", "series"},
             {"family", family_name(family)},
             {"k", k},
             {"order", args.order},
             {"target", args.target}};
    json terms = json::array();
    std::string text, csv = "series,n,exponents,coeff\n";
    for (const auto& row : rows) {
        terms.push_back(json{{"series", row.name},
                             {"n", row.n},
                             {"exponents", row.exponents},
                             {"coeff", row.coeff.str()}});
        std::string expo_list, expo_colon;
        for (std::size_t i = 0; i < row.exponents.size(); ++i) {
            if (i > 0) {
                expo_list += ',';
                expo_colon += ':';
            }
            expo_list += std::to_string(row.exponents[i]);
            expo_colon += std::to_string(row.exponents[i]);
        }
        text += row.name + " z^" + std::to_string(row.n) + " x^(" + expo_list +
                ") = " + row.coeff.str() + "\n";
        csv += row.name + "," + std::to_string(row.n) + "," + expo_colon + "," +
               row.coeff.str() + "\n";
    }
    doc["terms"] = terms;

    if (args.format == "json") {
        emit_json(doc);
    } else if (args.format == "csv") {
        emit(csv);
    } else {
        emit(text);
    }
    return 0;
}

struct StatsArgs {
    std::string family_name;
    int k = 0;
    long n = 0;
    std::string format = "text";
};

int cmd_stats(const StatsArgs& args) {
    const Family family = parse_family(args.family_name);
    const int k = args.k;
    if (args.n < 2) throw ktrees::InvalidParams("stats: --n must be >= 2");

    ktrees::MomentTable summation = ktrees::moments_by_summation(family, k, args.n);
    if (fault_on("stats_check")) summation.means[1] += 1;

    const bool has_table = (family == Family::plane && k == 3) ||
                           (family == Family::noncrossing && k == 2);
    std::optional<ktrees::MomentTable> table;
    if (has_table)
        table = family == Family::plane ? ktrees::moment_table_plane_k3(args.n)
                                        : ktrees::moment_table_nc_k2(args.n);

    bool consistent = true;
    json means = json::array(), covs = json::array(), by_root = json::array();
    std::string text = "family=" + family_name(family) + " k=" + std::to_string(k) +
                       " n=" + std::to_string(args.n) + "\n";
    std::string csv = "kind,i,j,closed,summation\n";

    for (int h = 1; h <= k; ++h) {
        Rational closed = family == Family::plane ? ktrees::avg_plane(k, args.n, h)
                                                  : ktrees::avg_nc(k, args.n, h);
        const Rational& summed = summation.means.at(h);
        consistent = consistent && closed == summed;
        means.push_back(json{{"label", h},
                             {"closed", rational_json(closed)},
                             {"summation", rational_json(summed)}});
        text += "mean[" + std::to_string(h) + "] closed=" + rational_text(closed) +
                " summation=" + rational_text(summed) + "\n";
        csv += "mean," + std::to_string(h) + ",," + rational_text(closed) + "," +
               rational_text(summed) + "\n";
    }

    if (table) {
        for (const auto& [pair, closed] : table->covariances) {
            if (pair.first > pair.second) continue;
            const Rational& summed = summation.covariances.at(pair);
            consistent = consistent && closed == summed;
            covs.push_back(json{{"i", pair.first},
                                {"j", pair.second},
                                {"closed", rational_json(closed)},
                                {"summation", rational_json(summed)}});
            text += "cov[" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
                    "] closed=" + rational_text(closed) + " summation=" + rational_text(summed) +
                    "\n";
            csv += "cov," + std::to_string(pair.first) + "," + std::to_string(pair.second) + "," +
                   rational_text(closed) + "," + rational_text(summed) + "\n";
        }
        for (const auto& [pair, closed] : table->means_by_root) {
            const Rational& summed = summation.means_by_root.at(pair);
            consistent = consistent && closed == summed;
            by_root.push_back(json{{"root", pair.first},
                                   {"label", pair.second},
                                   {"closed", rational_json(closed)},
                                   {"summation", rational_json(summed)}});
            text += "mean_by_root[" + std::to_string(pair.first) + "," +
                    std::to_string(pair.second) + "] closed=" + rational_text(closed) +
                    " summation=" + rational_text(summed) + "\n";
            csv += "mean_by_root," + std::to_string(pair.first) + "," +
                   std::to_string(pair.second) + "," + rational_text(closed) + "," +
                   rational_text(summed) + "\n";
        }
    }
    text += consistent ? "consistent\n" : "INCONSISTENT\n";

    json doc{{"command", "stats"},
             {"family", family_name(family)},
             {"k", k},
             {"n", args.n},
             {"means", means},
             {"consistent", consistent}};
    if (table) {
        doc["covariances"] = covs;
        doc["means_by_root"] = by_root;
    }

    if (args.format == "json") {
        emit_json(doc);
    } else if (args.format == "csv") {
        emit(csv);
    } else {
        emit(text);
    }
    if (!consistent)
        throw ktrees::InconsistencyError("stats: closed forms disagree with summation moments");
    return 0;
}

struct SampleArgs {
    int k = 0;
    long n = 0;
    long count = 1;
    std::uint64_t seed = 0;
    std::string format = "text";
};

int cmd_sample(const SampleArgs& args) {
    if (args.count < 1) throw ktrees::InvalidParams("sample: --count must be >= 1");
    auto trees = ktrees::sample_many(args.k, args.n, args.seed, args.count);
    json list = json::array();
    std::string text, csv = "tree\n";
    for (const auto& tree : trees) {
        std::string rendered = ktrees::render_plane(tree);
        list.push_back(rendered);
        text += rendered + "\n";
        csv += rendered + "\n";
    }
    if (args.format == "json") {
        emit_json(json{{"command", "sample"},
                       {"k", args.k},
                       {"n", args.n},
                       {"count", args.count},
                       {"seed", args.seed},
                       {"trees", list}});
    } else if (args.format == "csv") {
        emit(csv);
    } else {
        emit(text);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact counting, verification, series inspection, statistics and uniform "
                 "sampling for k-plane and k-noncrossing trees."};
    app.require_subcommand(1);

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "Evaluate a closed-form count");
    count->add_option("family", count_args.family_name, "Tree family: plane or noncrossing")
        ->required()
        ->check(CLI::IsMember({"plane", "noncrossing"}));
    count->add_option("--k", count_args.k, "Label alphabet size")->required();
    long count_n = 0;
    auto* count_n_opt = count->add_option("--n", count_n, "Vertex count");
    int count_root = 0;
    auto* count_root_opt = count->add_option("--root", count_root, "Root label");
    std::string count_labels;
    auto* count_labels_opt =
        count->add_option("--labels", count_labels, "Comma-separated label multiplicities");
    count->add_flag("--check", count_args.check, "Cross-check against a redundant aggregation");
    count->add_option("--format", count_args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Compare closed forms against the brute-force oracle");
    verify->add_option("--family", verify_args.family_name, "Tree family")
        ->required()
        ->check(CLI::IsMember({"plane", "noncrossing"}));
    verify->add_option("--k", verify_args.k, "Label alphabet size")->required();
    verify->add_option("--max-n", verify_args.max_n, "Verify all n up to this bound")->required();
    verify->add_option("--format", verify_args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    SeriesArgs series_args;
    auto* series = app.add_subcommand("series", "Dump solved generating-function coefficients");
    series->add_option("--family", series_args.family_name, "Tree family")
        ->required()
        ->check(CLI::IsMember({"plane", "noncrossing"}));
    series->add_option("--k", series_args.k, "Label alphabet size")->required();
    series->add_option("--order", series_args.order, "Truncation order in z")->required();
    series->add_option("--target", series_args.target, "Series to dump: P, N, A or B")->required();
    series->add_option("--format", series_args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "Means and (co)variances of label counts");
    stats->add_option("--family", stats_args.family_name, "Tree family")
        ->required()
        ->check(CLI::IsMember({"plane", "noncrossing"}));
    stats->add_option("--k", stats_args.k, "Label alphabet size")->required();
    stats->add_option("--n", stats_args.n, "Vertex count")->required();
    stats->add_option("--format", stats_args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    SampleArgs sample_args;
    auto* sample = app.add_subcommand("sample", "Draw uniform random k-plane trees");
    sample->add_option("--k", sample_args.k, "Label alphabet size")->required();
    sample->add_option("--n", sample_args.n, "Vertex count")->required();
    sample->add_option("--count", sample_args.count, "Number of trees to draw");
    sample->add_option("--seed", sample_args.seed, "PRNG seed (64-bit)");
    sample->add_option("--format", sample_args.format, "Output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e); // prints help or the parse message
        return code == 0 ? 0 : 2;
    }

    try {
        if (*count) {
            if (*count_n_opt) count_args.n = count_n;
            if (*count_root_opt) count_args.root = count_root;
            if (*count_labels_opt) count_args.labels = count_labels;
            return cmd_count(count_args);
        }
        if (*verify) return cmd_verify(verify_args);
        if (*series) return cmd_series(series_args);
        if (*stats) return cmd_stats(stats_args);
        if (*sample) return cmd_sample(sample_args);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const ktrees::InconsistencyError& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const ktrees::NonExactDivision& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const ktrees::InvalidParams& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ktrees::LimitExceeded& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ktrees::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
