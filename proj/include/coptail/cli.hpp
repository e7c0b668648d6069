#ifndef COPTAIL_CLI_HPP
#define COPTAIL_CLI_HPP

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "coptail/classify.hpp"

namespace coptail {
namespace cli {

// ---- shared option bundles ----

struct global_options {
    int precision = 400;          // ceiling on working decimal digits
    std::uint64_t seed = 20240823;
    int threads = 1;
    std::string out;              // empty: write to stdout
    std::string format;           // empty: command default
};

struct model_options {
    std::string family;           // gaussian, mo-equal, mo-proportional, clayton, frank,
                                  // amh, gumbel, log-generator, acig, independence,
                                  // counterexample; or the class names mo / archimedean
                                  // refined by --family
    std::string subfamily;        // refines the mo / archimedean class names
    std::string matrix_file;      // gaussian correlation JSON
    std::string rates_file;       // marshall-olkin rates JSON
    std::optional<double> rho;    // binds symbolic matrix entries
    std::optional<double> theta;
    std::optional<double> alpha;
    int dim = 0;
};

// ---- JSON loading with line/column diagnostics ----

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1, col = 1;
        const size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
        for (size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error("'" + path + "' line " + std::to_string(line) + " column " +
                          std::to_string(col) + ": " + e.what());
    }
}

// Correlation JSON whose entries may be the symbolic strings "rho", "-rho",
// "sqrt2*rho", "-sqrt2*rho" bound by --rho, alongside plain numbers.
inline correlation_matrix correlation_from_template(const nlohmann::json& j,
                                                    std::optional<double> rho) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("rho"))
        throw parse_error("correlation JSON must be an object with 'dim' and 'rho'");
    const int d = j.at("dim").get<int>();
    const auto& rows = j.at("rho");
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw parse_error("'rho' must be an array of " + std::to_string(d) + " rows");
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& row = rows.at(static_cast<size_t>(i));
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw parse_error("'rho' row " + std::to_string(i + 1) + " must have " +
                              std::to_string(d) + " entries");
        for (int k = 0; k < d; ++k) {
            const auto& cell = row.at(static_cast<size_t>(k));
            if (cell.is_number()) {
                m(i, k) = cell.get<double>();
            } else if (cell.is_string()) {
                const std::string s = cell.get<std::string>();
                double sign = 1.0, scale = 1.0;
                std::string body = s;
                if (!body.empty() && body[0] == '-') {
                    sign = -1.0;
                    body = body.substr(1);
                }
                if (body == "sqrt2*rho")
                    scale = std::sqrt(2.0);
                else if (body != "rho")
                    throw parse_error("unknown matrix entry '" + s +
                                      "'; allowed: numbers, rho, -rho, sqrt2*rho, -sqrt2*rho");
                if (!rho)
                    throw validation_error("matrix uses symbolic entries; pass --rho");
                m(i, k) = sign * scale * *rho;
            } else {
                throw parse_error("matrix entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(k + 1) + ") must be a number or symbol");
            }
        }
    }
    return validate_correlation(m);
}

// ---- model construction ----

inline std::unique_ptr<copula_model> build_model(const model_options& mo) {
    std::string f = mo.family;
    if (!mo.subfamily.empty()) {
        if (f != "mo" && f != "archimedean")
            throw validation_error("--family refines the 'mo' and 'archimedean' classes only");
        f = mo.subfamily;
    } else if (f == "archimedean") {
        throw validation_error("archimedean needs --family "
                               "clayton|frank|amh|gumbel|log-generator|acig");
    }
    if (f == "gaussian") {
        if (mo.matrix_file.empty()) throw validation_error("gaussian needs --matrix FILE");
        return std::make_unique<gaussian_runtime_model>(
            correlation_from_template(load_json_file(mo.matrix_file), mo.rho));
    }
    if (f == "mo" || f == "mo-equal" || f == "mo-proportional") {
        if (!mo.rates_file.empty())
            return std::make_unique<mo_runtime_model>(
                mo_model(rates_from_json(load_json_file(mo.rates_file))));
        if (mo.dim < 2) throw validation_error(f + " needs --dim");
        if (f == "mo-proportional")
            return std::make_unique<mo_runtime_model>(mo_model(mo_proportional_rates(mo.dim)));
        if (f == "mo-equal")
            return std::make_unique<mo_runtime_model>(mo_model(mo_equal_rates(mo.dim)));
        throw validation_error("family 'mo' needs --rates FILE (or use mo-equal/mo-proportional)");
    }
    if (f == "independence") {
        if (mo.dim < 2) throw validation_error("independence needs --dim");
        return std::make_unique<independence_runtime_model>(mo.dim);
    }
    if (f == "counterexample") return std::make_unique<counterexample_runtime_model>();
    const auto make_arch = [&](generator_family fam, double param) {
        if (mo.dim < 2) throw validation_error(f + " needs --dim");
        return std::make_unique<archimedean_runtime_model>(generator(fam, param), mo.dim);
    };
    const auto need_theta = [&]() {
        if (!mo.theta) throw validation_error(f + " needs --theta");
        return *mo.theta;
    };
    if (f == "clayton") return make_arch(generator_family::clayton, need_theta());
    if (f == "frank") return make_arch(generator_family::frank, need_theta());
    if (f == "amh") return make_arch(generator_family::amh, need_theta());
    if (f == "gumbel") return make_arch(generator_family::gumbel, need_theta());
    if (f == "log-generator") return make_arch(generator_family::log_generator, need_theta());
    if (f == "acig") {
        if (!mo.alpha) throw validation_error("acig needs --alpha");
        return make_arch(generator_family::acig, *mo.alpha);
    }
    throw validation_error("unknown family '" + f + "'");
}

// ---- output plumbing ----

inline void write_text(const global_options& g, const std::string& text,
                       const std::string& forced_path = "") {
    const std::string& path = forced_path.empty() ? g.out : forced_path;
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write '" + path + "'");
    out << text;
}

inline void check_format(const global_options& g, const char* expected) {
    if (!g.format.empty() && g.format != expected)
        throw validation_error(std::string("this command emits ") + expected + " only");
}

// Derived output path for per-subset files: base stem + "_" + dash-joined
// subset + extension.
inline std::string subset_path(const std::string& base, const index_subset& s,
                               const std::string& ext) {
    std::string tag = s.to_string();
    for (char& c : tag)
        if (c == ',') c = '-';
    const size_t dot = base.find_last_of('.');
    if (dot == std::string::npos || base.find('/', dot) != std::string::npos)
        return base + "_" + tag + ext;
    return base.substr(0, dot) + "_" + tag + base.substr(dot);
}

inline std::vector<index_subset> resolve_subsets(const std::vector<std::string>& tokens, int d,
                                                 int min_size) {
    std::vector<index_subset> subsets;
    for (const std::string& token : tokens) {
        if (token == "all") {
            if (d > 12)
                throw validation_error("--subset all caps at dimension 12; list subsets "
                                       "explicitly for larger models");
            for_each_subset(d, min_size, d, [&](const index_subset& s) { subsets.push_back(s); });
        } else {
            index_subset s = index_subset::from_string(token);
            s.check_within(d);
            if (s.size() < min_size)
                throw validation_error("subset " + s.to_string() + " is below minimum size " +
                                       std::to_string(min_size));
            subsets.push_back(s);
        }
    }
    if (subsets.empty()) subsets.push_back(index_subset::full(d));
    std::sort(subsets.begin(), subsets.end());
    subsets.erase(std::unique(subsets.begin(), subsets.end()), subsets.end());
    return subsets;
}

// Runs fn(i) for i in [0, n) on up to g.threads concurrent workers; results
// are collected in index order so output never depends on scheduling.
template <class Fn>
inline void parallel_indexed(const global_options& g, size_t n, const Fn& fn) {
    const size_t workers = static_cast<size_t>(std::max(1, g.threads));
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> pending;
    for (size_t i = 0; i < n; ++i) {
        pending.push_back(std::async(std::launch::async, fn, i));
        if (pending.size() == workers) {
            for (auto& p : pending) p.get();
            pending.clear();
        }
    }
    for (auto& p : pending) p.get();
}

// ---- command implementations ----

inline nlohmann::json gaussian_analysis_json(const gaussian_runtime_model& gm) {
    const auto rep = gaussian_mutual_check(gm.correlation());
    nlohmann::json subsets = nlohmann::json::array();
    for (const auto& sp : rep.subsets) {
        nlohmann::json item = {{"subset", sp.subset.to_string()},
                               {"min_inverse_component", sp.min_component},
                               {"status", sp.status == positivity_status::pass    ? "pass"
                                          : sp.status == positivity_status::fail ? "fail"
                                                                                 : "boundary"}};
        if (sp.order) {
            item["kappa"] = sp.order->kappa;
            item["active_set"] = nlohmann::json::array();
            for (int a : sp.order->active) item["active_set"].push_back(a);
            item["log_exponent"] = sp.order->log_exponent;
        }
        subsets.push_back(std::move(item));
    }
    nlohmann::json j = {{"model", "gaussian"},
                        {"dim", gm.dim()},
                        {"subsets", std::move(subsets)}};
    if (rep.mutual)
        j["mutual"] = *rep.mutual;
    else
        j["mutual"] = nullptr;
    nlohmann::json failing = nlohmann::json::array();
    for (const auto& s : rep.failing) failing.push_back(s.to_string());
    j["failing_subsets"] = std::move(failing);
    if (!rep.boundary.empty()) {
        nlohmann::json b = nlohmann::json::array();
        for (const auto& s : rep.boundary) b.push_back(s.to_string());
        j["boundary_subsets"] = std::move(b);
    }
    return j;
}

inline nlohmann::json mo_analysis_json(const mo_runtime_model& mm) {
    const auto rep = mo_classify(mm.model());
    nlohmann::json pairs = nlohmann::json::array();
    for_each_subset(mm.dim(), 2, 2, [&](const index_subset& s) {
        const rational ex = mo_pairwise_exponent(mm.model(), s.members()[0], s.members()[1]);
        pairs.push_back({{"pair", s.to_string()},
                         {"exponent", to_double(ex)},
                         {"exact", ex.str()}});
    });
    return {{"model", "marshall-olkin"},
            {"dim", mm.dim()},
            {"strictly_positive", mm.model().rates().strictly_positive()},
            {"pair_exponents", std::move(pairs)},
            {"classification", report_to_json(rep)}};
}

inline nlohmann::json archimedean_analysis_json(const archimedean_runtime_model& am) {
    const generator& g = am.model().gen;
    if (g.family() == generator_family::acig) {
        const auto rep = acig_tail_orders(g.param(), am.dim());
        nlohmann::json kappa = nlohmann::json::array();
        for (size_t i = 0; i < rep.kappa.size(); ++i)
            kappa.push_back({{"subset_size", static_cast<int>(i) + 2}, {"kappa", rep.kappa[i]}});
        return {{"model", "acig"},
                {"alpha", rep.alpha},
                {"dim", rep.d},
                {"kappa_by_size", std::move(kappa)},
                {"pairwise", rep.pairwise},
                {"mutual", rep.mutual},
                {"max_k", rep.max_k},
                {"case", rep.case_label},
                {"classification",
                 report_to_json(classify_model(am, am.dim(),
                                               classify_strategy::analytic_exponents))}};
    }
    const auto rep = arch_mutual_condition(g, am.dim());
    nlohmann::json j = {{"model", am.name()},
                        {"theta", g.param()},
                        {"dim", am.dim()},
                        {"verdict", to_string(rep.verdict)},
                        {"theta1",
                         {{"value", rep.theta1.value},
                          {"converged", rep.theta1.converged},
                          {"catalog_mismatch", rep.theta1.catalog_mismatch}}},
                        {"rationale", rep.rationale}};
    if (rep.theta1.catalog_value) j["theta1"]["catalog_value"] = *rep.theta1.catalog_value;
    if (rep.derivatives_finite) {
        j["inverse_derivatives_finite"] = *rep.derivatives_finite;
        j["derivatives_from_metadata"] = rep.derivatives_from_metadata;
    }
    if (rep.slow_variation) j["slow_variation"] = *rep.slow_variation;
    return j;
}

inline int cmd_analyze(const global_options& g, const model_options& mo) {
    check_format(g, "json");
    auto model = build_model(mo);
    nlohmann::json j;
    if (auto* gm = dynamic_cast<gaussian_runtime_model*>(model.get()))
        j = gaussian_analysis_json(*gm);
    else if (auto* mm = dynamic_cast<mo_runtime_model*>(model.get()))
        j = mo_analysis_json(*mm);
    else if (auto* am = dynamic_cast<archimedean_runtime_model*>(model.get()))
        j = archimedean_analysis_json(*am);
    else
        j = {{"model", model->name()},
             {"dim", model->dim()},
             {"classification",
              report_to_json(classify_model(*model, model->dim(),
                                            classify_strategy::analytic_exponents))}};
    write_text(g, j.dump(2) + "\n");
    return 0;
}

struct grid_options {
    double umin = 1e-6;
    double umax = 1e-1;
    int points = 11;
};

inline std::vector<double> geometric_grid(const grid_options& go) {
    if (!(go.umin > 0.0 && go.umax < 1.0 && go.umin < go.umax))
        throw validation_error("grid needs 0 < umin < umax < 1");
    if (go.points < 2) throw validation_error("grid needs at least 2 points");
    std::vector<double> u(static_cast<size_t>(go.points));
    const double step = std::log(go.umax / go.umin) / (go.points - 1);
    for (int i = 0; i < go.points; ++i)
        u[static_cast<size_t>(i)] = go.umax * std::exp(-step * i);
    return u;
}

inline int cmd_diag(const global_options& g, const model_options& mo, const grid_options& go,
                    const std::vector<std::string>& subset_args) {
    check_format(g, "csv");
    auto model = build_model(mo);
    const auto subsets = resolve_subsets(subset_args, model->dim(), 1);
    const auto grid = geometric_grid(go);
    std::vector<std::string> bodies(subsets.size());
    std::vector<std::vector<std::string>> warnings(subsets.size());
    parallel_indexed(g, subsets.size(), [&](size_t i) {
        std::ostringstream csv;
        csv << "u,value,se\n";
        char buf[64];
        for (double u : grid) {
            std::snprintf(buf, sizeof(buf), "%.12g", u);
            csv << buf;
            try {
                const double v = model->survival_diagonal(subsets[i], u);
                std::snprintf(buf, sizeof(buf), ",%.17g,0\n", v);
                csv << buf;
            } catch (const precision_error& e) {
                csv << ",,\n";
                warnings[i].push_back("subset " + subsets[i].to_string() + " u=" +
                                     std::to_string(u) + ": " + e.what());
            }
        }
        bodies[i] = csv.str();
    });
    std::vector<std::string> all_warnings;
    for (size_t i = 0; i < subsets.size(); ++i) {
        if (subsets.size() == 1) {
            write_text(g, bodies[i]);
        } else if (g.out.empty()) {
            std::cout << "# subset " << subsets[i].to_string() << "\n" << bodies[i];
        } else {
            write_text(g, bodies[i], subset_path(g.out, subsets[i], ".csv"));
        }
        for (auto& w : warnings[i]) all_warnings.push_back(std::move(w));
    }
    if (!all_warnings.empty()) {
        std::string sidecar_text;
        for (const auto& w : all_warnings) sidecar_text += w + "\n";
        if (g.out.empty())
            std::cerr << sidecar_text;
        else
            write_text(g, sidecar_text, g.out + ".warnings.txt");
    }
    return 0;
}

inline int cmd_sample(const global_options& g, const model_options& mo, long n) {
    check_format(g, "csv");
    auto model = build_model(mo);
    if (!model->can_sample())
        throw validation_error("family '" + model->name() + "' has no sampler");
    if (n < 1) throw validation_error("--n must be positive");
    const sample_matrix s = model->sample(n, g.seed);
    std::ostringstream csv;
    csv << "# model=" << s.model << " n=" << s.n << " seed=" << s.seed << "\n";
    char buf[32];
    for (long i = 0; i < s.n; ++i) {
        for (int j = 0; j < s.dim; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", s(i, j));
            csv << (j ? "," : "") << buf;
        }
        csv << "\n";
    }
    write_text(g, csv.str());
    return 0;
}

inline int cmd_tailorder(const global_options& g, const model_options& mo, const grid_options& go,
                         const std::vector<std::string>& subset_args) {
    check_format(g, "json");
    auto model = build_model(mo);
    const auto subsets = resolve_subsets(subset_args, model->dim(), 2);
    const auto grid = geometric_grid(go);
    std::vector<nlohmann::json> items(subsets.size());
    parallel_indexed(g, subsets.size(), [&](size_t i) {
        const index_subset& s = subsets[i];
        nlohmann::json item = {{"subset", s.to_string()}};
        if (model->analytic_exponents()) {
            const exponent_info ei = model->exponent(s);
            item["kappa_exact"] = ei.exponent;
            if (ei.active) {
                nlohmann::json act = nlohmann::json::array();
                for (int a : *ei.active) act.push_back(a);
                item["active_set"] = std::move(act);
            }
            if (ei.log_exponent) item["log_exponent"] = *ei.log_exponent;
        }
        std::vector<diag_point> pts;
        for (double u : grid)
            pts.push_back({u, model->survival_diagonal(s, u), 0.0});
        const tail_fit fit = fit_tail_order(pts, true);
        item["kappa_fitted"] = fit.kappa;
        item["log_coeff_fitted"] = fit.log_coeff;
        item["fit_rms"] = fit.rms;
        item["points_used"] = fit.used;
        items[i] = std::move(item);
    });
    nlohmann::json j = {{"model", model->name()},
                        {"dim", model->dim()},
                        {"grid", {{"umin", go.umin}, {"umax", go.umax}, {"points", go.points}}},
                        {"subsets", nlohmann::json::array()}};
    for (auto& item : items) j["subsets"].push_back(std::move(item));
    write_text(g, j.dump(2) + "\n");
    return 0;
}

inline int cmd_classify(const global_options& g, const model_options& mo, int max_k,
                        const std::string& strategy) {
    check_format(g, "json");
    auto model = build_model(mo);
    classify_strategy strat;
    if (strategy == "analytic-exponents" || strategy == "analytic")
        strat = classify_strategy::analytic_exponents;
    else if (strategy == "numeric-ratio" || strategy == "numeric")
        strat = classify_strategy::numeric_ratio;
    else
        throw validation_error("--strategy must be analytic-exponents or numeric-ratio");
    if (max_k <= 0) max_k = model->dim();
    const auto rep = classify_model(*model, max_k, strat);
    nlohmann::json j = report_to_json(rep);
    j["model"] = model->name();
    j["strategy"] = (strat == classify_strategy::analytic_exponents) ? "analytic-exponents"
                                                                     : "numeric-ratio";
    write_text(g, j.dump(2) + "\n");
    return 0;
}

// ---- argument wiring ----

inline void add_model_flags(CLI::App* cmd, model_options& mo) {
    cmd->add_option("model", mo.family,
                    "gaussian | mo | mo-equal | mo-proportional | archimedean | clayton | "
                    "frank | amh | gumbel | log-generator | acig | independence | "
                    "counterexample")
        ->required();
    cmd->add_option("--family", mo.subfamily,
                    "subfamily for the mo / archimedean class names");
    cmd->add_option("--matrix", mo.matrix_file, "correlation JSON file");
    cmd->add_option("--rates", mo.rates_file, "shock-rate JSON file");
    cmd->add_option_function<double>(
        "--rho", [&mo](double v) { mo.rho = v; }, "binds symbolic matrix entries");
    cmd->add_option_function<double>(
        "--theta", [&mo](double v) { mo.theta = v; }, "archimedean parameter");
    cmd->add_option_function<double>(
        "--alpha", [&mo](double v) { mo.alpha = v; }, "acig shape parameter");
    cmd->add_option("--dim", mo.dim, "model dimension");
}

inline void add_grid_flags(CLI::App* cmd, grid_options& go) {
    cmd->add_option("--umin", go.umin, "smallest diagonal argument");
    cmd->add_option("--umax", go.umax, "largest diagonal argument");
    cmd->add_option("--points", go.points, "geometric grid size");
}

inline int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"tail-order and asymptotic-independence analysis for copula families"};
    app.require_subcommand(1);
    app.fallthrough(); // lets --seed/--out/... appear after the subcommand
    global_options gopt;
    app.add_option("--precision", gopt.precision, "max working decimal digits")
        ->check(CLI::Range(15, 400));
    app.add_option("--seed", gopt.seed, "base RNG seed");
    app.add_option("--threads", gopt.threads, "worker bound for per-subset work")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", gopt.out, "output path (stdout when absent)");
    app.add_option("--format", gopt.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    model_options analyze_mo, diag_mo, sample_mo, tail_mo, classify_mo;
    grid_options diag_go, tail_go{1e-8, 1e-2, 12};
    std::vector<std::string> diag_subsets, tail_subsets;
    long sample_n = 1000;
    int classify_max_k = 0;
    std::string classify_strat = "analytic-exponents";

    CLI::App* analyze = app.add_subcommand("analyze", "full asymptotic-independence analysis");
    add_model_flags(analyze, analyze_mo);

    CLI::App* diag = app.add_subcommand("diag", "survival diagonal values on a geometric grid");
    add_model_flags(diag, diag_mo);
    add_grid_flags(diag, diag_go);
    diag->add_option("--subset", diag_subsets, "subset '1,2' (repeatable) or 'all'");

    CLI::App* sample = app.add_subcommand("sample", "seeded copula-scale sample dump");
    add_model_flags(sample, sample_mo);
    sample->add_option("--n", sample_n, "rows to draw");

    CLI::App* tail = app.add_subcommand("tailorder", "exact and fitted tail orders side by side");
    add_model_flags(tail, tail_mo);
    add_grid_flags(tail, tail_go);
    tail->add_option("--subset", tail_subsets, "subset '1,2' (repeatable) or 'all'");

    CLI::App* classify = app.add_subcommand("classify", "pairwise / k-wise / mutual report");
    add_model_flags(classify, classify_mo);
    classify->add_option("--max-k", classify_max_k, "largest subset size to test");
    classify->add_option("--strategy", classify_strat, "analytic-exponents | numeric-ratio");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(gopt, analyze_mo);
        if (diag->parsed()) return cmd_diag(gopt, diag_mo, diag_go, diag_subsets);
        if (sample->parsed()) return cmd_sample(gopt, sample_mo, sample_n);
        if (tail->parsed()) return cmd_tailorder(gopt, tail_mo, tail_go, tail_subsets);
        if (classify->parsed()) return cmd_classify(gopt, classify_mo, classify_max_k, classify_strat);
        std::cerr << "no command given\n";
        return 2;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

inline int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

} // namespace cli
} // namespace coptail

#endif
