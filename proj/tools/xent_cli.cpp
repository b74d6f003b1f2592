// Command-line front end: evaluate Renyi-type cross-entropies for
// distribution pairs, sweep alpha grids, compute process rates, reproduce the
// closed-form tables against the oracles, and run the verification suite.
//
// Exit codes: 0 success / all PASS, 1 parse or usage error, 2 constraint
// violated (measure undefined for those inputs), 3 oracle FAIL.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "xent/closed_form.hpp"
#include "xent/gaussian_process.hpp"
#include "xent/markov.hpp"
#include "xent/oracle.hpp"
#include "xent/parse.hpp"
#include "xent/verify.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitConstraint = 2;
constexpr int kExitOracleFail = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

double default_tolerance() {
    if (const char* env = std::getenv("XENT_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            std::cerr << "warning: ignoring unparsable XENT_TOL='" << env << "'\n";
        }
    }
    return 1e-6;
}

xent::Measure measure_from_name(const std::string& name) {
    if (name == "renyi") return xent::Measure::Renyi;
    if (name == "natural") return xent::Measure::NaturalRenyi;
    if (name == "shannon") return xent::Measure::Shannon;
    if (name == "renyi-entropy") return xent::Measure::RenyiEntropy;
    throw xent::ParseError("unknown measure '" + name +
                           "' (renyi, natural, shannon, renyi-entropy)");
}

ordered_json result_json(const xent::XentResult& r) {
    ordered_json j;
    j["value"] = r.value;
    j["measure"] = xent::measure_name(r.measure);
    j["method"] = xent::method_name(r.method);
    ordered_json diag = ordered_json::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    j["diagnostics"] = std::move(diag);
    return j;
}

ordered_json report_json(const xent::oracle::OracleReport& rep) {
    ordered_json j;
    j["measure"] = xent::measure_name(rep.measure);
    j["oracle_value"] = rep.oracle_value ? ordered_json(*rep.oracle_value)
                                         : ordered_json(nullptr);
    j["closed_form_value"] = rep.closed_form_value
                                 ? ordered_json(*rep.closed_form_value)
                                 : ordered_json(nullptr);
    j["abs_err"] = std::isnan(rep.abs_err) ? ordered_json(nullptr)
                                           : ordered_json(rep.abs_err);
    j["rel_err"] = std::isnan(rep.rel_err) ? ordered_json(nullptr)
                                           : ordered_json(rep.rel_err);
    if (rep.mc_std_error) j["mc_std_error"] = *rep.mc_std_error;
    j["verdict"] = xent::oracle::verdict_name(rep.verdict);
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

xent::XentResult compute(xent::Measure m, const xent::FamilyDescriptor& f1,
                         const xent::FamilyDescriptor& f2, const xent::AlphaOrder& a) {
    switch (m) {
        case xent::Measure::Renyi: return xent::renyi_xent(f1, f2, a);
        case xent::Measure::NaturalRenyi: return xent::natural_renyi_xent(f1, f2, a);
        case xent::Measure::Shannon: return xent::shannon_xent(f1, f2);
        case xent::Measure::RenyiEntropy: return xent::renyi_entropy(f1, a);
    }
    throw xent::Error("unreachable");
}

void print_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        const bool quote = c.find_first_of(",\"\n") != std::string::npos;
        if (i) os << ",";
        if (!quote) {
            os << c;
        } else {
            os << '"';
            for (char ch : c) {
                if (ch == '"') os << '"';
                os << ch;
            }
            os << '"';
        }
    }
    os << "\r\n";
}

struct TableRow {
    std::string family, f1, f2, alpha, measure;
    std::string closed, oracle, abs_err, rel_err, verdict;
};

void emit_table(const std::vector<TableRow>& rows, const std::string& format) {
    const std::vector<std::string> header{"family", "f1",      "f2",
                                          "alpha",  "measure", "closed_form",
                                          "oracle", "abs_err", "rel_err",
                                          "verdict"};
    if (format == "csv") {
        print_csv_row(std::cout, header);
        for (const auto& r : rows)
            print_csv_row(std::cout, {r.family, r.f1, r.f2, r.alpha, r.measure,
                                      r.closed, r.oracle, r.abs_err, r.rel_err,
                                      r.verdict});
        return;
    }
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : rows) {
            arr.push_back({{"family", r.family},
                           {"f1", r.f1},
                           {"f2", r.f2},
                           {"alpha", r.alpha},
                           {"measure", r.measure},
                           {"closed_form", r.closed},
                           {"oracle", r.oracle},
                           {"abs_err", r.abs_err},
                           {"rel_err", r.rel_err},
                           {"verdict", r.verdict}});
        }
        std::cout << arr.dump(2) << "\n";
        return;
    }
    // markdown
    auto row = [](const std::vector<std::string>& cells) {
        std::string s = "|";
        for (const auto& c : cells) s += " " + c + " |";
        return s;
    };
    std::cout << row(header) << "\n|";
    for (std::size_t i = 0; i < header.size(); ++i) std::cout << "---|";
    std::cout << "\n";
    for (const auto& r : rows)
        std::cout << row({r.family, r.f1, r.f2, r.alpha, r.measure, r.closed,
                          r.oracle, r.abs_err, r.rel_err, r.verdict})
                  << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Renyi and Natural Renyi cross-entropy calculator with "
                 "oracle verification"};
    app.require_subcommand(1);

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate one measure for a pair");
    std::string e_measure = "renyi", e_f1, e_f2, e_alpha = "2", e_format = "json";
    bool e_certify = false;
    double e_tol = default_tolerance();
    std::uint64_t e_seed = 20240901;
    eval->add_option("--measure", e_measure, "renyi | natural | shannon | renyi-entropy");
    eval->add_option("--f1", e_f1, "first distribution, e.g. exponential{lambda=1}")
        ->required();
    eval->add_option("--f2", e_f2, "second distribution (defaults to --f1)");
    eval->add_option("--alpha", e_alpha, "order > 0, != 1, or 'shannon'");
    eval->add_flag("--certify", e_certify, "also run the oracle and report the verdict");
    eval->add_option("--tolerance", e_tol, "relative certify tolerance");
    eval->add_option("--seed", e_seed, "Monte Carlo seed");
    eval->add_option("--format", e_format, "json (default) | csv | markdown");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "evaluate across an alpha grid");
    std::string s_measure = "renyi", s_f1, s_f2, s_alphas = "0.3,0.5,0.9,1.1,2,3";
    std::string s_format = "json";
    sweep->add_option("--measure", s_measure);
    sweep->add_option("--f1", s_f1)->required();
    sweep->add_option("--f2", s_f2);
    sweep->add_option("--alphas", s_alphas, "comma-separated; 'shannon' allowed");
    sweep->add_option("--format", s_format, "json | csv | markdown");

    // ---- rate-gauss ----
    auto* rg = app.add_subcommand("rate-gauss",
                                  "cross-entropy rate between stationary "
                                  "Gaussian sources");
    std::string rg_measure = "shannon", rg_f, rg_g, rg_alpha = "2";
    int rg_grid = 4096, rg_oracle_n = 0;
    rg->add_option("--measure", rg_measure, "renyi | natural | shannon");
    rg->add_option("--f", rg_f, "first spectrum, e.g. ar1{rho=0.5,s2=1}")->required();
    rg->add_option("--g", rg_g, "second spectrum, e.g. white{s2=1}")->required();
    rg->add_option("--alpha", rg_alpha);
    rg->add_option("--grid", rg_grid, "integration grid size");
    rg->add_option("--oracle-n", rg_oracle_n,
                   "also evaluate the n-block Toeplitz oracle");

    // ---- rate-markov ----
    auto* rm = app.add_subcommand("rate-markov",
                                  "cross-entropy rate between Markov sources");
    std::string rm_measure = "shannon", rm_p, rm_q, rm_alpha = "2";
    int rm_oracle_n = 0;
    rm->add_option("--measure", rm_measure, "renyi | natural | shannon");
    rm->add_option("--P", rm_p, "JSON file with the first source")->required();
    rm->add_option("--Q", rm_q, "JSON file with the second source")->required();
    rm->add_option("--alpha", rm_alpha);
    rm->add_option("--oracle-n", rm_oracle_n,
                   "also run the brute-force sequence oracle at this n");

    // ---- tables ----
    auto* tables = app.add_subcommand(
        "tables", "reproduce the closed-form tables against the oracles");
    std::string t_families, t_alphas, t_format = "markdown";
    double t_tol = default_tolerance();
    std::size_t t_mc = 200000;
    std::uint64_t t_seed = 20240901;
    tables->add_option("--families", t_families, "comma-separated filter");
    tables->add_option("--alphas", t_alphas, "comma-separated override");
    tables->add_option("--format", t_format, "markdown (default) | csv | json");
    tables->add_option("--tolerance", t_tol);
    tables->add_option("--mc-samples", t_mc);
    tables->add_option("--seed", t_seed);

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "run the full verification suite");
    std::string v_only;
    std::uint64_t v_seed = 20240901;
    std::size_t v_mc = 1000000;
    double v_tol = default_tolerance();
    std::string v_out;
    verify->add_option("--only", v_only, "xent | gauss | markov");
    verify->add_option("--seed", v_seed);
    verify->add_option("--mc-samples", v_mc);
    verify->add_option("--tolerance", v_tol);
    verify->add_option("--out", v_out, "write the JSON report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*eval || *sweep) {
            const bool is_eval = static_cast<bool>(*eval);
            const std::string measure_s = is_eval ? e_measure : s_measure;
            const std::string f1_s = is_eval ? e_f1 : s_f1;
            std::string f2_s = is_eval ? e_f2 : s_f2;
            if (f2_s.empty()) f2_s = f1_s;
            const auto m = measure_from_name(measure_s);
            const auto f1 = xent::parse::distribution(f1_s);
            const auto f2 = xent::parse::distribution(f2_s);

            std::vector<std::string> alpha_texts;
            if (is_eval) {
                alpha_texts.push_back(e_alpha);
            } else {
                std::string cur;
                for (char c : s_alphas + ",") {
                    if (c == ',') {
                        if (!cur.empty()) alpha_texts.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }

            ordered_json out = ordered_json::array();
            int exit_code = kExitOk;
            for (const auto& at : alpha_texts) {
                const auto a = xent::parse::alpha(at);
                ordered_json entry;
                entry["f1"] = f1.to_string();
                entry["f2"] = f2.to_string();
                entry["alpha"] = a.is_shannon() ? ordered_json("shannon")
                                                : ordered_json(a.value());
                try {
                    const auto r = compute(m, f1, f2, a);
                    entry.update(result_json(r));
                    if (is_eval && e_certify) {
                        xent::oracle::CertifySettings st;
                        st.rel_threshold = e_tol;
                        st.seed = e_seed;
                        const auto rep =
                            xent::oracle::certify(m, f1, f2, a, r.value, st);
                        entry["certify"] = report_json(rep);
                        if (rep.verdict == xent::oracle::Verdict::FAIL)
                            exit_code = kExitOracleFail;
                    }
                } catch (const xent::ConstraintViolated& e) {
                    entry["error"] = "constraint-violated";
                    entry["constraint"] = e.name();
                    entry["constraint_value"] = e.value();
                    std::cerr << "constraint violated: " << e.name() << " (value "
                              << fmt(e.value()) << ")\n";
                    if (is_eval) exit_code = kExitConstraint;
                }
                out.push_back(std::move(entry));
            }
            std::cout << (out.size() == 1 ? out[0].dump(2) : out.dump(2)) << "\n";
            return exit_code;
        }

        if (*rg) {
            const auto m = measure_from_name(rg_measure);
            const auto f = xent::parse::spectrum(rg_f);
            const auto g = xent::parse::spectrum(rg_g);
            const auto a = xent::parse::alpha(rg_alpha);
            ordered_json out;
            try {
                xent::gp::RateResult r;
                switch (m) {
                    case xent::Measure::Renyi:
                        r = xent::gp::renyi_rate(f, g, a, rg_grid);
                        break;
                    case xent::Measure::NaturalRenyi:
                        r = xent::gp::natural_renyi_rate(f, g, a, rg_grid);
                        break;
                    default:
                        r = xent::gp::shannon_rate(f, g, rg_grid);
                        break;
                }
                out["value"] = r.value;
                out["measure"] = xent::measure_name(r.measure);
                out["grid_size"] = r.grid_size;
                out["constraint_min"] = r.constraint_min;
                if (rg_oracle_n > 0) {
                    out["toeplitz_oracle_n"] = rg_oracle_n;
                    out["toeplitz_oracle"] = xent::gp::toeplitz_rate_oracle(
                        f, g, m, a, rg_oracle_n, rg_grid);
                }
            } catch (const xent::ConstraintViolated& e) {
                std::cerr << "constraint violated: " << e.name() << "\n";
                return kExitConstraint;
            }
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        if (*rm) {
            const auto m = measure_from_name(rm_measure);
            const auto pf = xent::parse::markov_source(rm_p);
            const auto qf = xent::parse::markov_source(rm_q);
            if (pf.renormalized || qf.renormalized)
                std::cerr << "note: renormalized rows within tolerance 1e-9\n";
            const auto a = xent::parse::alpha(rm_alpha);
            ordered_json out;
            double value;
            switch (m) {
                case xent::Measure::Renyi:
                    value = xent::markov::renyi_rate(pf.source, qf.source, a);
                    break;
                case xent::Measure::NaturalRenyi:
                    value = xent::markov::natural_renyi_rate(pf.source, qf.source, a);
                    break;
                default:
                    value = xent::markov::shannon_rate(pf.source, qf.source);
                    break;
            }
            out["value"] = value;
            out["measure"] = xent::measure_name(m);
            if (rm_oracle_n > 0) {
                out["brute_force_n"] = rm_oracle_n;
                out["brute_force"] = xent::markov::brute_force_rate(
                    pf.source, qf.source, a, rm_oracle_n, m);
            }
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        }

        if (*tables) {
            std::vector<double> alphas;
            if (t_alphas.empty()) {
                alphas = xent::verify::default_alphas();
            } else {
                std::string cur;
                for (char c : t_alphas + ",") {
                    if (c == ',') {
                        if (!cur.empty()) alphas.push_back(std::stod(cur));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            auto family_selected = [&](const std::string& name) {
                if (t_families.empty()) return true;
                std::string cur;
                for (char c : t_families + ",") {
                    if (c == ',') {
                        if (cur == name) return true;
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
                return false;
            };
            xent::oracle::CertifySettings st;
            st.rel_threshold = t_tol;
            st.mc_samples = t_mc;
            st.seed = t_seed;
            std::vector<TableRow> rows;
            bool any_fail = false;
            for (const auto& grid : xent::verify::default_grid()) {
                if (!family_selected(xent::family_name(grid.tag))) continue;
                for (const auto& [f1, f2] : grid.pairs) {
                    for (const auto m :
                         {xent::Measure::Renyi, xent::Measure::NaturalRenyi}) {
                        for (double av : alphas) {
                            const xent::AlphaOrder a(av);
                            std::optional<double> closed;
                            try {
                                closed = compute(m, f1, f2, a).value;
                            } catch (const xent::MeasureUndefined&) {
                            }
                            const auto rep =
                                xent::oracle::certify(m, f1, f2, a, closed, st);
                            TableRow row;
                            row.family = xent::family_name(grid.tag);
                            row.f1 = f1.to_string();
                            row.f2 = f2.to_string();
                            row.alpha = fmt(av);
                            row.measure = xent::measure_name(m);
                            row.closed = closed ? fmt(*closed) : "undefined";
                            row.oracle =
                                rep.oracle_value ? fmt(*rep.oracle_value) : "undefined";
                            row.abs_err = std::isnan(rep.abs_err) ? "" : fmt(rep.abs_err);
                            row.rel_err = std::isnan(rep.rel_err) ? "" : fmt(rep.rel_err);
                            row.verdict = xent::oracle::verdict_name(rep.verdict);
                            if (rep.verdict == xent::oracle::Verdict::FAIL)
                                any_fail = true;
                            rows.push_back(std::move(row));
                        }
                    }
                }
            }
            emit_table(rows, t_format);
            return any_fail ? kExitOracleFail : kExitOk;
        }

        if (*verify) {
            xent::verify::Options opt;
            opt.only = v_only;
            opt.seed = v_seed;
            opt.mc_samples = v_mc;
            opt.rel_threshold = v_tol;
            const auto report = xent::verify::run(opt);
            const std::string json = xent::verify::to_json(report, opt);
            if (!v_out.empty()) {
                std::FILE* fp = std::fopen(v_out.c_str(), "wb");
                if (!fp) {
                    std::cerr << "cannot write " << v_out << "\n";
                    return kExitParse;
                }
                std::fwrite(json.data(), 1, json.size(), fp);
                std::fclose(fp);
            }
            std::cout << json;
            for (const auto& c : report.checks)
                std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.group << "/" << c.id
                          << "\n";
            return report.all_pass() ? kExitOk : kExitOracleFail;
        }
    } catch (const xent::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const xent::ConstraintViolated& e) {
        std::cerr << "constraint violated: " << e.name() << "\n";
        return kExitConstraint;
    } catch (const xent::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
