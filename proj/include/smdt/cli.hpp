#pragma once

#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "smdt/census.hpp"
#include "smdt/dt_oracle.hpp"
#include "smdt/kmp.hpp"
#include "smdt/pattern.hpp"
#include "smdt/searcher.hpp"
#include "smdt/spectral.hpp"
#include "smdt/tuza.hpp"
#include "smdt/verification.hpp"

namespace smdt::cli {

using json = nlohmann::ordered_json;

namespace detail {

/// JSON cannot carry counts above 2^53 losslessly; emit those as strings.
inline json count_value(std::uint64_t v) {
    if (v > (std::uint64_t(1) << 53)) return std::to_string(v);
    return v;
}

inline json poly_json(const IntPolynomial& p) {
    json out;
    out["coefficients_low_to_high"] = p.coeffs();
    out["degree"] = p.degree();
    out["display"] = p.to_string("L");
    return out;
}

inline json roots_json(const RootProfile& prof) {
    json roots = json::array();
    for (const RootEstimate& r : prof.roots) {
        json entry;
        entry["re"] = r.value.real();
        entry["im"] = r.value.imag();
        entry["modulus"] = r.modulus;
        entry["multiplicity"] = r.multiplicity;
        roots.push_back(std::move(entry));
    }
    json out;
    out["roots"] = std::move(roots);
    out["dominant_case"] = prof.dominant_case;
    out["tolerance"] = prof.tolerance;
    return out;
}

inline json tuza_json(const TuzaVerdict& v) {
    json out;
    out["pattern"] = v.pattern;
    out["bifix_bases"] = v.bifix_bases;
    json p1 = json::array();
    for (const Property1Witness& w : v.property1_failures)
        p1.push_back({{"base", w.base}, {"offset", w.offset}, {"diff_count", w.diff_count}});
    out["property1_failures"] = std::move(p1);
    json p2 = json::array();
    for (const PropertyWitness& w : v.property2_failures)
        p2.push_back({{"offset", w.offset}, {"diff_count", w.diff_count}});
    out["property2_failures"] = std::move(p2);
    out["lower_bound_applies"] = v.lower_bound_applies;
    out["bound_gcd"] = v.bound_gcd;
    if (v.theorem2_threshold)
        out["theorem2_threshold"] = *v.theorem2_threshold;
    else
        out["theorem2_threshold"] = nullptr;
    out["predicted"] = v.predicted;
    return out;
}

inline json skolem_json(const SkolemVerdict& v) {
    json out;
    out["pattern"] = v.pattern;
    out["charpoly"] = poly_json(v.charpoly);
    out["root_case"] = v.root_case;
    out["horizon"] = v.horizon;
    if (v.nonzero_from)
        out["nonzero_from"] = *v.nonzero_from;
    else
        out["nonzero_from"] = nullptr;
    out["verdict"] = v.verdict;
    return out;
}

inline std::string frac_str(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(6) << v;
    return out.str();
}

inline std::size_t env_max_states() {
    if (const char* env = std::getenv("SMDT_MAX_STATES")) {
        const long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return OracleOptions{}.max_states;
}

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Pattern parse_pattern_arg(const std::string& text, int sigma) {
    return Pattern::parse(text, sigma);
}

inline std::vector<Symbol> parse_text_arg(const std::string& text, int sigma) {
    std::vector<Symbol> out;
    out.reserve(text.size());
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw UsageError("invalid text character; digits 0-9 only");
        const int d = ch - '0';
        if (d >= sigma) throw UsageError("text symbol out of alphabet range");
        out.push_back(static_cast<Symbol>(d));
    }
    return out;
}

inline int text_sigma(const std::string& pattern, const std::string& text, int sigma) {
    int needed = 2;
    for (char ch : pattern + text)
        if (ch >= '0' && ch <= '9') needed = std::max(needed, ch - '0' + 1);
    return sigma == 0 ? needed : sigma;
}

} // namespace detail

/// Runs the command line given argv-style arguments; output goes to `out`,
/// diagnostics to `err`. Returns the process exit status: 0 on success, 1 on
/// failed verification or internal error, 2 on usage errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"string-matching decision-tree toolkit"};
    app.require_subcommand(1);

    std::string pattern_text, text_arg;
    int sigma = 0;
    std::string format = "json";
    int n_arg = 0;
    bool table = false;
    bool worst_case = false;
    long long max_states = 0;
    int horizon = 2000;
    double tol = 1e-9;
    int m_arg = 0;
    int jobs = 0;
    std::uint64_t max_patterns = 0;
    std::string level = "desk";
    unsigned seed = 12345;

    auto* analyze = app.add_subcommand("analyze", "periods, bifixes, polynomial and verdicts");
    analyze->add_option("pattern", pattern_text)->required();
    analyze->add_option("--sigma", sigma, "alphabet size override");
    analyze->add_option("--horizon", horizon, "gbar horizon for the Skolem check");

    auto* automaton = app.add_subcommand("automaton", "KMP automaton and transfer matrix");
    automaton->add_option("pattern", pattern_text)->required();
    automaton->add_option("--sigma", sigma);

    auto* search = app.add_subcommand("search", "run the adaptive query search");
    search->add_option("pattern", pattern_text)->required();
    search->add_option("text", text_arg);
    search->add_option("--sigma", sigma);
    search->add_flag("--worst-case", worst_case, "exhaust all sigma^n texts");
    search->add_option("--n", n_arg, "text length for --worst-case");

    auto* complexity = app.add_subcommand("complexity", "exact decision-tree complexity");
    complexity->add_option("pattern", pattern_text)->required();
    complexity->add_option("--n", n_arg)->required();
    complexity->add_flag("--table", table, "print the (n, D) table as CSV");
    complexity->add_option("--max-states", max_states, "memo size cap");

    auto* tuza = app.add_subcommand("tuza", "combinatorial evasiveness verdict");
    tuza->add_option("pattern", pattern_text)->required();

    auto* spectral = app.add_subcommand("spectral", "characteristic polynomial and Skolem verdict");
    spectral->add_option("pattern", pattern_text)->required();
    spectral->add_option("--horizon", horizon);
    spectral->add_option("--tol", tol, "relative tolerance for root moduli");

    auto* census_cmd = app.add_subcommand("census", "classify the whole pattern space");
    census_cmd->add_option("--m", m_arg)->required();
    census_cmd->add_option("--sigma", sigma);
    census_cmd->add_option("--jobs", jobs);
    census_cmd->add_option("--max-patterns", max_patterns);
    census_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* census_b = app.add_subcommand("census-b", "exact |B1|, |B2| and bound margins");
    census_b->add_option("--length", m_arg)->required();
    census_b->add_option("--sigma", sigma);
    census_b->add_option("--max-patterns", max_patterns);

    auto* nielsen = app.add_subcommand("nielsen", "bifix-free fraction table");
    nielsen->add_option("--sigma", sigma)->required();
    nielsen->add_option("--m", m_arg)->required();
    nielsen->add_option("--jobs", jobs);
    nielsen->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
    verify_cmd->add_option("--level", level)->check(CLI::IsMember({"quick", "desk"}));
    verify_cmd->add_option("--jobs", jobs);
    verify_cmd->add_option("--seed", seed, "seed for sampled checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
            const PeriodSet ps = periods(p);
            json doc;
            doc["pattern"] = p.to_string();
            doc["sigma"] = p.sigma();
            doc["m"] = p.length();
            doc["periods"] = ps.periods;
            doc["gcd_c"] = ps.gcd_c;
            doc["bifixes"] = bifixes(p);
            doc["bifix_free"] = is_bifix_free(p);
            doc["tuza"] = detail::tuza_json(tuza_verdict(p));
            if (p.sigma() == 2) {
                doc["charpoly"] = detail::poly_json(charpoly_periods(p));
                doc["skolem"] = detail::skolem_json(skolem_verdict(p, horizon));
            } else {
                doc["charpoly"] = nullptr;
                doc["skolem"] = nullptr;
            }
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*automaton) {
            const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
            const KmpAutomaton a = build_automaton(p);
            json doc;
            doc["pattern"] = p.to_string();
            doc["m"] = p.length();
            doc["sigma"] = p.sigma();
            doc["states"] = a.state_count();
            json delta = json::array();
            for (int state = 1; state <= a.state_count(); ++state) {
                json row = json::array();
                for (Symbol s = 0; s < p.sigma(); ++s) row.push_back(a.next(state, s));
                delta.push_back(std::move(row));
            }
            doc["delta"] = std::move(delta);
            if (p.sigma() == 2) {
                const TransferMatrix t = transfer_matrix(p);
                json rows = json::array();
                for (int r = 1; r <= t.m(); ++r) {
                    json row = json::array();
                    for (int c = 1; c <= t.m(); ++c) row.push_back(t.at(r, c));
                    rows.push_back(std::move(row));
                }
                doc["transfer_matrix"] = std::move(rows);
            } else {
                doc["transfer_matrix"] = nullptr;
            }
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*search) {
            if (worst_case) {
                if (n_arg <= 0) throw detail::UsageError("--worst-case requires --n");
                const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
                double space = 1;
                for (int i = 0; i < n_arg; ++i) space *= p.sigma();
                if (space > (1 << 24))
                    throw InstanceTooLarge("worst-case enumeration limited to sigma^n <= 2^24");
                const WorstCase wc = worst_case_queries(p, n_arg);
                json doc;
                doc["pattern"] = p.to_string();
                doc["n"] = n_arg;
                doc["texts"] = detail::count_value(wc.texts);
                doc["max_queries"] = wc.max_queries;
                doc["budget"] = wc.budget;
                out << doc.dump(2) << "\n";
                return 0;
            }
            if (text_arg.empty())
                throw detail::UsageError("search requires a text (or --worst-case --n N)");
            const int joint_sigma = detail::text_sigma(pattern_text, text_arg, sigma);
            const Pattern p = detail::parse_pattern_arg(pattern_text, joint_sigma);
            const std::vector<Symbol> text = detail::parse_text_arg(text_arg, joint_sigma);
            TextOracle oracle(text, joint_sigma);
            const SearchOutcome got = find_general(oracle, p);
            const int n = static_cast<int>(text.size());
            json doc;
            doc["found"] = got.found;
            if (got.first_occurrence)
                doc["position"] = *got.first_occurrence;
            else
                doc["position"] = nullptr;
            doc["queries"] = got.queries_used;
            doc["budget"] = n - n % periods(p).gcd_c;
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*complexity) {
            const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
            OracleOptions opts;
            opts.max_states = max_states > 0 ? static_cast<std::size_t>(max_states)
                                             : detail::env_max_states();
            if (table) {
                out << "n,complexity,full_read\n";
                for (const CertificateRow& row : evasive_certificate(p, n_arg, opts))
                    out << row.n << "," << row.complexity << "," << (row.full_read ? 1 : 0)
                        << "\n";
                return 0;
            }
            const ComplexityReport report = exact_complexity(p, n_arg, opts);
            json doc;
            doc["pattern"] = report.pattern;
            doc["n"] = report.n;
            doc["exact"] = report.exact_value;
            doc["rivest_lower"] = report.rivest_lower;
            doc["period_upper"] = report.period_upper;
            doc["settled"] = report.settled;
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*tuza) {
            const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
            out << detail::tuza_json(tuza_verdict(p)).dump(2) << "\n";
            return 0;
        }
        if (*spectral) {
            const Pattern p = detail::parse_pattern_arg(pattern_text, sigma);
            const IntPolynomial cp = charpoly_periods(p);
            json doc;
            doc["pattern"] = p.to_string();
            doc["charpoly"] = detail::poly_json(cp);
            doc["root_profile"] = detail::roots_json(root_profile(cp, tol));
            doc["skolem"] = detail::skolem_json(skolem_verdict(p, horizon, tol));
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*census_cmd) {
            CensusOptions opts;
            opts.jobs = jobs;
            if (max_patterns > 0) opts.max_patterns = max_patterns;
            const CensusRow row = census(m_arg, sigma == 0 ? 2 : sigma, opts);
            if (format == "csv") {
                out << "m,sigma,total,bifix_free,b_frac,b1,b2,settled,tuza_evasive,unknown\n";
                out << row.m << "," << row.sigma << "," << row.total << "," << row.bifix_free
                    << "," << detail::frac_str(row.b_frac) << "," << row.b1 << "," << row.b2
                    << "," << row.settled << "," << row.tuza_evasive << "," << row.unknown
                    << "\n";
            } else {
                json doc;
                doc["m"] = row.m;
                doc["sigma"] = row.sigma;
                doc["total"] = detail::count_value(row.total);
                doc["bifix_free"] = detail::count_value(row.bifix_free);
                doc["b_frac"] = row.b_frac;
                doc["b1"] = detail::count_value(row.b1);
                doc["b2"] = detail::count_value(row.b2);
                doc["settled"] = detail::count_value(row.settled);
                doc["tuza_evasive"] = detail::count_value(row.tuza_evasive);
                doc["unknown"] = detail::count_value(row.unknown);
                out << doc.dump(2) << "\n";
            }
            return 0;
        }
        if (*census_b) {
            EnumerationOptions opts;
            if (max_patterns > 0) opts.max_patterns = max_patterns;
            const int s = sigma == 0 ? 2 : sigma;
            const B1B2Census counts = census_b1_b2(m_arg, s, opts);
            const double b1_bound = std::pow(double(m_arg), 4) / 2.0 *
                                    std::pow(double(s), m_arg / 2.0 + 2);
            const double b2_bound =
                std::pow(double(m_arg), 5) * std::pow(double(s), m_arg / 2.0 + 4);
            json doc;
            doc["m"] = m_arg;
            doc["sigma"] = s;
            doc["b1"] = detail::count_value(counts.b1);
            doc["b2"] = detail::count_value(counts.b2);
            doc["union"] = detail::count_value(counts.covered);
            doc["b1_bound"] = b1_bound;
            doc["b2_bound"] = b2_bound;
            doc["b1_margin"] = b1_bound - static_cast<double>(counts.b1);
            doc["b2_margin"] = b2_bound - static_cast<double>(counts.b2);
            out << doc.dump(2) << "\n";
            return 0;
        }
        if (*nielsen) {
            CensusOptions opts;
            opts.jobs = jobs;
            const NielsenRow row = nielsen_row(sigma, m_arg, opts);
            if (format == "csv") {
                out << "sigma,m,total,bifix_free,b_frac,limit_reference,lower_bound\n";
                out << row.sigma << "," << row.m << "," << row.total << "," << row.bifix_free
                    << "," << detail::frac_str(row.b_frac) << ",";
                if (row.limit_reference) out << detail::frac_str(*row.limit_reference);
                out << "," << detail::frac_str(row.lower_bound) << "\n";
            } else {
                json doc;
                doc["sigma"] = row.sigma;
                doc["m"] = row.m;
                doc["total"] = detail::count_value(row.total);
                doc["bifix_free"] = detail::count_value(row.bifix_free);
                doc["b_frac"] = row.b_frac;
                if (row.limit_reference)
                    doc["limit_reference"] = *row.limit_reference;
                else
                    doc["limit_reference"] = nullptr;
                doc["lower_bound"] = row.lower_bound;
                out << doc.dump(2) << "\n";
            }
            return 0;
        }
        if (*verify_cmd) {
            verify::VerifyOptions opts;
            opts.quick = (level == "quick");
            opts.jobs = jobs;
            opts.seed = seed;
            bool all_passed = true;
            for (const verify::CheckResult& r : verify::run_all(opts)) {
                all_passed = all_passed && r.passed;
                out << (r.passed ? "PASS" : "FAIL") << " " << r.id << ": " << r.name
                    << " -- " << r.detail << "\n";
                err << "criterion " << r.id << " took " << detail::frac_str(r.seconds)
                    << "s\n";
            }
            out << (all_passed ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
            return all_passed ? 0 : 1;
        }
    } catch (const detail::UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InstanceTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("smdt");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace smdt::cli
