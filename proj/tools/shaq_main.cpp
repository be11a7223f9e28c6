// Command-line front end; links only the public C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "shaq.h"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        std::exit(3);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(shaq_report* rep, const std::string& output, const std::string& format) {
    std::string text;
    if (format == "json")
        text = shaq_report_json(rep);
    else if (format == "table")
        text = shaq_report_table(rep);
    else
        text = std::string(shaq_report_table(rep)) + "\n" + shaq_report_json(rep) + "\n";
    if (output.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "cannot write " << output << "\n";
            shaq_report_free(rep);
            return 3;
        }
        out << text;
        std::cout << "k = " << shaq_report_k(rep) << "  (report written to " << output << ")\n";
    }
    shaq_report_free(rep);
    return 0;
}

int status_to_exit(shaq_status st) {
    switch (st) {
        case SHAQ_OK: return 0;
        case SHAQ_UNDETERMINED: return 2;
        case SHAQ_UNSUPPORTED: return 3;
        default: return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("shaq ") + shaq_version() +
                 " - Cassels-Tate quotients for diagonal isogenies E1 x E2 -> B"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "analyze a family pair (N in {5,6,7,10})");
    int family = 5;
    std::string d1, d2, mw_path, output, format = "both";
    analyze->add_option("--family", family, "family N")->required();
    analyze->add_option("--d1", d1, "first parameter u/v")->required();
    analyze->add_option("--d2", d2, "second parameter u/v")->required();
    analyze->add_option("--mw", mw_path, "Mordell-Weil JSON file")->required();
    analyze->add_option("--output", output, "write the report here instead of stdout");
    analyze->add_option("--format", format, "json|table|both")
        ->check(CLI::IsMember({"json", "table", "both"}));

    // generic13
    auto* generic = app.add_subcommand("generic13", "generic odd-prime-degree pipeline");
    std::string e1, e2, e1p, e2p, k1, k2, gmw, goutput, gformat = "both";
    long ell = 13;
    generic->add_option("--e1", e1, "E1 curve JSON file")->required();
    generic->add_option("--e2", e2, "E2 curve JSON file")->required();
    generic->add_option("--e1prime", e1p, "E1' curve JSON file")->required();
    generic->add_option("--e2prime", e2p, "E2' curve JSON file")->required();
    generic->add_option("--kernel1", k1, "kernel polynomial of eta1 (JSON file)")->required();
    generic->add_option("--kernel2", k2, "kernel polynomial of eta2 (JSON file)")->required();
    generic->add_option("--mw", gmw, "Mordell-Weil JSON file (E1,E2,E1',E2')")->required();
    generic->add_option("--ell", ell, "isogeny degree (odd prime, default 13)");
    generic->add_option("--output", goutput, "write the report here instead of stdout");
    generic->add_option("--format", gformat, "json|table|both")
        ->check(CLI::IsMember({"json", "table", "both"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run a brute-force verification suite");
    std::string suite;
    long n = 25;
    uint64_t seed = 1;
    verify->add_option("--suite", suite,
                       "red-lemmas|ap-invariance|fp-hom|divides-n|torsion-cors|all")
        ->required();
    verify->add_option("--n", n, "sample size per family");
    verify->add_option("--seed", seed, "PRNG seed");

    CLI11_PARSE(app, argc, argv);

    if (*analyze) {
        shaq_report* rep = nullptr;
        shaq_status st = shaq_analyze_family(family, d1.c_str(), d2.c_str(),
                                             slurp(mw_path).c_str(), &rep);
        if (st != SHAQ_OK) {
            std::cerr << "error: " << shaq_last_error() << "\n";
            return status_to_exit(st);
        }
        return emit(rep, output, format);
    }

    if (*generic) {
        nlohmann::json bundle;
        bundle["ell"] = ell;
        bundle["E1"] = nlohmann::json::parse(slurp(e1));
        bundle["E2"] = nlohmann::json::parse(slurp(e2));
        bundle["E1prime"] = nlohmann::json::parse(slurp(e1p));
        bundle["E2prime"] = nlohmann::json::parse(slurp(e2p));
        bundle["kernel1"] = nlohmann::json::parse(slurp(k1));
        bundle["kernel2"] = nlohmann::json::parse(slurp(k2));
        shaq_report* rep = nullptr;
        shaq_status st = shaq_analyze_generic(bundle.dump().c_str(), slurp(gmw).c_str(), &rep);
        if (st != SHAQ_OK) {
            std::cerr << "error: " << shaq_last_error() << "\n";
            return status_to_exit(st);
        }
        return emit(rep, goutput, gformat);
    }

    if (*verify) {
        char* log = nullptr;
        shaq_status st = shaq_verify(suite.c_str(), n, seed, &log);
        if (log) {
            std::cout << log << "\n";
            shaq_string_free(log);
        }
        if (st == SHAQ_UNSUPPORTED) {
            std::cerr << "usage error: " << shaq_last_error() << "\n";
            return 3;
        }
        return st == SHAQ_OK ? 0 : 1;
    }
    return 0;
}
