#include "shaq.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include <nlohmann/json.hpp>

#include "ctengine.hpp"
#include "report.hpp"
#include "verify.hpp"
#include "version.hpp"

using namespace shaq;

struct shaq_report {
    CTReport rep;
    std::string json;
    std::string table;
};

namespace {

thread_local std::string t_last_error;

shaq_status status_of(const Error& e) {
    switch (e.code()) {
        case ErrorCode::undetermined_local_case: return SHAQ_UNDETERMINED;
        case ErrorCode::excluded_parameter:
        case ErrorCode::missing_mw_data:
        case ErrorCode::unsupported_positive_rank:
        case ErrorCode::isogeny_inconsistent:
        case ErrorCode::infinity_case_unsupported:
        case ErrorCode::torsion_hypothesis_violated:
        case ErrorCode::not_local_kernel:
        case ErrorCode::point_not_on_curve:
        case ErrorCode::invalid_input: return SHAQ_UNSUPPORTED;
        default: return SHAQ_ERROR;
    }
}

shaq_report* wrap(CTReport&& rep) {
    auto* h = new shaq_report;
    h->rep = std::move(rep);
    h->json = report_to_json(h->rep);
    h->table = report_to_table(h->rep);
    return h;
}

WeierstrassModel curve_from_json(const nlohmann::json& j) {
    if (!j.contains("a") || !j["a"].is_array() || j["a"].size() != 5)
        raise(ErrorCode::invalid_input, "curve JSON must contain \"a\": [a1,a2,a3,a4,a6]");
    Rat a[5];
    for (int i = 0; i < 5; ++i) a[i] = parse_rational(j["a"][i].get<std::string>());
    return WeierstrassModel(a[0], a[1], a[2], a[3], a[4]);
}

qp::Poly poly_from_json(const nlohmann::json& j) {
    if (!j.contains("coeffs") || !j["coeffs"].is_array())
        raise(ErrorCode::invalid_input, "kernel JSON must contain \"coeffs\"");
    std::vector<Rat> cs;
    for (const auto& c : j["coeffs"]) cs.push_back(parse_rational(c.get<std::string>()));
    return qp::make(cs);
}

} // namespace

extern "C" {

shaq_status shaq_analyze_family(int family, const char* d1, const char* d2, const char* mw_json,
                                shaq_report** out) {
    if (!out) return SHAQ_UNSUPPORTED;
    *out = nullptr;
    try {
        if (!d1 || !d2 || !mw_json) raise(ErrorCode::invalid_input, "null argument");
        FamilyInstance i1 = build_family(family, parse_rational(d1));
        FamilyInstance i2 = build_family(family, parse_rational(d2));
        MordellWeilData mw = parse_mw_json(mw_json);
        *out = wrap(assemble(i1, i2, mw));
        return SHAQ_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SHAQ_ERROR;
    }
}

shaq_status shaq_analyze_generic(const char* curves_json, const char* mw_json,
                                 shaq_report** out) {
    if (!out) return SHAQ_UNSUPPORTED;
    *out = nullptr;
    try {
        if (!curves_json || !mw_json) raise(ErrorCode::invalid_input, "null argument");
        nlohmann::json j = nlohmann::json::parse(curves_json);
        GenericPipelineInput in;
        in.ell = j.value("ell", 13);
        in.E1 = curve_from_json(j.at("E1"));
        in.E2 = curve_from_json(j.at("E2"));
        in.E1prime = curve_from_json(j.at("E1prime"));
        in.E2prime = curve_from_json(j.at("E2prime"));
        in.kernel_poly1 = poly_from_json(j.at("kernel1"));
        in.kernel_poly2 = poly_from_json(j.at("kernel2"));
        MordellWeilData mw = parse_mw_json(mw_json);
        *out = wrap(generic_prime_pipeline(in, mw));
        return SHAQ_OK;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SHAQ_ERROR;
    }
}

const char* shaq_report_json(const shaq_report* rep) { return rep ? rep->json.c_str() : ""; }
const char* shaq_report_table(const shaq_report* rep) { return rep ? rep->table.c_str() : ""; }
int shaq_report_k(const shaq_report* rep) { return rep ? int(rep->rep.k.get_si()) : -1; }
void shaq_report_free(shaq_report* rep) { delete rep; }

shaq_status shaq_verify(const char* suite, long n, uint64_t seed, char** log_out) {
    if (log_out) *log_out = nullptr;
    try {
        if (!suite) raise(ErrorCode::invalid_input, "null suite");
        VerifyResult r = run_verify_suite(suite, n, seed);
        std::string summary = std::string("suite=") + suite + " checked=" +
                              std::to_string(r.checked) + " skipped=" +
                              std::to_string(r.skipped) + (r.pass ? " PASS" : " FAIL") +
                              (r.log.empty() ? "" : "\n" + r.log);
        if (log_out) {
            *log_out = static_cast<char*>(std::malloc(summary.size() + 1));
            std::memcpy(*log_out, summary.c_str(), summary.size() + 1);
        }
        return r.pass ? SHAQ_OK : SHAQ_ERROR;
    } catch (const Error& e) {
        t_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return SHAQ_ERROR;
    }
}

void shaq_string_free(char* s) { std::free(s); }

const char* shaq_last_error(void) { return t_last_error.c_str(); }

const char* shaq_version(void) { return SHAQ_VERSION; }

void shaq_set_factor_budget(uint64_t budget) { set_factor_budget(budget); }

} // extern "C"
