#include "report.hpp"

#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "version.hpp"

namespace shaq {

using nlohmann::json;

namespace {

CokerVerdict verdict_from_name(const std::string& s) {
    if (s == "trivial") return CokerVerdict::trivial;
    if (s == "max-unramified") return CokerVerdict::max_unramified;
    if (s == "maximal") return CokerVerdict::maximal;
    return CokerVerdict::undetermined;
}

} // namespace

std::string report_to_json(const CTReport& rep) {
    json j;
    j["tool"] = std::string("shaq ") + SHAQ_VERSION;
    j["input"] = json::object();
    j["input"]["descriptor"] = rep.descriptor;
    j["input"]["parameters"] = rep.inputs;
    j["input"]["ells"] = rep.ells;
    j["rows"] = json::array();
    for (const auto& row : rep.rows) {
        json r;
        r["place"] = row.p ? row.p->get_str() : "inf";
        r["quotient"] = rational_string(row.quotient);
        r["E1"] = row.e1_cell;
        r["E2"] = row.e2_cell;
        json verdicts = json::object();
        for (const auto& [ell, pe] : row.per_ell) {
            json v;
            v["eta1"] = verdict_name(pe.eta1);
            v["eta2"] = verdict_name(pe.eta2);
            v["phi"] = verdict_name(pe.phi);
            v["quotient"] = rational_string(pe.quotient);
            verdicts["l=" + std::to_string(ell)] = v;
        }
        r["verdicts"] = verdicts;
        j["rows"].push_back(r);
    }
    j["local_product"] = rational_string(rep.local_product);
    j["torsion_quotient"] = rational_string(rep.torsion_quotient);
    j["regulator_quotient"] = rational_string(rep.regulator_quotient);
    j["final_quotient"] = rational_string(rep.final_quotient);
    j["k"] = rep.k.get_si();
    j["assumptions"] = rep.assumptions;
    return j.dump(2);
}

CTReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    CTReport rep;
    rep.descriptor = j["input"]["descriptor"].get<std::string>();
    for (const auto& s : j["input"]["parameters"]) rep.inputs.push_back(s.get<std::string>());
    for (const auto& e : j["input"]["ells"]) rep.ells.push_back(e.get<long>());
    for (const auto& r : j["rows"]) {
        LocalQuotientRow row;
        std::string place = r["place"].get<std::string>();
        if (place != "inf") row.p = Int(place);
        row.quotient = parse_rational(r["quotient"].get<std::string>());
        row.e1_cell = r["E1"].get<std::string>();
        row.e2_cell = r["E2"].get<std::string>();
        for (auto it = r["verdicts"].begin(); it != r["verdicts"].end(); ++it) {
            long ell = std::stol(it.key().substr(2));
            LocalQuotientRow::PerEll pe;
            pe.eta1 = verdict_from_name((*it)["eta1"].get<std::string>());
            pe.eta2 = verdict_from_name((*it)["eta2"].get<std::string>());
            pe.phi = verdict_from_name((*it)["phi"].get<std::string>());
            pe.quotient = parse_rational((*it)["quotient"].get<std::string>());
            row.per_ell[ell] = pe;
        }
        rep.rows.push_back(row);
    }
    rep.local_product = parse_rational(j["local_product"].get<std::string>());
    rep.torsion_quotient = parse_rational(j["torsion_quotient"].get<std::string>());
    rep.regulator_quotient = parse_rational(j["regulator_quotient"].get<std::string>());
    rep.final_quotient = parse_rational(j["final_quotient"].get<std::string>());
    rep.k = Int(j["k"].get<long>());
    for (const auto& a : j["assumptions"]) rep.assumptions.push_back(a.get<std::string>());
    return rep;
}

std::string report_to_table(const CTReport& rep) {
    std::vector<std::string> headers{"place"};
    for (const auto& row : rep.rows) headers.push_back(row.p ? row.p->get_str() : "inf");

    std::vector<std::vector<std::string>> lines;
    std::vector<std::string> e1{"E1"}, e2{"E2"};
    for (const auto& row : rep.rows) {
        e1.push_back(row.e1_cell);
        e2.push_back(row.e2_cell);
    }
    lines.push_back(e1);
    lines.push_back(e2);
    for (long ell : rep.ells) {
        std::vector<std::string> lr{"l=" + std::to_string(ell)};
        for (const auto& row : rep.rows) {
            auto it = row.per_ell.find(ell);
            lr.push_back(it == row.per_ell.end() ? "" : rational_string(it->second.quotient));
        }
        lines.push_back(lr);
    }

    std::vector<size_t> widths(headers.size(), 0);
    for (size_t i = 0; i < headers.size(); ++i) widths[i] = headers[i].size();
    for (const auto& line : lines)
        for (size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], line[i].size());

    std::ostringstream os;
    os << rep.descriptor << "  inputs:";
    for (const auto& s : rep.inputs) os << " " << s;
    os << "\n";
    auto emit = [&](const std::vector<std::string>& line) {
        for (size_t i = 0; i < line.size(); ++i)
            os << (i ? " | " : "") << std::setw(int(widths[i])) << std::left << line[i];
        os << "\n";
    };
    emit(headers);
    emit(e1);
    emit(e2);
    for (size_t i = 2; i < lines.size(); ++i) emit(lines[i]);
    os << "local product   = " << rational_string(rep.local_product) << "\n";
    os << "torsion quotient = " << rational_string(rep.torsion_quotient) << "\n";
    os << "regulator quotient = " << rational_string(rep.regulator_quotient) << "\n";
    os << "final quotient  = " << rational_string(rep.final_quotient)
       << "   (#Sha(A)/#Sha(B))\n";
    os << "k               = " << rep.k.get_str() << "\n";
    for (const auto& a : rep.assumptions) os << "note: " << a << "\n";
    return os.str();
}

} // namespace shaq
