#include "mwdata.hpp"

#include <nlohmann/json.hpp>

namespace shaq {

using nlohmann::json;

MordellWeilData parse_mw_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        raise(ErrorCode::missing_mw_data, std::string("MW JSON parse failure: ") + e.what());
    }
    if (!j.contains("curves") || !j["curves"].is_array())
        raise(ErrorCode::missing_mw_data, "MW JSON must contain a 'curves' array");
    MordellWeilData mw;
    for (const auto& c : j["curves"]) {
        MWCurveEntry e;
        if (c.contains("label") && c["label"].is_string()) e.label = c["label"].get<std::string>();
        if (!c.contains("rank") || !c["rank"].is_number_integer())
            raise(ErrorCode::missing_mw_data, "curve entry missing integer 'rank'");
        e.rank = c["rank"].get<long>();
        if (e.rank < 0) raise(ErrorCode::missing_mw_data, "negative rank");
        e.analytic_rank_zero = c.value("analytic_rank_zero", false);
        e.sha_A_square_attested = c.value("sha_A_square_attested", false);
        if (c.contains("generators")) {
            for (const auto& g : c["generators"]) {
                if (!g.is_array() || g.size() != 2)
                    raise(ErrorCode::missing_mw_data, "generator must be [x, y]");
                e.generators.emplace_back(parse_rational(g[0].get<std::string>()),
                                          parse_rational(g[1].get<std::string>()));
            }
        }
        mw.curves.push_back(std::move(e));
    }
    return mw;
}

void validate_mw(const MordellWeilData& mw, const std::vector<WeierstrassModel>& curves) {
    if (mw.curves.size() < curves.size())
        raise(ErrorCode::missing_mw_data,
              "MW data has " + std::to_string(mw.curves.size()) + " entries, need " +
                  std::to_string(curves.size()));
    for (size_t i = 0; i < curves.size(); ++i) {
        const MWCurveEntry& e = mw.curves[i];
        if (long(e.generators.size()) != e.rank)
            raise(ErrorCode::missing_mw_data,
                  "curve " + std::to_string(i + 1) + ": generator count != rank");
        for (const CurvePoint& g : e.generators)
            if (!on_curve(curves[i], g))
                raise(ErrorCode::point_not_on_curve,
                      "curve " + std::to_string(i + 1) + ": generator not on the model");
    }
}

MordellWeilData synthesized_rank0(size_t ncurves) {
    MordellWeilData mw;
    for (size_t i = 0; i < ncurves; ++i) {
        MWCurveEntry e;
        e.rank = 0;
        e.analytic_rank_zero = true;
        e.sha_A_square_attested = false;
        mw.curves.push_back(e);
    }
    return mw;
}

} // namespace shaq
