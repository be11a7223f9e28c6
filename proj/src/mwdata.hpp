#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "curve.hpp"

namespace shaq {

struct MWCurveEntry {
    std::optional<std::string> label;
    long rank = 0;
    bool analytic_rank_zero = false;
    std::vector<CurvePoint> generators; // count must equal rank
    bool sha_A_square_attested = false;
};

struct MordellWeilData {
    std::vector<MWCurveEntry> curves;
};

// Schema: {"curves":[{"label":str?,"rank":int,"analytic_rank_zero":bool,
//   "generators":[["xnum/xden","ynum/yden"],...],"sha_A_square_attested":bool}]}
MordellWeilData parse_mw_json(const std::string& json_text);

// Generator count vs rank, and each generator on its curve.
void validate_mw(const MordellWeilData& mw, const std::vector<WeierstrassModel>& curves);

MordellWeilData synthesized_rank0(size_t ncurves);

} // namespace shaq
