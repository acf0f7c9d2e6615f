#pragma once

#include "seqcmp/affix.hpp"
#include "seqcmp/alignment.hpp"
#include "seqcmp/dataset.hpp"
#include "seqcmp/layout.hpp"
#include "seqcmp/mining.hpp"

#include <json.hpp>

#include <string>

namespace seqcmp {

nlohmann::json toJson(const DatasetStats& s);

/// `{columns:[{path,count,avgLength,residual}], rows:[...], cells:[[{count,avgLength}]], maxCellCount, barMetric}`.
/// Suffix paths are end-aligned.
nlohmann::json toJson(const Grid& g);

nlohmann::json toJson(const MatrixState& s);
MatrixState matrixStateFromJson(const nlohmann::json& j);

nlohmann::json toJson(const Selection& s);
Selection selectionFromJson(const nlohmann::json& j);

nlohmann::json toJson(const MiningConfig& c);

/// `{id, events, support:{pct,count,countA,countB}, sequenceIds}`.
nlohmann::json toJson(const Pattern& p, const std::string& id);

/// `{unitSize, containers:{pid:{x,y,w,h}}, units:[{pid,sid,set,x,y}], overflow:[pid...]}`.
nlohmann::json toJson(const LayoutResult& r);

/// `{pattern, keyEvents, alignEvent, rows:[{sid,set,offset,events}]}`.
nlohmann::json toJson(const AlignmentView& v);

} // namespace seqcmp
