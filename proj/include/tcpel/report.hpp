#ifndef TCPEL_REPORT_HPP
#define TCPEL_REPORT_HPP

#include <string>

#include "tcpel/rank.hpp"

namespace tcpel {

enum class ReportFormat { Json, Tsv };

// Render a ranking result. JSON carries per-atom {atom, score, logScore},
// the order, s, t, U, logU, provablePairs with strict flags, bottomMass,
// and a config echo. TSV carries atom/score/logScore rows plus a header
// comment with U. Numbers use 17 significant digits so a re-parse is
// bit-exact; -inf log values render as JSON null.
std::string emitReport(const RankingResult& r, ReportFormat format,
                       const RankConfig& cfg = {});

}  // namespace tcpel

#endif  // TCPEL_REPORT_HPP
