#include "tcpel/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "tcpel/logsumexp.hpp"

namespace tcpel {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// A JSON number with 17 significant digits; null for non-finite values
// (JSON has no infinities).
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return json::parse(fmt17(v));
}

json configEcho(const RankConfig& cfg) {
  json c;
  c["maxClasses"] =
      cfg.stop.maxClasses ? json(*cfg.stop.maxClasses) : json(nullptr);
  c["maxWorlds"] = cfg.stop.maxWorlds ? json(*cfg.stop.maxWorlds) : json(nullptr);
  c["maxSeconds"] =
      cfg.stop.maxSeconds ? num(*cfg.stop.maxSeconds) : json(nullptr);
  c["targetBound"] =
      cfg.stop.targetBound ? num(*cfg.stop.targetBound) : json(nullptr);
  c["inconsistency"] =
      cfg.policy == InconsistencyPolicy::Explode ? "explode" : "skip";
  c["tightBound"] = cfg.tightBound;
  return c;
}

}  // namespace

std::string emitReport(const RankingResult& r, ReportFormat format,
                       const RankConfig& cfg) {
  if (format == ReportFormat::Tsv) {
    std::ostringstream os;
    os << "# U=" << fmt17(std::exp(r.logU)) << "\tlogU=" << fmt17(r.logU)
       << "\ts=" << r.worldsAnalyzed << "\tt=" << r.classesAnalyzed
       << "\tbottomMass=" << fmt17(std::exp(r.bottomLogMass))
       << "\tcompleted=" << (r.completed ? 1 : 0) << "\n";
    os << "atom\tscore\tlogScore\n";
    for (const auto& e : r.order)
      os << e.atom.toString() << "\t" << fmt17(std::exp(e.logScore)) << "\t"
         << fmt17(e.logScore) << "\n";
    return os.str();
  }

  json doc;
  json atoms = json::array();
  json order = json::array();
  for (const auto& e : r.order) {
    atoms.push_back({{"atom", e.atom.toString()},
                     {"score", num(std::exp(e.logScore))},
                     {"logScore", num(e.logScore)}});
    order.push_back(e.atom.toString());
  }
  doc["atoms"] = std::move(atoms);
  doc["order"] = std::move(order);
  doc["s"] = r.worldsAnalyzed;
  doc["t"] = r.classesAnalyzed;
  doc["U"] = num(std::exp(r.logU));
  doc["logU"] = num(r.logU);
  doc["bottomMass"] = num(std::exp(r.bottomLogMass));
  doc["bottomLogMass"] = num(r.bottomLogMass);
  json pairs = json::array();
  for (const auto& p : r.provablePairs)
    pairs.push_back({{"lower", p.lower.toString()},
                     {"upper", p.upper.toString()},
                     {"strict", p.strict}});
  doc["provablePairs"] = std::move(pairs);
  doc["completed"] = r.completed;
  doc["config"] = configEcho(cfg);
  return doc.dump(2) + "\n";
}

}  // namespace tcpel
