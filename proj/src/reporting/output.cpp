#include "zetalab/reporting/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace zetalab::reporting {

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : "nan"; }

std::string csv_document(const RunConfig& cfg, const Table& table) {
  std::string out;
  for (const auto& [k, v] : cfg.entries()) out += "# " + k + " = " + v + "\n";
  for (const auto& [k, v] : table.meta) out += "# " + k + " = " + v + "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out += (i ? "," : "") + table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

Json config_json(const RunConfig& cfg) {
  Json j = Json::object();
  for (const auto& [k, v] : cfg.entries()) j[k] = v;
  return j;
}

std::string json_document(const RunConfig& cfg, const Json& results, const Json& errors) {
  Json doc = Json::object();
  doc["config"] = config_json(cfg);
  doc["results"] = results;
  doc["errors"] = errors;
  return doc.dump(2) + "\n";
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json to_json(const MomentRecord& rec) {
  return Json{{"lower", number(rec.lower)},     {"upper", number(rec.upper)},
              {"power", rec.power},             {"value", number(rec.value)},
              {"err_estimate", number(rec.err_estimate)}, {"evaluations", rec.evaluations}};
}

Json to_json(const FunctionalSample& s) {
  Json comps = Json::object();
  for (const auto& [k, v] : s.components) comps[k] = number(v);
  return Json{{"tau", number(s.tau)},
              {"x_target", number(s.x_target)},
              {"value", number(s.value)},
              {"rel_error_vs_target", number(s.rel_error_vs_target)},
              {"components", comps}};
}

Json to_json(const LadderSequence& seq) {
  Json it = Json::array(), inc = Json::array(), res = Json::array();
  for (double v : seq.iterates) it.push_back(number(v));
  for (double v : seq.increments) inc.push_back(number(v));
  for (double v : seq.residuals) res.push_back(number(v));
  return Json{{"base_T", number(seq.base_T)},
              {"mode", to_string(seq.mode)},
              {"iterates", it},
              {"increments", inc},
              {"residuals", res}};
}

Json to_json(const PartitionReport& r) {
  Json seg = Json::array(), ratios = Json::array();
  for (double v : r.segment_integrals) seg.push_back(number(v));
  for (double v : r.increment_ratios) ratios.push_back(number(v));
  return Json{{"equidistance_defect", number(r.equidistance_defect)},
              {"integral_defect", number(r.integral_defect)},
              {"segment_integrals", seg},
              {"increment_ratios", ratios}};
}

Json to_json(const CoeffFit& fit) {
  Json a = Json::array(), grid = Json::array(), moments = Json::array();
  for (double v : fit.a_coeffs) a.push_back(number(v));
  for (double v : fit.tau_grid) grid.push_back(number(v));
  for (double v : fit.moments) moments.push_back(number(v));
  return Json{{"a_coeffs", a},
              {"residual", number(fit.residual)},
              {"condition", number(fit.condition)},
              {"tau_grid", grid},
              {"fourth_moments", moments}};
}

Json to_json(const LimitFit& fit) {
  return Json{{"limit", number(fit.limit)},
              {"beta", number(fit.beta)},
              {"limit_stderr", number(fit.limit_stderr)},
              {"separated_from_one", fit.separated_from_one}};
}

Json to_json(const ChainReport& report) {
  const auto& names = chain_member_names();
  Json members = Json::array();
  for (int m = 0; m < kChainMembers; ++m) {
    Json values = Json::array(), ratios = Json::array(), errors = Json::array();
    for (std::size_t j = 0; j < report.tau_grid.size(); ++j) {
      values.push_back(number(report.members[m][j]));
      ratios.push_back(number(report.ratios[m][j]));
      errors.push_back(report.errors[m][j].empty() ? Json(nullptr) : Json(report.errors[m][j]));
    }
    const auto& slope = report.slopes[m];
    members.push_back(Json{{"name", names[m]},
                           {"values", values},
                           {"ratios", ratios},
                           {"errors", errors},
                           {"slope_p", slope.fitted ? number(slope.p) : Json(nullptr)},
                           {"slope_beta", slope.fitted ? number(slope.beta) : Json(nullptr)}});
  }
  Json taus = Json::array();
  for (double t : report.tau_grid) taus.push_back(number(t));
  return Json{{"x", number(report.x)},     {"sigma", number(report.sigma)},
              {"l", report.l},             {"mode", to_string(report.mode)},
              {"tau_grid", taus},          {"members", members}};
}

Json error_json(const std::string& kind, const std::string& message) {
  return Json{{"kind", kind}, {"message", message}};
}

std::string chain_svg(const ChainReport& report) {
  constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 170, kTop = 30, kBottom = 50;
  static const char* kColors[kChainMembers] = {"#000000", "#1f77b4", "#ff7f0e", "#2ca02c",
                                               "#d62728", "#9467bd", "#8c564b"};
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (int m = 1; m < kChainMembers; ++m) {
    for (std::size_t j = 0; j < report.tau_grid.size(); ++j) {
      const double gap = std::abs(report.ratios[m][j] - 1.0);
      if (!std::isfinite(gap) || gap <= 0.0) continue;
      const double lx = std::log10(1.0 / std::log(report.tau_grid[j]));
      const double ly = std::log10(gap);
      xmin = std::min(xmin, lx);
      xmax = std::max(xmax, lx);
      ymin = std::min(ymin, ly);
      ymax = std::max(ymax, ly);
    }
  }
  if (!std::isfinite(xmin)) xmin = -1, xmax = 0, ymin = -2, ymax = 0;
  if (xmax - xmin < 1e-3) xmin -= 0.05, xmax += 0.05;
  if (ymax - ymin < 1e-3) ymin -= 0.5, ymax += 0.5;
  const auto px = [&](double lx) { return kLeft + (lx - xmin) / (xmax - xmin) * (kW - kLeft - kRight); };
  const auto py = [&](double ly) { return kTop + (ymax - ly) / (ymax - ymin) * (kH - kTop - kBottom); };
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
                "font-family=\"sans-serif\" font-size=\"12\">\n",
                kW, kH);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#888\"/>\n",
                kLeft, kTop, kW - kLeft - kRight, kH - kTop - kBottom);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">log10(1/ln tau)</text>\n",
                kLeft + (kW - kLeft - kRight) / 2, kH - 12);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"16\" y=\"%g\" transform=\"rotate(-90 16 %g)\" "
                "text-anchor=\"middle\">log10|ratio - 1|</text>\n",
                kTop + (kH - kTop - kBottom) / 2, kTop + (kH - kTop - kBottom) / 2);
  svg += buf;
  for (int side = 0; side < 2; ++side) {
    const double v = side == 0 ? ymin : ymax;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.2f</text>\n",
                  kLeft - 6, py(v) + 4, v);
    svg += buf;
    const double u = side == 0 ? xmin : xmax;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.3f</text>\n",
                  px(u), kH - kBottom + 16, u);
    svg += buf;
  }
  const auto& names = chain_member_names();
  for (int m = 1; m < kChainMembers; ++m) {
    std::string points;
    for (std::size_t j = 0; j < report.tau_grid.size(); ++j) {
      const double gap = std::abs(report.ratios[m][j] - 1.0);
      if (!std::isfinite(gap) || gap <= 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(std::log10(1.0 / std::log(report.tau_grid[j]))),
                    py(std::log10(gap)));
      points += buf;
    }
    if (!points.empty()) {
      points.pop_back();
      svg += "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" + std::string(kColors[m]) +
             "\" points=\"" + points + "\"/>\n";
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" fill=\"%s\">%s</text>\n", kW - kRight + 10,
                  kTop + 18.0 * m, kColors[m], names[m].c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace zetalab::reporting
