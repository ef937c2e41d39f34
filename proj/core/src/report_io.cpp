#include "wiou/report_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wiou {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double round12(double v) {
  return std::strtod(format_value(v).c_str(), nullptr);
}

namespace {

using Json = nlohmann::ordered_json;

Json json_value(const std::optional<double>& v) {
  if (!v) {
    return nullptr;
  }
  return round12(*v);
}

Json class_json(const ClassMetrics& m, const std::vector<double>& alphas, const char* name) {
  Json j;
  if (name) {
    j["name"] = name;
  }
  j["iou"] = json_value(m.iou);
  Json w = Json::object();
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    w[format_value(alphas[k])] = json_value(k < m.wiou.size() ? m.wiou[k] : std::nullopt);
  }
  j["wiou"] = std::move(w);
  j["precision"] = json_value(m.precision);
  j["recall"] = json_value(m.recall);
  j["f1"] = json_value(m.f1);
  j["edge_precision"] = json_value(m.edge_precision);
  j["edge_recall"] = json_value(m.edge_recall);
  j["edge_f1"] = json_value(m.edge_f1);
  j["bf_score"] = json_value(m.bf_score);
  return j;
}

const char* norm_label(Norm n) {
  switch (n) {
    case Norm::L1:
      return "l1";
    case Norm::Linf:
      return "linf";
    case Norm::L2:
      break;
  }
  return "l2";
}

void append_csv_value(std::string& out, const std::optional<double>& v) {
  out.push_back(',');
  if (v) {
    out += format_value(*v);
  }
}

}  // namespace

std::string report_to_json(const MetricReport& report, const Palette* palette) {
  Json j;
  j["width"] = report.width;
  j["height"] = report.height;
  Json opts;
  Json alphas = Json::array();
  for (double a : report.options.alphas) {
    alphas.push_back(round12(a));
  }
  opts["alphas"] = std::move(alphas);
  opts["theta"] = round12(report.options.theta);
  opts["norm"] = norm_label(report.options.norm);
  opts["connectivity"] = report.options.connectivity;
  opts["distance_normalization"] =
      report.options.normalize_mode == NormalizeMode::Shifted ? "shifted" : "standard";
  j["options"] = std::move(opts);
  Json per_class = Json::object();
  for (const auto& [cls, m] : report.per_class) {
    const char* name = nullptr;
    if (palette) {
      if (const PaletteEntry* e = palette->entry_for(cls)) {
        name = e->name.c_str();
      }
    }
    per_class[std::to_string(cls)] = class_json(m, report.options.alphas, name);
  }
  j["per_class"] = std::move(per_class);
  j["aggregate"] = class_json(report.aggregate, report.options.alphas, nullptr);
  j["warnings"] = report.warnings;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const MetricReport& report, const Palette* palette) {
  std::string out =
      "class,name,alpha,iou,wiou,precision,recall,f1,"
      "edge_precision,edge_recall,edge_f1,bf_score\n";
  const auto emit_rows = [&](const std::string& id, const std::string& name,
                             const ClassMetrics& m) {
    for (std::size_t k = 0; k < report.options.alphas.size(); ++k) {
      out += id;
      out.push_back(',');
      out += name;
      out.push_back(',');
      out += format_value(report.options.alphas[k]);
      append_csv_value(out, m.iou);
      append_csv_value(out, k < m.wiou.size() ? m.wiou[k] : std::nullopt);
      append_csv_value(out, m.precision);
      append_csv_value(out, m.recall);
      append_csv_value(out, m.f1);
      append_csv_value(out, m.edge_precision);
      append_csv_value(out, m.edge_recall);
      append_csv_value(out, m.edge_f1);
      append_csv_value(out, m.bf_score);
      out.push_back('\n');
    }
  };
  for (const auto& [cls, m] : report.per_class) {
    std::string name;
    if (palette) {
      if (const PaletteEntry* e = palette->entry_for(cls)) {
        name = e->name;
      }
    }
    emit_rows(std::to_string(cls), name, m);
  }
  emit_rows("mean", "", report.aggregate);
  return out;
}

std::string summary_line(const MetricReport& report) {
  const auto value_or_na = [](const std::optional<double>& v) {
    return v ? format_value(*v) : std::string("n/a");
  };
  std::string out = "mIoU=" + value_or_na(report.aggregate.iou);
  for (std::size_t k = 0; k < report.options.alphas.size(); ++k) {
    out += " mwIoU[a=" + format_value(report.options.alphas[k]) + "]=" +
           value_or_na(k < report.aggregate.wiou.size() ? report.aggregate.wiou[k]
                                                        : std::nullopt);
  }
  out += " edgeF1=" + value_or_na(report.aggregate.edge_f1);
  return out;
}

}  // namespace wiou
