#include "speedlimit/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "speedlimit/error.hpp"

namespace speedlimit {
namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

BoundStatus status_from(const std::string& s) {
  if (s == "ok") return BoundStatus::ok;
  if (s == "stationary") return BoundStatus::stationary;
  if (s == "no_bound") return BoundStatus::no_bound;
  throw DataError("unknown bound status '" + s + "'");
}

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw DomainError("unknown output format '" + name + "' (expected json or csv)");
}

ExitCode exit_code_for(const BoundReport& report) {
  return report.all_valid() ? ExitCode::valid : ExitCode::violation;
}

json to_json(const RunRecord& record) {
  json bounds = json::array();
  for (const auto& e : record.report.entries) {
    bounds.push_back({{"name", e.name},
                      {"t", e.t},
                      {"tau", number(e.value.tau)},
                      {"status", to_string(e.value.status)},
                      {"note", e.value.note},
                      {"slack", number(e.slack)},
                      {"valid", e.valid},
                      {"overlap", number(e.overlap)},
                      {"norm0", number(e.norm0)}});
  }
  json tightness = json::array();
  for (const auto& t : record.report.tightness) {
    json row = {{"label", t.label}, {"t", t.t}, {"mt_over_ml", number(t.mt_over_ml)}};
    row["ordering_holds"] = t.ordering_holds ? json(*t.ordering_holds) : json(nullptr);
    tightness.push_back(std::move(row));
  }
  json curves = json::array();
  for (const auto& c : record.curves) {
    json overlaps = json::array();
    for (double v : c.overlaps) overlaps.push_back(number(v));
    curves.push_back({{"label", c.label},
                      {"times", c.times},
                      {"overlaps", std::move(overlaps)},
                      {"norm0", number(c.norm0)}});
  }
  return {{"scenario_id", record.report.scenario_id},
          {"version", record.version},
          {kWallClockKey, record.wall_seconds},
          {"config", record.config},
          {"bounds", std::move(bounds)},
          {"tightness", std::move(tightness)},
          {"curves", std::move(curves)},
          {"summary",
           {{"entries", record.report.entries.size()},
            {"violations", record.report.violation_count()},
            {"ordering_violations", record.report.ordering_violation_count()},
            {"all_valid", record.report.all_valid()}}}};
}

RunRecord record_from_json(const json& doc) {
  try {
    RunRecord record;
    record.report.scenario_id = doc.at("scenario_id").get<std::string>();
    record.version = doc.at("version").get<std::string>();
    record.wall_seconds = doc.at(kWallClockKey).get<double>();
    record.config = doc.at("config");
    for (const auto& b : doc.at("bounds")) {
      BoundEntry e;
      e.name = b.at("name").get<std::string>();
      e.t = b.at("t").get<double>();
      e.value.tau = number_from(b.at("tau"));
      e.value.status = status_from(b.at("status").get<std::string>());
      e.value.note = b.at("note").get<std::string>();
      e.slack = number_from(b.at("slack"));
      e.valid = b.at("valid").get<bool>();
      e.overlap = number_from(b.at("overlap"));
      e.norm0 = number_from(b.at("norm0"));
      record.report.entries.push_back(std::move(e));
    }
    for (const auto& t : doc.at("tightness")) {
      TightnessEntry e;
      e.label = t.at("label").get<std::string>();
      e.t = t.at("t").get<double>();
      e.mt_over_ml = number_from(t.at("mt_over_ml"));
      if (!t.at("ordering_holds").is_null()) {
        e.ordering_holds = t.at("ordering_holds").get<bool>();
      }
      record.report.tightness.push_back(std::move(e));
    }
    for (const auto& c : doc.at("curves")) {
      Curve curve;
      curve.label = c.at("label").get<std::string>();
      curve.times = c.at("times").get<std::vector<double>>();
      for (const auto& v : c.at("overlaps")) curve.overlaps.push_back(number_from(v));
      curve.norm0 = number_from(c.at("norm0"));
      record.curves.push_back(std::move(curve));
    }
    return record;
  } catch (const json::exception& ex) {
    throw DataError(std::string("malformed run record: ") + ex.what());
  }
}

std::string to_csv(const BoundReport& report) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& e : report.entries) {
    out << csv_number(e.t) << ',' << csv_number(e.overlap) << ','
        << csv_number(e.norm0) << ',' << e.name << ',' << csv_number(e.value.tau)
        << ',' << csv_number(e.slack) << ',' << (e.valid ? "true" : "false")
        << '\n';
  }
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error("cannot move output into place at " + path.string());
  }
}

std::filesystem::path emit(const RunRecord& record, OutputFormat format,
                           const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::string stem = record.report.scenario_id;
  if (format == OutputFormat::json) {
    auto path = dir / (stem + ".json");
    write_atomically(path, to_json(record).dump(2) + "\n");
    return path;
  }
  auto path = dir / (stem + ".csv");
  write_atomically(path, to_csv(record.report));
  return path;
}

}  // namespace speedlimit
