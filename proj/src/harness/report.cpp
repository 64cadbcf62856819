#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lvc/error.hpp"
#include "lvc/harness.hpp"

namespace lvc::harness {

using nlohmann::ordered_json;

std::string to_string(Status status) {
  switch (status) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
    case Status::info:
      return "info";
  }
  return "info";
}

Status parse_status(std::string_view text) {
  if (text == "pass") return Status::pass;
  if (text == "fail") return Status::fail;
  if (text == "skipped") return Status::skipped;
  if (text == "info") return Status::info;
  throw ParseError("unknown status '" + std::string(text) + "'");
}

Summary VerificationReport::summary() const {
  Summary s;
  for (const auto& row : rows) {
    switch (row.status) {
      case Status::pass:
        ++s.pass;
        break;
      case Status::fail:
        ++s.fail;
        break;
      case Status::skipped:
        ++s.skipped;
        break;
      case Status::info:
        ++s.info;
        break;
    }
  }
  return s;
}

int VerificationReport::exit_code() const {
  if (cap_exceeded) return 2;
  return summary().fail == 0 ? 0 : 1;
}

void VerificationReport::append(const VerificationReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  for (const auto& [id, seed] : other.seeds) seeds[id] = seed;
  cap_exceeded = cap_exceeded || other.cap_exceeded;
  wall_time_ms += other.wall_time_ms;
}

bool VerificationReport::same_content(const VerificationReport& other) const {
  return version == other.version && rows == other.rows && seeds == other.seeds && cap_exceeded == other.cap_exceeded;
}

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw ParseError("unknown format '" + std::string(text) + "'");
}

namespace {

ordered_json to_json(const VerificationReport& report) {
  ordered_json j;
  j["version"] = report.version;
  const auto s = report.summary();
  j["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}, {"info", s.info}};
  j["cap_exceeded"] = report.cap_exceeded;
  j["seeds"] = ordered_json::object();
  for (const auto& [id, seed] : report.seeds) j["seeds"][id] = seed;
  j["wall_time_ms"] = report.wall_time_ms;
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["scenario"] = row.scenario;
    r["check"] = row.check;
    r["anchor"] = row.anchor;
    r["status"] = to_string(row.status);
    r["witness"] = ordered_json::object();
    for (const auto& [k, v] : row.witness) r["witness"][k] = v;
    r["detail"] = row.detail;
    j["rows"].push_back(std::move(r));
  }
  return j;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined_witness(const ReportRow& row) {
  std::string out;
  for (const auto& [k, v] : row.witness) {
    if (!out.empty()) out += "; ";
    out += k + "=" + v;
  }
  return out;
}

}  // namespace

std::string emit_report(const VerificationReport& report, Format format) {
  switch (format) {
    case Format::json:
      return to_json(report).dump(2) + "\n";
    case Format::csv: {
      std::string out = "scenario,check,anchor,status,witness,detail\n";
      for (const auto& row : report.rows)
        out += csv_field(row.scenario) + "," + csv_field(row.check) + "," + csv_field(row.anchor) + "," +
               to_string(row.status) + "," + csv_field(joined_witness(row)) + "," + csv_field(row.detail) + "\n";
      return out;
    }
    case Format::text: {
      std::vector<const ReportRow*> order;
      for (const auto& row : report.rows) order.push_back(&row);
      std::stable_partition(order.begin(), order.end(), [](const ReportRow* r) { return r->status == Status::fail; });
      std::ostringstream out;
      for (const auto* row : order) {
        out << "[" << to_string(row->status) << "] " << row->scenario << " " << row->check << " (" << row->anchor << ")";
        if (!row->witness.empty()) out << " {" << joined_witness(*row) << "}";
        if (!row->detail.empty()) out << " " << row->detail;
        out << "\n";
      }
      const auto s = report.summary();
      out << "summary: " << s.pass << " pass, " << s.fail << " fail, " << s.skipped << " skipped, " << s.info
          << " info";
      if (report.cap_exceeded) out << ", cap exceeded";
      out << "\nversion " << report.version << ", " << report.wall_time_ms << " ms\n";
      return out.str();
    }
  }
  return {};
}

VerificationReport load_report(std::string_view json_text) {
  VerificationReport report;
  try {
    const auto j = ordered_json::parse(json_text);
    report.version = j.at("version").get<std::string>();
    report.cap_exceeded = j.at("cap_exceeded").get<bool>();
    report.wall_time_ms = j.at("wall_time_ms").get<std::uint64_t>();
    for (const auto& [id, seed] : j.at("seeds").items()) report.seeds[id] = seed.get<std::uint64_t>();
    for (const auto& r : j.at("rows")) {
      ReportRow row;
      row.scenario = r.at("scenario").get<std::string>();
      row.check = r.at("check").get<std::string>();
      row.anchor = r.at("anchor").get<std::string>();
      row.status = parse_status(r.at("status").get<std::string>());
      for (const auto& [k, v] : r.at("witness").items()) row.witness[k] = v.get<std::string>();
      row.detail = r.at("detail").get<std::string>();
      report.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  return report;
}

}  // namespace lvc::harness
