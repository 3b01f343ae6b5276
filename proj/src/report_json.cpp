#include <json.hpp>

#include <stdexcept>

#include "twistcat/verifier.hpp"

namespace twistcat {

namespace {

using json = nlohmann::ordered_json;

json step_json(const TraceStep& step) {
  json j;
  switch (step.kind) {
    case TraceStep::Kind::Evaluate:
      j["kind"] = "evaluate";
      j["side"] = step.side;
      j["letter"] = format_letter(step.letter);
      j["before"] = format_object(step.before);
      j["after"] = format_object(step.after);
      break;
    case TraceStep::Kind::BraidRewrite:
      j["kind"] = "rewrite";
      j["side"] = step.side;
      j["position"] = step.position;
      j["removed"] = format_word(step.removed);
      j["inserted"] = format_word(step.inserted);
      j["direction"] = step.direction;
      break;
    case TraceStep::Kind::Cancel:
      j["kind"] = "cancel";
      j["side"] = step.side;
      j["position"] = step.position;
      break;
    case TraceStep::Kind::Transfer:
      j["kind"] = "transfer";
      j["side"] = step.side;
      j["letter"] = format_letter(step.letter);
      break;
  }
  return j;
}

json record_json(const ReportRecord& record) {
  json j;
  j["relator"] = record.relator;
  j["n"] = record.n;
  j["representation"] = rep_name(record.representation);
  if (record.generator_object)
    j["generator_object"] = format_object(*record.generator_object);
  else
    j["generator_object"] = nullptr;
  j["status"] = status_name(record.status);
  if (record.central_defect_m)
    j["central_defect_m"] = *record.central_defect_m;
  else
    j["central_defect_m"] = nullptr;
  if (record.involution)
    j["involution"] = *record.involution;
  else
    j["involution"] = nullptr;

  // first trace element restates the goal so the record replays on its own
  json initial;
  initial["kind"] = "initial";
  initial["lhs"] = format_word(record.goal.lhs);
  initial["rhs"] = format_word(record.goal.rhs);
  if (record.representation == Rep::Sheaf)
    initial["object"] = format_object(record.goal.object);
  else
    initial["object"] = nullptr;
  json trace = json::array();
  trace.push_back(initial);
  for (const TraceStep& step : record.trace) trace.push_back(step_json(step));
  j["trace"] = trace;
  j["states_expanded"] = record.states_expanded;
  return j;
}

Status parse_status(const std::string& s) {
  if (s == "verified") return Status::Verified;
  if (s == "verified-up-to-central") return Status::Central;
  if (s == "verified-up-to-involution") return Status::Involution;
  if (s == "exhausted") return Status::Exhausted;
  if (s == "mismatch") return Status::Mismatch;
  throw std::invalid_argument("unknown status: " + s);
}

Rep parse_rep(const std::string& s) {
  if (s == "sheaf") return Rep::Sheaf;
  if (s == "ktheory") return Rep::KTheory;
  throw std::invalid_argument("unknown representation: " + s);
}

Letter parse_single_letter(const std::string& s, int n) {
  Word w = parse_word(s, n);
  if (w.size() != 1)
    throw std::invalid_argument("expected a single letter: " + s);
  return w[0];
}

TraceStep step_from_json(const json& j, int n) {
  TraceStep step;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "evaluate") {
    step.kind = TraceStep::Kind::Evaluate;
    step.side = j.at("side").get<int>();
    step.letter = parse_single_letter(j.at("letter").get<std::string>(), n);
    step.before = parse_object(j.at("before").get<std::string>(), n);
    step.after = parse_object(j.at("after").get<std::string>(), n);
  } else if (kind == "rewrite") {
    step.kind = TraceStep::Kind::BraidRewrite;
    step.side = j.at("side").get<int>();
    step.position = j.at("position").get<std::size_t>();
    step.removed = parse_word(j.at("removed").get<std::string>(), n);
    step.inserted = parse_word(j.at("inserted").get<std::string>(), n);
    step.direction = j.at("direction").get<int>();
  } else if (kind == "cancel") {
    step.kind = TraceStep::Kind::Cancel;
    step.side = j.at("side").get<int>();
    step.position = j.at("position").get<std::size_t>();
  } else if (kind == "transfer") {
    step.kind = TraceStep::Kind::Transfer;
    step.side = j.at("side").get<int>();
    step.letter = parse_single_letter(j.at("letter").get<std::string>(), n);
  } else {
    throw std::invalid_argument("unknown trace step kind: " + kind);
  }
  return step;
}

ReportRecord record_from_json(const json& j) {
  ReportRecord r;
  r.relator = j.at("relator").get<std::string>();
  r.n = j.at("n").get<int>();
  r.representation = parse_rep(j.at("representation").get<std::string>());
  if (!j.at("generator_object").is_null())
    r.generator_object =
        parse_object(j.at("generator_object").get<std::string>(), r.n);
  r.status = parse_status(j.at("status").get<std::string>());
  if (!j.at("central_defect_m").is_null())
    r.central_defect_m = j.at("central_defect_m").get<int>();
  if (!j.at("involution").is_null())
    r.involution = j.at("involution").get<std::string>();
  const json& trace = j.at("trace");
  if (trace.empty() || trace.at(0).at("kind") != "initial")
    throw std::invalid_argument("trace must start with the initial state");
  const json& initial = trace.at(0);
  r.goal.lhs = parse_word(initial.at("lhs").get<std::string>(), r.n);
  r.goal.rhs = parse_word(initial.at("rhs").get<std::string>(), r.n);
  if (!initial.at("object").is_null())
    r.goal.object = parse_object(initial.at("object").get<std::string>(), r.n);
  else
    r.goal.object = DObject::structure_sheaf(r.n);
  for (std::size_t i = 1; i < trace.size(); ++i)
    r.trace.push_back(step_from_json(trace.at(i), r.n));
  r.states_expanded = j.at("states_expanded").get<std::uint64_t>();
  return r;
}

}  // namespace

std::string report_record_json(const ReportRecord& record) {
  return record_json(record).dump();
}

ReportRecord report_record_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad report json: ") + e.what());
  }
  try {
    return record_from_json(j);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad report json: ") + e.what());
  }
}

std::vector<ReportRecord> suite_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad suite json: ") + e.what());
  }
  std::vector<ReportRecord> out;
  try {
    for (const json& rec : j.at("reports")) out.push_back(record_from_json(rec));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad suite json: ") + e.what());
  }
  return out;
}

std::string suite_json(const std::vector<ReportRecord>& records) {
  json reports = json::array();
  std::size_t verified = 0, central = 0, involution = 0, exhausted = 0,
              mismatch = 0;
  for (const ReportRecord& r : records) {
    reports.push_back(record_json(r));
    switch (r.status) {
      case Status::Verified:
        ++verified;
        break;
      case Status::Central:
        ++central;
        break;
      case Status::Involution:
        ++involution;
        break;
      case Status::Exhausted:
        ++exhausted;
        break;
      case Status::Mismatch:
        ++mismatch;
        break;
    }
  }
  json j;
  j["reports"] = reports;
  json summary;
  summary["total"] = records.size();
  summary["verified"] = verified;
  summary["verified_up_to_central"] = central;
  summary["verified_up_to_involution"] = involution;
  summary["exhausted"] = exhausted;
  summary["mismatch"] = mismatch;
  summary["all_verified"] = exhausted == 0 && mismatch == 0;
  j["summary"] = summary;
  return j.dump(2);
}

}  // namespace twistcat
