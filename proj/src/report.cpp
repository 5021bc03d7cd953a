#include "spherik/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace spherik {

using nlohmann::json;

std::string criterion_statement(const std::string& criterion) {
  if (criterion == "fano-barycenter") {
    return "Fano X is Kähler–Einstein iff the barycenter of Δ(X, K_X^-1) for P dμ lies in "
           "2ϖ_X + relint (-𝒱)^∨";
  }
  if (criterion == "rank-one") {
    return "rank one: cscK in c1(L) iff L(ℓ) >= 0 for ℓ ∈ 𝒱 \\ {0}, with equality iff X is "
           "horospherical";
  }
  if (criterion == "toric-surface") {
    return "toric surface: cscK iff L(sup(ℓ1, ℓ2)) >= 0 for all affine ℓ1, ℓ2, with equality "
           "iff the crease misses the interior of Δ";
  }
  if (criterion == "search") {
    return "cscK iff L(f) >= 0 for every f ∈ C with equality only for product f; a negative "
           "value found by search certifies non-existence, silence proves nothing";
  }
  return {};
}

int exit_code_for(Outcome outcome) {
  switch (outcome) {
    case Outcome::kExists:
      return 0;
    case Outcome::kNotExists:
      return 1;
    case Outcome::kIndeterminate:
      return 2;
  }
  return 2;
}

void attach_verdict(Report& report, const Verdict& verdict) {
  report.outcome = to_string(verdict.outcome);
  report.exit_code = exit_code_for(verdict.outcome);
  report.criterion = verdict.criterion;
  report.statement = criterion_statement(verdict.criterion);
  report.certificate = verdict.certificate;
  for (const auto& kv : verdict.diagnostics) report.values.push_back(kv);
  if (verdict.witness) {
    report.witness = verdict.witness->f;
    report.witness_value = to_string(verdict.witness->value);
  }
}

json to_json(const Report& r) {
  json doc = json::object();
  doc["command"] = r.command;
  doc["input"] = r.input;
  doc["outcome"] = r.outcome ? json(*r.outcome) : json(nullptr);
  doc["exit_code"] = r.exit_code;
  doc["provenance"] = {{"criterion", r.criterion}, {"statement", r.statement}};
  doc["certificate"] = r.certificate;
  json values = json::array();
  for (const auto& [k, v] : r.values) values.push_back({{"name", k}, {"value", v}});
  doc["values"] = values;
  doc["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  doc["witness_value"] = r.witness_value ? json(*r.witness_value) : json(nullptr);
  doc["trace"] = r.trace;
  doc["notes"] = r.notes;
  doc["timing"] = r.elapsed_ms ? json({{"elapsed_ms", *r.elapsed_ms}}) : json(nullptr);
  return doc;
}

Report report_from_json(const json& doc) {
  Report r;
  r.command = doc.at("command").get<std::string>();
  r.input = doc.at("input").get<std::string>();
  if (!doc.at("outcome").is_null()) r.outcome = doc["outcome"].get<std::string>();
  r.exit_code = doc.at("exit_code").get<int>();
  r.criterion = doc.at("provenance").at("criterion").get<std::string>();
  r.statement = doc.at("provenance").at("statement").get<std::string>();
  r.certificate = doc.at("certificate").get<std::string>();
  for (const auto& kv : doc.at("values")) {
    r.values.emplace_back(kv.at("name").get<std::string>(), kv.at("value").get<std::string>());
  }
  if (!doc.at("witness").is_null()) r.witness = pl_function_from_json(doc["witness"]);
  if (!doc.at("witness_value").is_null()) r.witness_value = doc["witness_value"].get<std::string>();
  r.trace = doc.at("trace").get<std::vector<std::string>>();
  r.notes = doc.at("notes").get<std::vector<std::string>>();
  if (!doc.at("timing").is_null()) r.elapsed_ms = doc["timing"].at("elapsed_ms").get<double>();
  return r;
}

namespace {

std::string pieces_text(const PLFunction& f) {
  std::string out;
  for (const auto& p : f.pieces) {
    if (!out.empty()) out += ", ";
    out += "(" + to_string(p.c) + "; " + to_string(p.v) + ")";
  }
  return "max over (c; v) of c - <v, q>: " + out;
}

}  // namespace

std::string emit_report(const Report& r, Format format) {
  if (format == Format::kJson) return to_json(r).dump(2) + "\n";

  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("command", r.command);
  rows.emplace_back("input", r.input);
  if (r.outcome) rows.emplace_back("outcome", *r.outcome);
  if (!r.criterion.empty()) rows.emplace_back("criterion", r.criterion);
  if (!r.statement.empty()) rows.emplace_back("statement", r.statement);
  if (!r.certificate.empty()) rows.emplace_back("certificate", r.certificate);
  for (const auto& kv : r.values) rows.push_back(kv);
  if (r.witness) rows.emplace_back("witness", pieces_text(*r.witness));
  if (r.witness_value) rows.emplace_back("witness L", *r.witness_value);
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    rows.emplace_back("trace[" + std::to_string(i) + "]", r.trace[i]);
  }
  for (const auto& n : r.notes) rows.emplace_back("note", n);
  if (r.elapsed_ms) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f ms", *r.elapsed_ms);
    rows.emplace_back("elapsed", buf);
  }

  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : rows) {
    out << k << std::string(width - k.size(), ' ') << " : " << v << "\n";
  }
  return out.str();
}

}  // namespace spherik
