#pragma once

// Check reports: a flat list of per-equation records plus a summary, printable
// as human-readable text or as machine-readable JSON with a stable field
// order (command, seed, params, records, summary). Reports carry no
// timestamps or timings, so identical inputs produce byte-identical output.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gerbeforms {

struct Record {
  std::string equation;    // equation id from the closed vocabulary
  std::vector<int> tuple;  // chart indices the record refers to (may be empty)
  bool pass = false;
  std::string witness;     // leading monomial of the residual when failing
};

struct Report {
  std::string command;
  bool has_seed = false;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> warnings;
  std::vector<Record> records;

  void param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
  }
  void param(const std::string& key, long value) {
    params.emplace_back(key, std::to_string(value));
  }

  void add(Record r) { records.push_back(std::move(r)); }

  int failed() const {
    int n = 0;
    for (const Record& r : records)
      if (!r.pass) ++n;
    return n;
  }

  bool pass() const { return failed() == 0; }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    if (has_seed) j["seed"] = seed;
    nlohmann::ordered_json jp = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) jp[k] = v;
    j["params"] = jp;
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (const Record& r : records) {
      nlohmann::ordered_json one;
      one["equation"] = r.equation;
      one["tuple"] = r.tuple;
      one["pass"] = r.pass;
      if (!r.pass) one["witness"] = r.witness;
      jr.push_back(one);
    }
    j["records"] = jr;
    j["summary"] = {{"records", records.size()},
                    {"failed", failed()},
                    {"pass", pass()}};
    if (!warnings.empty()) j["warnings"] = warnings;
    return j;
  }

  // Human-readable text: params, per-equation aggregation, failing records
  // with witnesses, and a final PASS/FAIL verdict line.
  std::string to_text() const {
    std::string out = "command: " + command + "\n";
    if (has_seed) out += "seed: " + std::to_string(seed) + "\n";
    for (const auto& [k, v] : params) out += k + ": " + v + "\n";
    for (const std::string& w : warnings) out += "warning: " + w + "\n";

    // Aggregate per equation id, preserving first-appearance order.
    std::vector<std::string> order;
    std::vector<std::pair<int, int>> counts;  // (total, failed)
    for (const Record& r : records) {
      size_t idx = 0;
      for (; idx < order.size(); ++idx)
        if (order[idx] == r.equation) break;
      if (idx == order.size()) {
        order.push_back(r.equation);
        counts.emplace_back(0, 0);
      }
      counts[idx].first += 1;
      if (!r.pass) counts[idx].second += 1;
    }
    for (size_t i = 0; i < order.size(); ++i) {
      out += "  " + order[i] + ": ";
      if (counts[i].second == 0)
        out += "PASS (" + std::to_string(counts[i].first) + ")\n";
      else
        out += "FAIL (" + std::to_string(counts[i].second) + "/" +
               std::to_string(counts[i].first) + ")\n";
    }
    for (const Record& r : records) {
      if (r.pass) continue;
      out += "  FAIL " + r.equation + " at (";
      for (size_t i = 0; i < r.tuple.size(); ++i)
        out += (i ? "," : "") + std::to_string(r.tuple[i]);
      out += ")";
      if (!r.witness.empty()) out += " residual " + r.witness;
      out += "\n";
    }
    out += pass() ? "result: PASS\n" : "result: FAIL\n";
    return out;
  }
};

}  // namespace gerbeforms
