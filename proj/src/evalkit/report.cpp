/*
 * Copyright 2026 The authid Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdio>
#include <fstream>
#include <sstream>

#include "authid/common/error.hpp"
#include "authid/common/json_io.hpp"
#include "authid/evalkit/protocol.hpp"

namespace authid::evalkit {
using nlohmann::json;

json report_to_json(const EvalReport& report) {
  json nway = json::array();
  for (const auto& nr : report.nway) {
    json runs = json::array();
    for (const auto& r : nr.runs) {
      runs.push_back({{"run", r.run}, {"seed", r.seed}, {"tasks", r.tasks}, {"accuracy", r.accuracy}});
    }
    nway.push_back({{"n", nr.n}, {"mean_accuracy", nr.mean_accuracy}, {"runs", std::move(runs)}});
  }
  json doc = {{"format", "authid-report"},
              {"version", kReportFormatVersion},
              {"protocol", report.protocol},
              {"seed", report.seed},
              {"config", report.config},
              {"nway", std::move(nway)}};
  if (report.verification) {
    const auto& v = *report.verification;
    doc["verification"] = {{"pairs", v.pairs},
                           {"accuracy", v.accuracy},
                           {"auc", v.metrics.auc},
                           {"f1", v.metrics.f1},
                           {"c_at_1", v.metrics.c_at_1},
                           {"f05u", v.metrics.f05u},
                           {"overall", v.metrics.overall()}};
  }
  return doc;
}

EvalReport report_from_json(const json& doc, const std::string& source) {
  check_header(doc, "authid-report", kReportFormatVersion, source);
  EvalReport r;
  try {
    r.protocol = doc.at("protocol").get<std::string>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.config = doc.at("config");
    for (const auto& jn : doc.at("nway")) {
      NResult nr;
      nr.n = jn.at("n").get<int>();
      nr.mean_accuracy = jn.at("mean_accuracy").get<double>();
      for (const auto& jr : jn.at("runs")) {
        nr.runs.push_back({jr.at("run").get<int>(), jr.at("seed").get<std::uint64_t>(),
                           jr.at("tasks").get<std::size_t>(), jr.at("accuracy").get<double>()});
      }
      r.nway.push_back(std::move(nr));
    }
    if (doc.contains("verification")) {
      const auto& jv = doc["verification"];
      VerificationResult v;
      v.pairs = jv.at("pairs").get<std::size_t>();
      v.accuracy = jv.at("accuracy").get<double>();
      v.metrics = {jv.at("auc").get<double>(), jv.at("f1").get<double>(), jv.at("c_at_1").get<double>(),
                   jv.at("f05u").get<double>()};
      r.verification = v;
    }
  } catch (const json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
  return r;
}

void write_report(const EvalReport& report, const std::filesystem::path& path) {
  write_json_file(report_to_json(report), path);
}

EvalReport read_report(const std::filesystem::path& path) {
  return report_from_json(read_json_file(path), path.string());
}

void write_scores(std::span<const ScoredPair> pairs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "# authid-scores v1\nid\tscore\ttruth\n";
  char buf[64];
  for (const auto& p : pairs) {
    if (p.id.find_first_of("\t\n\r") != std::string::npos) {
      throw ConfigError("pair id '" + p.id + "' contains a tab or newline");
    }
    std::snprintf(buf, sizeof buf, "%.17g", p.score);
    out << p.id << '\t' << buf << '\t' << p.truth << '\n';
  }
  out.flush();
  if (!out) throw IoError("error while writing " + path.string());
}

std::vector<ScoredPair> read_scores(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(path.string() + ":" + std::to_string(line_no) + ": " + msg);
  };
  ++line_no;
  if (!std::getline(in, line) || line != "# authid-scores v1") {
    if (line.rfind("# authid-scores v", 0) == 0) {
      throw VersionMismatch(path.string() + ": score file '" + line + "', expected v1");
    }
    throw fail("missing '# authid-scores v1' header");
  }
  ++line_no;
  if (!std::getline(in, line) || line != "id\tscore\ttruth") throw fail("missing column header");
  std::vector<ScoredPair> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) throw fail("expected 3 fields");
    ScoredPair p;
    p.id = line.substr(0, t1);
    const std::string score = line.substr(t1 + 1, t2 - t1 - 1);
    const std::string truth = line.substr(t2 + 1);
    try {
      std::size_t used = 0;
      p.score = std::stod(score, &used);
      if (used != score.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw fail("bad score '" + score + "'");
    }
    if (!(p.score >= 0 && p.score <= 1)) throw fail("score outside [0, 1]");
    if (truth != "0" && truth != "1") throw fail("truth must be 0 or 1");
    p.truth = truth == "1" ? 1 : 0;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace authid::evalkit
