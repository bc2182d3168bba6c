#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "harness.hpp"
#include "json.hpp"

namespace rh {

using ojson = nlohmann::ordered_json;

namespace {

// JSON has no infinities; non-finite values travel as strings.
ojson num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double from_num(const ojson &j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  return std::nan("");
}

std::string g17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string file_safe(const std::string &s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ? c : '_';
  return out;
}

void write_file(const std::filesystem::path &p, const std::string &body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out << body;
}

}  // namespace

std::string report_json(const VerificationReport &r) {
  ojson meta;
  meta["tolerances"] = {{"rel", r.meta.rel_tol}, {"quad", r.meta.quad_tol}};
  meta["dyadic_window"] = {r.meta.window.k_min, r.meta.window.k_max};
  meta["extremal_window"] = r.meta.extremal_window;
  meta["control_windows"] = r.meta.control_windows;
  meta["morrey_grid"] = "radii 2^(j/4)";

  ojson summary;
  summary["rows"] = r.rows.size();
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Skipped, Verdict::DivergentAsPredicted})
    summary[verdict_name(v)] = r.count(v);
  summary["degenerate_corpus_members_skipped"] = r.degenerate_skipped;

  ojson rows = ojson::array();
  for (const ReportRow &x : r.rows)
    rows.push_back({{"case_id", x.case_id},
                    {"theorem", x.theorem},
                    {"quantity", x.quantity},
                    {"value", num(x.value)},
                    {"bound", num(x.bound)},
                    {"margin", num(x.margin)},
                    {"verdict", verdict_name(x.verdict)},
                    {"note", x.note}});

  ojson series = ojson::array();
  for (const Series &s : r.series) {
    ojson pts = ojson::array();
    for (const auto &[a, b] : s.points) pts.push_back({num(a), num(b)});
    series.push_back({{"name", s.name}, {"points", pts}});
  }

  ojson root;
  root["metadata"] = meta;
  root["summary"] = summary;
  root["rows"] = rows;
  root["series"] = series;
  return root.dump(2) + "\n";
}

std::string report_csv(const VerificationReport &r) {
  std::ostringstream os;
  os << "case_id,quantity,value,bound,margin,verdict\n";
  for (const ReportRow &x : r.rows)
    os << csv_field(x.case_id) << ',' << csv_field(x.quantity) << ',' << g17(x.value) << ','
       << g17(x.bound) << ',' << g17(x.margin) << ',' << verdict_name(x.verdict) << '\n';
  return os.str();
}

std::string series_data(const Series &s) {
  std::ostringstream os;
  os << "# " << s.name << "\n";
  for (const auto &[a, b] : s.points) os << g17(a) << ' ' << g17(b) << '\n';
  return os.str();
}

VerificationReport report_from_json(const std::string &text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const ojson::exception &e) {
    throw Error(ErrorCode::Config, std::string("report: ") + e.what());
  }
  VerificationReport r;
  try {
    const ojson &m = root.at("metadata");
    r.meta.rel_tol = m.at("tolerances").at("rel").get<double>();
    r.meta.quad_tol = m.at("tolerances").at("quad").get<double>();
    r.meta.window = {m.at("dyadic_window").at(0).get<int>(), m.at("dyadic_window").at(1).get<int>()};
    r.meta.extremal_window = m.at("extremal_window").get<int>();
    r.meta.control_windows = m.at("control_windows").get<std::vector<int>>();
    r.degenerate_skipped = root.at("summary").at("degenerate_corpus_members_skipped").get<int>();
    for (const ojson &x : root.at("rows"))
      r.rows.push_back({x.at("case_id").get<std::string>(), x.at("theorem").get<std::string>(),
                        x.at("quantity").get<std::string>(), from_num(x.at("value")),
                        from_num(x.at("bound")), from_num(x.at("margin")),
                        verdict_from_name(x.at("verdict").get<std::string>()),
                        x.at("note").get<std::string>()});
    for (const ojson &s : root.at("series")) {
      Series out{s.at("name").get<std::string>(), {}};
      for (const ojson &p : s.at("points")) out.points.push_back({from_num(p.at(0)), from_num(p.at(1))});
      r.series.push_back(std::move(out));
    }
  } catch (const ojson::exception &e) {
    throw Error(ErrorCode::Config, std::string("report: malformed field: ") + e.what());
  }
  return r;
}

void write_report(const VerificationReport &r, const std::string &dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "cases", ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir + ": " + ec.message());
  write_file(fs::path(dir) / "report.json", report_json(r));
  write_file(fs::path(dir) / "report.csv", report_csv(r));
  // one CSV per case, in first-appearance order
  std::vector<std::string> ids;
  for (const ReportRow &x : r.rows)
    if (std::find(ids.begin(), ids.end(), x.case_id) == ids.end()) ids.push_back(x.case_id);
  for (const std::string &id : ids) {
    VerificationReport sub;
    for (const ReportRow &x : r.rows)
      if (x.case_id == id) sub.rows.push_back(x);
    write_file(fs::path(dir) / "cases" / (file_safe(id) + ".csv"), report_csv(sub));
  }
  for (const Series &s : r.series) write_file(fs::path(dir) / (file_safe(s.name) + ".dat"), series_data(s));
  std::ostringstream info;
  info << "{\n  \"runtime_seconds\": " << g17(r.runtime_seconds) << "\n}\n";
  write_file(fs::path(dir) / "run_info.json", info.str());
}

}  // namespace rh
