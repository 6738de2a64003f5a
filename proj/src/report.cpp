#include "slantmap/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "slantmap/errors.hpp"

namespace slantmap {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

bool same_number(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> v = {"check-structure", "check-map", "chen-ricci", "ddvv",
                                             "casorati",        "lu-sweep",  "gallery"};
  return v;
}

bool CheckRecord::operator==(const CheckRecord& o) const {
  if (id != o.id || kind != o.kind || subject != o.subject || pass != o.pass || informational != o.informational ||
      message != o.message || !same_number(value, o.value) || !same_number(tolerance, o.tolerance) ||
      values.size() != o.values.size())
    return false;
  for (size_t i = 0; i < values.size(); ++i)
    if (values[i].name != o.values[i].name || !same_number(values[i].value, o.values[i].value)) return false;
  return true;
}

int RunReport::pass_count() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass;
  return n;
}

int RunReport::fail_count() const { return static_cast<int>(checks.size()) - pass_count(); }

int RunReport::exit_code() const { return fail_count() == 0 && findings.empty() ? 0 : 1; }

bool RunReport::operator==(const RunReport& o) const {
  if (!(provenance == o.provenance) || checks != o.checks || findings.size() != o.findings.size()) return false;
  for (size_t i = 0; i < findings.size(); ++i) {
    const Finding& a = findings[i];
    const Finding& b = o.findings[i];
    if (a.check != b.check || a.seed != b.seed || a.index != b.index || !same_number(a.slack, b.slack) ||
        a.r != b.r || a.normal_dim != b.normal_dim || !same_number(a.c, b.c))
      return false;
  }
  return true;
}

CheckRecord residual_check(std::string id, std::string subject, double residual, double tolerance) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = "identity";
  r.subject = std::move(subject);
  r.value = residual;
  r.tolerance = tolerance;
  r.pass = residual <= tolerance;
  return r;
}

CheckRecord regression_check(std::string id, std::string subject, double value, double expected, double tolerance) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = "regression";
  r.subject = std::move(subject);
  r.value = value;
  r.tolerance = tolerance;
  r.values = {{"expected", expected}, {"error", std::abs(value - expected)}};
  r.pass = std::abs(value - expected) <= tolerance;
  return r;
}

CheckRecord inequality_check(const std::string& subject, const InequalityReport& rep, double tol) {
  CheckRecord r;
  r.id = rep.name;
  r.kind = "inequality";
  r.subject = subject;
  r.value = rep.slack;
  r.tolerance = tol;
  r.informational = rep.informational;
  r.pass = rep.holds || rep.informational;
  r.values = {{"lhs", rep.lhs}, {"rhs", rep.rhs}};
  for (const auto& nv : rep.extras) r.values.push_back(nv);
  for (const auto& nv : rep.equality_diag) r.values.push_back({"eq." + nv.name, nv.value});
  if (rep.informational) r.message = "hypothesis gate not met; informational";
  return r;
}

Json report_to_json(const RunReport& report) {
  Json checks = Json::array();
  for (const CheckRecord& c : report.checks) {
    Json values = Json::array();
    for (const NamedValue& nv : c.values) values.push_back(Json::array({nv.name, number(nv.value)}));
    Json jc = {{"id", c.id},
               {"kind", c.kind},
               {"subject", c.subject},
               {"pass", c.pass},
               {"value", number(c.value)},
               {"tolerance", number(c.tolerance)},
               {"values", values}};
    if (c.informational) jc["informational"] = true;
    if (!c.message.empty()) jc["message"] = c.message;
    checks.push_back(jc);
  }
  Json j = {{"schema_version", kSchemaVersion},
            {"checks", checks},
            {"summary", {{"pass", report.pass_count()}, {"fail", report.fail_count()}}}};
  const Provenance& p = report.provenance;
  if (!p.command.empty())
    j["provenance"] = {{"command", p.command}, {"fixtures", p.fixtures}, {"seed", p.seed}, {"tol", number(p.tol)}};
  if (!report.findings.empty()) {
    Json f = Json::array();
    for (const Finding& x : report.findings)
      f.push_back({{"check", x.check},
                   {"seed", x.seed},
                   {"index", x.index},
                   {"slack", number(x.slack)},
                   {"r", x.r},
                   {"normal_dim", x.normal_dim},
                   {"c", number(x.c)}});
    j["findings"] = f;
  }
  return j;
}

RunReport report_from_json(const Json& j) {
  try {
    if (j.at("schema_version") != kSchemaVersion) throw GeometryError(ErrorKind::InvalidInput, "unsupported report schema");
    RunReport r;
    for (const Json& jc : j.at("checks")) {
      CheckRecord c;
      c.id = jc.at("id").get<std::string>();
      c.kind = jc.at("kind").get<std::string>();
      c.subject = jc.at("subject").get<std::string>();
      c.pass = jc.at("pass").get<bool>();
      c.value = number_from(jc.at("value"));
      c.tolerance = number_from(jc.at("tolerance"));
      for (const Json& v : jc.at("values")) c.values.push_back({v.at(0).get<std::string>(), number_from(v.at(1))});
      c.informational = jc.value("informational", false);
      c.message = jc.value("message", std::string());
      r.checks.push_back(c);
    }
    if (j.contains("provenance")) {
      const Json& p = j.at("provenance");
      r.provenance.command = p.at("command").get<std::string>();
      r.provenance.fixtures = p.at("fixtures").get<std::vector<std::string>>();
      r.provenance.seed = p.at("seed").get<std::uint64_t>();
      r.provenance.tol = number_from(p.at("tol"));
    }
    if (j.contains("findings"))
      for (const Json& f : j.at("findings"))
        r.findings.push_back({f.at("check").get<std::string>(), f.at("seed").get<std::uint64_t>(),
                              f.at("index").get<std::uint64_t>(), number_from(f.at("slack")), f.at("r").get<int>(),
                              f.at("normal_dim").get<int>(), number_from(f.at("c"))});
    const Json& s = j.at("summary");
    if (s.at("pass").get<int>() != r.pass_count() || s.at("fail").get<int>() != r.fail_count())
      throw GeometryError(ErrorKind::InvalidInput, "summary counts differ from the check list");
    return r;
  } catch (const Json::exception& e) {
    throw GeometryError(ErrorKind::InvalidInput, std::string("report: ") + e.what());
  }
}

std::string report_to_text(const RunReport& report) {
  std::ostringstream out;
  for (const CheckRecord& c : report.checks) {
    out << (c.informational ? "INFO" : c.pass ? "PASS" : "FAIL") << "  " << c.kind << "  " << c.subject << "  "
        << c.id << "  value=" << fmt(c.value) << "  tol=" << fmt(c.tolerance);
    if (!c.message.empty()) out << "  # " << c.message;
    out << '\n';
  }
  for (const Finding& f : report.findings)
    out << "FINDING  " << f.check << "  seed=" << f.seed << "  index=" << f.index << "  slack=" << fmt(f.slack)
        << "  r=" << f.r << "  normal_dim=" << f.normal_dim << "  c=" << fmt(f.c) << '\n';
  out << "summary  pass=" << report.pass_count() << "  fail=" << report.fail_count()
      << "  findings=" << report.findings.size() << '\n';
  return out.str();
}

void emit_report(const RunReport& report, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json)
    out << report_to_json(report).dump(2) << '\n';
  else
    out << report_to_text(report);
  out.flush();
  if (!out) throw GeometryError(ErrorKind::IoFailure, "failed to write report");
}

}  // namespace slantmap
