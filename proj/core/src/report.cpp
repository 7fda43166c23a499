#include "heislac/report.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace heislac {

using nlohmann::json;

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json fit_json(const DecayFit& f) {
  json pts = json::array();
  for (const auto& p : f.points)
    pts.push_back({{"parameter", number(p.parameter)}, {"value", number(p.value)}, {"in_fit", p.in_fit}, {"note", p.note}});
  return {{"parameter", f.parameter_name},
          {"slope", number(f.slope)},
          {"intercept", number(f.intercept)},
          {"max_residual", number(f.max_residual)},
          {"fitted", f.fitted()},
          {"points", pts}};
}

void open_or_throw(std::ofstream& os, const std::filesystem::path& p) {
  os.open(p);
  if (!os) throw std::runtime_error("report: cannot write " + p.string());
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

bool ExperimentReport::passed() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

std::string ExperimentReport::to_json() const {
  json j;
  j["id"] = id;
  j["config"] = json::parse(config_json.empty() ? "{}" : config_json);
  json s = json::object();
  for (const auto& [k, v] : scalars) s[k] = number(v);
  j["results"] = s;
  json l = json::object();
  for (const auto& [k, v] : labels) l[k] = v;
  j["labels"] = l;
  j["fits"] = json::array();
  for (const auto& f : fits) j["fits"].push_back(fit_json(f));
  j["clauses"] = json::array();
  for (const auto& c : clauses) j["clauses"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["warnings"] = warnings;
  j["pass"] = passed();
  return j.dump(2);
}

void ExperimentReport::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os;
    open_or_throw(os, dir / "report.json");
    os << to_json() << "\n";
  }
  for (const auto& f : fits) {
    std::ofstream os;
    open_or_throw(os, dir / (id + "_" + f.parameter_name + ".csv"));
    write_decay_csv(os, f);
  }
  for (const auto& t : tables) {
    std::ofstream os;
    open_or_throw(os, dir / (t.name + ".csv"));
    for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_cell(t.header[i]);
    os << "\n";
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
      os << "\n";
    }
  }
}

std::string ExperimentReport::summary() const {
  std::size_t ok = 0;
  const Clause* first_fail = nullptr;
  for (const auto& c : clauses) {
    if (c.pass)
      ++ok;
    else if (!first_fail)
      first_fail = &c;
  }
  std::ostringstream os;
  os << id << ": " << (first_fail ? "FAIL" : "PASS") << " (" << ok << "/" << clauses.size() << " clauses)";
  if (first_fail) os << " first failure: " << first_fail->name << (first_fail->detail.empty() ? "" : " [" + first_fail->detail + "]");
  return os.str();
}

}  // namespace heislac
