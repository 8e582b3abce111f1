#include <cmath>
#include <sstream>

#include "besilab/certificates.hpp"
#include "besilab/errors.hpp"

namespace besilab {

namespace {

void require_finite(const nlohmann::ordered_json& j, const std::string& path) {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) throw Error(ErrorKind::unbounded_value, "non-finite value at " + path);
  } else if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) require_finite(it.value(), path + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "[" + std::to_string(i) + "]");
  }
}

std::string csv_cell(const nlohmann::ordered_json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_null()) return "";
  std::string s = v.dump();
  if (v.is_array() || v.is_object()) return "\"" + s + "\"";
  return s;
}

}  // namespace

bool CertificateReport::passed() const {
  for (const auto& [name, v] : verdicts.items())
    if (!v.get<bool>()) return false;
  return true;
}

nlohmann::ordered_json CertificateReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["params"] = params;
  j["rows"] = rows;
  j["fits"] = fits;
  j["verdicts"] = verdicts;
  require_finite(j, "report");
  return j;
}

std::string CertificateReport::json_text() const { return to_json().dump(2) + "\n"; }

std::string CertificateReport::csv_text() const {
  std::ostringstream out;
  if (rows.empty()) return "";
  std::vector<std::string> cols;
  for (const auto& [k, v] : rows[0].items()) cols.push_back(k);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << (c ? "," : "") << (row.contains(cols[c]) ? csv_cell(row[cols[c]]) : "");
    out << "\n";
  }
  return out.str();
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::invalid_argument, "line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::invalid_argument, "line fit needs distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_abs_residual = std::max(f.max_abs_residual, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

}  // namespace besilab
