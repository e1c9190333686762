#include "gcsa/density.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gcsa {

namespace {

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

std::string to_string(DensityKind kind) {
  switch (kind) {
    case DensityKind::psd: return "psd";
    case DensityKind::csd: return "csd";
    case DensityKind::coherence: return "coherence";
  }
  throw std::logic_error("unknown density kind");
}

DensityKind density_kind_from_string(const std::string& s) {
  if (s == "psd") return DensityKind::psd;
  if (s == "csd") return DensityKind::csd;
  if (s == "coherence") return DensityKind::coherence;
  throw std::invalid_argument("unknown density kind: " + s);
}

void validate_density(const SpectralDensity& d) {
  if (d.frequencies.size() != d.values.size())
    throw std::invalid_argument("density grid/value length mismatch");
  for (int i = 0; i < d.size(); ++i) {
    const auto v = d.values(i);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("density has non-finite value");
    if (d.kind == DensityKind::psd) {
      if (v.imag() != 0.0 || v.real() < -1e-10)
        throw std::invalid_argument("psd values must be real and nonnegative");
    } else if (d.kind == DensityKind::coherence) {
      if (v.imag() != 0.0 || v.real() < -1e-10 || v.real() > 1.0 + 1e-10)
        throw std::invalid_argument("coherence values must lie in [0, 1]");
    }
  }
}

void require_same_grid(const SpectralDensity& a, const SpectralDensity& b) {
  if (a.size() != b.size() ||
      (a.frequencies.array() != b.frequencies.array()).any())
    throw std::invalid_argument("density grids do not match");
}

std::string density_to_json(const SpectralDensity& d) {
  nlohmann::json j;
  j["kind"] = to_string(d.kind);
  auto freq = nlohmann::json::array();
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (int i = 0; i < d.size(); ++i) {
    freq.push_back(d.frequencies(i));
    re.push_back(d.values(i).real());
    im.push_back(d.values(i).imag());
  }
  j["frequencies"] = std::move(freq);
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

SpectralDensity density_from_json(const std::string& json_text) {
  const auto j = nlohmann::json::parse(json_text);
  SpectralDensity d;
  d.kind = density_kind_from_string(j.at("kind").get<std::string>());
  const auto& freq = j.at("frequencies");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (re.size() != freq.size() || im.size() != freq.size())
    throw std::invalid_argument("density JSON arrays have mismatched lengths");
  const int n = static_cast<int>(freq.size());
  d.frequencies.resize(n);
  d.values.resize(n);
  for (int i = 0; i < n; ++i) {
    d.frequencies(i) = freq[i].get<double>();
    d.values(i) = {re[i].get<double>(), im[i].get<double>()};
  }
  return d;
}

std::string density_to_csv(const SpectralDensity& d) {
  std::ostringstream out;
  out << "lambda,re,im\n";
  for (int i = 0; i < d.size(); ++i)
    out << format_double(d.frequencies(i)) << ','
        << format_double(d.values(i).real()) << ','
        << format_double(d.values(i).imag()) << '\n';
  return out.str();
}

SpectralDensity density_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  std::vector<double> freq, re, im;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line.rfind("lambda", 0) == 0) continue;
    }
    std::istringstream ls(line);
    std::string f;
    std::vector<double> row;
    while (std::getline(ls, f, ',')) row.push_back(std::stod(f));
    if (row.size() != 3)
      throw std::invalid_argument("malformed density CSV row: " + line);
    freq.push_back(row[0]);
    re.push_back(row[1]);
    im.push_back(row[2]);
  }
  SpectralDensity d;
  const int n = static_cast<int>(freq.size());
  d.frequencies = Eigen::Map<Eigen::VectorXd>(freq.data(), n);
  d.values.resize(n);
  for (int i = 0; i < n; ++i) d.values(i) = {re[i], im[i]};
  return d;
}

}  // namespace gcsa
