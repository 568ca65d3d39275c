#pragma once

// Serialization of verification reports (JSON and TSV) and the on-disk cache.
// Cache entries are versioned UTF-8 text: a magic line, a header line with the
// inputs that determine the content, then the payload.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmtwist/curves.hpp"
#include "cmtwist/verify.hpp"

namespace cmtwist {

inline constexpr const char* kCodeVersion = "1.0.0";
inline constexpr const char* kCacheMagic = "cmtwist-cache v1";

enum class OutputFormat { json, tsv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "tsv") return OutputFormat::tsv;
  throw InvalidInput("unknown format '" + s + "'");
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "tsv"; }

/// Decimal digits that round-trip a value of the given binary precision.
inline int decimal_digits(long prec) { return static_cast<int>(std::ceil(static_cast<double>(prec) * 0.30103)) + 2; }

inline std::string dec(const BigReal& x) { return x.to_string(decimal_digits(x.precision())); }

/// Short form for error bounds and residuals.
inline std::string dec_short(const BigReal& x) { return x.to_string(8); }

inline nlohmann::ordered_json config_json(const VerifyConfig& c, const std::string& cache_dir, OutputFormat format) {
  nlohmann::ordered_json j;
  j["prec"] = c.prec;
  j["dyadic_prec"] = c.dyadic_bits;
  j["denom_bound"] = c.denom_bound.get_str();
  j["method"] = to_string(c.method);
  j["jobs"] = c.threads;
  j["cache_dir"] = cache_dir;
  j["format"] = to_string(format);
  if (c.omega_scale) j["omega_scale"] = {dec(c.omega_scale->re()), dec(c.omega_scale->im())};
  return j;
}

inline nlohmann::ordered_json telement_json(const TElement& x) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const KElement& k : x.coeffs()) out.push_back({k.a().get_str(), k.b().get_str()});
  return out;
}

inline nlohmann::ordered_json report_json(const VerificationReport& rep, const std::string& cache_dir,
                                          OutputFormat format) {
  nlohmann::ordered_json j;
  j["code_version"] = kCodeVersion;
  j["config"] = config_json(rep.config, cache_dir, format);
  j["q"] = rep.q;
  j["R"] = rep.R;
  j["k"] = rep.k;
  j["h"] = rep.h;
  j["omega"] = {{"re", dec(rep.period.Omega.re())},
                {"im", dec(rep.period.Omega.im())},
                {"absolute", rep.period.absolute},
                {"source", rep.period.source}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  nlohmann::ordered_json roots = nlohmann::ordered_json::array();
  for (const DivisorRow& r : rep.rows) {
    nlohmann::ordered_json row;
    row["d"] = r.d;
    row["k_d"] = r.k_d;
    row["method"] = r.msl.method;
    nlohmann::ordered_json re = nlohmann::ordered_json::array();
    nlohmann::ordered_json im = nlohmann::ordered_json::array();
    nlohmann::ordered_json err = nlohmann::ordered_json::array();
    nlohmann::ordered_json lam = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.msl.msl.size(); ++i) {
      re.push_back(dec(r.msl.msl[i].re()));
      im.push_back(dec(r.msl.msl[i].im()));
      err.push_back(dec_short(r.msl.msl_errors[i]));
      lam.push_back({dec(r.lambda[i].re()), dec(r.lambda[i].im())});
    }
    row["msl_re"] = re;
    row["msl_im"] = im;
    row["err"] = err;
    row["lambda"] = lam;
    row["phi_coeffs"] = telement_json(r.phi);
    row["phi_residual"] = dec_short(r.phi_residual);
    row["ord_P"] = r.ord_P;
    if (r.msl_ord) row["msl_ord"] = *r.msl_ord;
    rows.push_back(row);
    for (std::size_t i = 0; i < r.msl.root_numbers.size(); ++i) {
      roots.push_back({{"d", r.d},
                       {"iota", i},
                       {"re", dec(r.msl.root_numbers[i].re())},
                       {"im", dec(r.msl.root_numbers[i].im())}});
    }
  }
  j["divisors"] = rows;
  j["cross_path_dev"] = rep.cross_path_dev ? nlohmann::ordered_json(dec_short(*rep.cross_path_dev)) : nullptr;
  j["root_numbers"] = roots;
  j["nonvanishing"] = {{"product", dec_short(rep.nonvanishing_product)}, {"bound", dec_short(rep.nonvanishing_bound)}};
  j["d_r_sum"] = rep.d_r_sum;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const Check& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"status", c.passed ? "PASS" : "FAIL"}, {"evidence", c.evidence}});
  }
  j["checks"] = checks;
  j["passed"] = rep.passed();
  return j;
}

/// One line per divisor, then one line per check.
inline std::string report_tsv(const nlohmann::ordered_json& j) {
  std::ostringstream out;
  out << "# q=" << j["q"] << " R=" << j["R"] << " k=" << j["k"] << " h=" << j["h"] << "\n";
  out << "d\tk_d\tord_P\tmsl_re\tmsl_im\terr\n";
  for (const auto& r : j["divisors"]) {
    out << r["d"] << '\t' << r["k_d"] << '\t' << r["ord_P"] << '\t' << r["msl_re"][0].get<std::string>() << '\t'
        << r["msl_im"][0].get<std::string>() << '\t' << r["err"][0].get<std::string>() << "\n";
  }
  out << "check\tstatus\tevidence\n";
  for (const auto& c : j["checks"]) {
    out << c["name"].get<std::string>() << '\t' << c["status"].get<std::string>() << '\t'
        << c["evidence"].get<std::string>() << "\n";
  }
  return out.str();
}

inline std::string render(const nlohmann::ordered_json& j, OutputFormat f) {
  return f == OutputFormat::json ? j.dump(2) + "\n" : report_tsv(j);
}

/// Text cache under a directory. Entries whose header does not match are ignored.
class Cache {
 public:
  explicit Cache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }
  const std::string& dir() const { return dir_; }

  std::optional<std::string> load(const std::string& name, const std::string& header) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(name));
    if (!in) return std::nullopt;
    std::string magic;
    std::string head;
    if (!std::getline(in, magic) || magic != kCacheMagic) return std::nullopt;
    if (!std::getline(in, head) || head != header) return std::nullopt;
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
  }

  /// Writes to a temporary file and renames, so an interrupted write never leaves a partial entry.
  void store(const std::string& name, const std::string& header, const std::string& body) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    const std::filesystem::path final_path = path(name);
    const std::filesystem::path tmp = final_path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw InvalidInput("cannot write cache entry " + tmp.string());
      out << kCacheMagic << "\n" << header << "\n" << body;
    }
    std::filesystem::rename(tmp, final_path);
  }

 private:
  std::filesystem::path path(const std::string& name) const { return std::filesystem::path(dir_) / name; }

  std::string dir_;
};

inline std::string verify_cache_name(std::int64_t q, std::int64_t R, const VerifyConfig& c) {
  return "verify-q" + std::to_string(q) + "-R" + std::to_string(R) + "-P" + std::to_string(c.prec) + "-" +
         to_string(c.method) + ".json";
}

inline std::string verify_cache_header(std::int64_t q, std::int64_t R, const VerifyConfig& c) {
  return "q=" + std::to_string(q) + " R=" + std::to_string(R) + " P=" + std::to_string(c.prec) +
         " M=" + std::to_string(c.dyadic_bits) + " denom=" + c.denom_bound.get_str() + " method=" +
         to_string(c.method) + " version=" + kCodeVersion;
}

/// Class polynomial coefficients, low to high, one decimal integer per line.
inline std::vector<mpz_class> cached_hilbert_polynomial(const Cache& cache, std::int64_t q, long prec) {
  const std::string name = "classpoly-q" + std::to_string(q) + ".txt";
  const std::string header = "q=" + std::to_string(q) + " version=" + kCodeVersion;
  if (auto body = cache.load(name, header)) {
    std::istringstream in(*body);
    std::vector<mpz_class> c;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) c.emplace_back(line);
    }
    if (!c.empty()) return c;
  }
  const ClassPolynomial H = hilbert_class_polynomial(q, prec);
  std::string body;
  for (const mpz_class& a : H.coeffs) body += a.get_str() + "\n";
  cache.store(name, header, body);
  return H.coeffs;
}

}  // namespace cmtwist
