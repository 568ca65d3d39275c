// Command-line front end: verify, lvalue, scan, selftest.
//
// Exit codes: 0 all checks pass, 2 a check failed, 3 numeric or recognition
// failure, 4 invalid input.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "cmtwist/report.hpp"
#include "cmtwist/verify.hpp"

using namespace cmtwist;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitCheck = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitInput = 4;

struct Options {
  std::int64_t q = 7;
  std::int64_t R = 0;
  std::int64_t d = 1;
  std::int64_t max_R = 100;
  int max_k = 3;
  std::string method = "both";
  long prec = kDefaultPrecision;
  long dyadic_prec = kDyadicBits;
  std::string denom_bound = kDefaultDenomBound.get_str();
  std::string cache_dir;
  std::string format = "json";
  unsigned jobs = default_threads();
  std::string out;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--q", o.q, "prime q = 7 mod 8 with K = Q(sqrt(-q))");
  sub->add_option("--method", o.method, "afe, eisenstein or both");
  sub->add_option("--prec", o.prec, "working precision in bits");
  sub->add_option("--dyadic-prec", o.dyadic_prec, "2-adic precision in bits");
  sub->add_option("--denom-bound", o.denom_bound, "starting denominator bound for recognition");
  sub->add_option("--cache-dir", o.cache_dir, "cache directory (default $CMTWIST_CACHE_DIR)");
  sub->add_option("--format", o.format, "json or tsv");
  sub->add_option("--jobs", o.jobs, "worker threads");
}

VerifyConfig make_config(const Options& o) {
  if (o.prec < 64 || o.prec > 4096) throw InvalidInput("--prec must lie in [64, 4096]");
  if (o.dyadic_prec < 16 || o.dyadic_prec > 4096) throw InvalidInput("--dyadic-prec must lie in [16, 4096]");
  if (o.jobs < 1 || o.jobs > 256) throw InvalidInput("--jobs must lie in [1, 256]");
  VerifyConfig c;
  c.prec = o.prec;
  c.dyadic_bits = o.dyadic_prec;
  try {
    c.denom_bound = mpz_class(o.denom_bound);
  } catch (const std::invalid_argument&) {
    throw InvalidInput("--denom-bound must be an integer");
  }
  if (c.denom_bound < 2 || c.denom_bound > kMaxDenomBound) throw InvalidInput("--denom-bound must lie in [2, 2^48]");
  c.method = parse_method(o.method);
  c.threads = o.jobs;
  return c;
}

void emit(const Options& o, const std::string& text) {
  std::cout << text;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw InvalidInput("cannot write " + o.out);
    f << text;
  }
}

struct VerifyOutcome {
  json report;
  bool cached = false;
};

VerifyOutcome verify_with_cache(std::int64_t q, std::int64_t R, const VerifyConfig& config, const Cache& cache,
                                OutputFormat format) {
  const std::string name = verify_cache_name(q, R, config);
  const std::string header = verify_cache_header(q, R, config);
  VerifyOutcome out;
  if (auto body = cache.load(name, header)) {
    out.report = json::parse(*body);
    out.cached = true;
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    const VerificationReport rep = run_verification(q, R, config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "q=" << q << " R=" << R << " computed in " << secs << " s\n";
    out.report = report_json(rep, cache.dir(), format);
    cache.store(name, header, out.report.dump(2) + "\n");
  }
  out.report["config"] = config_json(config, cache.dir(), format);
  return out;
}

int cmd_verify(const Options& o) {
  const VerifyConfig config = make_config(o);
  const OutputFormat format = parse_format(o.format);
  const Cache cache(o.cache_dir);
  const VerifyOutcome v = verify_with_cache(o.q, o.R, config, cache, format);
  emit(o, render(v.report, format));
  if (!v.report["passed"].get<bool>()) {
    for (const auto& c : v.report["checks"]) {
      if (c["status"] != "PASS") {
        std::cerr << "check failed: " << c["name"].get<std::string>() << ": " << c["evidence"].get<std::string>()
                  << "\n";
        break;
      }
    }
    return kExitCheck;
  }
  return 0;
}

int cmd_lvalue(const Options& o) {
  const VerifyConfig config = make_config(o);
  const OutputFormat format = parse_format(o.format);
  const long P = config.prec;
  const std::int64_t R = o.R == 0 ? o.d : o.R;
  const ImagQuadField field(o.q);
  validate_twist(field, R);
  if (o.d < 1 || R % o.d != 0) throw InvalidInput("d must divide R");
  const GrossCharacter chi = build_character(field);
  const auto embs = chi.embeddings(P + kAfeGuardBits);
  const ReferencePeriod period = reference_period(o.q, P);
  const BigReal imp = BigReal::from_mpq(imprimitivity_factor(o.d, R), P);

  json rows = json::array();
  auto add = [&](const std::string& method, std::size_t iota, const BigComplex& v, const BigReal& err,
                 const BigComplex* w) {
    json r;
    r["method"] = method;
    r["q"] = o.q;
    r["d"] = o.d;
    r["R"] = R;
    r["iota"] = iota;
    r["re"] = dec(v.re());
    r["im"] = dec(v.im());
    r["err"] = dec_short(err);
    r["w_re"] = w ? json(dec(w->re())) : json(nullptr);
    r["w_im"] = w ? json(dec(w->im())) : json(nullptr);
    rows.push_back(r);
  };
  std::vector<BigComplex> primitive;
  if (uses_afe(config.method)) {
    for (std::size_t i = 0; i < embs.size(); ++i) {
      const LValueResult r = twisted_l_value(chi, embs[i], o.d, P);
      primitive.push_back(r.value);
      add("afe", i, r.value * imp, r.error_bound * imp, &r.root_number);
    }
  }
  if (uses_eisenstein(config.method)) {
    std::vector<BigComplex> sums(embs.size(), BigComplex::zero(P));
    for (int j = 0; j < chi.h(); ++j) {
      const ClassEisensteinTable table(chi, R, j, P);
      for (std::size_t i = 0; i < embs.size(); ++i) sums[i] += table.partial(chi, embs[i], o.d);
    }
    for (std::size_t i = 0; i < embs.size(); ++i) {
      add("eisenstein", i, sums[i], eisenstein_error_bound(sums[i], P), nullptr);
      if (primitive.size() < embs.size()) primitive.push_back(sums[i] / imp);
    }
  }
  json out;
  out["values"] = rows;
  if (period.absolute) {
    // msl(d) = sqrt(d) L(conj(phi_d), 1)/Omega and its 2-adic order
    std::vector<BigComplex> msl;
    for (const BigComplex& v : primitive) msl.push_back(v * sqrt(BigReal(o.d, P)) / period.Omega);
    const TFit fit = reconstruct_T_element(msl, embs, chi.c(), config.denom_bound);
    out["msl"] = telement_json(fit.value);
    out["msl_ord"] = ord_P(fit.value, padic_embedding(chi, config.dyadic_bits));
  }
  if (format == OutputFormat::json) {
    emit(o, out.dump(2) + "\n");
  } else {
    std::string text = "method\tq\td\tR\tiota\tre\tim\terr\tw_re\tw_im\n";
    for (const auto& r : rows) {
      text += r["method"].get<std::string>() + "\t" + std::to_string(o.q) + "\t" + std::to_string(o.d) + "\t" +
              std::to_string(R) + "\t" + r["iota"].dump() + "\t" + r["re"].get<std::string>() + "\t" +
              r["im"].get<std::string>() + "\t" + r["err"].get<std::string>() + "\t" +
              (r["w_re"].is_null() ? "-" : r["w_re"].get<std::string>()) + "\t" +
              (r["w_im"].is_null() ? "-" : r["w_im"].get<std::string>()) + "\n";
    }
    if (out.contains("msl_ord")) text += "# msl_ord\t" + out["msl_ord"].dump() + "\n";
    emit(o, text);
  }
  return 0;
}

int cmd_scan(const Options& o) {
  const VerifyConfig config = make_config(o);
  const OutputFormat format = parse_format(o.format);
  if (o.max_R < 1) throw InvalidInput("--max-R must be positive");
  if (o.max_k < 0) throw InvalidInput("--max-k must be nonnegative");
  const ImagQuadField field(o.q);
  const Cache cache(o.cache_dir);
  json rows = json::array();
  int hits = 0;
  int computed = 0;
  bool all_pass = true;
  for (const TwistFamilyElement& t : family_members(field, o.max_R, o.max_k)) {
    json row;
    row["R"] = t.R;
    row["k"] = t.k;
    try {
      const VerifyOutcome v = verify_with_cache(o.q, t.R, config, cache, format);
      (v.cached ? hits : computed) += 1;
      const bool ok = v.report["passed"].get<bool>();
      row["status"] = ok ? "PASS" : "FAIL";
      row["ord_P"] = v.report["divisors"].back()["ord_P"];
      row["source"] = v.cached ? "cache" : "computed";
      all_pass = all_pass && ok;
    } catch (const Error& e) {
      row["status"] = "ERROR";
      row["ord_P"] = nullptr;
      row["source"] = "computed";
      row["error"] = e.what();
      ++computed;
      all_pass = false;
    }
    rows.push_back(row);
  }
  std::cerr << "cache_hits=" << hits << " computed=" << computed << "\n";
  if (format == OutputFormat::json) {
    json out;
    out["q"] = o.q;
    out["rows"] = rows;
    out["cache_hits"] = hits;
    out["computed"] = computed;
    emit(o, out.dump(2) + "\n");
  } else {
    std::string text = "R\tk\tstatus\tord_P\tsource\n";
    for (const auto& r : rows) {
      text += r["R"].dump() + "\t" + r["k"].dump() + "\t" + r["status"].get<std::string>() + "\t" +
              (r["ord_P"].is_null() ? "-" : r["ord_P"].dump()) + "\t" + r["source"].get<std::string>() + "\n";
    }
    emit(o, text);
  }
  return all_pass ? 0 : kExitCheck;
}

int cmd_selftest(const Options& o) {
  const Cache cache(o.cache_dir);
  bool ok = true;
  auto line = [&](const std::string& name, bool pass, const std::string& evidence) {
    std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << evidence << "\n";
    ok = ok && pass;
  };
  for (const auto& [q, h] : std::vector<std::pair<std::int64_t, int>>{{7, 1}, {23, 3}, {31, 3}}) {
    const int got = ClassGroup(ImagQuadField(q)).h();
    line("class number q=" + std::to_string(q), got == h, "h = " + std::to_string(got));
  }
  const std::string h7 = format_polynomial(cached_hilbert_polynomial(cache, 7, kDefaultPrecision));
  line("class polynomial q=7", h7 == "x + 3375", h7);
  bool lemma = true;
  for (int k = 0; k <= 4; ++k) {
    for (int mask = 0; mask < (1 << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i) s.push_back(mask >> i & 1 ? -1 : 1);
      lemma = lemma && galois_sqrt_sum(k, s) == (mask == 0 ? (1 << k) : 0);
    }
  }
  line("sign-sum lemma k<=4", lemma, "exhaustive");
  VerifyConfig c;
  c.threads = o.jobs;
  const VerificationReport rep = run_verification(7, 5, c);
  const Check* f = rep.first_failure();
  line("verify q=7 R=5", f == nullptr, f ? f->name : std::to_string(rep.checks.size()) + " checks");
  return ok ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central L-values of quadratic twists of Gross curves and their 2-adic valuations"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("CMTWIST_CACHE_DIR")) o.cache_dir = env;

  CLI::App* verify = app.add_subcommand("verify", "verify the valuation ladder for one R");
  add_common(verify, o);
  verify->add_option("--R", o.R, "squarefree R in the family")->required();
  verify->add_option("--out", o.out, "also write the report here");

  CLI::App* lvalue = app.add_subcommand("lvalue", "one twisted L-value per embedding");
  add_common(lvalue, o);
  lvalue->add_option("--d", o.d, "twist d dividing R");
  lvalue->add_option("--R", o.R, "level R (default d)");
  lvalue->add_option("--out", o.out, "also write the output here");

  CLI::App* scan = app.add_subcommand("scan", "verify every R in the family up to a bound");
  add_common(scan, o);
  scan->add_option("--max-R", o.max_R, "largest R");
  scan->add_option("--max-k", o.max_k, "largest number of prime factors");
  scan->add_option("--out", o.out, "also write the table here");

  CLI::App* selftest = app.add_subcommand("selftest", "quick consistency checks");
  add_common(selftest, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(o);
    if (lvalue->parsed()) return cmd_lvalue(o);
    if (scan->parsed()) return cmd_scan(o);
    return cmd_selftest(o);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheck;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "corrupt cache entry: " << e.what() << "\n";
    return kExitNumeric;
  }
}
