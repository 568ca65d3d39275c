// Prints msl(d) and Phi(d) with their 2-adic orders for the divisors of a twist.
//
//   demo_twist [q] [R]      (defaults: 7 65)

#include <cstdio>
#include <cstdlib>
#include <string>

#include "cmtwist/verify.hpp"

using namespace cmtwist;

int main(int argc, char** argv) {
  const std::int64_t q = argc > 1 ? std::atoll(argv[1]) : 7;
  const std::int64_t R = argc > 2 ? std::atoll(argv[2]) : 65;
  try {
    VerifyConfig config;
    config.method = Method::afe;
    const VerificationReport rep = run_verification(q, R, config);
    std::printf("q = %lld, R = %lld, h = %d, Omega = %s (%s)\n", static_cast<long long>(q),
                static_cast<long long>(R), rep.h, rep.period.Omega.to_string(20).c_str(),
                rep.period.source.c_str());
    std::printf("%6s %4s %28s %6s  %s\n", "d", "k_d", "msl(d) [first embedding]", "ord_P", "Phi(d)");
    for (const DivisorRow& row : rep.rows) {
      std::printf("%6lld %4d %28s %6ld  %s\n", static_cast<long long>(row.d), row.k_d,
                  row.msl.msl[0].re().to_string(20).c_str(), row.ord_P, row.phi.to_string().c_str());
    }
    std::printf("all checks %s\n", rep.passed() ? "pass" : "FAIL");
    return rep.passed() ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 4;
  }
}
