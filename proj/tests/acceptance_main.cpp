// Acceptance suite: end-to-end checks of the library against its published
// targets. Each criterion prints one PASS/FAIL line with the measured
// numbers; the exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "test_support.hpp"
#include "zipfmix/zipfmix.hpp"

using namespace zipfmix;

namespace {

const std::filesystem::path kDataDir = ZIPFMIX_DATA_DIR;

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int id, const char* label, bool pass, const std::string& detail,
            double seconds) {
  std::printf("[%2d] %-4s %-46s %s (%.1f s)\n", id, pass ? "PASS" : "FAIL", label,
              detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmtg(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_geom_mixture_identity() {
  Timer t;
  double worst = 0.0;
  bool pass = true;
  for (const double a : {1.5, 2.0, 3.5, 5.0}) {
    const auto r = verify_geom_mixture_pmf(a, 200, 1e-8);
    pass = pass && r.passed;
    worst = std::max(worst, r.max_rel_error);
  }
  const double sec = t.seconds();
  pass = pass && sec < 30.0;
  report(1, "geometric-mixture pmf identity", pass,
         "alpha {1.5,2,3.5,5}, x 1..200: max rel err " + fmtg(worst) + " (tol 1e-8)",
         sec);
}

void criterion_2_ztp_mixture_identity() {
  Timer t;
  double worst = 0.0;
  bool pass = true;
  for (const double a : {1.5, 2.0, 3.5}) {
    const auto r = verify_ztp_mixture_pmf(a, 50, 1e-6);
    pass = pass && r.passed;
    worst = std::max(worst, r.max_rel_error);
  }
  const auto r11 = verify_ztp_mixture_pmf(1.1, 50, 1e-5);
  pass = pass && r11.passed;
  const double sec = t.seconds();
  pass = pass && sec < 120.0;
  report(2, "ztp-mixture pmf identity", pass,
         "x 1..50: max rel err " + fmtg(std::max(worst, r11.max_rel_error)) +
             " (tol 1e-6; 1e-5 at alpha 1.1)",
         sec);
}

void criterion_3_pgf_mixtures() {
  Timer t;
  const std::vector<double> zs = {-0.5, 0.3, 0.9};
  double worst = 0.0;
  bool pass = true;
  for (const double a : {1.5, 2.0, 3.5, 5.0}) {
    const auto r = verify_mixture_pgfs(a, zs, 1e-7);
    pass = pass && r.passed;
    worst = std::max(worst, r.max_rel_error);
  }
  report(3, "pgf mixture identities", pass,
         "z {-0.5,0.3,0.9}: max rel err " + fmtg(worst) + " (tol 1e-7)", t.seconds());
}

void criterion_4_normalizations() {
  Timer t;
  double worst = 0.0;
  bool pass = true;
  for (const double a : {1.1, 1.5, 2.0, 3.5, 5.0}) {
    const auto s = GeomScaleMixing(a).normalization();
    const auto l = ZtpRateMixing(a).normalization();
    pass = pass && s.converged && l.converged;
    worst = std::max({worst, std::abs(s.value - 1.0), std::abs(l.value - 1.0)});
  }
  pass = pass && worst <= 1e-7;
  report(4, "mixing densities integrate to one", pass,
         "alpha {1.1,1.5,2,3.5,5}: max |mass-1| " + fmtg(worst) + " (tol 1e-7)",
         t.seconds());
}

void criterion_5_generative_equivalence() {
  Timer t;
  const double alpha = 2.0;
  const Zipf zipf(alpha);
  std::vector<double> probs(50);
  for (int i = 0; i < 50; ++i) probs[i] = zipf.pmf(i + 1);
  const double tail = 1.0 - zipf.cdf(50);

  const GeomScaleMixing scale(alpha);
  RandomStream rng1(4242);
  std::vector<std::uint64_t> via_geom(1000000);
  for (auto& x : via_geom) x = ShiftedGeometric(scale.sample(rng1)).sample(rng1);
  const double p_geom = oracle::chisq_gof_pvalue(via_geom, probs, tail);

  const ZtpRateMixing rate(alpha);
  RandomStream rng2(4243);
  std::vector<std::uint64_t> via_ztp(1000000);
  for (auto& x : via_ztp) x = ZeroTruncatedPoisson(rate.sample(rng2)).sample(rng2);
  const double p_ztp = oracle::chisq_gof_pvalue(via_ztp, probs, tail);

  const bool pass = p_geom > 0.01 && p_ztp > 0.01;
  report(5, "generative equivalence (1e6 draws each path)", pass,
         "chi-square p: geometric path " + fmtg(p_geom) + ", ztp path " + fmtg(p_ztp) +
             " (need > 0.01)",
         t.seconds());
}

void criterion_6_not_ztmp() {
  Timer t;
  std::vector<double> zs;
  for (int k = 1; k <= 6; ++k) zs.push_back(-std::pow(10.0, k));
  const auto h = pgf_negative_probe(2.0, zs);
  bool decreasing = true;
  double prev = 0.0;
  for (const double v : h) {
    decreasing = decreasing && v < prev;
    prev = v;
  }
  const bool bound = h.back() < -1e3;
  const bool pass = decreasing && bound;
  report(6, "not-ZTMP: pgf unbounded below", pass,
         std::string("strictly decreasing: ") + (decreasing ? "yes" : "no") +
             "; h(-1e6) = " + fmtg(h.back()) + " (required < -1e3)",
         t.seconds());
}

void criterion_7_fixture_ks() {
  Timer t;
  struct Row {
    const char* name;
    ChapterSummary per_word;
    ChapterSummary per_freq;
  };
  std::vector<Row> rows;
  for (const auto& [name, file, idx] :
       {std::tuple<const char*, const char*, std::size_t>{"chapter 1", "chapter1.csv", 1},
        std::tuple<const char*, const char*, std::size_t>{"chapter 135", "chapter135.csv",
                                                          135}}) {
    const auto table = read_freq_table(kDataDir / file);
    rows.push_back({name, analyze_chapter(table, Weighting::PerWord, idx),
                    analyze_chapter(table, Weighting::PerFrequency, idx)});
  }
  for (const auto& r : rows) {
    std::printf("     | %-11s alpha=%.4f  per-word D=%.4f p=%.3g  "
                "per-frequency D=%.4f p=%.3g\n",
                r.name, r.per_word.alpha_hat, r.per_word.ks_d, r.per_word.ks_p,
                r.per_freq.ks_d, r.per_freq.ks_p);
  }
  const bool ch1_ok = rows[0].per_word.ks_p >= 0.05;
  const bool ch135_ok = rows[1].per_word.ks_p < 0.10;
  const double sec = t.seconds();
  const bool pass = ch1_ok && ch135_ok && sec < 10.0;
  report(7, "fixture KS gates (per-word weighting)", pass,
         "ch1 p = " + fmtg(rows[0].per_word.ks_p) + " (need >= 0.05), ch135 p = " +
             fmtg(rows[1].per_word.ks_p) + " (need < 0.10)",
         sec);
}

void criterion_8_mle_grid_search() {
  Timer t;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double alpha = 1.3 + (6.0 - 1.3) * i / 19.0;
    RandomStream rng(500 + i);
    const auto draws = zipf_sample(Zipf(alpha), rng, 2000);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const auto x : draws) ++hist[x];
    FreqOfFreqTable table;
    for (const auto& [value, count] : hist) table.rows.push_back({value, count});
    const auto fit = fit_zipf_mle(table);
    double sum_log = 0.0;
    for (const auto& r : table.rows)
      sum_log += r.freq * std::log(static_cast<double>(r.value));
    const double ref = oracle::grid_search_alpha(
        sum_log, 2000.0, [](double a) { return riemann_zeta(a); });
    worst = std::max(worst, std::abs(fit.alpha_hat - ref));
  }
  report(8, "mle equals brute-force likelihood search", worst <= 1e-4,
         "20 seeded samples, alpha in [1.3,6], n=2000: max |diff| " + fmtg(worst) +
             " (tol 1e-4)",
         t.seconds());
}

void criterion_9_moment_laws() {
  Timer t;
  RandomStream rng1(901);
  const auto zs = zipf_sample(Zipf(3.5), rng1, 1000000);
  const auto mz = oracle::mean_se(zs);
  const double target_z = oracle::zeta_series(2.5) / oracle::zeta_series(3.5);
  const bool zipf_ok = std::abs(mz.mean - target_z) <= 3.0 * mz.se;

  RandomStream rng2(902);
  const auto ps = zipf_pss_sample(3.0, 2.0, rng2, 1000000);
  const auto mp = oracle::mean_se(ps);
  const double target_p = 2.0 * oracle::zeta_series(2.0) / oracle::zeta_series(3.0);
  const bool pss_ok = std::abs(mp.mean - target_p) <= 3.0 * mp.se;

  report(9, "sampler moment laws (1e6 draws)", zipf_ok && pss_ok,
         "Zipf(3.5) mean " + fmtg(mz.mean) + " vs " + fmtg(target_z) +
             "; Zipf-PSS(3,2) mean " + fmtg(mp.mean) + " vs " + fmtg(target_p) +
             " (3 SE)",
         t.seconds());
}

void criterion_10_solver_round_trip() {
  Timer t;
  double worst = 0.0;
  for (int k = 0; k <= 32; ++k) {
    const double m = std::pow(10.0, static_cast<double>(k) / 8.0);
    worst = std::max(worst, std::abs(ztp_mean(lambda_from_mean(m)) - m));
  }
  report(10, "ztp moment solver round trip", worst <= 1e-10,
         "mean grid 1..1e4: max |round trip error| " + fmtg(worst) + " (tol 1e-10)",
         t.seconds());
}

}  // namespace

int main() {
  std::printf("zipfmix acceptance suite (data: %s)\n", kDataDir.c_str());
  criterion_1_geom_mixture_identity();
  criterion_2_ztp_mixture_identity();
  criterion_3_pgf_mixtures();
  criterion_4_normalizations();
  criterion_5_generative_equivalence();
  criterion_6_not_ztmp();
  criterion_7_fixture_ks();
  criterion_8_mle_grid_search();
  criterion_9_moment_laws();
  criterion_10_solver_round_trip();
  if (g_failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
