#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mrlp/error.hpp"
#include "mrlp/identities.hpp"
#include "mrlp/registry.hpp"
#include "mrlp/report.hpp"
#include "mrlp/sweep.hpp"

using namespace mrlp;

namespace {

std::string csv_of(const std::vector<RatioRecord>& r) {
  std::ostringstream os;
  write_ratio_csv(os, r);
  return os.str();
}

}  // namespace

TEST_SUITE("sweep") {

TEST_CASE("records do not depend on the thread count") {
  const TensorBanks banks(find_bank("haar"), 1, 9);
  const auto corpus = standard_corpus(banks, 3, 5);
  SweepOptions opt;
  opt.K = 3;
  opt.trials = 4;
  opt.seed = 5;
  opt.jobs = 1;
  const auto one = lp_sweep(corpus, banks, opt);
  opt.jobs = 3;
  const auto three = lp_sweep(corpus, banks, opt);
  CHECK(csv_of(one) == csv_of(three));
  CHECK(one.size() == corpus.size() * opt.ps.size());
}

TEST_CASE("p = 2 ratios of V_K elements are one") {
  const TensorBanks banks(find_bank("haar"), 1, 9);
  SweepOptions opt;
  opt.K = 3;
  opt.trials = 3;
  const auto recs = lp_sweep(standard_corpus(banks, 3, 1), banks, opt);
  int seen = 0;
  for (const auto& r : recs) {
    if (!r.in_vk || r.p != 2.0 || r.status != "ok") continue;
    ++seen;
    CHECK(std::abs(r.ratio - 1.0) <= 1e-10);
    CHECK(std::abs(r.sign_max - 1.0) <= 1e-10);
  }
  CHECK(seen > 0);
}

TEST_CASE("ratio CSV round trips") {
  const TensorBanks banks(find_bank("haar"), 1, 8);
  SweepOptions opt;
  opt.K = 2;
  opt.trials = 2;
  opt.ps = {1.5, 3.0};
  const auto recs = lp_sweep(standard_corpus(banks, 2, 2), banks, opt);
  const std::string text = csv_of(recs);
  std::istringstream in(text);
  const auto back = read_ratio_csv(in);
  REQUIRE(back.size() == recs.size());
  CHECK(csv_of(back) == text);
}

TEST_CASE("summary brackets the per-record ratios") {
  const TensorBanks banks(find_bank("haar"), 1, 8);
  SweepOptions opt;
  opt.K = 2;
  opt.trials = 2;
  const auto recs = lp_sweep(standard_corpus(banks, 2, 3), banks, opt);
  const auto s = summarize(recs, opt.trials);
  REQUIRE(s.per_p.size() == opt.ps.size());
  for (const auto& ps : s.per_p) {
    for (const auto& r : recs) {
      if (r.p != ps.p || r.status != "ok") continue;
      CHECK(r.ratio >= ps.ratio_min);
      CHECK(r.ratio <= ps.ratio_max);
    }
  }
  std::ostringstream os;
  write_summary(os, s);
  CHECK(!os.str().empty());
}

TEST_CASE("CSV parser handles quotes and rejects ragged rows gracefully") {
  std::istringstream in("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n");
  const auto rows = parse_csv(in);
  REQUIRE(rows.size() == 2);
  REQUIRE(rows[1].size() == 2);
  CHECK(rows[1][0] == "x,1");
  CHECK(rows[1][1] == "say \"hi\"");
}

}

TEST_SUITE("identities") {

TEST_CASE("Haar suite passes in one and two dimensions") {
  IdentityOptions opt;
  opt.K = 3;
  opt.functions = 5;
  const auto r1 = run_identity_suite(TensorBanks(find_bank("haar"), 1, 9), opt);
  CHECK(all_pass(r1));
  CHECK(r1.size() >= 8);
  const auto r2 = run_identity_suite(TensorBanks(find_bank("haar"), 2, 7), opt);
  CHECK(all_pass(r2));
  std::ostringstream os;
  write_identity_report(os, r2);
  CHECK(os.str().find("FAIL") == std::string::npos);
}

TEST_CASE("biorthogonal bank passes with the default tolerance") {
  IdentityOptions opt;
  opt.K = 3;
  opt.functions = 5;
  const auto r = run_identity_suite(TensorBanks(find_bank("cdf24"), 1, 13), opt);
  for (const auto& x : r) {
    CAPTURE(x.name);
    CHECK(x.pass);
  }
}

TEST_CASE("level headroom is enforced") {
  IdentityOptions opt;
  opt.K = 6;
  try {
    (void)run_identity_suite(TensorBanks(find_bank("haar"), 1, 9), opt);
    FAIL("expected LevelOverflow");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LevelOverflow);
  }
}

}
