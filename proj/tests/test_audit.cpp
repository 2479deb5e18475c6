#include <gamma_cone/audit.hpp>

#include <gtest/gtest.h>

using namespace gamma_cone;

namespace {

const DimensionParam inf = DimensionParam::infinity();

std::vector<NamedGraph> small_corpus() {
  return {{"k4", make_complete(4)}, {"c5", make_cycle(5)}, {"p4", make_path(4)},
          {"q3", make_hypercube(3)}, {"star", Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})}};
}

} // namespace

TEST(Json, NonFiniteNumbers) {
  EXPECT_EQ(json_number(std::numeric_limits<double>::infinity()).dump(), "\"inf\"");
  EXPECT_EQ(json_number(-std::numeric_limits<double>::infinity()).dump(), "\"-inf\"");
  EXPECT_EQ(json_number(0.1).dump(), "0.1");
}

TEST(Json, DoublesRoundTrip) {
  Xorshift64Star rng(97);
  for (int t = 0; t < 1000; ++t) {
    const double v = rng.uniform(-1e6, 1e6) * std::pow(10.0, rng.uniform(-12, 0));
    EXPECT_EQ(json::parse(json_number(v).dump()).get<double>(), v);
  }
}

TEST(Statuses, Conventions) {
  EXPECT_EQ(from_conventions(true, true), CheckStatus::pass);
  EXPECT_EQ(from_conventions(false, false), CheckStatus::fail);
  EXPECT_STREQ(to_string(from_conventions(true, false)), "convention-A-pass/convention-B-fail");
  EXPECT_STREQ(to_string(from_conventions(false, true)), "convention-A-fail/convention-B-pass");
  EXPECT_STREQ(to_string(CheckStatus::hypothesis_not_met), "hypothesis-not-met");
}

TEST(Audit, ReportShape) {
  const auto r = audit_graph({"k4", make_complete(4)}, AuditOptions{});
  const auto j = r.to_json();
  EXPECT_EQ(j["graph_id"], "k4");
  EXPECT_EQ(j["toolkit_version"], toolkit_version);
  EXPECT_EQ(j["seed"], 0);
  ASSERT_FALSE(j["checks"].empty());
  for (const auto &c : j["checks"]) {
    for (const char *key : {"name", "paper_ref", "status", "lhs", "rhs", "tolerance"})
      EXPECT_TRUE(c.contains(key)) << key;
    EXPECT_FALSE(c["lhs"].is_boolean());
    EXPECT_FALSE(c["rhs"].is_boolean());
    EXPECT_FALSE(c["paper_ref"].get<std::string>().empty());
  }
  EXPECT_FALSE(r.any_failed());
}

TEST(Audit, CompleteGraphsPassEverything) {
  AuditOptions opt;
  opt.n_params = {inf};
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto r = audit_graph({"k", make_complete(n)}, opt);
    for (const auto &c : r.checks)
      EXPECT_NE(c.status, CheckStatus::fail) << "n=" << n << " " << c.name;
  }
}

TEST(Audit, DeterministicAcrossThreadCounts) {
  AuditOptions opt;
  opt.seed = 7;
  const auto corpus = small_corpus();
  const auto a = run_audit(corpus, opt, 1);
  const auto b = run_audit(corpus, opt, 4);
  ASSERT_EQ(a.size(), corpus.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].graph_id, corpus[i].id);
    EXPECT_EQ(a[i].to_line(), b[i].to_line());
  }
}

TEST(Audit, SeedChangesRandomChecksOnly) {
  AuditOptions a, b;
  a.seed = 1;
  b.seed = 2;
  const auto ra = audit_graph({"c5", make_cycle(5)}, a);
  const auto rb = audit_graph({"c5", make_cycle(5)}, b);
  ASSERT_EQ(ra.checks.size(), rb.checks.size());
  for (std::size_t i = 0; i < ra.checks.size(); ++i) {
    EXPECT_EQ(ra.checks[i].name, rb.checks[i].name);
    EXPECT_EQ(ra.checks[i].status, rb.checks[i].status);
  }
  EXPECT_NE(ra.to_line(), rb.to_line());
}

TEST(Audit, RejectsDisconnected) {
  EXPECT_THROW(audit_graph({"x", Graph(4, {{0, 1}, {2, 3}})}, AuditOptions{}),
               disconnected_graph_error);
}

TEST(Audit, ParallelMapPropagatesErrors) {
  const std::vector<int> items{1, 2, 3, 4};
  const std::function<int(const int &)> job = [](const int &x) {
    if (x == 3)
      throw input_error("three");
    return x * x;
  };
  EXPECT_THROW(ordered_parallel_map(items, job, 3), input_error);
}

TEST(CurvatureReport, K4AllVertices) {
  const auto r = curvature_report({"k4", make_complete(4)}, std::nullopt, inf);
  const auto j = r.to_json();
  ASSERT_EQ(j["results"]["vertices"].size(), 4u);
  for (const auto &v : j["results"]["vertices"])
    EXPECT_NEAR(v["value"].get<double>(), 3.0, 1e-9);
  EXPECT_NEAR(j["results"]["uniform"]["value"].get<double>(), 3.0, 1e-9);
  EXPECT_FALSE(r.any_failed());
}

TEST(CurvatureReport, K4SingleVertexAtN2) {
  const auto r = curvature_report({"k4", make_complete(4)}, 0, DimensionParam::finite(2));
  const auto j = r.to_json();
  ASSERT_EQ(j["results"]["vertices"].size(), 1u);
  EXPECT_NEAR(j["results"]["vertices"][0]["value"].get<double>(), 0.0, 1e-9);
  EXPECT_THROW(curvature_report({"k4", make_complete(4)}, 9, inf), input_error);
}

TEST(CricReport, Examples) {
  const auto k3 = cric_report({"k3", make_complete(3)}, inf).to_json();
  EXPECT_NEAR(k3["results"]["cric"].get<double>(), 3.0, 1e-9);
  EXPECT_NEAR(k3["results"]["kc_max"].get<double>(), 3.0, 1e-12);
  EXPECT_TRUE(k3["results"]["attained"].get<bool>());

  const auto c4 = cric_report({"c4", make_cycle(4)}, inf).to_json();
  EXPECT_LE(c4["results"]["cric"].get<double>(), 3.5 + 1e-9);
  EXPECT_GE(c4["results"]["gap"].get<double>(), -1e-9);
}
