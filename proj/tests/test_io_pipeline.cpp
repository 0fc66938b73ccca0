#include <gtest/gtest.h>

#include "support.hpp"

using namespace pfes;

namespace {

ErrorKind parse_kind(const std::string& text, std::size_t* line = nullptr) {
  try {
    parse_table(text);
  } catch (const ParseError& e) {
    if (line) *line = e.line();
    return e.kind();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed without error: " << text;
  return ErrorKind::internal;
}

const std::string kHeader = "PFES 1 N=3 k=2 B=50 CB=50\n";

}  // namespace

TEST(TableIo, RoundTripSmall) {
  FourierTable f(5, 4, 200, 120);
  f.fricke_sign = -1;
  f.eigenvalues.emplace_back(5, make_rational(-3, 4));
  f.provenance.push_back("hand built");
  f.set({1, 1, 5}, make_rational(7, 3));
  f.set({2, -3, 10}, -1);
  const std::string text = serialize_table(f);
  const FourierTable g = parse_table(text);
  EXPECT_EQ(serialize_table(g), text);
  EXPECT_EQ(g.entries(), f.entries());
  EXPECT_EQ(g.certified_bound(), 120);
  EXPECT_EQ(g.fricke_sign, -1);
}

TEST(TableIo, Errors) {
  std::size_t line = 0;
  EXPECT_EQ(parse_kind("PFEZ 1 N=3 k=2 B=50 CB=50\n"), ErrorKind::parse_error);
  EXPECT_EQ(parse_kind(kHeader + "1 1 3 1/x\n", &line), ErrorKind::parse_error);
  EXPECT_EQ(line, 2u);
  EXPECT_EQ(parse_kind(kHeader + "1 1 3\n"), ErrorKind::parse_error);
  EXPECT_EQ(parse_kind(kHeader + "1 1 3 1/0\n"), ErrorKind::parse_error);
  EXPECT_EQ(parse_kind(kHeader + "1 1 4 1\n"), ErrorKind::invariant_error);   // 3 does not divide mN
  EXPECT_EQ(parse_kind(kHeader + "1 4 3 1\n"), ErrorKind::invariant_error);   // not positive definite
  EXPECT_EQ(parse_kind(kHeader + "4 1 24 1\n"), ErrorKind::invariant_error);  // |disc| above B
  EXPECT_EQ(parse_kind(kHeader + "1 1 3 1\n1 1 3 2\n"), ErrorKind::invariant_error);
  EXPECT_EQ(parse_kind("PFES 1 N=3 k=2 B=50 CB=60\n"), ErrorKind::invariant_error);
}

TEST(TableIo, SliceAndSeries) {
  JacobiSlice phi;
  phi.index = 15;
  phi.weight = 3;
  phi.bound = 99;
  phi.coeffs[{1, 1}] = make_rational(-2, 9);
  phi.coeffs[{2, 7}] = 4;
  const JacobiSlice back = parse_slice(serialize_slice(phi));
  EXPECT_EQ(back.coeffs, phi.coeffs);
  EXPECT_EQ(back.index, 15);

  const QSeries h = skoruppa_map(phi, DirichletCharacter::legendre(3), 3);
  const QSeries h2 = parse_qseries(serialize_qseries(h));
  EXPECT_EQ(h2.coeffs, h.coeffs);
  EXPECT_EQ(h2.character, h.character);
  EXPECT_EQ(h2.level, h.level);
}

TEST(Fixtures, ShippedFilesMatchGenerators) {
  EXPECT_EQ(read_text_file(fixtures::data_path("pipeline_fixture.pfes")), serialize_table(fixtures::pipeline_fixture()));
  EXPECT_EQ(read_text_file(fixtures::data_path("roundtrip_10k.pfes")), serialize_table(fixtures::roundtrip_fixture()));
}

TEST(Pipeline, FixtureSucceeds) {
  const auto cfg =
      PipelineConfig::from_json(nlohmann::json::parse(read_text_file(fixtures::data_path("pipeline_config.json"))));
  const PipelineOutcome out = run_pipeline(fixtures::pipeline_fixture(), cfg);
  ASSERT_TRUE(out.success) << out.report.dump(2);
  EXPECT_FALSE(out.failure.has_value());
  EXPECT_EQ(out.report.dump(2) + "\n", read_text_file(fixtures::data_path("pipeline_golden.json")));
}

TEST(Pipeline, ConfigRoundTrip) {
  PipelineConfig cfg;
  cfg.character = DirichletCharacter::parse("4:1,3:1");
  cfg.scan_primes = {2, 3};
  cfg.search_bound = 20;
  const PipelineConfig back = PipelineConfig::from_json(cfg.to_json());
  EXPECT_EQ(back.to_json().dump(), cfg.to_json().dump());
}

TEST(Pipeline, ZeroTableFailsAtFirstStage) {
  const PipelineOutcome out = run_pipeline(FourierTable(3, 2, 50, 50));
  EXPECT_FALSE(out.success);
  EXPECT_EQ(out.failure, ErrorKind::zero_form);
  EXPECT_EQ(out.report["stages"].size(), 1u);
}
