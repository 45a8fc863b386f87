#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include "ttc/core/answer.hpp"
#include "ttc/core/digest.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/core/json_io.hpp"
#include "ttc/core/run_store.hpp"
#include "ttc/core/seed.hpp"
#include "ttc/core/verify.hpp"

namespace fs = std::filesystem;
using namespace ttc;

namespace {

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ttc_core_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Candidate answered(const std::string& raw, AnswerKind kind) {
  Candidate c;
  c.answer = normalize_answer(raw, kind);
  c.solver_id = "s";
  c.method_id = "m";
  return c;
}

class SlowVerifier final : public Verifier {
 public:
  std::string name() const override { return "slow"; }
  bool accepts(AnswerKind) const override { return true; }
  Verdict check(const Task&, const Candidate&) const override {
    std::this_thread::sleep_for(std::chrono::milliseconds(300));
    return Verdict::from_checks({{"late", true, {}}});
  }
};

class ThrowingVerifier final : public Verifier {
 public:
  std::string name() const override { return "throws"; }
  bool accepts(AnswerKind) const override { return true; }
  Verdict check(const Task&, const Candidate&) const override { throw std::runtime_error("boom"); }
  bool bounded() const override { return true; }
};

}  // namespace

TEST(Answer, CorpusMatchesExpectedCanonicalForms) {
  const auto corpus = read_json(fs::path(TTC_FIXTURES) / "answers.json");
  ASSERT_EQ(corpus.size(), 20u);
  for (const auto& e : corpus) {
    const auto raw = e.at("raw").get<std::string>();
    const auto kind = answer_kind_from_string(e.at("kind").get<std::string>());
    if (e.value("error", false)) {
      EXPECT_THROW(normalize_answer(raw, kind), AnswerFormatError) << raw;
      std::string why;
      EXPECT_FALSE(try_normalize_answer(raw, kind, &why)) << raw;
      EXPECT_FALSE(why.empty());
      continue;
    }
    const auto v = normalize_answer(raw, kind);
    EXPECT_EQ(v.canonical(), e.at("canonical").get<std::string>()) << raw;
    EXPECT_EQ(normalize_answer(v.canonical(), kind), v) << "not idempotent: " << raw;
  }
}

TEST(Answer, KindsRoundTripThroughNames) {
  for (auto k : {AnswerKind::choice, AnswerKind::text, AnswerKind::integer, AnswerKind::grid}) {
    EXPECT_EQ(answer_kind_from_string(to_string(k)), k);
  }
  EXPECT_THROW(answer_kind_from_string("float"), ConfigError);
}

TEST(Answer, JsonRoundTrip) {
  for (const auto& [raw, kind] : std::vector<std::pair<std::string, AnswerKind>>{
           {"c", AnswerKind::choice}, {"x  y", AnswerKind::text}, {"-5", AnswerKind::integer},
           {"12|30", AnswerKind::grid}}) {
    const auto v = normalize_answer(raw, kind);
    EXPECT_EQ(answer_from_json(to_json(v)), v);
  }
}

TEST(Verdict, StatusDerivesFromChecks) {
  EXPECT_EQ(Verdict::from_checks({}).status(), VerdictStatus::fail);
  EXPECT_TRUE(Verdict::from_checks({{"a", true, {}}, {"b", true, {}}}).passed());
  EXPECT_EQ(Verdict::from_checks({{"a", true, {}}, {"b", false, "x"}}).status(), VerdictStatus::fail);
  const auto e = Verdict::error("timeout", "slow");
  EXPECT_EQ(e.status(), VerdictStatus::error);
  EXPECT_EQ(e.error_cause(), "timeout");
  EXPECT_EQ(verdict_from_json(to_json(e)), e);
}

TEST(Verify, ReferenceComparison) {
  Task t{"t", "math", "q", AnswerKind::integer, AnswerValue::integer(42), nullptr};
  EXPECT_TRUE(verify(t, answered("answer: 42", AnswerKind::integer)).passed());
  const auto v = verify(t, answered("41", AnswerKind::integer));
  EXPECT_EQ(v.status(), VerdictStatus::fail);
  EXPECT_EQ(v.checks().front().detail, "expected 42, got 41");
}

TEST(Verify, ErrorCauses) {
  Task bare{"t", "", "q", AnswerKind::text, std::nullopt, nullptr};
  EXPECT_EQ(verify(bare, answered("x", AnswerKind::text)).error_cause(), "unverifiable");

  Task t{"t", "", "q", AnswerKind::text, AnswerValue::text("x"), nullptr};
  EXPECT_EQ(verify(t, Candidate::failed("s", "m", 0, "HTTP 500")).error_cause(), "solver error");
  EXPECT_EQ(verify(t, Candidate::failed("s", "m", 0, "malformed output: junk")).error_cause(),
            "malformed output");

  t.verifier = std::make_shared<ThrowingVerifier>();
  EXPECT_EQ(verify(t, answered("x", AnswerKind::text)).error_cause(), "crash");
}

TEST(Verify, WatchdogTimesOutUnboundedVerifier) {
  Task t{"t", "", "q", AnswerKind::text, std::nullopt, std::make_shared<SlowVerifier>()};
  VerifyOptions fast{std::chrono::milliseconds(20)};
  EXPECT_EQ(verify(t, answered("x", AnswerKind::text), fast).error_cause(), "timeout");
  EXPECT_TRUE(verify(t, answered("x", AnswerKind::text)).passed());
}

TEST(Verify, TaskValidation) {
  Task t{"t", "", "q", AnswerKind::integer, AnswerValue::text("x"), nullptr};
  EXPECT_THROW(validate_task(t), ConfigError);
  t.reference = AnswerValue::integer(1);
  EXPECT_NO_THROW(validate_task(t));
  t.id.clear();
  EXPECT_THROW(validate_task(t), ConfigError);
}

TEST(Digest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Seed, DerivationIsStableAndSeparatesStreams) {
  static_assert(derive_seed(1, "a") == derive_seed(1, "a"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a", 0), derive_seed(1, "a", 1));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto u = uniform01(rng);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(uniform_below(rng, 7), 7u);
  }
}

TEST(RunStore, RoundTripAndNoOverwrite) {
  const auto dir = fresh_dir("store");
  RunStore store(dir);
  RunRecord r;
  r.run_id = "run-1";
  r.config = {{"seed", 3}};
  RunCell cell{"t1", "s1", answered("7", AnswerKind::integer), Verdict::from_checks({{"reference", true, {}}}),
               nlohmann::json::array({"step"})};
  r.cells = {cell, cell};
  r.cells[1].task_id = "t2";
  const auto id = store.record_run(r);
  EXPECT_EQ(id, "run-1");
  const auto loaded = store.load_run(id);
  EXPECT_EQ(loaded.cells, r.cells);
  EXPECT_EQ(loaded.config, r.config);
  EXPECT_TRUE(fs::exists(dir / id / "meta.json"));
  EXPECT_NE(store.record_run(r), "run-1");
  fs::remove_all(dir);
}

TEST(RunStore, TruncatedRecordReportsOffset) {
  const auto dir = fresh_dir("corrupt");
  RunStore store(dir);
  RunRecord r;
  r.run_id = "run-x";
  r.cells = {{"t", "s", answered("1", AnswerKind::integer), Verdict::from_checks({{"c", true, {}}}), {}}};
  store.record_run(r);
  const auto file = dir / "run-x" / "record.jsonl";
  auto text = [&] {
    std::ifstream in(file);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }();
  std::ofstream(file, std::ios::trunc) << text << text.substr(0, text.size() / 2);
  try {
    store.load_run("run-x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GE(e.offset(), text.size());
  }
  fs::remove_all(dir);
}

TEST(RunStore, CellLineRoundTrip) {
  RunCell cell{"t", "s", Candidate::failed("s", "m", 9, "oops"), Verdict::error("solver error", "oops"), {}};
  EXPECT_EQ(parse_cell(serialize_cell(cell), 0), cell);
  EXPECT_THROW(parse_cell("{not json", 17), ParseError);
}
