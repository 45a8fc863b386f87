#include <gtest/gtest.h>

#include <cmath>

#include "ttc/adapters/scripted_solver.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/methods/methods.hpp"
#include "ttc/methods/selection.hpp"

using namespace ttc;
using nlohmann::json;

namespace {

Task int_task(const std::string& id = "q", std::int64_t ref = 1) {
  return Task{id, "", "What is the answer?", AnswerKind::integer, AnswerValue::integer(ref), nullptr};
}

std::shared_ptr<ScriptedSolver> scripted(const std::string& id, const json& tables, std::uint64_t seed = 0) {
  return std::make_shared<ScriptedSolver>(id, script_from_json({{"tasks", tables}}), seed);
}

// Correct ("1") with probability p, otherwise one of two wrong answers.
std::shared_ptr<ScriptedSolver> bernoulli(double p, std::uint64_t seed = 0) {
  return scripted("b", {{"*", {{"answer", {{"1", p}, {"2", (1 - p) / 2}, {"3", (1 - p) / 2}}}}}}, seed);
}

double solve_rate(const std::function<MethodResult(std::uint64_t)>& run, const Task& task, int trials) {
  int ok = 0;
  for (int t = 0; t < trials; ++t) {
    const auto r = run(static_cast<std::uint64_t>(t));
    ok += r.candidate.ok() && *r.candidate.answer == *task.reference;
  }
  return ok / static_cast<double>(trials);
}

std::vector<AnswerValue> ints(std::initializer_list<int> xs) {
  std::vector<AnswerValue> out;
  for (int x : xs) out.push_back(AnswerValue::integer(x));
  return out;
}

}  // namespace

TEST(Consensus, ModalAnswerAndDiversity) {
  const auto r = consensus(ints({3, 1, 3, 2, 1}));
  ASSERT_TRUE(r.modal_answer);
  EXPECT_EQ(r.modal_answer->as_integer(), 1);  // tie between 1 and 3: smallest canonical form
  EXPECT_EQ(r.agreeing, 2u);
  EXPECT_EQ(r.total, 5u);
  EXPECT_DOUBLE_EQ(r.c, 0.4);
  EXPECT_DOUBLE_EQ(r.diversity, 1.0 - r.c);
  EXPECT_FALSE(consensus(std::vector<AnswerValue>{}).modal_answer);
}

TEST(Consensus, CandidatesSkipErrors) {
  std::vector<Candidate> cs(3);
  cs[0].answer = AnswerValue::integer(5);
  cs[1] = Candidate::failed("s", "m", 0, "boom");
  cs[2].answer = AnswerValue::integer(5);
  const auto r = consensus(cs);
  EXPECT_EQ(r.total, 2u);
  EXPECT_DOUBLE_EQ(r.c, 1.0);
  EXPECT_EQ(modal_index(cs), 0u);
  EXPECT_EQ(weighted_vote_index(cs, {0.2, 0.5, 0.3}), 0u);
  EXPECT_EQ(smallest_flagged_index(cs, {false, false, true}), 2u);
  EXPECT_FALSE(smallest_flagged_index(cs, {false, true, false}));
}

TEST(Methods, ZeroShotMatchesOneSampleMethods) {
  const auto s = bernoulli(0.5, 4);
  const auto t = int_task();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto z = zero_shot(*s, t, seed).candidate.answer;
    EXPECT_EQ(best_of_n(*s, t, 1, seed).candidate.answer, z);
    EXPECT_EQ(self_consistency(*s, t, 1, seed).candidate.answer, z);
  }
}

TEST(Methods, BestOfNFollowsRejectionLaw) {
  const auto t = int_task();
  for (double p : {0.2, 0.5}) {
    const auto s = bernoulli(p, 11);
    for (int n : {1, 3, 6}) {
      const double rate = solve_rate([&](std::uint64_t seed) { return best_of_n(*s, t, n, seed); }, t, 3000);
      EXPECT_NEAR(rate, 1 - std::pow(1 - p, n), 0.035) << "p=" << p << " n=" << n;
    }
  }
}

TEST(Methods, BestOfNReturnsSmallestVerifiedAndFallsBackToModal) {
  auto s = scripted("s", {{"q", {{"answer", {{"4", 1.0}}}}}});
  const auto wrong = best_of_n(*s, int_task("q", 1), 3, 0);
  EXPECT_EQ(wrong.trace.at("selection"), "modal");
  EXPECT_EQ(wrong.candidate.answer->as_integer(), 4);
  const auto right = best_of_n(*s, int_task("q", 4), 3, 0);
  EXPECT_EQ(right.trace.at("selection"), "verified");
}

TEST(Methods, SelfConsistencyMatchesBinomialMajority) {
  const auto t = int_task();
  const auto s = scripted("sc", {{"*", {{"answer", {{"1", 0.6}, {"2", 0.4}}}}}}, 3);
  const double rate = solve_rate([&](std::uint64_t seed) { return self_consistency(*s, t, 5, seed); }, t, 4000);
  EXPECT_NEAR(rate, 0.68256, 0.03);
}

TEST(Methods, ParallelismDoesNotChangeResults) {
  const auto s = bernoulli(0.3, 8);
  const auto t = int_task();
  ExecOptions par;
  par.parallel = 6;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EXPECT_EQ(best_of_n(*s, t, 9, seed).trace, best_of_n(*s, t, 9, seed, par).trace);
    EXPECT_EQ(self_consistency(*s, t, 9, seed).trace, self_consistency(*s, t, 9, seed, par).trace);
    EXPECT_EQ(mcts_resample(*s, t, 9, seed).trace, mcts_resample(*s, t, 9, seed, par).trace);
  }
}

TEST(Methods, MixtureOfAgentsWeightsVotes) {
  const auto a = scripted("a", {{"*", {{"answer", {{"7", 1.0}}}}}});
  const auto b = scripted("b", {{"*", {{"answer", {{"9", 1.0}}}}}});
  const auto t = int_task();
  EXPECT_EQ(mixture_of_agents({a.get(), b.get(), b.get()}, {}, t, 0).candidate.answer->as_integer(), 9);
  EXPECT_EQ(mixture_of_agents({a.get(), b.get(), b.get()}, {0.6, 0.2, 0.2}, t, 0).candidate.answer->as_integer(), 7);
  EXPECT_THROW(mixture_of_agents({a.get()}, {0.5}, t, 0), ConfigError);
  EXPECT_THROW(mixture_of_agents({}, {}, t, 0), ConfigError);
}

TEST(Methods, MctsPrefersPrefixWithHigherReward) {
  auto s = std::make_shared<ScriptedSolver>(
      "m", script_from_json({{"tasks", {{"*", {{"prefix", {{"good path", 0.5}, {"bad path", 0.5}}}, {"answer", {{"2", 1.0}}}}}}},
                             {"rules", {{{"role", "answer"}, {"contains", "good path"}, {"answers", {{"1", 1.0}}}}}}}));
  const auto r = mcts_resample(*s, int_task(), 16, 5);
  EXPECT_EQ(r.trace.at("chosen_prefix"), "good path");
  EXPECT_EQ(r.trace.at("reward"), "verified");
  EXPECT_EQ(r.candidate.answer->as_integer(), 1);
  EXPECT_EQ(r.trace.at("nodes").size(), 2u);
}

TEST(Methods, RoundTripAcceptsFaithfulReconstruction) {
  const auto faithful = scripted("f", {{"*", {{"forward", {{"@rot13", 1.0}}}, {"backward", {{"@rot13", 1.0}}}}}});
  Task t{"q", "", "Describe the grid", AnswerKind::text, std::nullopt, nullptr};
  const auto ok = round_trip(*faithful, t, {}, 0);
  EXPECT_TRUE(ok.trace.at("accepted").get<bool>());
  EXPECT_TRUE(ok.flags.empty());

  const auto lossy = scripted("l", {{"*", {{"forward", {{"@rot13", 1.0}}}, {"backward", {{"something else", 1.0}}}}}});
  RoundTripOptions three;
  three.attempts = 3;
  const auto bad = round_trip(*lossy, t, three, 0);
  EXPECT_EQ(bad.flags, std::vector<std::string>{"round_trip_failed"});
  EXPECT_EQ(bad.trace.at("attempts").size(), 3u);
}

TEST(Methods, ProverVerifierStopsOnAcceptance) {
  const auto prover = bernoulli(0.5, 2);
  FunctionSolver judge("judge", [](const Query& q, std::uint64_t) {
    const bool right = q.prompt.substr(q.prompt.rfind(':') + 1) == " 1";
    return Completion{right ? "accept" : "reject", 0, std::nullopt};
  });
  const auto t = int_task();
  const double rate = solve_rate([&](std::uint64_t seed) { return prover_verifier(*prover, judge, t, 4, seed); }, t, 3000);
  EXPECT_NEAR(rate, 1 - std::pow(0.5, 4), 0.035);
  const auto one = prover_verifier(*prover, judge, t, 4, 1);
  const auto& transcript = one.trace.at("transcript");
  for (std::size_t i = 0; i + 1 < transcript.size(); ++i) EXPECT_FALSE(transcript[i].at("accepted").get<bool>());
}

TEST(Methods, PlanSearchAndLeap) {
  const auto s = scripted("p", {{"*", {{"plan", {{"try small cases", 1.0}}},
                                      {"answer", {{"1", 1.0}}},
                                      {"principles", {{"- parity\n\n* invariants\n", 1.0}}}}}});
  const auto t = int_task();
  const auto plan = plan_search(*s, t, 3, 0);
  EXPECT_EQ(plan.trace.at("plans").size(), 3u);
  EXPECT_TRUE(plan.candidate.ok());
  const auto l = leap(*s, {{"2+2", "4"}}, t, 0);
  EXPECT_EQ(l.trace.at("principles"), json({"parity", "invariants"}));
  const auto fallback = leap(*s, {}, t, 0);
  EXPECT_FALSE(fallback.warnings.empty());
}

TEST(Methods, DecisionAndPrincipleParsing) {
  EXPECT_TRUE(parse_decision("Accept. Looks right"));
  EXPECT_TRUE(parse_decision("  yes"));
  EXPECT_TRUE(parse_decision("1"));
  EXPECT_FALSE(parse_decision("reject"));
  EXPECT_FALSE(parse_decision("not correct"));
  EXPECT_EQ(parse_principles("- a\n\n  * b  \nc"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Methods, ConfigValidationAndDispatch) {
  EXPECT_EQ(method_kind_from_string("best_of_n"), MethodKind::best_of_n);
  EXPECT_THROW(method_kind_from_string("beam"), ConfigError);
  auto c = method_config_from_json({{"method", "best_of_n"}, {"n", 4}, {"id", "bon4"}});
  EXPECT_EQ(c.kind, MethodKind::best_of_n);
  EXPECT_EQ(c.id, "bon4");
  EXPECT_EQ(method_config_from_json(to_json(c)).n, 4);
  c.n = 0;
  EXPECT_THROW(validate_method_config(c), ConfigError);
  EXPECT_EQ(method_config_from_json("self_consistency").id, "self_consistency");

  const auto s = bernoulli(1.0);
  SolverRegistry reg{{"b", s}};
  MethodConfig moa;
  moa.kind = MethodKind::mixture_of_agents;
  moa.agents = {"b", "b"};
  EXPECT_EQ(run_method(moa, *s, reg, int_task(), 0).candidate.answer->as_integer(), 1);
  moa.agents = {"ghost"};
  EXPECT_THROW(run_method(moa, *s, reg, int_task(), 0), ConfigError);
}
