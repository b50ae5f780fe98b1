#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "monogamy/harness/campaign.hpp"
#include "monogamy/harness/examples.hpp"
#include "monogamy/harness/io.hpp"
#include "monogamy/harness/measure.hpp"
#include "test_support.hpp"

using namespace monogamy;
using namespace monogamy::harness;
using monogamy::testing::bell_times_zero;

namespace {

json w_file() {
  const double a = 1.0 / std::sqrt(3.0);
  json amps = json::array();
  for (int i = 0; i < 8; ++i) amps.push_back(json::array({(i == 1 || i == 2 || i == 4) ? a : 0.0, 0.0}));
  return json{{"format_version", "1"}, {"num_qubits", 3}, {"amplitudes", amps}};
}

CampaignConfig small_campaign() {
  CampaignConfig cfg;
  cfg.num_samples = 60;
  cfg.qubit_counts = {3, 4};
  cfg.alphas = {std::numbers::sqrt2, 2.0, 3.0, -1.0};
  cfg.bound_kinds = {BoundId::ckw, BoundId::tripartite, BoundId::ordered_weighted, BoundId::negative_power_upper,
                     BoundId::eof_ordered_weighted, BoundId::alpha_power};
  cfg.seed = 99;
  cfg.tail_trials = 8;
  return cfg;
}

}  // namespace

// --- state files --------------------------------------------------------------

TEST(StateFile, ParsesPureState) {
  const auto s = parse_state_file(w_file());
  EXPECT_TRUE(s.is_pure());
  EXPECT_EQ(s.reg().labels(), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_NEAR(s.pure_state().amplitudes()(4).real(), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(StateFile, ParsesDensityMatrixAndLabels) {
  json rho = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho.push_back(json::array({i == j ? 0.25 : 0.0, 0.0}));
  const auto s = parse_state_file(
      json{{"format_version", "1"}, {"num_qubits", 2}, {"labels", {"x", "y"}}, {"density_matrix", rho}});
  EXPECT_FALSE(s.is_pure());
  EXPECT_EQ(s.reg().labels(), (std::vector<std::string>{"x", "y"}));
  EXPECT_NEAR(s.density().purity(), 0.25, 1e-15);
}

TEST(StateFile, RoundTrip) {
  const auto psi = monogamy::testing::random_pure(3, 4);
  const auto back = parse_state_file(to_json(state_file_of(psi))).pure_state();
  EXPECT_EQ(back.amplitudes(), psi.amplitudes());
}

TEST(StateFile, RejectsMalformedInput) {
  auto bad = [](auto edit) {
    json j = w_file();
    edit(j);
    return j;
  };
  EXPECT_THROW(parse_state_file(json::array()), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j.erase("format_version"); })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["format_version"] = "2"; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["num_qubits"] = 13; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["num_qubits"] = -1; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["amplitudes"].erase(0); })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["amplitudes"][0] = 1.0; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["amplitudes"][0] = json::array({1.0, 0.0}); })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["labels"] = {"A", "A", "B"}; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["labels"] = {"A", "B"}; })), FormatError);
  EXPECT_THROW(parse_state_file(bad([](json& j) { j["density_matrix"] = json::array(); })), FormatError);
  EXPECT_THROW(read_state_file("/nonexistent/state.json"), FormatError);
}

// --- CSV ----------------------------------------------------------------------

TEST(Csv, ByteStableAndFullPrecision) {
  const auto a = run_example(1, default_example_grid(1));
  const auto b = run_example(1, default_example_grid(1));
  const auto csv = sweep_csv(a.sweep);
  EXPECT_EQ(csv, sweep_csv(b.sweep));
  EXPECT_EQ(csv.rfind("alpha,y1,y2\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 62);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(std::numbers::pi)), std::numbers::pi);
}

// --- examples -----------------------------------------------------------------

TEST(Examples, OneTightenedResidualIsSmaller) {
  const auto run = run_example(1, default_example_grid(1));
  ASSERT_EQ(run.sweep.points.size(), 61u);
  EXPECT_NEAR(run.sweep.points.front().y1, 0.16, 1e-12);
  EXPECT_NEAR(run.sweep.points.front().y2, 0.16, 1e-12);
  for (const auto& p : run.sweep.points) {
    EXPECT_LE(p.y1, p.y2 + 1e-12) << p.alpha;
    EXPECT_EQ(p.applicability, Applicability::applicable);
  }
}

TEST(Examples, TwoUpperBoundResidualIsLarger) {
  const auto run = run_example(2, default_example_grid(2));
  EXPECT_EQ(run.sweep.points.size(), 100u);
  for (const auto& p : run.sweep.points) EXPECT_GE(p.y1, p.y2) << p.alpha;
  const auto at = run_example(2, {-1.0});
  EXPECT_NEAR(at.sweep.points[0].y1 - at.sweep.points[0].y2, 2.5, 1e-12);
}

TEST(Examples, ThreeTightenedResidualIsSmaller) {
  const auto run = run_example(3, default_example_grid(3));
  EXPECT_NEAR(run.sweep.points.front().alpha, std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(run.sweep.points.front().y1, 0.027623164075731621, 1e-12);
  for (const auto& p : run.sweep.points) EXPECT_LE(p.y1, p.y2 + 1e-12) << p.alpha;
}

TEST(Examples, GridOutsideRangeIsConfigError) {
  EXPECT_THROW(run_example(1, {1.5, 2.0}), ConfigError);
  EXPECT_THROW(run_example(2, {0.5}), ConfigError);
  EXPECT_THROW(run_example(3, {1.0}), ConfigError);
  EXPECT_THROW(run_example(3, {}), ConfigError);
  EXPECT_THROW(run_example(4, {2.0}), ConfigError);
  EXPECT_NE(example_summary(run_example(3, {2.0})).find("W state"), std::string::npos);
}

// --- campaigns ----------------------------------------------------------------

TEST(Campaign, ConfigValidation) {
  CampaignConfig c;
  c.num_samples = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.qubit_counts = {2};
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.qubit_counts = {13};
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.bound_kinds = {BoundId::negative_power_upper};
  c.alphas = {2.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.bound_kinds = {BoundId::split_weighted};
  c.alphas = {2.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.tolerance = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.threads = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_THROW(run_campaign(c), ConfigError);
}

TEST(Campaign, KindsExpandOverInRangeAlphas) {
  CampaignConfig c;
  c.bound_kinds = {BoundId::ckw, BoundId::alpha_power, BoundId::negative_power_upper};
  c.alphas = {std::numbers::sqrt2, 2.0, -1.0};
  const auto k = c.kinds();
  ASSERT_EQ(k.size(), 4u);  // ckw; alpha-power at 2 and -1; upper at -1
  EXPECT_EQ(k[0].id, BoundId::ckw);
  EXPECT_EQ(k[3].id, BoundId::negative_power_upper);
}

TEST(Campaign, NoViolationsAndDeterministic) {
  const auto cfg = small_campaign();
  const auto a = run_campaign(cfg);
  EXPECT_EQ(a.total_failed(), 0u);
  EXPECT_EQ(to_json(a).dump(), to_json(run_campaign(cfg)).dump());
  for (const auto& b : a.bounds) {
    EXPECT_EQ(b.evaluated, cfg.num_samples);
    EXPECT_EQ(b.evaluated, b.applicable + b.indeterminate + b.not_applicable);
    EXPECT_EQ(b.applicable, b.passed + b.failed);
  }
  EXPECT_FALSE(to_json(a).contains("runtime"));
  EXPECT_TRUE(to_json(a, true).contains("runtime"));
}

TEST(Campaign, ThreadCountDoesNotChangeResults) {
  auto cfg = small_campaign();
  const auto one = to_json(run_campaign(cfg)).dump();
  cfg.threads = 3;
  EXPECT_EQ(one, to_json(run_campaign(cfg)).dump());
}

TEST(Campaign, ReplayReproducesWorstSample) {
  const auto cfg = small_campaign();
  const auto result = run_campaign(cfg);
  const auto kinds = cfg.kinds();
  for (std::size_t k = 0; k < result.bounds.size(); ++k) {
    const auto& b = result.bounds[k];
    if (!b.worst) continue;
    EXPECT_EQ(b.worst->seed, sample_seed(cfg.seed, b.qubits, b.worst->sample));
    const auto reports = replay_sample(b.qubits, b.worst->seed, {b.kind}, cfg.tail_trials);
    EXPECT_EQ(reports[0].slack, b.worst->slack);
  }
}

TEST(Campaign, DifferentSeedsDiffer) {
  auto cfg = small_campaign();
  const auto a = to_json(run_campaign(cfg)).dump();
  cfg.seed = 100;
  EXPECT_NE(a, to_json(run_campaign(cfg)).dump());
}

// --- measure ------------------------------------------------------------------

TEST(Measure, WStateProfileAndBounds) {
  const auto file = parse_state_file(w_file());
  const auto spec = partition_for(file.reg(), std::nullopt, {});
  const auto j = measure_json(file, spec, {{BoundId::tripartite, 2.0, {}}, {BoundId::eof_ordered_weighted, 2.0, {}}});
  EXPECT_EQ(j["kind"], "pure");
  EXPECT_NEAR(j["c_pair"][0].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["e_focus_rest"].get<double>(), 0.91829583405448956, 1e-12);
  EXPECT_EQ(j["indeterminate_tails"], false);
  ASSERT_EQ(j["bounds"].size(), 2u);
  EXPECT_EQ(j["bounds"][0]["applicability"], "applicable");
}

TEST(Measure, ProductStateHasZeroEntanglement) {
  const auto file = state_file_of(basis_state("000"));
  const auto j = measure_json(file, partition_for(file.reg(), std::nullopt, {}));
  EXPECT_EQ(j["c_focus_rest"].get<double>(), 0.0);
  for (const auto& c : j["c_pair"]) EXPECT_NEAR(c.get<double>(), 0.0, 1e-12);
}

TEST(Measure, BellTimesZeroReportsDroppedTerm) {
  const auto file = state_file_of(bell_times_zero());
  const auto j = measure_json(file, partition_for(file.reg(), std::nullopt, {}),
                              {{BoundId::negative_power_upper, -1.0, {}}});
  const auto& r = j["bounds"][0];
  EXPECT_EQ(r["dropped_terms"], json::array({2}));
  EXPECT_EQ(r["strictly_satisfied"], false);
  EXPECT_NEAR(r["slack"].get<double>(), 0.0, 1e-12);
}

TEST(Measure, FocusAndOrderErrorsAreConfigErrors) {
  const auto reg = QubitRegister::with_default_labels(3);
  EXPECT_THROW(partition_for(reg, std::string("Z"), {}), ConfigError);
  EXPECT_THROW(partition_for(reg, std::nullopt, {"B"}), ConfigError);
  EXPECT_THROW(partition_for(reg, std::nullopt, {"B", "B"}), ConfigError);
  const auto spec = partition_for(reg, std::string("C"), {"B", "A"});
  EXPECT_EQ(spec.focus, "C");
  EXPECT_EQ(spec.rest.front().front(), "B");
}

TEST(Measure, MixedStates) {
  // two qubits: closed form
  json rho = json::array();
  const auto bell = bell_phi_plus().projector();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) rho.push_back(json::array({bell(i, k).real(), bell(i, k).imag()}));
  const auto two = parse_state_file(json{{"format_version", "1"}, {"num_qubits", 2}, {"density_matrix", rho}});
  const auto j2 = measure_json(two, PartitionSpec{"A", {{"B"}}});
  EXPECT_NEAR(j2["concurrence"].get<double>(), 1.0, 1e-12);

  // three qubits: pairwise values and a bracket for the focus cut
  const auto mixed = monogamy::testing::random_density(3, 1, 5);
  StateFile f;
  f.num_qubits = 3;
  const ComplexMatrix row_major = mixed.matrix().transpose();  // Eigen stores column-major
  f.density_matrix = std::vector<cplx>(row_major.data(), row_major.data() + 64);
  const auto j3 = measure_json(f, partition_for(f.reg(), std::nullopt, {}), {}, 50, 1);
  EXPECT_EQ(j3["kind"], "mixed");
  EXPECT_LE(j3["c_focus_rest"]["lower"].get<double>(), j3["c_focus_rest"]["upper"].get<double>());
  EXPECT_THROW(measure_json(f, partition_for(f.reg(), std::nullopt, {}), {{BoundId::ckw, 2.0, {}}}), ConfigError);
}
