#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "filex/config.hpp"
#include "filex/csv.hpp"
#include "filex/svg.hpp"

namespace {

using namespace filex;

std::string missing_key_of(const std::string& text) {
  try {
    run_config_from(parse_config_string(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(Config, SingleRun) {
  const auto cfg = run_config_from(parse_config_string(
      "# comment\nalpha = 0.5\nbeta=3\n  s = 8  \nn = 100 # trailing\nseed = 9\nmode = reference\n"));
  EXPECT_EQ(cfg.params.alpha, 0.5);
  EXPECT_EQ(cfg.params.beta, 3u);
  EXPECT_EQ(cfg.params.s, 8u);
  EXPECT_EQ(cfg.params.n, 100u);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.mode, Mode::reference);
}

TEST(Config, Errors) {
  EXPECT_EQ(missing_key_of("alpha = 1\ns = 4\nn = 0\n"), "missing key: beta");
  EXPECT_NE(missing_key_of("alpha = 1\nbeta = 1\ns = 4\nn = 0\ncolor = red\n").find("unknown key: color"),
            std::string::npos);
  EXPECT_NE(missing_key_of("alpha = x\nbeta = 1\ns = 4\nn = 0\n").find("alpha"), std::string::npos);
  EXPECT_NE(missing_key_of("alpha = 1\nbeta = -1\ns = 4\nn = 0\n").find("beta"), std::string::npos);
  EXPECT_NE(missing_key_of("alpha = 1\nbeta = 1\ns = 0\nn = 0\n").find("s must"), std::string::npos);
  EXPECT_NE(missing_key_of("alpha = 1\nalpha = 2\n").find("duplicate key: alpha"), std::string::npos);
  EXPECT_THROW(parse_config_string("alpha\n"), ParseError);
}

TEST(Config, CanonicalExperiment) {
  const auto spec = experiment_from(parse_config_string("canonical = s\nmaster_seed = 5\nreplicates = 2\n"));
  EXPECT_EQ(spec.name, "s");
  EXPECT_TRUE(spec.alpha_coupled_to_s);
  EXPECT_EQ(spec.master_seed, 5u);
  EXPECT_EQ(spec.replicates, 2u);
  EXPECT_THROW(experiment_from(parse_config_string("canonical = lr\n")), ConfigError);
  EXPECT_THROW(experiment_from(parse_config_string("canonical = s\nalpha = 1\n")), ConfigError);
}

TEST(Config, ExplicitExperiment) {
  const auto spec = experiment_from(parse_config_string(
      "name = mine\nvaried = s\nlow = 4\nhigh = 32\nsteps = 10\nbeta = 2\nn = 50\n"
      "alpha_coupled_to_s = true\ncoupled_alpha_per_weight = 0.01\n"));
  EXPECT_EQ(spec.varied, Parameter::s);
  EXPECT_TRUE(spec.sweep.integral);
  EXPECT_DOUBLE_EQ(spec.params_at(10).alpha, 0.1);
  EXPECT_EQ(spec.params_at(10).beta, 2u);

  const auto alpha = experiment_from(parse_config_string(
      "name = a\nvaried = alpha\nlow = 0.1\nhigh = 10\nsteps = 3\nbeta = 2\ns = 4\nn = 5\n"));
  EXPECT_TRUE(alpha.correlate_inverse);
  EXPECT_FALSE(alpha.sweep.integral);

  // The swept parameter may not also be given a fixed value.
  EXPECT_THROW(experiment_from(parse_config_string(
                   "name = a\nvaried = n\nlow = 1\nhigh = 10\nsteps = 3\nalpha = 1\nbeta = 2\ns = 4\nn = 5\n")),
               ConfigError);
  try {
    experiment_from(parse_config_string("name = a\nvaried = n\nlow = 1\nhigh = 10\nsteps = 3\nalpha = 1\ns = 4\n"));
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(std::string(e.what()), "missing key: beta");
    EXPECT_EQ(e.key(), "beta");
  }
}

std::vector<RunRecord> random_records(std::mt19937_64& gen, std::size_t count) {
  std::vector<RunRecord> out;
  std::uniform_real_distribution<double> unit;
  for (std::size_t i = 0; i < count; ++i) {
    RunRecord r;
    r.experiment = "exp" + std::to_string(gen() % 3);
    r.param = static_cast<Parameter>(gen() % 4);
    r.param_value = std::pow(10.0, unit(gen) * 12 - 6);
    r.replicate = gen() % 5;
    r.seed = gen();
    r.entropy_bits = unit(gen) * 8;
    out.push_back(r);
  }
  return out;
}

TEST(Csv, RoundTripIsExact) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto recs = random_records(gen, gen() % 200);
    std::stringstream ss;
    write_csv(ss, recs);
    EXPECT_EQ(read_csv(ss), recs);
  }
}

TEST(Csv, HeaderIsExact) {
  std::stringstream ss;
  write_csv(ss, {});
  EXPECT_EQ(ss.str(), "experiment,param_name,param_value,replicate,seed,entropy_bits\n");
}

TEST(Csv, ParseErrorsNameTheLine) {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_csv(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  const std::string header = "experiment,param_name,param_value,replicate,seed,entropy_bits\n";
  EXPECT_EQ(line_of("a,b\n"), 1u);
  EXPECT_EQ(line_of(""), 1u);
  EXPECT_EQ(line_of(header + "x,n,1,0,5,2.5\nx,n,1,0\n"), 3u);
  EXPECT_EQ(line_of(header + "x,gamma,1,0,5,2.5\n"), 2u);
  EXPECT_EQ(line_of(header + "x,n,abc,0,5,2.5\n"), 2u);
  EXPECT_EQ(line_of(header + "x,n,1,-1,5,2.5\n"), 2u);
  EXPECT_EQ(line_of(header + "x,n,1,0,5,2.5\n"), 0u);
}

void expect_well_formed(const std::string& svg) {
  std::istringstream in(svg);
  boost::property_tree::ptree tree;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_EQ(tree.count("svg"), 1u);
}

std::size_t count_of(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::vector<RunRecord> sweep_records(Parameter p, std::size_t count, double entropy) {
  std::vector<RunRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    RunRecord r;
    r.experiment = "e&<x>";
    r.param = p;
    r.param_value = std::pow(10.0, -4.0 + 3.0 * i / (count - 1));
    r.entropy_bits = entropy < 0 ? 6.0 * i / count : entropy;
    out.push_back(r);
  }
  return out;
}

TEST(Svg, OneMarkerPerRecordAndWellFormed) {
  const auto spec = plot_spec_for(sweep_records(Parameter::alpha, 200, -1), 64);
  EXPECT_EQ(spec.x_label, "1/α");
  EXPECT_TRUE(spec.log_x);
  const auto svg = render_svg(spec);
  EXPECT_EQ(count_of(svg, "<circle"), 200u);
  EXPECT_NE(svg.find("(log scale)"), std::string::npos);
  expect_well_formed(svg);
  EXPECT_EQ(render_svg(spec), svg);

  auto linear = spec;
  linear.log_x = false;
  expect_well_formed(render_svg(linear));
}

TEST(Svg, MaximumEntropyMarkersSitOnTopGridline) {
  const auto spec = plot_spec_for(sweep_records(Parameter::n, 30, 6.0), 64);
  const auto svg = render_svg(spec);
  // Top of the plot area is y = 40 in the fixed layout.
  EXPECT_EQ(count_of(svg, "cy=\"40.000\""), 30u);
  EXPECT_NE(svg.find("y1=\"40.000\""), std::string::npos);
  const auto low = render_svg(plot_spec_for(sweep_records(Parameter::n, 30, 0.0), 64));
  EXPECT_EQ(count_of(low, "cy=\"360.000\""), 30u);
}

TEST(Svg, RejectsEmpty) {
  EXPECT_THROW(plot_spec_for({}, 64), InvalidInput);
  EXPECT_THROW(render_svg(PlotSpec{}), InvalidInput);
}

}  // namespace
