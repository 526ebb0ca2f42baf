#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "tnnclust/config.hpp"
#include "tnnclust/errors.hpp"

namespace {

using tnn::ConfigError;
using tnn::Rational;
using tnn::TnnConfig;

TnnConfig base() {
  TnnConfig c;
  c.num_clusters = 2;
  c.signal_length = 64;
  return c;
}

TEST(Config, DefaultsMatchReferenceSettings) {
  const TnnConfig c;
  EXPECT_EQ(c.encoding_neurons, 8);
  EXPECT_EQ(c.t_max, 16);
  EXPECT_EQ(c.w_max, 7);
  EXPECT_EQ(c.gamma, Rational(3, 2));
  EXPECT_EQ(c.stdp.pi_s, Rational(1, 8));
  EXPECT_EQ(c.stdp.pi_c, Rational(1, 2));
  EXPECT_EQ(c.stdp.pi_b, Rational(3, 4));
  EXPECT_EQ(c.stdp.pi_min, Rational(1, 4));
  EXPECT_EQ(c.max_epochs, 50);
  EXPECT_EQ(c.convergence_frac, Rational(1, 100));
  EXPECT_EQ(c.rng_seed, 0u);
}

TEST(Config, ValidDefaultsResolveDerivedValues) {
  const auto v = tnn::validate(base());
  EXPECT_EQ(v.reduced_length(), 8);
  EXPECT_EQ(v.theta(), 112);  // round(8 * 8 * 7 / 4)
  EXPECT_EQ(v.synapses_per_neuron(), 64);
}

TEST(Config, TwoEncodingNeuronsRejected) {
  auto c = base();
  c.encoding_neurons = 2;
  EXPECT_THROW(tnn::validate(c), ConfigError);
}

TEST(Config, ProbabilityOrderingRejected) {
  auto c = base();
  c.stdp.pi_s = Rational(9, 10);
  c.stdp.pi_c = Rational(1, 2);
  try {
    tnn::validate(c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("pi_s"), std::string::npos) << e.what();
  }
}

TEST(Config, OtherInvariants) {
  auto c = base();
  c.w_max = 6;  // not 2^b - 1
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.theta = 8 * 8 * 7 + 1;
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.signal_length = 7;  // floor(7/8) = 0
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.num_clusters = 0;
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.stdp.pi_min = Rational(5, 4);
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.gamma = Rational(0, 1);
  EXPECT_THROW(tnn::validate(c), ConfigError);
  c = base();
  c.convergence_frac = Rational(1, 1);
  EXPECT_THROW(tnn::validate(c), ConfigError);
}

TEST(Config, ValidateIsIdempotent) {
  for (int e : {3, 5, 8}) {
    for (int len : {24, 65, 270}) {
      auto c = base();
      c.encoding_neurons = e;
      c.signal_length = len;
      const auto once = tnn::validate(c);
      const auto twice = tnn::validate(once);
      EXPECT_EQ(to_config_text(once.raw()), to_config_text(twice.raw()));
    }
  }
}

TEST(Config, TextRoundTripAndComments) {
  const std::string text =
      "# comment\n"
      "encoding_neurons = 6\n"
      "gamma=2/3   # trailing\n"
      "pi_min=0.125\n"
      "shuffle=false\n";
  const TnnConfig c = tnn::parse_config(text, base());
  EXPECT_EQ(c.encoding_neurons, 6);
  EXPECT_EQ(c.gamma, Rational(2, 3));
  EXPECT_EQ(c.stdp.pi_min, Rational(1, 8));
  EXPECT_FALSE(c.shuffle);
  EXPECT_EQ(c.num_clusters, 2);
  const TnnConfig again = tnn::parse_config(tnn::to_config_text(c));
  EXPECT_EQ(tnn::to_config_text(again), tnn::to_config_text(c));
}

TEST(Config, UnknownKeyAndBadValues) {
  TnnConfig c;
  EXPECT_THROW(tnn::apply_setting(c, "thetaa", "3"), ConfigError);
  EXPECT_THROW(tnn::apply_setting(c, "theta", "3.5"), ConfigError);
  EXPECT_THROW(tnn::apply_setting(c, "gamma", "abc"), ConfigError);
  EXPECT_THROW(tnn::apply_setting(c, "shuffle", "maybe"), ConfigError);
  EXPECT_THROW(tnn::parse_config("no equals sign\n"), ConfigError);
}

TEST(Config, MissingFileNamesPath) {
  try {
    tnn::load_config_file("/nonexistent/cfg.txt");
    FAIL();
  } catch (const tnn::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/cfg.txt"), std::string::npos);
  }
}

TEST(Rational, ParseAndCompare) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
  EXPECT_EQ(Rational::parse("-3"), Rational(-3, 1));
  EXPECT_EQ(Rational(2, -4), Rational(-1, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(3, 4).to_string(), "3/4");
  EXPECT_EQ(Rational(4, 2).to_string(), "2");
  EXPECT_THROW(Rational(1, 0), std::exception);
  EXPECT_THROW(Rational::parse("1/"), std::exception);
}

}  // namespace
