#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tnnclust/data_io.hpp"
#include "tnnclust/encoding.hpp"
#include "tnnclust/errors.hpp"

namespace {

using tnn::Matrix;
using tnn::Rational;

const Rational kGamma(3, 2);

Matrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  Matrix m;
  std::vector<double> row(cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (auto& v : row) v = nd(gen);
    m.push_row(row);
  }
  return m;
}

TEST(Projection, ZeroFractionWithinBinomialBound) {
  const auto p = tnn::make_projection(1000, 100, 42);
  std::size_t zeros = 0, plus = 0;
  for (auto e : p.entries()) {
    zeros += e == 0;
    plus += e == 1;
  }
  const double n = 1e5, p0 = 2.0 / 3.0;
  const double se = std::sqrt(p0 * (1 - p0) / n);
  EXPECT_NEAR(zeros / n, p0, 3 * se);
  const double p1 = 1.0 / 6.0;
  EXPECT_NEAR(plus / n, p1, 3 * std::sqrt(p1 * (1 - p1) / n));
}

TEST(Projection, DeterministicAndSquareAllowed) {
  EXPECT_EQ(tnn::make_projection(64, 8, 3), tnn::make_projection(64, 8, 3));
  EXPECT_NE(tnn::make_projection(64, 8, 3), tnn::make_projection(64, 8, 4));
  const auto sq = tnn::make_projection(300, 300, 1);
  std::size_t zeros = 0;
  for (auto e : sq.entries()) zeros += e == 0;
  const double n = 9e4, p0 = 2.0 / 3.0;
  EXPECT_NEAR(zeros / n, p0, 3 * std::sqrt(p0 * (1 - p0) / n));
  EXPECT_THROW(tnn::make_projection(8, 9, 0), tnn::InputError);
  EXPECT_THROW(tnn::make_projection(8, 0, 0), tnn::InputError);
}

TEST(Project, LinearityAndSelector) {
  const auto p = tnn::make_projection(16, 4, 7);
  const std::vector<double> zero(16, 0.0);
  for (double v : tnn::project(zero, p)) EXPECT_EQ(v, 0.0);

  std::vector<std::int8_t> e(5 * 2, 0);
  e[3 * 2 + 1] = 1;  // column 1 selects coordinate 3
  const tnn::ProjectionMatrix sel(5, 2, 0, e);
  const auto out = tnn::project(std::vector<double>{1, 2, 3, 4, 5}, sel);
  EXPECT_EQ(out[0], 0.0);
  EXPECT_EQ(out[1], 4.0);
  EXPECT_THROW(tnn::project(std::vector<double>(4, 1.0), sel), tnn::InputError);
}

TEST(Project, PreservesPairwiseDistances) {
  const auto pts = random_matrix(20, 256, 11);
  const auto p = tnn::make_projection(256, 64, 5);
  const double scale = std::sqrt(3.0 / 64.0);
  const auto proj = tnn::project_all(pts, p);
  int ok = 0, total = 0;
  for (std::size_t a = 0; a < 20; ++a) {
    for (std::size_t b = a + 1; b < 20; ++b) {
      auto va = proj.row(a), vb = proj.row(b);
      std::vector<double> sa, sb;
      for (std::size_t j = 0; j < 64; ++j) {
        sa.push_back(va[j] * scale);
        sb.push_back(vb[j] * scale);
      }
      const auto ra = pts.row(a), rb = pts.row(b);
      const double before = oracle::euclid({ra.begin(), ra.end()}, {rb.begin(), rb.end()});
      const double ratio = oracle::euclid(sa, sb) / before;
      ok += ratio >= 0.6 && ratio <= 1.4;
      ++total;
    }
  }
  EXPECT_GE(ok, static_cast<int>(std::ceil(0.9 * total))) << ok << "/" << total;
}

TEST(ReceptiveFields, HandExample) {
  Matrix m;
  m.push_row(std::vector<double>{0.0});
  m.push_row(std::vector<double>{6.0});
  m.push_row(std::vector<double>{2.5});
  const auto bank = tnn::fit_receptive_fields(m, 8, kGamma);
  const auto& c = bank.column(0);
  EXPECT_DOUBLE_EQ(c.sigma, 1.5);
  EXPECT_DOUBLE_EQ(c.mu[0], -2.25);
  for (int j = 0; j < 8; ++j) EXPECT_DOUBLE_EQ(c.mu[j], (2.0 * j - 3) / 2.0 * 1.5);
}

TEST(ReceptiveFields, TranslationShiftsCenters) {
  const auto m = random_matrix(30, 4, 2);
  Matrix shifted;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.row(r).begin(), m.row(r).end());
    row[2] += 10.0;
    shifted.push_row(row);
  }
  const auto a = tnn::fit_receptive_fields(m, 8, kGamma);
  const auto b = tnn::fit_receptive_fields(shifted, 8, kGamma);
  EXPECT_NEAR(a.column(2).sigma, b.column(2).sigma, 1e-12);
  for (int j = 0; j < 8; ++j) EXPECT_NEAR(a.column(2).mu[j] + 10.0, b.column(2).mu[j], 1e-12);
  EXPECT_EQ(a.column(1), b.column(1));
}

TEST(ReceptiveFields, Errors) {
  EXPECT_THROW(tnn::fit_receptive_fields(Matrix{}, 8, kGamma), tnn::InputError);
  Matrix bad;
  bad.push_row(std::vector<double>{INFINITY});
  EXPECT_THROW(tnn::fit_receptive_fields(bad, 8, kGamma), tnn::InputError);
  Matrix ok;
  ok.push_row(std::vector<double>{1.0});
  EXPECT_THROW(tnn::fit_receptive_fields(ok, 2, kGamma), tnn::InputError);
}

tnn::ReceptiveFieldBank unit_bank() {
  Matrix m;
  m.push_row(std::vector<double>{0.0});
  m.push_row(std::vector<double>{6.0});
  return tnn::fit_receptive_fields(m, 8, kGamma);
}

TEST(Encode, ScalarExamples) {
  const auto bank = unit_bank();
  const auto& c = bank.column(0);
  // At a center.
  auto s = tnn::encode(std::vector<double>{c.mu[3]}, bank, 16);
  EXPECT_EQ(s[3], 0);
  // Four widths away from center 0 (and further from the rest).
  s = tnn::encode(std::vector<double>{c.mu[0] - 4 * c.sigma}, bank, 16);
  EXPECT_EQ(s[0], 16);
  // One width away: round(16 (1 - e^-0.5)) = round(6.295)
  s = tnn::encode(std::vector<double>{c.mu[5] + c.sigma}, bank, 16);
  EXPECT_EQ(s[5], 6);
  for (auto t : s) {
    EXPECT_GE(t, 0);
    EXPECT_LE(t, 16);
  }
}

TEST(Encode, DegenerateColumn) {
  Matrix m;
  m.push_row(std::vector<double>{2.0, 0.0});
  m.push_row(std::vector<double>{2.0, 1.0});
  const auto bank = tnn::fit_receptive_fields(m, 8, kGamma);
  EXPECT_TRUE(bank.column(0).degenerate());
  const auto s = tnn::encode(std::vector<double>{5.0, 0.5}, bank, 16);
  for (int j = 0; j < 8; ++j) EXPECT_EQ(s[j], j == 2 ? 0 : 16);
}

TEST(Encode, MonotoneInDistance) {
  const auto bank = unit_bank();
  const auto& c = bank.column(0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-10.0, 16.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double x = u(gen), y = u(gen);
    const auto sx = tnn::encode(std::vector<double>{x}, bank, 16);
    const auto sy = tnn::encode(std::vector<double>{y}, bank, 16);
    for (int j = 0; j < 8; ++j) {
      if (std::abs(x - c.mu[j]) <= std::abs(y - c.mu[j])) {
        EXPECT_LE(sx[j], sy[j]) << x << " " << y << " j=" << j;
      }
    }
  }
}

TEST(Encode, SomeNeuronFiresEarlyInsideRange) {
  const int bound = static_cast<int>(std::lround(16 * (1 - std::exp(-1.0 / 8))));
  ASSERT_EQ(bound, 2);
  const auto m = random_matrix(50, 6, 9);
  const auto bank = tnn::fit_receptive_fields(m, 8, kGamma);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto s = tnn::encode(m.row(r), bank, 16);
    for (std::size_t i = 0; i < 6; ++i) {
      const auto first = *std::min_element(s.begin() + i * 8, s.begin() + (i + 1) * 8);
      EXPECT_LE(first, bound);
    }
  }
}

TEST(Encode, ScaledProjectionGivesSameSpikes) {
  const auto ds = tnn::synth_two_tone(20, 64, 4);
  const auto p = tnn::make_projection(64, 8, 1);
  const double root3 = std::sqrt(3.0);
  const auto unit = tnn::project_all(ds.samples, p);
  Matrix scaled;
  for (std::size_t r = 0; r < ds.size(); ++r) {
    std::vector<double> out(8, 0.0);
    for (std::size_t i = 0; i < 64; ++i) {
      for (std::size_t j = 0; j < 8; ++j) out[j] += ds.samples(r, i) * (p.at(i, j) * root3);
    }
    scaled.push_row(out);
  }
  const auto ba = tnn::fit_receptive_fields(unit, 8, kGamma);
  const auto bb = tnn::fit_receptive_fields(scaled, 8, kGamma);
  for (std::size_t r = 0; r < ds.size(); ++r) {
    EXPECT_EQ(tnn::encode(unit.row(r), ba, 16), tnn::encode(scaled.row(r), bb, 16));
  }
}

TEST(Encode, PureAndLengthChecked) {
  const auto bank = unit_bank();
  const std::vector<double> x{1.7};
  EXPECT_EQ(tnn::encode(x, bank, 16), tnn::encode(x, bank, 16));
  EXPECT_THROW(tnn::encode(std::vector<double>{1, 2}, bank, 16), tnn::InputError);
}

TEST(RunningRange, LocalUpdatesAndBatchEquivalence) {
  const auto m = random_matrix(40, 5, 21);
  auto bank = tnn::ReceptiveFieldBank::empty(5, 8, kGamma);
  EXPECT_TRUE(bank.unobserved());
  for (std::size_t r = 0; r < m.rows(); ++r) tnn::update_running_range(bank, m.row(r));
  EXPECT_FALSE(bank.unobserved());
  const auto batch = tnn::fit_receptive_fields(m, 8, kGamma);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(bank.column(i), batch.column(i));

  const auto before = bank;
  std::vector<double> inside(5);
  for (std::size_t i = 0; i < 5; ++i) inside[i] = 0.5 * (bank.column(i).x_min + bank.column(i).x_max);
  EXPECT_FALSE(tnn::update_running_range(bank, inside));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(bank.column(i), before.column(i));

  inside[0] = bank.column(0).x_max + 1.0;
  EXPECT_TRUE(tnn::update_running_range(bank, inside));
  EXPECT_NE(bank.column(0), before.column(0));
  for (std::size_t i = 1; i < 5; ++i) EXPECT_EQ(bank.column(i), before.column(i));
}

TEST(SpikeDump, Format) {
  std::ostringstream s;
  std::vector<tnn::SpikeVector> v{{0, 16, 3}, {16, 16, 16}};
  tnn::write_spike_dump(s, v);
  EXPECT_EQ(s.str(), "0 16 3\n16 16 16\n");
}

}  // namespace
