#include <gtest/gtest.h>

#include "selpar/error.hpp"
#include "selpar/twist.hpp"

using namespace selpar;

namespace {

ZPoly x_to_n_minus_1(std::int64_t n) { return zpoly::sub(zpoly::monomial(static_cast<int>(n)), zpoly::from_ints({1})); }

// Phi_d by dividing x^d - 1 by Phi_k for every proper divisor k.
ZPoly cyclotomic(std::int64_t d) {
  ZPoly f = x_to_n_minus_1(d);
  for (std::int64_t k = 1; k < d; ++k)
    if (d % k == 0) {
      bool exact = false;
      f = zpoly::div_monic(f, cyclotomic(k), exact);
    }
  return f;
}

// I_L = Psi_d Z[C_d] with Psi_d = (x^d - 1) / Phi_d, as a lattice of coefficient rows.
IntMatrix psi_lattice(std::int64_t d) {
  bool exact = false;
  const ZPoly psi = zpoly::div_monic(x_to_n_minus_1(d), cyclotomic(d), exact);
  IntMatrix rows(0, static_cast<std::size_t>(d));
  for (std::int64_t k = 0; k < d; ++k) {
    auto r = zpoly::rem_monic(zpoly::mul(psi, zpoly::monomial(static_cast<int>(k))), x_to_n_minus_1(d));
    std::vector<Int> row(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < r.size(); ++i) row[i] = r[i];
    rows.append_row(row);
  }
  return lattice_basis(rows);
}

}  // namespace

TEST(Quotients, Counts) {
  EXPECT_EQ(cyclic_quotients(AbelianGroup::cyclic(3)).size(), 2u);
  EXPECT_EQ(cyclic_quotients(AbelianGroup::cyclic(9)).size(), 3u);
  EXPECT_EQ(cyclic_quotients(AbelianGroup::cyclic(5)).size(), 2u);
  EXPECT_EQ(cyclic_quotients(AbelianGroup::cyclic(15)).size(), 4u);
  // Z/3 x Z/3: G itself and the four lines
  EXPECT_EQ(cyclic_quotients(AbelianGroup({3, 3})).size(), 5u);
  EXPECT_THROW(AbelianGroup({2}), Error);
  EXPECT_THROW(AbelianGroup({3, 5}), Error);
}

TEST(Quotients, KernelSizes) {
  AbelianGroup g({3, 9});
  for (const auto& q : cyclic_quotients(g)) {
    EXPECT_EQ(static_cast<std::int64_t>(q.kernel.size()) * q.degree, g.order());
    EXPECT_EQ(q.label[q.generator_image], q.degree == 1 ? 0 : 1);
  }
}

TEST(TwistIdeal, MatchesPsiLattice) {
  for (std::int64_t n : {3, 5, 9, 15, 25, 27, 45}) {
    auto g = AbelianGroup::cyclic(n);
    for (const auto& q : cyclic_quotients(g)) {
      if (q.degree == 1) continue;
      auto t = twist_ideal(g, q);
      EXPECT_EQ(t.basis, psi_lattice(q.degree)) << "n=" << n << " d=" << q.degree;
      EXPECT_EQ(static_cast<std::int64_t>(t.basis.rows()), euler_phi(q.degree));
    }
  }
}

TEST(TwistIdeal, IdempotentsSplitOne) {
  const std::int64_t n = 15;
  auto g = AbelianGroup::cyclic(n);
  // the trivial character: the average over G
  std::vector<std::vector<Rational>> lifted{std::vector<Rational>(static_cast<std::size_t>(n), Rational(1, n))};
  for (const auto& q : cyclic_quotients(g)) {
    if (q.degree == 1) {
      EXPECT_THROW(twist_ideal(g, q), Error);
      continue;
    }
    auto t = twist_ideal(g, q);
    EXPECT_EQ(group_ring_mul(t.idempotent, t.idempotent), t.idempotent);
    // lift to Q[G] through g -> g * (sum over H) / |H|
    std::vector<Rational> e(static_cast<std::size_t>(n));
    for (std::size_t x = 0; x < e.size(); ++x)
      e[x] = t.idempotent[static_cast<std::size_t>(q.label[x])] / Rational(static_cast<long>(q.kernel.size()));
    lifted.push_back(e);
  }
  std::vector<Rational> sum(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    for (std::size_t x = 0; x < sum.size(); ++x) sum[x] += lifted[i][x];
    for (std::size_t j = 0; j < lifted.size(); ++j)
      if (i != j)
        for (const auto& c : group_ring_mul(lifted[i], lifted[j])) EXPECT_EQ(c, 0);
  }
  EXPECT_EQ(sum[0], 1);
  for (std::size_t x = 1; x < sum.size(); ++x) EXPECT_EQ(sum[x], 0);
}

TEST(TwistIdeal, OverGaussianIntegers) {
  NumberRing gauss(zpoly::from_ints({1, 0, 1}), zpoly::from_ints({0, -1}));
  auto g = AbelianGroup::cyclic(3);
  auto full = cyclic_quotients(g).back();
  auto o = twist_ideal_O(g, full, gauss, 3);
  EXPECT_EQ(o.rows(), 4u);
  EXPECT_EQ(o.cols(), 6u);
  auto g9 = AbelianGroup::cyclic(9);
  auto o9 = twist_ideal_O(g9, cyclic_quotients(g9).back(), gauss, 3);
  EXPECT_EQ(o9.rows(), 12u);
  // x^2 + 3 ramifies at 3
  NumberRing ram(zpoly::from_ints({3, 0, 1}), zpoly::from_ints({0, -1}));
  EXPECT_THROW(twist_ideal_O(g, full, ram, 3), Error);
}

TEST(Residue, PrimePowerDegrees) {
  for (std::int64_t n : {3, 9, 5, 27}) {
    auto g = AbelianGroup::cyclic(n);
    auto t = twist_ideal(g, cyclic_quotients(g).back());
    const auto p = prime_divisors(n).front();
    auto r = residue_at_p_hat(t, p);
    EXPECT_EQ(r.dimension, 1u);
    EXPECT_EQ(r.index, p);
  }
  auto g = AbelianGroup::cyclic(15);
  EXPECT_THROW(residue_at_p_hat(twist_ideal(g, cyclic_quotients(g).back()), 3), Error);
}

TEST(Compose, CoprimeFactors) {
  auto g = AbelianGroup::cyclic(15);
  auto qs = cyclic_quotients(g);
  ASSERT_EQ(qs[1].degree, 3);
  ASSERT_EQ(qs[2].degree, 5);
  auto r = compose_coprime(g, qs[1], qs[2]);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.expected_rank, 8u);
  EXPECT_EQ(r.product_rank, 8u);
  EXPECT_EQ(r.composite.quotient.degree, 15);
  EXPECT_TRUE(r.prime_to.at(3));

  auto t = compose_coprime(g, qs[1], qs[0]);
  EXPECT_TRUE(t.ok());
  EXPECT_EQ(t.index, 1);

  auto h = AbelianGroup({3, 3});
  auto hq = cyclic_quotients(h);
  EXPECT_THROW(compose_coprime(h, hq[1], hq[2]), Error);
}

TEST(Arithmetic, PhiAndMoebius) {
  EXPECT_EQ(euler_phi(45), 24);
  EXPECT_EQ(moebius(15), 1);
  EXPECT_EQ(moebius(9), 0);
  EXPECT_EQ(moebius(5), -1);
  EXPECT_EQ(prime_divisors(45), (std::vector<std::int64_t>{3, 5}));
}
