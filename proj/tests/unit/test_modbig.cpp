#include <gtest/gtest.h>

#include "csa/modbig.hpp"
#include "csa/modp.hpp"

using namespace csa;

namespace {

const Integer kBig("170141183460469231731687303715884105727");  // 2^127 - 1

}  // namespace

TEST(ModBig, Inverse) {
  const Integer a("123456789012345678901234567890");
  EXPECT_EQ(modbig::mul(a, modbig::inv(a, kBig), kBig), 1);
  EXPECT_THROW(modbig::inv(Integer(0), kBig), std::domain_error);
}

TEST(ModBig, RootsOfSplitPolynomial) {
  const std::vector<Integer> want{Integer(3), Integer("98765432109876543210"), kBig - 5};
  modbig::Poly f{1};
  for (const auto& r : want) f = modbig::poly_mul(f, modbig::Poly{modbig::sub(0, r, kBig), 1}, kBig);
  // x^2 + 1 has no roots since 2^127 - 1 is 3 mod 4
  f = modbig::poly_mul(f, modbig::Poly{1, 0, 1}, kBig);
  std::mt19937_64 rng(5);
  EXPECT_EQ(modbig::roots(f, kBig, rng), want);
}

TEST(ModBig, AgreesWithWordArithmetic) {
  const modp::u64 p = 1000003;
  const Integer pz(static_cast<unsigned long>(p));
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    modp::Mat m(4, modp::Vec(6));
    modbig::Mat mb(4, modbig::Vec(6));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        m[i][j] = trial % 3 == 0 && i == 3 ? m[0][j] : rng() % p;
        mb[i][j] = Integer(static_cast<unsigned long>(m[i][j]));
      }
    EXPECT_EQ(modbig::rank(mb, pz), modp::rank(m, p));
    const modp::Mat k = modp::kernel(m, 6, p);
    const modbig::Mat kb = modbig::kernel(mb, 6, pz);
    ASSERT_EQ(k.size(), kb.size());
    for (std::size_t r = 0; r < k.size(); ++r)
      for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(kb[r][j], Integer(static_cast<unsigned long>(k[r][j])));
    modbig::Mat sq(4, modbig::Vec(4));
    modp::Mat sqw(4, modp::Vec(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        sqw[i][j] = m[i][j];
        sq[i][j] = mb[i][j];
      }
    const Integer e("123456789123");
    EXPECT_EQ(modbig::trace(modbig::power(sq, e, pz), pz),
              Integer(static_cast<unsigned long>(modp::trace(modp::power(sqw, e.get_ui(), p), p))));
  }
}
