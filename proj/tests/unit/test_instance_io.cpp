#include <gtest/gtest.h>

#include <json.hpp>

#include "csa/errors.hpp"
#include "csa/instance_io.hpp"
#include "oracles.hpp"

using namespace csa;

namespace {

const NumberField kQ = NumberField::rationals();

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

}  // namespace

TEST(InstanceIO, RoundTrip) {
  for (long D : {0L, 5L, -1L}) {
    GenOptions g;
    g.seed = 3;
    if (D) {
      g.field.kind = FieldDescriptor::Kind::quadratic;
      g.field.D = D;
    }
    const Instance a = gen_instance(g);
    const std::string text = write_instance(a);
    const Instance b = read_instance(text);
    EXPECT_EQ(b.dim, a.dim);
    EXPECT_EQ(b.constants, a.constants);
    ASSERT_TRUE(b.hidden_witness);
    EXPECT_EQ(*b.hidden_witness, *a.hidden_witness);
    EXPECT_EQ(write_instance(b), text);
  }
}

TEST(InstanceIO, GeneratorIsDeterministic) {
  GenOptions g;
  g.n = 3;
  g.seed = 42;
  EXPECT_EQ(write_instance(gen_instance(g)), write_instance(gen_instance(g)));
  g.seed = 43;
  GenOptions h = g;
  h.seed = 42;
  EXPECT_NE(write_instance(gen_instance(g)), write_instance(gen_instance(h)));
}

TEST(InstanceIO, GeneratorRespectsEntryBound) {
  GenOptions g;
  g.seed = 8;
  g.entry_bound = 3;
  const Instance inst = gen_instance(g);
  for (const auto& x : *inst.hidden_witness) {
    EXPECT_LE(abs(x[0].get_num()), 3);
    EXPECT_LE(x[0].get_den(), 3);
  }
}

TEST(InstanceIO, HiddenWitnessReproducesTable) {
  // a_k = sum_l T_kl E_l, so a_i a_j computed in M_2 must match the table
  GenOptions g;
  g.seed = 5;
  const Instance inst = gen_instance(g);
  const Algebra E = standard_matrix_algebra(kQ, 2);
  const auto& T = *inst.hidden_witness;
  auto a = [&](std::size_t k) {
    Element e(4);
    for (std::size_t l = 0; l < 4; ++l) e[l] = T[k * 4 + l][0];
    return e;
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Element rhs(4);
      for (std::size_t k = 0; k < 4; ++k) rhs = add(rhs, scale(inst.constants[(i * 4 + j) * 4 + k][0], a(k)));
      EXPECT_EQ(E.mul(a(i), a(j)), rhs);
    }
}

TEST(InstanceIO, IdentityGivesStandardTable) {
  GenOptions g;
  g.n = 3;
  g.identity = true;
  EXPECT_EQ(gen_instance(g).constants, standard_matrix_algebra(kQ, 3).constants());
}

TEST(InstanceIO, RejectsNonCanonicalRationals) {
  GenOptions g;
  g.identity = true;
  const std::string text = write_instance(gen_instance(g));
  ASSERT_NE(text.find("\"1\""), std::string::npos);
  EXPECT_THROW(read_instance(replace_first(text, "\"1\"", "\"2/2\"")), InputError);
  EXPECT_THROW(read_instance(replace_first(text, "\"1\"", "\"+1\"")), InputError);
  EXPECT_THROW(read_instance(replace_first(text, "\"1\"", "1")), InputError);
}

TEST(InstanceIO, RejectsMalformedInstances) {
  EXPECT_THROW(read_instance("not json"), InputError);
  EXPECT_THROW(read_instance("{\"format\": \"other\"}"), InputError);
  GenOptions g;
  g.identity = true;
  nlohmann::json j = nlohmann::json::parse(write_instance(gen_instance(g)));
  j["dim"] = 3;
  EXPECT_THROW(read_instance(j.dump()), InputError);
  j["dim"] = 4;
  j["field"] = {{"kind", "quadratic"}, {"D", 4}};
  EXPECT_THROW(read_instance(j.dump()), InputError);
}

TEST(InstanceIO, WitnessRoundTripAndVerify) {
  GenOptions g;
  g.seed = 6;
  const Instance inst = gen_instance(g);
  const Algebra A = inst.algebra();
  SplitConfig cfg;
  cfg.deterministic = true;
  const SplitReport rep = split(A, cfg);
  const std::string text = write_witness(witness_from_report(A, rep));
  const WitnessFile w = read_witness(text, A.field());
  EXPECT_TRUE(verify_witness(A, w).ok);
  std::string why;
  EXPECT_TRUE(oracle::check_witness(inst, w, why)) << why;
  EXPECT_EQ(w.order_discriminants.size(), rep.stats.levels.size());

  WitnessFile bad = w;
  bad.images[0](0, 0)[0] += 1;
  EXPECT_FALSE(verify_witness(A, bad).ok);
  EXPECT_FALSE(oracle::check_witness(inst, bad, why));
}

TEST(InstanceIO, WitnessIsDeterministic) {
  GenOptions g;
  g.seed = 13;
  const Algebra A = gen_instance(g).algebra();
  SplitConfig cfg;
  cfg.deterministic = true;
  EXPECT_EQ(write_witness(witness_from_report(A, split(A, cfg))), write_witness(witness_from_report(A, split(A, cfg))));
}
