#include <doctest.h>

#include "mtsim/session.hpp"

using namespace mtsim;

namespace {

FunctionInstance small_instance(Variant v, std::uint64_t tree,
                                std::uint64_t leaf) {
  return FunctionInstance(
      MultiplexerSpec::middle_default(16, 2, seed_from_u64(tree)),
      Regime::Middle, v, seed_from_u64(leaf));
}

}  // namespace

TEST_CASE("round and query accounting") {
  const FunctionInstance f = small_instance(Variant::Yes, 1, 2);
  OracleSession sess(f, {-1, -1});
  Rng rng(3);
  const std::size_t h1 = sess.submit_strong(sample_layer(16, 8, rng));
  const std::size_t h2 = sess.submit_eval(sample_layer(16, 8, rng));
  CHECK(sess.batch_open());
  sess.reveal();
  CHECK(!sess.batch_open());
  CHECK(sess.rounds_used() == 1);
  CHECK(sess.queries_used() == 2);
  CHECK(sess.value(h1) == f.eval(sess.outcome().queries()[0]));
  (void)h2;
  sess.submit_strong(sample_layer(16, 8, rng));
  sess.reveal();
  CHECK(sess.rounds_used() == 2);
  CHECK(sess.queries_used() == 3);
}

TEST_CASE("budgets are enforced at submission time") {
  const FunctionInstance f = small_instance(Variant::Yes, 4, 5);
  Rng rng(6);
  SUBCASE("query budget") {
    OracleSession sess(f, {-1, 2});
    sess.submit_strong(sample_layer(16, 8, rng));
    sess.submit_strong(sample_layer(16, 8, rng));
    CHECK_THROWS_AS(sess.submit_strong(sample_layer(16, 8, rng)),
                    BudgetExhausted);
  }
  SUBCASE("round budget") {
    OracleSession sess(f, {1, -1});
    sess.submit_strong(sample_layer(16, 8, rng));
    sess.reveal();
    sess.submit_strong(sample_layer(16, 8, rng));
    CHECK_THROWS_AS(sess.reveal(), BudgetExhausted);
  }
}

TEST_CASE("duplicate queries cost budget but dedup in the ledger") {
  const FunctionInstance f = small_instance(Variant::Yes, 7, 8);
  Rng rng(9);
  const Point x = sample_layer(16, 8, rng);
  OracleSession sess(f, {-1, -1});
  sess.submit_strong(x);
  sess.submit_strong(x);
  sess.reveal();
  CHECK(sess.queries_used() == 2);
  CHECK(sess.outcome().queries().size() == 1);
  CHECK(sess.outcome().duplicate_warnings() == 1);
}

TEST_CASE("ledger facts hold along random query sequences") {
  Rng rng(10);
  for (int seq = 0; seq < 100; ++seq) {
    const FunctionInstance f = small_instance(
        rng.bit() ? Variant::Yes : Variant::No, 100 + seq, 200 + seq);
    OracleSession sess(f, {-1, -1});
    const int len = 1 + static_cast<int>(rng.below(30));
    for (int i = 0; i < len; ++i) {
      const int w = 4 + static_cast<int>(rng.below(9));
      sess.submit_strong(sample_layer(16, w, rng));
      if (rng.bit()) sess.reveal();
    }
    if (sess.batch_open()) sess.reveal();
    const Outcome out = sess.take_outcome();
    CHECK_NOTHROW(out.check_facts(Regime::Middle));
    CHECK(out.queries().size() <= static_cast<std::size_t>(len));
  }
}

TEST_CASE("R records expand consistently on small arities") {
  const FunctionInstance f = small_instance(Variant::Yes, 11, 12);
  OracleSession sess(f, {-1, -1});
  Rng rng(13);
  for (int i = 0; i < 40; ++i)
    sess.submit_strong(sample_layer(16, 4 + static_cast<int>(rng.below(9)), rng));
  sess.reveal();
  const Outcome out = sess.take_outcome();
  for (const auto& [u, recs] : out.r_records()) {
    const std::uint64_t arity = 16;  // 2^sqrt(16) at every level
    for (const RRecord& rec : recs) {
      int expanded = 0;
      for (std::uint64_t a = 1; a <= arity; ++a)
        if (out.r_contains(EdgeAddress{u.child(static_cast<std::uint32_t>(a))},
                           rec.query))
          ++expanded;
      switch (rec.kind) {
        case RRecord::Kind::All:
          CHECK(expanded == static_cast<int>(arity));
          break;
        case RRecord::Kind::AllExcept:
          CHECK(expanded == static_cast<int>(arity) - 1);
          break;
        case RRecord::Kind::BelowExcept:
          CHECK(expanded == static_cast<int>(rec.a2) - 2);
          break;
      }
    }
  }
}

TEST_CASE("safety and goodness predicates run on a fresh ledger") {
  const FunctionInstance f = small_instance(Variant::Yes, 14, 15);
  OracleSession sess(f, {-1, -1});
  Rng rng(16);
  sess.submit_strong(sample_layer(16, 8, rng));
  sess.reveal();
  const Outcome out = sess.take_outcome();
  CHECK(out.rho_all_constant());
  CHECK(out.b_eps_fraction() >= 0.0);
  // One query cannot populate a dangerous fraction of coordinates.
  CHECK(out.is_good(100.0, Regime::Middle));
}
