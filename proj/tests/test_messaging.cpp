#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "relaycon/families.hpp"
#include "relaycon/messaging.hpp"
#include "test_support.hpp"

using namespace relaycon;

namespace {

Message msg(double value, std::vector<int> nodes) {
  return Message{value, Path{std::move(nodes)}};
}

std::vector<double> values_of(const MessageSet& m) {
  std::vector<double> out;
  for (const auto& x : m.items) out.push_back(x.value);
  return out;
}

bool covers_all(const MessageSet& m, const std::vector<int>& cover, int recv) {
  NodeMask cm = 0;
  for (int v : cover) cm |= node_bit(v);
  for (const auto& x : m.items)
    if (!((x.path.vertex_mask() & ~node_bit(recv)) & cm)) return false;
  return true;
}

}  // namespace

TEST_CASE("messages sort by value then by path") {
  MessageSet ms = MessageSet::from(
      {msg(1, {2, 1}), msg(0, {4, 1}), msg(0, {3, 4, 1})});
  REQUIRE(ms.items.size() == 3);
  CHECK(ms.items[0].path.nodes == std::vector<int>{3, 4, 1});
  CHECK(ms.items[1].path.nodes == std::vector<int>{4, 1});
  CHECK(ms.items[2].path.nodes == std::vector<int>{2, 1});
  CHECK(message_less(ms.items[0], ms.items[1]));
  CHECK_FALSE(message_less(ms.items[1], ms.items[0]));
  CHECK_FALSE(message_less(ms.items[1], ms.items[1]));
}

TEST_CASE("trim keeps the middle band") {
  MessageSet ms = MessageSet::from(
      {msg(1, {2, 1}), msg(0, {4, 1}), msg(-5, {5, 1})});
  TrimResult t = compute_trim(ms, 1);
  CHECK(values_of(t.low) == std::vector<double>{-5});
  CHECK(values_of(t.kept) == std::vector<double>{0});
  CHECK(values_of(t.high) == std::vector<double>{1});
  CHECK(t.low.items[0].source() == 5);
  CHECK(t.kept.items[0].source() == 4);
  CHECK(t.high.items[0].source() == 2);
  CHECK(t.low_cover == std::vector<int>{5});
  CHECK(t.high_cover == std::vector<int>{2});
}

TEST_CASE("trim backs off before the pool outgrows its guards") {
  // ascending: -2 via 5, -1 via 3-2, 0 via 4, 1 via 2, 3 via 4-5
  MessageSet ms = MessageSet::from({msg(1, {2, 1}), msg(-1, {3, 2, 1}),
                                    msg(0, {4, 1}), msg(-2, {5, 1}),
                                    msg(3, {4, 5, 1})});
  TrimResult t = compute_trim(ms, 1);
  // {5} and {3,2} would need two guards, so the low pool stops at one
  CHECK(values_of(t.low) == std::vector<double>{-2});
  CHECK(t.low_cover == std::vector<int>{5});
  // {2} and {4,5} share no guard either, so the high pool is one deep too
  CHECK(values_of(t.high) == std::vector<double>{3});
  CHECK(t.high_cover == std::vector<int>{4});
  CHECK(values_of(t.kept) == std::vector<double>{-1, 0, 1});
}

TEST_CASE("trim with a shared relay eats a deeper band") {
  // the two smallest both route through node 5, so one guard covers both
  MessageSet ms = MessageSet::from({msg(-3, {5, 1}), msg(-2, {2, 5, 1}),
                                    msg(0, {4, 1}), msg(1, {2, 1}),
                                    msg(2, {3, 4, 1})});
  TrimResult t = compute_trim(ms, 1);
  CHECK(values_of(t.low) == std::vector<double>{-3, -2});
  CHECK(t.low_cover == std::vector<int>{5});
  CHECK(values_of(t.high) == std::vector<double>{2});
  CHECK(t.high_cover == std::vector<int>{3});
  CHECK(values_of(t.kept) == std::vector<double>{0, 1});
}

TEST_CASE("zero fault budget keeps every message") {
  MessageSet ms = MessageSet::from(
      {msg(1, {2, 1}), msg(0, {4, 1}), msg(-5, {5, 1})});
  TrimResult t = compute_trim(ms, 0);
  CHECK(t.kept.items.size() == 3);
  CHECK(values_of(t.kept) == values_of(ms));
  CHECK(t.low.empty());
  CHECK(t.high.empty());
  CHECK(t.low_cover.empty());
  CHECK(t.high_cover.empty());
}

TEST_CASE("trim rejects bad inputs") {
  MessageSet ms = MessageSet::from({msg(1, {2, 1}), msg(0, {4, 1})});
  CHECK_THROWS_AS(compute_trim(ms, -1), std::invalid_argument);
  MessageSet mixed = MessageSet::from({msg(1, {2, 1}), msg(0, {4, 3})});
  CHECK_THROWS_AS(compute_trim(mixed, 1), std::invalid_argument);
  // a self delivery can only be covered by the receiver itself
  MessageSet selfish = MessageSet::from({msg(1, {1, 1}), msg(0, {4, 1})});
  CHECK_THROWS_AS(compute_trim(selfish, 1), std::invalid_argument);
}

TEST_CASE("trim is not well defined when messages run out") {
  MessageSet ms = MessageSet::from({msg(1, {2, 1}), msg(0, {4, 1})});
  try {
    compute_trim(ms, 1);
    FAIL("expected the trim to give up");
  } catch (const TrimNotWellDefined& e) {
    CHECK(e.receiver == 1);
  }
  CHECK_THROWS_AS(compute_trim(MessageSet{}, 1), TrimNotWellDefined);
}

TEST_CASE("trim is not well defined when one relay covers everything") {
  MessageSet ms = MessageSet::from(
      {msg(1, {2, 1}), msg(3, {2, 5, 1}), msg(7, {3, 2, 1})});
  CHECK_THROWS_AS(compute_trim(ms, 1), TrimNotWellDefined);
}

TEST_CASE("smallest covers prefer low node ids") {
  MessageSet ms = MessageSet::from(
      {msg(0, {2, 5, 1}), msg(1, {4, 5, 1}), msg(2, {2, 4, 1})});
  // {5} misses the third message; {2,4} wins over {2,5} and {4,5}
  CHECK(min_message_cover(ms, 1) == std::vector<int>{2, 4});
  MessageSet direct = MessageSet::from(
      {msg(0, {2, 1}), msg(1, {5, 1}), msg(2, {2, 5, 1})});
  CHECK(min_message_cover(direct, 1) == std::vector<int>{2, 5});
  CHECK(min_message_cover(MessageSet{}, 1).empty());
  MessageSet single = MessageSet::from({msg(0, {5, 1})});
  CHECK(min_message_cover(single, 1) == std::vector<int>{5});
  MessageSet selfish = MessageSet::from({msg(0, {1, 1})});
  CHECK_THROWS_AS(min_message_cover(selfish, 1), std::invalid_argument);
}

TEST_CASE("covers match the exhaustive reference") {
  std::mt19937_64 rng(4242);
  int n = 6, receiver = 1;
  for (int trial = 0; trial < 40; ++trial) {
    DirectedGraph g = support::random_digraph(rng, n, 0.5);
    std::vector<Path> pool;
    for (int src = 1; src <= n; ++src)
      for (const Path& p : enumerate_paths(g, src, receiver, 2))
        if (!p.is_self_loop()) pool.push_back(p);
    if (pool.empty()) continue;
    std::vector<Message> picked;
    for (const Path& p : pool)
      if (support::chance(rng, 0.4))
        picked.push_back(Message{double(support::pick_int(rng, -5, 5)), p});
    if (picked.empty()) picked.push_back(Message{0.0, pool.front()});
    MessageSet ms = MessageSet::from(std::move(picked));

    std::vector<std::set<int>> sets;
    for (const auto& m : ms.items) sets.push_back(m.path.vertices());
    int want = oracles::min_hitting_set(sets, receiver, n);
    std::vector<int> got = min_message_cover(ms, receiver);
    REQUIRE(want >= 0);
    CHECK(int(got.size()) == want);
    CHECK(covers_all(ms, got, receiver));
    CHECK(mincut_cover_size(ms, receiver, g) >= int(got.size()));
  }
}

TEST_CASE("subset restriction keeps message order") {
  MessageSet ms = MessageSet::from(
      {msg(1, {2, 1}), msg(0, {4, 1}), msg(-5, {5, 1})});
  MessageSet hit = max_covered_subset(ms, {4, 5});
  CHECK(values_of(hit) == std::vector<double>{-5, 0});
  CHECK(max_covered_subset(ms, {3}).empty());
  CHECK(max_covered_subset(ms, {}).empty());
  // every path ends at the receiver, so asking for it returns everything
  CHECK(max_covered_subset(ms, {1}).items.size() == 3);
}

TEST_CASE("flow count bounds the enumerated cover") {
  DirectedGraph g = build_fig1();
  MessageSet fan = MessageSet::from(
      {msg(0, {2, 1}), msg(1, {5, 1}), msg(2, {2, 5, 1})});
  CHECK(mincut_cover_size(fan, 1, g) == 2);
  CHECK(min_message_cover(fan, 1).size() == 2);

  MessageSet funnel = MessageSet::from({msg(0, {2, 5, 1}), msg(1, {4, 5, 1})});
  CHECK(mincut_cover_size(funnel, 1, g) == 1);
  CHECK(min_message_cover(funnel, 1).size() == 1);

  // the union of these two paths admits 2-1 and 4-1 detours the messages
  // never took, so the flow count overshoots the true cover
  MessageSet crossed = MessageSet::from({msg(0, {2, 4, 1}), msg(1, {4, 2, 1})});
  CHECK(mincut_cover_size(crossed, 1, g) == 2);
  CHECK(min_message_cover(crossed, 1).size() == 1);
  CHECK(min_message_cover(crossed, 1) == std::vector<int>{2});

  CHECK(mincut_cover_size(MessageSet{}, 1, g) == 0);
  MessageSet stray = MessageSet::from({msg(0, {2, 5})});
  CHECK_THROWS_AS(mincut_cover_size(stray, 1, g), std::invalid_argument);
  MessageSet selfish = MessageSet::from({msg(0, {1, 1})});
  CHECK_THROWS_AS(mincut_cover_size(selfish, 1, g), std::invalid_argument);
}

TEST_CASE("trim bands partition the input and stay ordered") {
  std::mt19937_64 rng(777);
  int n = 6, receiver = 1, f = 1;
  const double density[] = {0.15, 0.35, 0.55};
  int defined = 0, undefined = 0;
  for (int trial = 0; trial < 60; ++trial) {
    DirectedGraph g = support::random_digraph(rng, n, density[trial % 3]);
    std::vector<Message> picked;
    for (int src = 1; src <= n; ++src)
      for (const Path& p : enumerate_paths(g, src, receiver, 2))
        if (!p.is_self_loop() && support::chance(rng, 0.5))
          picked.push_back(Message{double(support::pick_int(rng, -9, 9)), p});
    if (picked.empty()) continue;
    MessageSet ms = MessageSet::from(std::move(picked));
    std::size_t total = ms.items.size();
    try {
      TrimResult t = compute_trim(ms, f);
      ++defined;
      REQUIRE(t.low.items.size() + t.kept.items.size() + t.high.items.size() ==
              total);
      for (std::size_t i = 0; i < total; ++i) {
        const Message* want = &ms.items[i];
        const Message* got = nullptr;
        if (i < t.low.items.size())
          got = &t.low.items[i];
        else if (i < t.low.items.size() + t.kept.items.size())
          got = &t.kept.items[i - t.low.items.size()];
        else
          got = &t.high.items[i - t.low.items.size() - t.kept.items.size()];
        CHECK(got->value == want->value);
        CHECK(got->path.nodes == want->path.nodes);
      }
      CHECK(int(t.low_cover.size()) == f);
      CHECK(int(t.high_cover.size()) == f);
      CHECK(covers_all(t.low, t.low_cover, receiver));
      CHECK(covers_all(t.high, t.high_cover, receiver));
      if (!t.kept.empty()) {
        // one more message in either pool would exceed the guard budget
        std::vector<std::set<int>> low_plus;
        for (std::size_t i = 0; i <= t.low.items.size(); ++i)
          low_plus.push_back(ms.items[i].path.vertices());
        CHECK(oracles::min_hitting_set(low_plus, receiver, n) > f);
        std::vector<std::set<int>> high_plus;
        for (std::size_t i = total - t.high.items.size() - 1; i < total; ++i)
          high_plus.push_back(ms.items[i].path.vertices());
        CHECK(oracles::min_hitting_set(high_plus, receiver, n) > f);
      }
    } catch (const TrimNotWellDefined&) {
      ++undefined;
    }
  }
  CHECK(defined > 0);
  CHECK(undefined > 0);
}
