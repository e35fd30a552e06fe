#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>

#include "heaps/identities.hpp"

using namespace heaps;

namespace {
GraphPtr bull() { return share(Graph(5, {{1, 2}, {1, 5}, {2, 5}, {1, 3}, {2, 4}})); }
}  // namespace

TEST_CASE("inversion checks") {
  const auto k1 = check_inversion(Graph(1, {}), {1}, 4);
  CHECK(k1.pass);
  CHECK(to_string(k1.lhs) == "1 + x1 + x1^2 + x1^3 + x1^4");
  CHECK(k1.counts["words"] == 5);

  const auto p = check_inversion(path_graph(4), {2}, 3);
  CHECK(p.pass);
  const auto& per = p.counts["words_per_length"];
  REQUIRE(per.size() == 4);
  CHECK(per[0] == 1);
  CHECK(per[1] == 1);
  CHECK(per[2] == 3);  // 1 2, 2 2, 3 2

  const auto all = check_inversion(path_graph(4), {1, 2, 3, 4}, 2);
  CHECK(all.pass);
  CHECK(all.counts["words"] == 1 + 4 + 13);
  CHECK(check_inversion(path_graph(4), {}, 3).rhs == MultiPoly(1));
}

TEST_CASE("godsil checks") {
  const auto one = check_godsil(share(Graph(1, {})), 1);
  CHECK(one.pass);
  CHECK(to_string(one.lhs) == "1 - x1");

  const auto f = check_godsil(bull(), 1);
  CHECK(f.pass);
  CHECK(f.counts["tree_vertices"] == 6);

  for (Vertex u = 1; u <= 4; ++u) CHECK(check_godsil(share(path_graph(4)), u).pass);
  CHECK(check_godsil(share(cycle_graph(5)), 3).counts["tree_vertices"] == 8);
  CHECK_THROWS_AS(check_godsil(share(Graph(2, {})), 1), std::domain_error);
}

TEST_CASE("bipartite checks") {
  const Graph p4 = path_graph(4);
  const auto a = check_bipartite(p4, 2, 3, BipartiteForm::quotient);
  CHECK(a.pass);
  CHECK(a.counts["witnesses"] == 4);
  CHECK(a.parameters["path"] == ordered_json::array({2, 3}));
  const auto b = check_bipartite(p4, 1, 4, BipartiteForm::quotient);
  CHECK(b.pass);
  CHECK(b.counts["witnesses"] == 1);
  CHECK(check_bipartite(p4, 2, 3, BipartiteForm::derivative).pass);
  CHECK(check_bipartite(p4, 1, 4, BipartiteForm::derivative).pass);

  const auto k2 = check_bipartite(path_graph(2), 1, 2, BipartiteForm::quotient);
  CHECK(k2.pass);
  CHECK(to_string(k2.lhs) == "x1*y2");

  CHECK(check_bipartite(p4, 1, 3, BipartiteForm::quotient, std::vector<Vertex>{1, 2, 3}).pass);
  CHECK_THROWS_AS(check_bipartite(p4, 1, 3, BipartiteForm::quotient, std::vector<Vertex>{1, 3}), std::domain_error);
  CHECK_THROWS_AS(check_bipartite(p4, 2, 2, BipartiteForm::quotient), std::domain_error);
  CHECK_THROWS_AS(check_bipartite(Graph(2, {}), 1, 2, BipartiteForm::quotient), std::domain_error);
}

TEST_CASE("fundamental checks") {
  const auto r = check_fundamental(path_graph(4), {2});
  CHECK(r.pass);
  CHECK(to_string(r.rhs) == "x2 - x2*x4");
  CHECK(r.counts["s"] == 1);
  CHECK(check_fundamental(path_graph(4), {1, 2, 3, 4}).counts["s"] == 7);
}

TEST_CASE("report JSON layout") {
  const auto j = check_godsil(share(path_graph(2)), 1).to_json();
  CHECK(j.dump() ==
        R"({"identity":"godsil","graph":"n=2;1-2","parameters":{"root":1},"verdict":"pass",)"
        R"("lhs":"1 - x1 - 2*x2 + x1*x2 + x2^2","rhs":"1 - x1 - 2*x2 + x1*x2 + x2^2",)"
        R"("counts":{"tree_vertices":2}})");
  CHECK(check_godsil(share(path_graph(2)), 1).to_json() == j);
}

TEST_CASE("graph corpora") {
  CHECK(connected_graphs(3).size() == 4);
  const auto a = random_connected_graphs(6, 0.4, 50, 7);
  const auto b = random_connected_graphs(6, 0.4, 50, 7);
  REQUIRE(a.size() == 50);
  CHECK(a == b);
  for (const auto& g : a) CHECK(is_connected(g));
  CHECK(random_connected_graphs(6, 0.4, 50, 8) != a);
  CHECK_THROWS_AS(random_connected_graphs(3, 0.0, 1, 1), std::domain_error);
}

TEST_CASE("graph family parsing") {
  const auto c = GraphFamily::parse("connected:5");
  CHECK(c.kind == GraphFamily::Kind::all_connected);
  CHECK(c.n == 5);
  const auto r = GraphFamily::parse("random:6:0.4:50");
  CHECK(r.kind == GraphFamily::Kind::random);
  CHECK(r.count == 50);
  CHECK(r.to_string() == "random:6:0.4:50");
  for (const char* bad : {"", "connected", "connected:x", "random:6:0.4", "tree:4"})
    CHECK_THROWS_AS(GraphFamily::parse(bad), std::invalid_argument);
}

TEST_CASE("corpus sweeps") {
  SweepOptions opt;
  opt.family = GraphFamily::parse("connected:4");
  opt.checks = {"godsil"};
  std::vector<std::string> lines;
  const auto sum = corpus_sweep(opt, [&](const VerificationReport& r) { lines.push_back(r.to_json().dump()); });
  // 1 + 1 + 4 + 38 connected graphs, one check per root.
  CHECK(sum.graphs == 44);
  CHECK(sum.reports == 1 * 1 + 1 * 2 + 4 * 3 + 38 * 4);
  CHECK(sum.pass());
  CHECK(lines.size() == sum.reports);

  SweepOptions rnd;
  rnd.family = GraphFamily::parse("random:6:0.4:50");
  rnd.checks = {"bipartite"};
  rnd.seed = 7;
  std::vector<std::string> first, second;
  const auto s1 = corpus_sweep(rnd, [&](const VerificationReport& r) { first.push_back(r.to_json().dump()); });
  corpus_sweep(rnd, [&](const VerificationReport& r) { second.push_back(r.to_json().dump()); });
  CHECK(s1.pass());
  CHECK(s1.reports == 50 * 30 * 2);
  CHECK(first == second);

  SweepOptions none = opt;
  none.checks = {};
  CHECK(corpus_sweep(none, [](const VerificationReport&) {}).reports == 0);

  SweepOptions unknown = opt;
  unknown.checks = {"godsil", "nope"};
  CHECK_THROWS_AS(corpus_sweep(unknown, [](const VerificationReport&) {}), std::invalid_argument);

  SweepOptions big = opt;
  big.family = GraphFamily::parse("connected:9");
  CHECK_THROWS_AS(corpus_sweep(big, [](const VerificationReport&) {}), std::domain_error);
  big.max_n = 3;
  big.family = GraphFamily::parse("connected:4");
  CHECK_THROWS_AS(corpus_sweep(big, [](const VerificationReport&) {}), std::domain_error);

  ::setenv("HEAPS_MAX_N", "2", 1);
  CHECK_THROWS_AS(corpus_sweep(opt, [](const VerificationReport&) {}), std::domain_error);
  ::setenv("HEAPS_MAX_N", "junk", 1);
  CHECK_THROWS_AS(corpus_sweep(opt, [](const VerificationReport&) {}), std::invalid_argument);
  ::unsetenv("HEAPS_MAX_N");

  SweepOptions timed = opt;
  timed.family = GraphFamily::parse("connected:2");
  timed.timing = true;
  bool has_time = true;
  corpus_sweep(timed, [&](const VerificationReport& r) { has_time = has_time && r.to_json().contains("elapsed_ms"); });
  CHECK(has_time);
}
