#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "hinfluence/error.hpp"
#include "hinfluence/format.hpp"
#include "hinfluence/generators.hpp"
#include "hinfluence/io.hpp"

using namespace hinfluence;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an hinfluence::Error");
  return Errc::InvalidArgument;
}

std::set<std::pair<NodeId, NodeId>> peer_edges(const WeightedFieldGraph& g) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& e : g.edges()) {
    if (e.u != kField) out.emplace(e.u, e.v);
  }
  return out;
}

}  // namespace

TEST_CASE("pure wheel has cycle plus field star") {
  WheelSpec spec;
  spec.n = 12;
  spec.p = 0.0;
  spec.q = 0.0;
  auto g = generate_wheel(spec);
  CHECK(g.edge_count() == 2 * spec.n);
  CHECK(g.degree(kField) == doctest::Approx(12 * 0.040));
  CHECK(g.find_slot(1, 12).has_value());
  for (NodeId i = 1; i < 12; ++i) CHECK(g.find_slot(i, i + 1).has_value());
}

TEST_CASE("q = 1 connects the hub to every node") {
  WheelSpec spec;
  spec.n = 30;
  spec.p = 0.0;
  spec.q = 1.0;
  spec.hub = 1;
  auto g = generate_wheel(spec);
  CHECK(g.degree_count(1) == 30);  // 29 peers plus the field
}

TEST_CASE("wheel generation is deterministic and chords avoid both hubs") {
  WheelSpec spec;
  spec.p = 0.2;
  spec.seed = 42;
  auto a = generate_wheel(spec);
  auto b = generate_wheel(spec);
  CHECK(a.edges() == b.edges());
  spec.seed = 43;
  CHECK(generate_wheel(spec).edges() != a.edges());

  auto [g3, g4] = generate_wheel_pair(50, 0.2, 0.25, 0.040, 9);
  auto touches = [](const WeightedEdge& e, NodeId hub) { return e.u == hub || e.v == hub; };
  std::set<std::pair<NodeId, NodeId>> shared3;
  std::set<std::pair<NodeId, NodeId>> shared4;
  for (const auto& e : g3.edges()) {
    if (!touches(e, 1) && !touches(e, 26)) shared3.emplace(e.u, e.v);
  }
  for (const auto& e : g4.edges()) {
    if (!touches(e, 1) && !touches(e, 26)) shared4.emplace(e.u, e.v);
  }
  CHECK(shared3 == shared4);
  // Node 26 has only its cycle neighbours and the field in the hub-1 graph,
  // apart from a possible spoke from node 1.
  CHECK(g3.degree_count(26) <= 4);
  CHECK(g4.degree_count(1) <= 4);
}

TEST_CASE("wheel is connected for any probabilities and validates its spec") {
  for (double p : {0.0, 0.05, 0.5, 1.0}) {
    for (double q : {0.0, 0.5, 1.0}) {
      WheelSpec spec;
      spec.n = 20;
      spec.p = p;
      spec.q = q;
      CHECK_NOTHROW(generate_wheel(spec));
    }
  }
  WheelSpec bad;
  bad.p = 1.5;
  CHECK(error_of([&] { generate_wheel(bad); }) == Errc::InvalidArgument);
  bad = WheelSpec{};
  bad.hub = 51;
  CHECK(error_of([&] { generate_wheel(bad); }) == Errc::InvalidArgument);
  bad = WheelSpec{};
  bad.field_weight = 0.0;
  CHECK(error_of([&] { generate_wheel(bad); }) == Errc::InvalidArgument);
}

TEST_CASE("random graphs, trees and block models") {
  RandomGraphSpec spec;
  spec.n = 40;
  spec.m = 100;
  spec.field_probability = 0.1;
  spec.seed = 3;
  auto g = generate_erdos_renyi(spec);
  CHECK(peer_edges(g).size() == 100);
  CHECK(generate_erdos_renyi(spec).edges() == g.edges());

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto t = generate_random_tree(25, 0.5, 2.0, seed);
    CHECK(is_tree(t));
    CHECK(t.n() == 25);
  }
  CHECK(is_tree(generate_random_tree(1, 1.0, 1.0, 0)));

  auto model = generate_block_model({5, 7, 3}, 0.9, 0.05, 0.040, 1);
  CHECK(model.graph.n() == 15);
  CHECK(model.labels.size() == 15);
  CHECK(model.labels[0] == 0);
  CHECK(model.labels[5] == 1);
  CHECK(model.labels[14] == 2);

  const auto p = matched_degree_probabilities({326, 434, 125}, 50.0);
  CHECK(p[0] == doctest::Approx(50.0 / 325));
  CHECK(p[2] == doctest::Approx(50.0 / 124));
  CHECK(matched_degree_probabilities({3}, 50.0)[0] == 1.0);
  // Complete first block, empty second block, no cross edges: the second
  // block hangs on the field only.
  auto split = generate_block_model({4, 3}, {1.0, 0.0}, 0.0, 0.5, 1);
  CHECK(peer_edges(split.graph).size() == 6);
  CHECK_THROWS_AS(generate_block_model({4, 3}, std::vector<double>{1.0}, 0.0, 0.5, 1), Error);
}

TEST_CASE("edge list loading") {
  std::istringstream in("1 2\n2 3\n");
  auto loaded = load_edge_list(in, 0.040);
  CHECK(loaded.graph.n() == 3);
  CHECK(loaded.graph.edge_count() == 5);
  CHECK(loaded.graph.degree(kField) == doctest::Approx(0.120).epsilon(1e-15));

  std::istringstream messy("# comment\n\n40 7\n7 40\n7 9\n  # indented comment\n");
  auto m = load_edge_list(messy, 0.5);
  CHECK(m.graph.n() == 3);
  CHECK(m.original_ids == std::vector<std::int64_t>{40, 7, 9});
  CHECK(peer_edges(m.graph).size() == 2);

  std::istringstream loop("1 2\n1 1\n");
  try {
    load_edge_list(loop, 0.04);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  std::istringstream junk("1 x\n");
  CHECK(error_of([&] { load_edge_list(junk, 0.04); }) == Errc::ParseError);
  std::istringstream empty("# nothing\n");
  CHECK(error_of([&] { load_edge_list(empty, 0.04); }) == Errc::EmptyGraph);
  CHECK(error_of([&] { load_edge_list(std::filesystem::path("/nonexistent/ego.edges"), 0.04); }) == Errc::IoError);
}

TEST_CASE("saving then loading an edge list keeps the peer edges") {
  RandomGraphSpec spec;
  spec.n = 30;
  spec.m = 80;
  spec.seed = 5;
  auto g = generate_erdos_renyi(spec);
  std::stringstream buf;
  save_edge_list(g, buf);
  auto back = load_edge_list(buf, 0.040);
  std::set<std::pair<std::int64_t, std::int64_t>> original;
  for (const auto& [u, v] : peer_edges(g)) original.emplace(u, v);
  std::set<std::pair<std::int64_t, std::int64_t>> reloaded;
  for (const auto& [u, v] : peer_edges(back.graph)) {
    auto a = back.original_ids[u - 1];
    auto b = back.original_ids[v - 1];
    reloaded.emplace(std::min(a, b), std::max(a, b));
  }
  CHECK(original == reloaded);
}

TEST_CASE("induced subgraphs") {
  auto model = generate_block_model({6, 4}, 1.0, 0.0, 0.040, 2);
  std::vector<NodeId> all(10);
  for (NodeId i = 1; i <= 10; ++i) all[i - 1] = i;
  auto same = induce_subgraph(model.graph, all, 0.040);
  CHECK(same.graph.edges() == model.graph.edges());

  auto second = induce_subgraph(model.graph, {7, 8, 9, 10}, 0.1);
  CHECK(second.graph.n() == 4);
  CHECK(peer_edges(second.graph).size() == 6);
  CHECK(second.graph.weight(kField, 1) == 0.1);
  CHECK(second.parent_ids == std::vector<NodeId>{7, 8, 9, 10});

  auto single = induce_subgraph(model.graph, {3}, 0.040);
  CHECK(single.graph.n() == 1);
  CHECK(single.graph.edge_count() == 1);

  CHECK(error_of([&] { induce_subgraph(model.graph, {}, 0.040); }) == Errc::EmptyKeepSet);
  CHECK(error_of([&] { induce_subgraph(model.graph, {11}, 0.040); }) == Errc::UnknownNode);
}

TEST_CASE("community labels") {
  std::istringstream ones("node,community\n1,0\n2,0\n3,0\n");
  auto labels = load_communities(ones, 3);
  CHECK(labels.sizes() == std::vector<std::size_t>{3});

  std::istringstream three("# labels\nnode,community\n1,1\n2,0\n3,2\n4,1\n");
  auto l3 = load_communities(three, 4);
  CHECK(l3.sizes() == std::vector<std::size_t>{1, 2, 1});
  CHECK(l3.members(1) == std::vector<NodeId>{1, 4});

  std::istringstream missing("node,community\n1,0\n3,0\n");
  CHECK(error_of([&] { load_communities(missing, 3); }) == Errc::MissingNode);
  std::istringstream unknown("node,community\n1,0\n2,0\n9,0\n");
  CHECK(error_of([&] { load_communities(unknown, 2); }) == Errc::UnknownNode);
  std::istringstream gap("node,community\n1,0\n2,2\n");
  CHECK(error_of([&] { load_communities(gap, 2); }) == Errc::ParseError);
  std::istringstream header("id,label\n1,0\n");
  CHECK(error_of([&] { load_communities(header, 1); }) == Errc::ParseError);
}

TEST_CASE("profile and trace CSV formats") {
  InfluenceProfile p;
  p.values = {2.0, 1.5, 1.0 / 3.0, 123456.7890123456};
  std::stringstream buf;
  write_profile_csv(p, buf, {{"seed", "7"}});
  const std::string text = buf.str();
  CHECK(text == "# seed=7\nnode,influence\n1,2\n2,1.5\n3,0.333333333333\n4,123456.789012\n");
  auto back = read_profile_csv(buf);
  REQUIRE(back.n() == 4);
  CHECK(back[3] == 0.333333333333);

  std::istringstream gap("node,influence\n1,2\n3,1\n");
  CHECK(error_of([&] { read_profile_csv(gap); }) == Errc::MissingNode);

  ConvergenceTrace trace;
  trace.records = {{0, 0.5, 0.25}, {1, 1e-13, 0.0}};
  std::stringstream tbuf;
  write_trace_csv(trace, tbuf);
  CHECK(tbuf.str() == "t,dW,dH\n0,0.5,0.25\n1,1e-13,0\n");
}

TEST_CASE("number formatting ignores locale and round-trips exactly") {
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_exact(0.1 + 0.2) == "0.30000000000000004");
  double v = 0.0;
  CHECK(parse_number("0.30000000000000004", v));
  CHECK(v == 0.1 + 0.2);
  CHECK_FALSE(parse_number("1.5x", v));
}
