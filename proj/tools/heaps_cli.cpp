// heaps: command-line front end for the trace-monoid / independence
// polynomial toolkit. Reports are line-delimited JSON; the exit status is 0
// iff every verdict passes, 1 if some check failed and 2 on usage or input
// errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heaps/heaps.hpp"

using namespace heaps;

namespace {

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::string t;
  for (char ch : text) t += (ch == ',' || ch == '{' || ch == '}' || ch == '[' || ch == ']') ? ' ' : ch;
  std::istringstream in(t);
  std::vector<Vertex> out;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || pos == 0) throw std::invalid_argument("bad vertex '" + tok + "' in '" + text + "'");
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

VertexSet parse_set(const Graph& g, const std::string& text) {
  VertexSet s(parse_vertex_list(text));
  require_subset(g, s);
  return s;
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void print_json(std::ostream& os, const ordered_json& j) { os << j.dump() << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trace monoids, stable-path trees and independence polynomial identities"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run one identity check on a graph file");
  std::string identity, graph_file;
  std::optional<int> root, opt_u, opt_v;
  std::string set_s, set_k = "", path_text, form = "both";
  unsigned series_l = 4;
  bool timing = false;
  verify->add_option("identity", identity, "inversion | godsil | fundamental | bipartite")
      ->required()
      ->check(CLI::IsMember({"inversion", "godsil", "fundamental", "bipartite"}));
  verify->add_option("graph", graph_file, "Graph file")->required();
  verify->add_option("--root", root, "Root vertex for godsil (default: every vertex)");
  verify->add_option("-u", opt_u, "First vertex for bipartite");
  verify->add_option("-v", opt_v, "Second vertex for bipartite");
  verify->add_option("-S", set_s, "Vertex set for fundamental, e.g. 1,3 (default: every subset)");
  verify->add_option("-K", set_k, "Vertex set for inversion, e.g. 2 (default: empty)");
  verify->add_option("-L", series_l, "Series degree for inversion")->capture_default_str();
  verify->add_option("--path", path_text, "Shortest u-v path for bipartite, e.g. 1,2,3");
  verify->add_option("--form", form, "Bipartite form")
      ->check(CLI::IsMember({"quotient", "derivative", "both"}))
      ->capture_default_str();
  verify->add_flag("--timing", timing, "Record elapsed_ms in each report");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run checks over a graph family");
  std::string family = "connected:4", checks_text = "godsil", out_file;
  std::uint64_t seed = 0;
  sweep->add_option("--family", family, "connected:N or random:N:P:COUNT")->capture_default_str();
  sweep->add_option("--checks", checks_text, "Comma-separated: godsil,inversion,fundamental,bipartite")
      ->capture_default_str();
  sweep->add_option("--seed", seed, "Seed for random families")->capture_default_str();
  sweep->add_option("--out", out_file, "Report file (default: stdout)");
  sweep->add_option("-L", series_l, "Series degree for inversion")->capture_default_str();
  sweep->add_flag("--timing", timing, "Record elapsed_ms in each report");

  // enum-words
  auto* enum_words = app.add_subcommand("enum-words", "List canonical words ending only in K");
  bool exact = false;
  std::size_t max_len = 4;
  enum_words->add_option("graph", graph_file, "Graph file")->required();
  enum_words->add_option("-K", set_k, "Vertex set, e.g. 1,3")->required();
  enum_words->add_option("-L", max_len, "Maximum length")->capture_default_str();
  enum_words->add_flag("--exact", exact, "Require the initial alphabet to equal K");

  // word
  auto* word_cmd = app.add_subcommand("word", "Normal form and statistics of a word");
  std::string word_text;
  word_cmd->add_option("graph", graph_file, "Graph file")->required();
  word_cmd->add_option("--word", word_text, "Letters, e.g. \"3 4 2 1 1 1\"")->required();

  // indep-poly
  auto* ip = app.add_subcommand("indep-poly", "Independence polynomial I(G - S, x)");
  std::string minus_text;
  ip->add_option("graph", graph_file, "Graph file")->required();
  ip->add_option("--minus", minus_text, "Vertices to delete");
  bool as_json = false;
  ip->add_flag("--json", as_json, "Emit the term list as JSON");

  // spt
  auto* spt = app.add_subcommand("spt", "Stable-path tree rooted at a vertex");
  int spt_root = 1;
  spt->add_option("graph", graph_file, "Graph file")->required();
  spt->add_option("--root", spt_root, "Root vertex")->required();

  // phi
  auto* phi = app.add_subcommand("phi", "Map a word ending only in u to the stable-path tree (or back)");
  bool inverse = false;
  phi->add_option("graph", graph_file, "Graph file")->required();
  phi->add_option("--root", spt_root, "Root vertex u")->required();
  phi->add_option("--word", word_text, "Word over G, or over the tree with --inverse")->required();
  phi->add_flag("--inverse", inverse, "Apply the inverse map to a tree word");

  // witnesses
  auto* wit = app.add_subcommand("witnesses", "Bipartite witnesses for a vertex pair");
  int wu = 0, wv = 0;
  wit->add_option("graph", graph_file, "Graph file")->required();
  wit->add_option("-u", wu, "First vertex")->required();
  wit->add_option("-v", wv, "Second vertex")->required();
  wit->add_option("--path", path_text, "Shortest u-v path (default: the canonical one)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      SweepOptions opt;
      opt.family = GraphFamily::parse(family);
      opt.checks = split_commas(checks_text);
      opt.seed = seed;
      opt.series_degree = series_l;
      opt.timing = timing;
      std::ofstream file;
      if (!out_file.empty()) {
        file.open(out_file);
        if (!file) throw std::runtime_error("cannot write " + out_file);
      }
      std::ostream& os = out_file.empty() ? std::cout : file;
      const SweepSummary sum = corpus_sweep(opt, [&](const VerificationReport& r) { print_json(os, r.to_json()); });
      std::cerr << "sweep " << family << ": " << sum.graphs << " graphs, " << sum.reports << " reports, "
                << sum.failures << " failures\n";
      return sum.pass() ? 0 : 1;
    }

    const GraphPtr g = share(load_graph(graph_file));

    if (*verify) {
      std::vector<VerificationReport> reports;
      auto timed = [&](auto&& run) {
        auto t0 = std::chrono::steady_clock::now();
        VerificationReport r = run();
        if (timing) r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        reports.push_back(std::move(r));
      };
      if (identity == "inversion") {
        const VertexSet k = parse_set(*g, set_k);
        timed([&] { return check_inversion(*g, k, series_l); });
      } else if (identity == "godsil") {
        if (root) {
          timed([&] { return check_godsil(g, *root); });
        } else {
          for (Vertex u = 1; u <= g->order(); ++u) timed([&] { return check_godsil(g, u); });
        }
      } else if (identity == "fundamental") {
        if (!set_s.empty()) {
          const VertexSet s = parse_set(*g, set_s);
          timed([&] { return check_fundamental(*g, s); });
        } else {
          detail::require_mask_graph(*g, "verify fundamental");
          for (std::uint64_t m = 0; m < (std::uint64_t{1} << g->order()); ++m)
            timed([&] { return check_fundamental(*g, VertexSet::from_mask(m)); });
        }
      } else {
        if (!opt_u || !opt_v) throw std::invalid_argument("verify bipartite needs -u and -v");
        std::optional<std::vector<Vertex>> path;
        if (!path_text.empty()) path = parse_vertex_list(path_text);
        for (auto f : {BipartiteForm::quotient, BipartiteForm::derivative})
          if (form == "both" || form == to_string(f)) timed([&] { return check_bipartite(*g, *opt_u, *opt_v, f, path); });
      }
      bool ok = true;
      for (const auto& r : reports) {
        print_json(std::cout, r.to_json());
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }

    if (*enum_words) {
      const VertexSet k = parse_set(*g, set_k);
      const auto words = enumerate_words(g, k, max_len, exact ? AlphabetMatch::exact : AlphabetMatch::subset);
      for (const auto& w : words) std::cout << w.to_string() << '\n';
      std::cerr << words.size() << " words\n";
      return 0;
    }

    if (*word_cmd) {
      const TraceWord w = parse_word(word_text, g);
      const WordStats st = word_stats(w);
      ordered_json j;
      j["word"] = w.to_string();
      j["length"] = st.length;
      ordered_json counts = ordered_json::object();
      for (const auto& [v, c] : st.counts) counts[std::to_string(v)] = c;
      j["counts"] = counts;
      j["ia_multiset"] = st.ia_multiset;
      j["ia"] = to_json(st.ia_set);
      print_json(std::cout, j);
      return 0;
    }

    if (*ip) {
      const MultiPoly p = independence_polynomial(*g, parse_set(*g, minus_text));
      if (as_json)
        std::cout << to_json(p).dump() << '\n';
      else
        std::cout << to_string(p) << '\n';
      return 0;
    }

    if (*spt) {
      const StablePathTree t = build_spt(g, spt_root);
      std::cout << t.render();
      std::cout << "id label parent\n";
      for (Vertex a = 1; a <= static_cast<Vertex>(t.size()); ++a)
        std::cout << a << ' ' << t.label(a) << ' ' << t.parent(a) << '\n';
      return 0;
    }

    if (*phi) {
      const StablePathTree t = build_spt(g, spt_root);
      const TraceWord in = parse_word(word_text, inverse ? t.tree_ptr() : g);
      const TraceWord out = inverse ? psi_G(in, t) : phi_G(in, t);
      std::cout << out.to_string() << '\n';
      return 0;
    }

    if (*wit) {
      const std::vector<Vertex> p = path_text.empty() ? shortest_path(*g, wu, wv) : parse_vertex_list(path_text);
      for (const auto& h : enumerate_witnesses(*g, wu, wv, p)) {
        ordered_json j;
        j["path"] = h.path;
        j["h1"] = to_json(h.h1);
        j["h2"] = to_json(h.h2);
        j["z1"] = to_json(h.z1);
        j["z2"] = to_json(h.z2);
        print_json(std::cout, j);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
