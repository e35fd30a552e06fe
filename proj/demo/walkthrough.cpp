// Small tour: normal forms on P4, the stable-path tree of a five-vertex
// graph, the bijection onto tree words, and two identity checks.

#include <iostream>

#include "heaps/heaps.hpp"

using namespace heaps;

int main() {
  const GraphPtr p4 = share(path_graph(4));
  const TraceWord w = parse_word("3 4 2 1 1 1", p4);
  const WordStats st = word_stats(w);
  std::cout << "word 342111 on P4 -> " << w.to_string() << "  IA = " << st.ia_set.to_string() << "\n";
  std::cout << "I(P4) = " << to_string(independence_polynomial(*p4)) << "\n\n";

  const GraphPtr g = share(Graph(5, {{1, 2}, {1, 5}, {2, 5}, {1, 3}, {2, 4}}));
  const StablePathTree t = build_spt(g, 1);
  std::cout << "stable-path tree at 1:\n" << t.render() << "\n";

  for (const char* text : {"1", "2 1", "5 2 1", "3 4 2 5 1"}) {
    const TraceWord a = parse_word(text, g);
    const TraceWord b = phi_G(a, t);
    std::cout << "phi(" << a.to_string() << ") = " << b.to_string() << "  back: " << psi_G(b, t).to_string() << "\n";
  }
  std::cout << "\n";

  std::cout << check_godsil(g, 1).to_json().dump() << "\n";
  std::cout << check_bipartite(*p4, 2, 3, BipartiteForm::quotient).to_json().dump() << "\n";
}
