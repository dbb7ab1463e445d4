// Writes the bundled diagram corpus from the test fixtures.
#include <filesystem>
#include <fstream>
#include <iostream>

#include "../tests/fixtures.hpp"
#include "linkpoly/kv.hpp"

using namespace linkpoly;

namespace {

void write(const std::filesystem::path& p, const std::string& comment, const Diagram& d) {
  require_valid(d);
  std::ofstream out(p);
  out << "# " << comment << "\n" << format_diagram(d);
  std::cout << p.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data/corpus";
  std::filesystem::create_directories(dir / "graphs");
  write(dir / "unknot.txt", "unknot, no crossings", fixtures::unknot());
  write(dir / "unknot_curl.txt", "unknot with one positive curl (braid closure of s1 on 2 strands)",
        fixtures::unknot_curl());
  write(dir / "unlink2.txt", "two-component unlink", fixtures::unlink2());
  write(dir / "hopf_pos.txt", "positive Hopf link (s1 s1)", fixtures::hopf_pos());
  write(dir / "hopf_neg.txt", "negative Hopf link (s1^-1 s1^-1)", fixtures::hopf_neg());
  write(dir / "trefoil.txt", "right-handed trefoil (s1^3)", fixtures::trefoil());
  write(dir / "trefoil_mirror.txt", "left-handed trefoil (s1^-3)", fixtures::trefoil_mirror());
  write(dir / "figure8.txt", "figure-eight knot (s1 s2^-1 s1 s2^-1)", fixtures::figure8());
  write(dir / "torus26.txt", "T(2,6) torus link, 6 crossings (s1^6)", fixtures::torus26());
  write(dir / "borromean.txt", "Borromean rings, 6 crossings ((s1 s2^-1)^3)", fixtures::borromean());
  int k = 0;
  for (const auto& t : expand_d(fixtures::hopf_pos())) {
    Diagram g = from_compact(t.graph);
    g.dir.clear();
    std::string what = "Hopf-derived 4-valent graph " + std::to_string(++k) + " (per crossing: ";
    for (auto c : t.choice) what += c == 0 ? 'V' : c == 1 ? 'A' : 'B';
    write(dir / "graphs" / ("hopf_graph_" + std::to_string(k) + ".txt"), what + ")", g);
  }
  return 0;
}
