// Prints HF tables of Omega^m for a double point and two simple points in P^2.

#include "kahler/kaehler.hpp"
#include "kahler/report.hpp"

#include <iostream>

int main()
{
    using namespace kahler;
    FatPointScheme w = FatPointScheme::from_coords(2, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}}, {2, 1, 1});
    OmegaEngine eng(w);
    std::vector<NamedTable> tables;
    for (int m = 0; m <= w.n() + 1; ++m) tables.push_back({table_name(m, false), m, false, eng.hf(m).table});
    std::cout << render_text("2P1 + P2 + P3", w, tables);
}
