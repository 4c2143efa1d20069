// Compares the closed forms for 2X, X eight points on a conic, with the engine.

#include "kahler/formulas.hpp"
#include "kahler/io.hpp"

#include <iostream>

int main()
{
    using namespace kahler;
    HomogPoly conic = parse_poly("X0*X2 - X1^2", 2);
    std::vector<std::vector<Rational>> pts;
    for (int t = -3; t <= 4; ++t) pts.push_back({1, t, t * t});
    ConicSchemeSpec spec(conic, FatPointScheme::from_coords(2, pts, std::vector<int>(8, 2)));
    for (int m = 1; m <= 3; ++m) {
        HFTable formula = conic_hf(spec, m);
        HFTable engine = omega_hf(spec.scheme(), m).table;
        std::cout << "Omega^" << m << ": " << join(engine.values) << (same_values(formula, engine) ? "  (formula agrees)" : "  (formula differs)")
                  << "\n";
    }
}
