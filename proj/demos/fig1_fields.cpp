// Writes the semicircle and SW master fields at t = 1/4 for beta = 1, 2, 4,
// plus the Siegel field at t = 1/4, as CSV files in the given directory.
#include <filesystem>
#include <iostream>
#include <string>

#include "gaussym/large_n/export.hpp"
#include "gaussym/large_n/master_field.hpp"
#include "gaussym/large_n/siegel_solver.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    using namespace gaussym::large_n;
    const fs::path dir = argc > 1 ? argv[1] : "fig1";
    fs::create_directories(dir);
    const double t = 0.25;
    for (int beta : {1, 2, 4}) {
        const double tt = beta * t / 2.0;
        const auto q = master_field_q(tt);
        const auto sw = master_field_sw(tt);
        export_master_field(q, 400, dir / ("Q_beta" + std::to_string(beta) + ".csv"), {{"beta", beta}});
        export_master_field(sw, 400, dir / ("SW_beta" + std::to_string(beta) + ".csv"), {{"beta", beta}});
        std::cout << "beta=" << beta << "  Q support [" << q.support().lo << ", " << q.support().hi << "]"
                  << "  SW support [" << sw.support().lo << ", " << sw.support().hi << "]\n";
    }
    const auto s = siegel_saddle_solve(t);
    export_master_field(s.field, 400, dir / "S_beta1.csv", {{"beta", 1}, {"residual", s.max_residual}});
    std::cout << "Siegel t=" << t << "  b=" << s.b << "  max residual " << s.max_residual << "\n";
    std::cout << "wrote " << dir << "\n";
}
