// Development scratch: prints J_nu(x) pairs for external validation.
#include "conewave/special.hpp"
#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    if (argc == 4 && std::string(argv[1]) == "zero") {
        double nu = std::atof(argv[2]);
        int m = std::atoi(argv[3]);
        auto z = conewave::bessel_zeros(nu, m);
        for (double v : z) std::printf("%.16e\n", v);
        return 0;
    }
    double nu = std::atof(argv[1]);
    double x = std::atof(argv[2]);
    double j, jp;
    conewave::bessel_j_deriv(nu, x, j, jp);
    std::printf("%.16e %.16e %.16e\n", j, jp, x >= 2 ? conewave::bessel_y(nu, x) : 0.0);
    return 0;
}
