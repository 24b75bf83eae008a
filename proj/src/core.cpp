#include "qds/core.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace qds {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    // Pascal triangle, cached; n stays below ~80 in this code base.
    static std::vector<std::vector<double>> table{{1.0}};
    while ((int)table.size() <= n) {
        const auto& prev = table.back();
        std::vector<double> row(prev.size() + 1, 1.0);
        for (size_t j = 1; j + 1 < row.size(); ++j) row[j] = prev[j - 1] + prev[j];
        table.push_back(std::move(row));
    }
    return table[n][k];
}

std::string fmt_double(double x, int digits) {
    if (x == 0.0) x = 0.0; // flush -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits, x);
    return buf;
}

std::string fmt_cplx(const Cplx& z, int digits) {
    return fmt_double(z.real(), digits) + (z.imag() < 0 ? "" : "+") + fmt_double(z.imag(), digits) + "i";
}

} // namespace qds
