#include <cmath>

#include "kerr/errors.hpp"
#include "kerr/pde.hpp"

namespace kerr {

std::array<double, 5> stencil(int order, double h) {
    if (!(h > 0.0)) throw DomainError("stencil: spacing must be > 0");
    switch (order) {
        case 1: {
            const double c = 1.0 / (12.0 * h);
            return {c, -8.0 * c, 0.0, 8.0 * c, -c};
        }
        case 2: {
            const double c = 1.0 / (12.0 * h * h);
            return {-c, 16.0 * c, -30.0 * c, 16.0 * c, -c};
        }
        case 3: {
            const double c = 1.0 / (2.0 * h * h * h);
            return {-c, 2.0 * c, 0.0, -2.0 * c, c};
        }
        default:
            throw DomainError("stencil: order must be 1, 2 or 3");
    }
}

int BandedSystem::max_row_nonzeros() const {
    int m = 0;
    for (int r = 0; r < G.outerSize(); ++r) {
        int c = 0;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(G, r); it; ++it) {
            if (it.value() != 0.0) ++c;
        }
        m = std::max(m, c);
    }
    return m;
}

BandedSystem assemble_jacobian(const PdeOperator& op, const GridSpec& grid) {
    grid.validate();
    if (grid.nx < 5 || grid.np < 5) throw DomainError("assemble_jacobian: grid must be at least 5x5");
    const double hx = grid.dx(), hp = grid.dp();
    const auto dx1 = stencil(1, hx), dx2 = stencil(2, hx), dx3 = stencil(3, hx);
    const auto dp1 = stencil(1, hp), dp2 = stencil(2, hp), dp3 = stencil(3, hp);
    const std::array<double, 5> id{0.0, 0.0, 1.0, 0.0, 0.0};

    // Each term is a tensor product of an x row and a p row.
    struct Term {
        const Field* f;
        const std::array<double, 5>* sx;
        const std::array<double, 5>* sp;
    };
    const Term terms[] = {
        {&op.f_x, &dx1, &id},    {&op.f_p, &id, &dp1},    {&op.f_xx, &dx2, &id},  {&op.f_xp, &dx1, &dp1},
        {&op.f_pp, &id, &dp2},   {&op.f_xxx, &dx3, &id},  {&op.f_xxp, &dx2, &dp1}, {&op.f_xpp, &dx1, &dp2},
        {&op.f_ppp, &id, &dp3},  {&op.f_0, &id, &id},
    };

    const int n = static_cast<int>(grid.size());
    BandedSystem sys;
    sys.grid = grid;
    sys.G.resize(n, n);
    sys.G.reserve(Eigen::VectorXi::Constant(n, 25));
    double local[5][5];
    for (int k = 0; k < grid.np; ++k) {
        const double p = grid.p(k);
        for (int j = 0; j < grid.nx; ++j) {
            const double x = grid.x(j);
            for (auto& row : local) std::fill(std::begin(row), std::end(row), 0.0);
            for (const Term& t : terms) {
                if (!*t.f) continue;
                const double c = (*t.f)(x, p);
                if (!std::isfinite(c)) throw DomainError("assemble_jacobian: non-finite coefficient on grid");
                if (c == 0.0) continue;
                for (int b = 0; b < 5; ++b) {
                    const double sp = (*t.sp)[b];
                    if (sp == 0.0) continue;
                    for (int a = 0; a < 5; ++a) local[b][a] += c * sp * (*t.sx)[a];
                }
            }
            const int row = k * grid.nx + j;
            for (int b = 0; b < 5; ++b) {
                const int kk = k + b - 2;
                if (kk < 0 || kk >= grid.np) continue;
                for (int a = 0; a < 5; ++a) {
                    const int jj = j + a - 2;
                    if (jj < 0 || jj >= grid.nx || local[b][a] == 0.0) continue;
                    sys.G.insert(row, kk * grid.nx + jj) = local[b][a];
                }
            }
        }
    }
    sys.G.makeCompressed();
    return sys;
}

}  // namespace kerr
