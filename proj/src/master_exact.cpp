#include "netspread/master_exact.hpp"

#include <bit>
#include <memory>
#include <stdexcept>
#include <string>

namespace netspread {

namespace {

void check_cap(int M, int cap) {
    if (M > kExactHardCap)
        throw std::invalid_argument("master-exact: M=" + std::to_string(M) +
                                    " exceeds the hard cap of " + std::to_string(kExactHardCap));
    if (M > cap)
        throw std::invalid_argument("master-exact: M=" + std::to_string(M) +
                                    " exceeds the cap of " + std::to_string(cap) +
                                    " (raise the cap to override)");
}

std::vector<const RateSchedule*> all_schedules(const GeneralForm& net) {
    std::vector<const RateSchedule*> out;
    for (const auto& s : net.p) out.push_back(&s);
    for (const auto& e : net.edges) out.push_back(&e.rate);
    return out;
}

} // namespace

std::function<void(double, std::span<const double>, std::span<double>)>
build_exact_rhs(const GeneralForm& net, int cap) {
    check_cap(net.M, cap);
    const int M = net.M;
    const uint32_t nstates = (1u << M) - 1;

    struct Buffers {
        std::vector<double> pv;        // p_j(t)
        std::vector<double> qmat;      // q_{k,m}(t), dense M x M
        std::vector<double> psum;      // p_Omega over masks (index mask)
        std::vector<double> qsum;      // q_{k,Omega}: qsum[k * 2^M + mask]
    };
    auto buf = std::make_shared<Buffers>();
    buf->pv.resize(M);
    buf->qmat.assign(static_cast<size_t>(M) * M, 0.0);
    buf->psum.resize(nstates + 1);
    buf->qsum.resize(static_cast<size_t>(M) << M);

    return [net, M, nstates, buf](double t, std::span<const double> y, std::span<double> dydt) {
        auto& b = *buf;
        for (int j = 0; j < M; ++j) b.pv[j] = net.p[j].eval(t);
        std::fill(b.qmat.begin(), b.qmat.end(), 0.0);
        for (const Edge& e : net.edges)
            b.qmat[static_cast<size_t>(e.from) * M + e.to] += e.rate.eval(t);

        // Subset sums over bitmasks via the low-bit recursion.
        b.psum[0] = 0.0;
        for (uint32_t mask = 1; mask <= nstates; ++mask) {
            uint32_t low = mask & (~mask + 1);
            b.psum[mask] = b.psum[mask ^ low] + b.pv[std::countr_zero(low)];
        }
        for (int k = 0; k < M; ++k) {
            double* qs = b.qsum.data() + (static_cast<size_t>(k) << M);
            qs[0] = 0.0;
            for (uint32_t mask = 1; mask <= nstates; ++mask) {
                uint32_t low = mask & (~mask + 1);
                qs[mask] = qs[mask ^ low] + b.qmat[static_cast<size_t>(k) * M + std::countr_zero(low)];
            }
        }

        for (uint32_t mask = 1; mask <= nstates; ++mask) {
            double s = y[mask - 1];
            double out_rate = b.psum[mask];
            double inflow = 0.0;
            uint32_t comp = nstates & ~mask;
            while (comp) {
                uint32_t low = comp & (~comp + 1);
                int k = std::countr_zero(low);
                double qko = b.qsum[(static_cast<size_t>(k) << M) | mask];
                if (qko != 0.0) {
                    out_rate += qko;
                    inflow += qko * y[(mask | low) - 1];
                }
                comp ^= low;
            }
            dydt[mask - 1] = -out_rate * s + inflow;
        }
    };
}

std::vector<double> exact_initial_state(const GeneralForm& net) {
    const int M = net.M;
    const uint32_t nstates = (1u << M) - 1;
    std::vector<double> y0(nstates);
    // [S_Omega](0) = prod_{m in Omega} (1 - I0_m), built by the same recursion.
    std::vector<double> full(nstates + 1);
    full[0] = 1.0;
    for (uint32_t mask = 1; mask <= nstates; ++mask) {
        uint32_t low = mask & (~mask + 1);
        full[mask] = full[mask ^ low] * (1.0 - net.I0[std::countr_zero(low)]);
    }
    for (uint32_t mask = 1; mask <= nstates; ++mask) y0[mask - 1] = full[mask];
    return y0;
}

SubsetSolution solve_exact(const GeneralForm& net, const std::vector<double>& grid,
                           Tolerances tol, int cap) {
    check_cap(net.M, cap);
    if (grid.empty()) throw std::invalid_argument("solve_exact: empty grid");

    IvpProblem prob;
    prob.dimension = static_cast<int>((1u << net.M) - 1);
    prob.rhs = build_exact_rhs(net, cap);
    prob.y0 = exact_initial_state(net);
    prob.t_end = grid.back();
    prob.breakpoints = merged_breakpoints(all_schedules(net));
    prob.grid = grid;

    OdeSolution ode = integrate(prob, tol);

    SubsetSolution out;
    out.M = net.M;
    out.grid = ode.times;
    out.survival = std::move(ode.states);
    out.traj.t = out.grid;
    out.traj.f.resize(out.grid.size());
    out.traj.component_names.reserve(net.M);
    out.traj.components.assign(net.M, std::vector<double>(out.grid.size()));
    for (int j = 0; j < net.M; ++j)
        out.traj.component_names.push_back("f_" + std::to_string(j + 1));
    for (size_t i = 0; i < out.grid.size(); ++i) {
        double sum = 0.0;
        for (int j = 0; j < net.M; ++j) {
            double fj = 1.0 - out.survival[i][(1u << j) - 1];
            out.traj.components[j][i] = fj;
            sum += fj;
        }
        out.traj.f[i] = sum / net.M;
    }
    return out;
}

} // namespace netspread
