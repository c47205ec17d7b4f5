#include "netspread/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace netspread {

double SplitMix64::exponential() { return -std::log(uniform()); }

namespace {

struct HazardWalker {
    const GeneralForm& net;
    std::vector<double> breakpoints; // global schedule breakpoints
    std::vector<char> adopted;
    std::vector<std::vector<const RateSchedule*>> active_in; // live incoming edges
    int n_adopted = 0;

    explicit HazardWalker(const GeneralForm& n) : net(n), adopted(n.M, 0), active_in(n.M) {
        std::vector<const RateSchedule*> all;
        for (const auto& s : net.p) all.push_back(&s);
        for (const auto& e : net.edges) all.push_back(&e.rate);
        breakpoints = merged_breakpoints(all);
    }

    void adopt(int j) {
        adopted[j] = 1;
        ++n_adopted;
        for (const Edge& e : net.edges)
            if (e.from == j && !adopted[e.to]) active_in[e.to].push_back(&e.rate);
    }

    double lambda(int j, double t) const {
        double v = net.p[j].eval(t);
        for (const RateSchedule* s : active_in[j]) v += s->eval(t);
        return v;
    }

    // Total hazard as an affine function on the current smooth piece.
    RateSchedule::Affine total_affine(double t) const {
        double value = 0.0, slope = 0.0;
        for (int j = 0; j < net.M; ++j) {
            if (adopted[j]) continue;
            auto a = net.p[j].affine_at(t);
            value += a.value;
            slope += a.slope;
            for (const RateSchedule* s : active_in[j]) {
                auto e = s->affine_at(t);
                value += e.value;
                slope += e.slope;
            }
        }
        return {value, slope};
    }
};

// Solve A*dt + B/2*dt^2 = target for the smallest dt >= 0.
double invert_segment(double A, double B, double target) {
    double disc = A * A + 2.0 * B * target;
    double root = std::sqrt(std::max(disc, 0.0));
    // Stable for B of either sign and B -> 0.
    return 2.0 * target / (A + root);
}

} // namespace

EventLog simulate_once(const GeneralForm& net, double horizon, SplitMix64& rng) {
    if (horizon <= 0.0) throw std::invalid_argument("simulate_once: horizon > 0 required");
    EventLog log;
    HazardWalker w(net);
    for (int j = 0; j < net.M; ++j)
        if (rng.uniform() <= net.I0[j]) {
            w.adopt(j);
            log.seeds.push_back(j);
        }

    double t = 0.0;
    while (w.n_adopted < net.M) {
        double budget = rng.exponential();
        double cur = t;
        double tstar = -1.0;
        while (cur < horizon) {
            double seg_end = horizon;
            for (double b : w.breakpoints)
                if (b > cur) { seg_end = std::min(seg_end, b); break; }
            auto [A, B] = w.total_affine(cur);
            double dt_seg = seg_end - cur;
            double seg_integral = A * dt_seg + 0.5 * B * dt_seg * dt_seg;
            if (seg_integral >= budget && seg_integral > 0.0) {
                tstar = cur + invert_segment(A, B, budget);
                break;
            }
            budget -= seg_integral;
            cur = seg_end;
        }
        if (tstar < 0.0) break; // survived to the horizon

        // Node selection with rates at the event time (right limit).
        double total = 0.0;
        for (int j = 0; j < net.M; ++j)
            if (!w.adopted[j]) total += w.lambda(j, tstar);
        double u = rng.uniform() * total;
        int chosen = -1;
        for (int j = 0; j < net.M; ++j) {
            if (w.adopted[j]) continue;
            u -= w.lambda(j, tstar);
            if (u <= 0.0) { chosen = j; break; }
        }
        if (chosen < 0) // guard against roundoff in the final subtraction
            for (int j = net.M - 1; j >= 0; --j)
                if (!w.adopted[j]) { chosen = j; break; }

        w.adopt(chosen);
        log.events.emplace_back(tstar, chosen);
        t = tstar;
    }
    return log;
}

EnsembleResult estimate_f(const GeneralForm& net, double horizon,
                          const std::vector<double>& grid, long replicates,
                          uint64_t seed, int threads) {
    if (replicates < 1) throw std::invalid_argument("estimate_f: replicates >= 1 required");
    if (grid.empty()) throw std::invalid_argument("estimate_f: empty grid");

    if (threads <= 0) {
        if (const char* env = std::getenv("NETSPREAD_THREADS"))
            threads = std::atoi(env);
        if (threads <= 0)
            threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) threads = 1;
    }

    const size_t G = grid.size();
    // Fixed-size blocks: per-block sums are sequential and blocks are
    // combined in index order, so the result is thread-count independent.
    const long block = 512;
    const long nblocks = (replicates + block - 1) / block;
    std::vector<std::vector<double>> block_sum(nblocks), block_sumsq(nblocks);

    std::atomic<long> next_block{0};
    auto worker = [&]() {
        for (;;) {
            long b = next_block.fetch_add(1);
            if (b >= nblocks) return;
            long r0 = b * block;
            long r1 = std::min(replicates, r0 + block);
            std::vector<double> sum(G, 0.0), sumsq(G, 0.0);
            std::vector<double> f(G);
            for (long r = r0; r < r1; ++r) {
                SplitMix64 rng = SplitMix64::substream(seed, static_cast<uint64_t>(r));
                EventLog log = simulate_once(net, horizon, rng);
                size_t gi = 0;
                long count = static_cast<long>(log.seeds.size());
                for (const auto& [te, node] : log.events) {
                    while (gi < G && grid[gi] < te)
                        f[gi++] = static_cast<double>(count) / net.M;
                    ++count;
                }
                double last = static_cast<double>(count) / net.M;
                while (gi < G) f[gi++] = last;
                for (size_t i = 0; i < G; ++i) {
                    sum[i] += f[i];
                    sumsq[i] += f[i] * f[i];
                }
            }
            block_sum[b] = std::move(sum);
            block_sumsq[b] = std::move(sumsq);
        }
    };

    int nthreads = static_cast<int>(std::min<long>(threads, nblocks));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::vector<double> sum(G, 0.0), sumsq(G, 0.0);
    for (long b = 0; b < nblocks; ++b)
        for (size_t i = 0; i < G; ++i) {
            sum[i] += block_sum[b][i];
            sumsq[i] += block_sumsq[b][i];
        }

    EnsembleResult out;
    out.grid = grid;
    out.replicates = replicates;
    out.seed = seed;
    out.mean_f.resize(G);
    out.std_err.resize(G);
    for (size_t i = 0; i < G; ++i) {
        double mean = sum[i] / replicates;
        out.mean_f[i] = mean;
        if (replicates > 1) {
            double var = (sumsq[i] - replicates * mean * mean) / (replicates - 1);
            out.std_err[i] = std::sqrt(std::max(var, 0.0) / replicates);
        } else {
            out.std_err[i] = 0.0;
        }
    }
    return out;
}

} // namespace netspread
