// Timing harness: convolution evaluator vs the literal nested sum on the
// same lattice plan, and threaded vs single-thread Monte Carlo.  The nested
// sum and the single-thread run double as correctness anchors, so the max
// deviation is printed next to the speedup.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rislink/fading.hpp"
#include "rislink/foxh_multi.hpp"
#include "rislink/mcsim.hpp"
#include "rislink/metrics.hpp"

using namespace rislink;

namespace {

double now_s()
{
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

RisLink nakagami_link(int n)
{
    RisLink link;
    link.n_elements = n;
    for (int i = 0; i < n; ++i)
        link.hops.push_back({Nakagami{1.0 + 0.5 * i}, Nakagami{1.5 + 0.5 * i}});
    link.avg_snr = 10.0;
    return link;
}

void bench_lattice(int n)
{
    RisLink link = nakagami_link(n);
    MultiFoxHParams form = detail::outage_form(link);
    double rt = std::sqrt(normalized_threshold(link, {1.0}));
    std::vector<double> args(n, rt);

    detail::LatticePlan plan = detail::plan_lattice(form, args, 46.0);
    long total = 1;
    for (int k : plan.half_n)
        total *= 2L * k + 1;

    double t0 = now_s();
    double conv = detail::eval_on_lattice(form, args, plan);
    double t1 = now_s();
    double nested = detail::eval_on_lattice_nested(form, args, plan);
    double t2 = now_s();

    double rel = std::abs(conv - nested) / std::max(std::abs(nested), 1e-300);
    std::printf("lattice N=%d  %ld points  conv %.4fs  nested %.4fs  "
                "speedup %.1fx  rel dev %.2e\n",
                n, total, t1 - t0, t2 - t1, (t2 - t1) / (t1 - t0), rel);
}

void bench_mc()
{
    RisLink link = nakagami_link(2);
    McConfig cfg;
    cfg.trials = 4000000;
    OutageQuery q{1.0};

#ifdef _OPENMP
    int max_threads = omp_get_max_threads();
#else
    int max_threads = 1;
#endif

    double t0 = now_s();
    McEstimate par = mc_outage(link, q, cfg);
    double t1 = now_s();

#ifdef _OPENMP
    omp_set_num_threads(1);
#endif
    double t2 = now_s();
    McEstimate ser = mc_outage(link, q, cfg);
    double t3 = now_s();
#ifdef _OPENMP
    omp_set_num_threads(max_threads);
#endif

    std::printf("mc %d threads %.4fs  1 thread %.4fs  speedup %.1fx  "
                "|delta| %.2e (must be 0)\n",
                max_threads, t1 - t0, t3 - t2, (t3 - t2) / (t1 - t0),
                std::abs(par.mean - ser.mean));
}

} // namespace

int main()
{
    bench_lattice(2);
    bench_lattice(3);
    bench_mc();
    return 0;
}
