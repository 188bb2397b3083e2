#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "rislink/errors.hpp"
#include "rislink/foxh_multi.hpp"
#include "rislink/metrics.hpp"

using namespace rislink;

namespace {

RisLink make_link(std::vector<HopPair> hops, double snr)
{
    RisLink link;
    link.n_elements = static_cast<int>(hops.size());
    link.hops = std::move(hops);
    link.avg_snr = snr;
    return link;
}

} // namespace

TEST_CASE("single-block evaluation agrees with the collapsed form")
{
    RisLink link = make_link({{Nakagami{2.0}, Nakagami{1.5}}}, 4.0);
    MultiFoxHParams form = detail::outage_form(link);
    FoxHParams folded = collapse_n1(form);
    for (double x : {0.2, 0.5, 1.0, 2.0}) {
        MultiEvalResult multi = eval_multi(form, {x});
        EvalResult single = eval(folded, x);
        CHECK(multi.value ==
              doctest::Approx(single.value).epsilon(1e-6));
    }
}

TEST_CASE("convolution path equals the literal nested sum")
{
    RisLink link2 = make_link(
        {{Nakagami{1.0}, Nakagami{2.0}}, {Nakagami{1.5}, Nakagami{2.5}}}, 5.0);
    RisLink link3 = make_link({{Nakagami{1.0}, Nakagami{1.5}},
                               {Nakagami{2.0}, Nakagami{2.5}},
                               {Nakagami{1.5}, Nakagami{1.0}}},
                              5.0);
    for (const RisLink* link : {&link2, &link3}) {
        MultiFoxHParams form = detail::outage_form(*link);
        double rt = std::sqrt(normalized_threshold(*link, {1.0}));
        std::vector<double> args(link->n_elements, rt);
        detail::LatticePlan plan = detail::plan_lattice(form, args, 40.0);
        double conv = detail::eval_on_lattice(form, args, plan);
        double nested = detail::eval_on_lattice_nested(form, args, plan);
        CHECK(conv == doctest::Approx(nested).epsilon(1e-11));
    }
}

TEST_CASE("block order does not matter")
{
    RisLink link = make_link(
        {{Nakagami{1.0}, Nakagami{2.0}}, {AlphaMu{3.0, 1.5}, Nakagami{1.5}}}, 3.0);
    MultiFoxHParams form = detail::outage_form(link);
    double rt = std::sqrt(normalized_threshold(link, {1.0}));
    MultiEvalResult a = eval_multi(form, {rt, rt});

    MultiFoxHParams swapped = form;
    std::swap(swapped.blocks[0], swapped.blocks[1]);
    std::swap(swapped.arg_scales[0], swapped.arg_scales[1]);
    MultiEvalResult b = eval_multi(swapped, {rt, rt});
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
}

TEST_CASE("evaluation increases with the argument")
{
    RisLink link = make_link(
        {{Nakagami{1.0}, Nakagami{1.0}}, {Nakagami{2.0}, Nakagami{2.0}}}, 1.0);
    MultiFoxHParams form = detail::outage_form(link);
    double prev = 0.0;
    for (double x : {0.05, 0.15, 0.4, 0.9}) {
        MultiEvalResult r = eval_multi(form, {x, x});
        CHECK(r.value > prev);
        prev = r.value;
    }
}

TEST_CASE("error estimate covers the collapsed reference at one dimension")
{
    RisLink link = make_link({{Rayleigh{}, Rayleigh{}}}, 2.0);
    MultiFoxHParams form = detail::outage_form(link);
    FoxHParams folded = collapse_n1(form);
    MultiEvalResult multi = eval_multi(form, {0.7});
    EvalResult single = eval(folded, 0.7);
    CHECK(std::abs(multi.value - single.value) <
          10.0 * (multi.err + single.err) + 1e-12);
}

TEST_CASE("dimension routing and limits")
{
    auto iid = [&](int n) {
        std::vector<HopPair> hops(n, HopPair{Rayleigh{}, Rayleigh{}});
        return make_link(std::move(hops), 8.0);
    };

    MultiFoxHParams f2 = detail::outage_form(iid(2));
    CHECK(eval_multi(f2, {0.3, 0.3}).method == MultiMethod::nested_quadrature);

    MultiFoxHParams f4 = detail::outage_form(iid(4));
    std::vector<double> a4(4, 0.3);
    CHECK(eval_multi(f4, a4).method == MultiMethod::randomized_contour);

    MultiFoxHParams f9 = detail::outage_form(iid(9));
    std::vector<double> a9(9, 0.3);
    CHECK_THROWS_AS(eval_multi(f9, a9), DimensionLimit);
}

TEST_CASE("randomized evaluation is reproducible by seed")
{
    std::vector<HopPair> hops(4, HopPair{Nakagami{1.5}, Nakagami{1.0}});
    RisLink link = make_link(std::move(hops), 6.0);
    MultiFoxHParams form = detail::outage_form(link);
    std::vector<double> args(4, 0.25);
    MultiEvalResult a = eval_multi(form, args, {}, 123);
    MultiEvalResult b = eval_multi(form, args, {}, 123);
    MultiEvalResult c = eval_multi(form, args, {}, 456);
    CHECK(a.value == b.value);
    CHECK(a.err == b.err);
    CHECK(std::abs(a.value - c.value) < 6.0 * (a.err + c.err));
}

TEST_CASE("collapse requires exactly one block")
{
    RisLink link = make_link(
        {{Rayleigh{}, Rayleigh{}}, {Rayleigh{}, Rayleigh{}}}, 1.0);
    CHECK_THROWS_AS(collapse_n1(detail::outage_form(link)), ArityError);
}

TEST_CASE("contradictory outer rows are rejected")
{
    RisLink link = make_link(
        {{Rayleigh{}, Rayleigh{}}, {Rayleigh{}, Rayleigh{}}}, 1.0);
    MultiFoxHParams form = detail::outage_form(link);
    // numerator rows demanding sum > 0.5 and sum < 0 at once
    form.outer_upper.push_back({1.0, {1.0, 1.0}});
    form.outer_n = 1;
    form.outer_lower.insert(form.outer_lower.begin(), {-0.5, {1.0, 1.0}});
    form.outer_m = 1;
    CHECK_THROWS_AS(eval_multi(form, {0.3, 0.3}), std::invalid_argument);
}

TEST_CASE("capacity-style coupling collapses to the single-variable form")
{
    RisLink link = make_link({{Nakagami{2.0}, Nakagami{2.0}}}, 10.0);
    MultiFoxHParams form = detail::capacity_form(link, {0});
    FoxHParams folded = collapse_n1(form);
    double x = 1.0 / std::sqrt(link.avg_snr);
    MultiEvalResult multi = eval_multi(form, {x});
    EvalResult single = eval(folded, x);
    CHECK(multi.value == doctest::Approx(single.value).epsilon(1e-6));
}
