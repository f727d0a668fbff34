#include "mirrorglue/dgcat.hpp"
#include "mirrorglue/mf.hpp"
#include "mirrorglue/tropical.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mg;

static void BM_SeriesInverse(benchmark::State& state)
{
    // 1 - T^{1/3} + T^{5/2} inverted to growing order
    Series s = Series(1) - Series::T(Q(1) / 3) + Series::T(Q(5) / 2);
    Q order(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(s.inverse(ExtQ::of(order)));
}
BENCHMARK(BM_SeriesInverse)->Arg(4)->Arg(8)->Arg(16);

static void BM_PolyProduct(benchmark::State& state)
{
    std::vector<std::string> v{"x", "y", "z"};
    LaurentPoly p = LaurentPoly::parse(v, "x + T^{1/2}*y + z^{-1} + 1");
    LaurentPoly q = p.pow(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(q * p);
}
BENCHMARK(BM_PolyProduct)->Arg(2)->Arg(4)->Arg(6);

static void BM_StripMF(benchmark::State& state)
{
    Model m = mf_s1_model(static_cast<int>(state.range(0)));
    AInfInstance in(m, {{"A", Q(3) / 2}});
    for (auto _ : state) {
        auto mf = transform_object(in, "L", "S1", "b");
        benchmark::DoNotOptimize(check_mf(mf).ok);
    }
}
BENCHMARK(BM_StripMF)->DenseRange(0, 3);

static void BM_Covering(benchmark::State& state)
{
    Curve c = load_shipped_curve(state.range(0) ? "toric_cy_eg" : "kp2");
    for (auto _ : state) benchmark::DoNotOptimize(covering_collection(c).certificate.ok());
}
BENCHMARK(BM_Covering)->Arg(0)->Arg(1);

static void BM_CoordinateChange(benchmark::State& state)
{
    Model m = load_shipped_model("two_pants");
    std::mt19937_64 g(1);
    AInfInstance inst(m, sample_assignment(m, g));
    Vec b0 = inst.deformation("b0"), b1 = inst.deformation("b1"), alpha = inst.named_element("alpha");
    for (auto _ : state) benchmark::DoNotOptimize(solve_isomorphism(inst, b0, b1, alpha, {"x'", "y'", "z'"}));
}
BENCHMARK(BM_CoordinateChange);

static void BM_HfpAxioms(benchmark::State& state)
{
    std::mt19937_64 g(7);
    auto h = random_hfp(g, 2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_hfp_axioms(*h.hfp, g, 1).ok());
}
BENCHMARK(BM_HfpAxioms)->Arg(1)->Arg(2);

static void BM_Composition(benchmark::State& state)
{
    Model m = load_morphism_model();
    AInfInstance p(m, {});
    for (auto _ : state) benchmark::DoNotOptimize(composition_check(p, 3, -2).cmp.ok);
}
BENCHMARK(BM_Composition);

BENCHMARK_MAIN();
