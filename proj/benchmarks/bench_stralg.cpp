// Microbenchmarks for the hot paths: parsing, hammock stepping, band
// enumeration, condensation walks, and the full order-type computation.

#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "stralg/bands.hpp"
#include "stralg/condensation.hpp"
#include "stralg/hammock.hpp"
#include "stralg/linexpr.hpp"
#include "stralg/ordertype.hpp"
#include "stralg/str.hpp"

using namespace stralg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const AlgebraSpec& gamma0() {
    static std::unique_ptr<AlgebraSpec> spec = [] {
        auto res = parse_algebra(slurp(std::string(STRALG_FIXTURE_DIR) +
                                       "/gamma0.alg"));
        if (!res.ok()) throw std::runtime_error("gamma0 failed to parse");
        auto s = std::make_unique<AlgebraSpec>(std::move(*res.spec));
        if (!s->signs_set) solve_signs(*s);
        return s;
    }();
    return *spec;
}

Str lit(const char* text) {
    auto s = parse_str(gamma0(), text);
    if (!s) throw std::runtime_error("bad literal");
    return *s;
}

}  // namespace

static void BM_ParseAlgebra(benchmark::State& state) {
    std::string text = slurp(std::string(STRALG_FIXTURE_DIR) + "/gamma0.alg");
    for (auto _ : state) {
        auto res = parse_algebra(text);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_ParseAlgebra);

static void BM_SuccWalk(benchmark::State& state) {
    HammockKey key{lit("a0"), 1};
    for (auto _ : state) {
        Str x = key.base;
        for (int i = 0; i < 64; ++i) {
            auto n = succ_l(key, x);
            if (!n) break;
            x = *n;
        }
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_SuccWalk);

static void BM_BandSystemBuild(benchmark::State& state) {
    for (auto _ : state) {
        BandSystem bs(gamma0());
        benchmark::DoNotOptimize(bs.primes.size());
    }
}
BENCHMARK(BM_BandSystemBuild);

static void BM_OstLimit(benchmark::State& state) {
    BandSystem bs(gamma0());
    auto sub = bs.census(lit("a0"), 1);
    HammockKey key{lit("a0"), 1};
    int cls = -1;
    for (size_t i = 0; i < sub.names.size(); ++i)
        if (sub.names[i] == "B3") cls = sub.classes[i];
    for (auto _ : state) {
        BContext ctx(bs, key, cls);
        auto ap = ost_limit(ctx, lit("a2'.a1'.a0"), true);
        benchmark::DoNotOptimize(ap);
    }
}
BENCHMARK(BM_OstLimit);

static void BM_HammockOrderType(benchmark::State& state) {
    BandSystem bs(gamma0());
    HammockKey key{lit("a0"), 1};
    for (auto _ : state) {
        OrderTypeEngine engine(bs);  // fresh memo: measures the full run
        auto t = engine.hammock(key);
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_HammockOrderType);

static void BM_NormalizeExpr(benchmark::State& state) {
    auto e = parse_expr("((w+xi(z)+w*).w+w*).2+w+xi(z,z,w*+(w+w*).w)+w*");
    for (auto _ : state) {
        auto n = normalize_expr(e);
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_NormalizeExpr);

BENCHMARK_MAIN();
