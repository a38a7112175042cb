#include <benchmark/benchmark.h>

#include "iforge/fixtures.hpp"
#include "iforge/symexpr.hpp"
#include "iforge/verify.hpp"

using namespace iforge;

namespace {

struct Prepared {
  Instance in;
  Setting st;
  SigmaPair pair;
};

Prepared prepare(const char* name) {
  Instance in = build_instance(load_fixture(name).spec);
  Setting st = make_setting(in.anchor, in.family, in.partition);
  SigmaPair pair = in.sigma_pair();
  return {std::move(in), std::move(st), std::move(pair)};
}

void BM_ParseExpr(benchmark::State& state) {
  auto t = VarTable::create({{"x1"}, {"x2"}, {"x3"}, {"y1"}, {"y2"}, {"y3"}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_expr("(x1*y2 - x2*y1)^3 + 1/2*(y1^2 + y2^2 + y3^2) + 2*x3", t));
  }
}
BENCHMARK(BM_ParseExpr);

void BM_PolyPower(benchmark::State& state) {
  auto t = VarTable::create({{"x"}, {"y"}, {"z"}});
  Polynomial p = parse_expr("x + y + z + 1", t);
  for (auto _ : state) benchmark::DoNotOptimize(p.pow(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_PolyPower)->Arg(4)->Arg(8)->Arg(12);

void BM_Assemble(benchmark::State& state, const char* name) {
  Prepared p = prepare(name);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_pencil(p.st, p.pair));
}
BENCHMARK_CAPTURE(BM_Assemble, lagrange, "lagrange_top")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Assemble, toda, "toda_first")->Unit(benchmark::kMillisecond);

void BM_PhiLambda(benchmark::State& state) {
  Prepared p = prepare("lagrange_top");
  Pencil pencil = assemble_pencil(p.st, p.pair);
  for (auto _ : state) benchmark::DoNotOptimize(phi_lambda(p.st, pencil));
}
BENCHMARK(BM_PhiLambda)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state, const char* name) {
  Prepared p = prepare(name);
  Pencil pencil = assemble_pencil(p.st, p.pair);
  for (auto _ : state) benchmark::DoNotOptimize(certify(p.st, pencil));
}
BENCHMARK_CAPTURE(BM_Certify, lagrange, "lagrange_top")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Certify, toda, "toda_first")->Unit(benchmark::kMillisecond);

void BM_Ansatz(benchmark::State& state) {
  SpecFile spec = load_fixture("lagrange_top").spec;
  Instance in = build_instance(spec, false);
  Setting st = make_setting(in.anchor, in.family, in.partition);
  std::vector<Form> basis;
  for (const auto& n : spec.ansatz->basis) basis.push_back(in.one_forms.at(n));
  for (auto _ : state) benchmark::DoNotOptimize(solve_recursion_ansatz(st, *in.sigma0, basis));
}
BENCHMARK(BM_Ansatz)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
