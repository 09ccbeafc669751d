// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "mk3/corestrict.hpp"
#include "mk3/lattice.hpp"
#include "mk3/ramification.hpp"

using namespace mk3;

namespace {

const FiniteQuadraticModule& big_module() {
  static const DiscForm F = disc_form(ade_lattice(ADEConfig::parse("A3+8A1+4A2"), Sign::Negative));
  static const FiniteQuadraticModule A(F, 1u << 24);
  return A;
}

void BM_isotropic_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(isotropic_elements_serial(big_module()));
}
void BM_isotropic_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(isotropic_elements(big_module()));
}

// (Z/3)^3 in signature (3, 0): no witness, so the whole box is searched
const DiscForm& no_witness_form() {
  static const DiscForm F = [] {
    auto a2 = disc_form(ade_lattice(ADEConfig::parse("A2"), Sign::Negative));
    return direct_sum(direct_sum(a2, a2), a2);
  }();
  return F;
}

void BM_rank3_serial(benchmark::State& st) {
  Rank3Options opt{static_cast<int>(st.range(0)), std::chrono::milliseconds(600000)};
  for (auto _ : st) benchmark::DoNotOptimize(rank3_realizable_serial(no_witness_form(), 3, 0, opt));
}
void BM_rank3_parallel(benchmark::State& st) {
  Rank3Options opt{static_cast<int>(st.range(0)), std::chrono::milliseconds(600000)};
  for (auto _ : st) benchmark::DoNotOptimize(rank3_realizable(no_witness_form(), 3, 0, opt));
}

const KQuadLattice& k_lattice() {
  static const KQuadLattice L = [] {
    NumberField K = NumberField::define({-1, -3, 0, 1});
    const std::size_t n = 6;
    KQuadLattice out{K, {}, KMatrix(n, n, K.zero())};
    for (std::size_t i = 0; i < n; ++i) {
      out.labels.push_back("g" + std::to_string(i + 1));
      for (std::size_t j = i; j < n; ++j)
        out.gram(i, j) = out.gram(j, i) =
            K.element({Rat(static_cast<long>(i + 2 * j) - 4), Rat(static_cast<long>(3 * i) - static_cast<long>(j)),
                       Rat(static_cast<long>((i * j) % 5))});
    }
    return out;
  }();
  return L;
}

void BM_corestrict_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(corestrict_serial(k_lattice()));
}
void BM_corestrict_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(corestrict(k_lattice()));
}

struct SymbolInput {
  FieldElement a, b;
  std::vector<Place> places;
};
const SymbolInput& symbol_input() {
  static const SymbolInput in = [] {
    NumberField K = NumberField::define({-1, -3, 0, 1});
    FieldElement a = K.element({Rat(3 * 5 * 7 * 11 * 13), Rat(17), Rat(0)});
    FieldElement b = K.element({Rat(19 * 23 * 29 * 31), Rat(0), Rat(37)});
    return SymbolInput{a, b, relevant_places(a, b)};
  }();
  return in;
}

void BM_symbols_serial(benchmark::State& st) {
  const auto& in = symbol_input();
  for (auto _ : st) benchmark::DoNotOptimize(place_symbols_serial(in.a, in.b, in.places));
}
void BM_symbols_parallel(benchmark::State& st) {
  const auto& in = symbol_input();
  for (auto _ : st) benchmark::DoNotOptimize(place_symbols(in.a, in.b, in.places));
}

}  // namespace

BENCHMARK(BM_isotropic_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_isotropic_parallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_rank3_serial)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rank3_parallel)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_corestrict_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_corestrict_parallel)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_symbols_serial)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_symbols_parallel)->Unit(benchmark::kMicrosecond)->UseRealTime();

BENCHMARK_MAIN();
