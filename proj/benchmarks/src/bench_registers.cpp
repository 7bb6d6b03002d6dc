#include "catgraph/registers.hpp"
#include "catgraph/rng.hpp"
#include "catgraph/tape.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace catgraph;

void BM_AddRegMod(benchmark::State& state)
{
    const auto width = static_cast<unsigned>(state.range(0));
    CatalyticTape tape = CatalyticTape::make(64 * width, TapeProfile::Random, 1);
    RegisterFile regs(tape, 0, 64, width, (std::uint64_t{1} << (width / 2)) + 3);
    Rng rng(2);
    for (;;) {
        const WideValue beta = random_wide(rng, width);
        regs.shift_all(beta);
        if (regs.all_valid())
            break;
        regs.unshift_all(beta);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        regs.add_reg((i + 1) % 64, i % 64, +1);
        i = (i + 7) % 64;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AddRegMod)->Arg(16)->Arg(40)->Arg(63);

void BM_ShiftAllWide(benchmark::State& state)
{
    const auto width = static_cast<unsigned>(state.range(0));
    CatalyticTape tape = CatalyticTape::make(256 * width, TapeProfile::Random, 3);
    RegisterFile regs = RegisterFile::full_width(tape, 0, 256, width);
    Rng rng(4);
    const WideValue beta = random_wide(rng, width);
    for (auto _ : state) {
        regs.shift_all(beta);
        regs.unshift_all(beta);
    }
    state.SetItemsProcessed(state.iterations() * 512);
}
BENCHMARK(BM_ShiftAllWide)->Arg(17)->Arg(64)->Arg(130);

void BM_TapeDigest(benchmark::State& state)
{
    const CatalyticTape tape = CatalyticTape::make(static_cast<std::size_t>(state.range(0)), TapeProfile::Random, 5);
    for (auto _ : state)
        benchmark::DoNotOptimize(tape.digest());
    state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_TapeDigest)->Range(1 << 10, 1 << 20);

} // namespace
