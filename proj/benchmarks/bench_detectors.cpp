#include <benchmark/benchmark.h>

#include <string>

#include "hdq/canonical.hpp"
#include "hdq/detectors.hpp"

namespace {

using namespace hdq;

Dataset synthetic_corpus(std::size_t elements, bool with_duplicates) {
    ValueConventions conv;
    Dataset d;
    d.id = "bench";
    d.elements.reserve(elements);
    for (std::size_t i = 0; i < elements; ++i) {
        DataElement e;
        e.id = "obj" + std::to_string(i);
        e.type_name = "culturalObject";
        std::size_t name_index = with_duplicates && i % 50 == 0 ? 0 : i;
        e.properties.push_back(
            {"name", analyze_value("Object number " + std::to_string(name_index),
                                   conv)});
        e.properties.push_back(
            {"width",
             analyze_value(std::to_string(10 + i % 180) + " cm", conv)});
        e.properties.push_back(
            {"dating", analyze_value(std::to_string(1500 + i % 400), conv)});
        if (i % 97 == 0) e.properties.push_back({"producer", analyze_value("", conv)});
        d.elements.push_back(std::move(e));
    }
    return d;
}

ModelDescriptor bench_descriptor() {
    return parse_descriptor(R"({
        "types": {"culturalObject": {"required": ["name"]}},
        "properties": {
            "name":   {"kind": "text"},
            "width":  {"kind": "number", "units": ["cm", "mm", "m"], "measurement": true},
            "dating": {"kind": "date"}
        }
    })");
}

void BM_run_all(benchmark::State& state) {
    Dataset d = synthetic_corpus(static_cast<std::size_t>(state.range(0)), false);
    ModelDescriptor m = bench_descriptor();
    DetectorConfig c;
    for (auto _ : state) benchmark::DoNotOptimize(run_all(d, m, c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_run_all)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_duplicate_join(benchmark::State& state) {
    Dataset d = synthetic_corpus(static_cast<std::size_t>(state.range(0)), true);
    ModelDescriptor m = bench_descriptor();
    DetectorConfig c;
    for (auto _ : state) benchmark::DoNotOptimize(detect_duplicates(d, m, c));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_duplicate_join)->Range(256, 16384)->Unit(benchmark::kMillisecond);

void BM_canonical_round_trip(benchmark::State& state) {
    Dataset d = synthetic_corpus(static_cast<std::size_t>(state.range(0)), false);
    std::string bytes = serialize_canonical(d);
    for (auto _ : state) benchmark::DoNotOptimize(parse_canonical(bytes));
    state.SetBytesProcessed(state.iterations() * bytes.size());
}
BENCHMARK(BM_canonical_round_trip)->Range(256, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
