#include <benchmark/benchmark.h>

#include "uiml/behavior.hpp"
#include "uiml/pipeline.hpp"

namespace {

const uiml::Toolkit& kit() {
  static const uiml::Toolkit k = uiml::Toolkit::load(UIML_BENCH_VOCAB_DIR);
  return k;
}

std::string fixture(const char* name) { return uiml::read_text_file(std::string(UIML_BENCH_FIXTURE_DIR) + "/" + name); }

// N labelled text fields under one area.
std::string wide_form(int n) {
  std::string s = R"(<uiml><interface><structure><part name="W" class="G:TopContainer"><part name="A" class="G:Area">)";
  for (int i = 0; i < n; ++i) {
    auto id = std::to_string(i);
    s += "<part name=\"L" + id + "\" class=\"G:Label\"/><part name=\"F" + id + "\" class=\"G:Text\"/>";
  }
  s += "</part></part></structure><style>";
  for (int i = 0; i < n; ++i) s += "<property part-name=\"L" + std::to_string(i) + "\" name=\"g:text\">field " + std::to_string(i) + "</property>";
  return s + "</style></interface></uiml>";
}

void BM_Parse(benchmark::State& st) {
  auto text = wide_form(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(uiml::parse_document(text));
  st.SetBytesProcessed(static_cast<std::int64_t>(st.iterations() * text.size()));
}
BENCHMARK(BM_Parse)->Arg(10)->Arg(100)->Arg(1000);

void BM_Serialize(benchmark::State& st) {
  auto doc = uiml::parse_document(wide_form(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(uiml::serialize_document(doc));
}
BENCHMARK(BM_Serialize)->Arg(100)->Arg(1000);

void BM_TransformHtml(benchmark::State& st) {
  auto doc = uiml::parse_document(wide_form(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(uiml::transform(doc, kit().to_html));
}
BENCHMARK(BM_TransformHtml)->Arg(10)->Arg(100)->Arg(1000);

void BM_Render(benchmark::State& st) {
  auto doc = uiml::parse_document(wide_form(static_cast<int>(st.range(1))));
  auto target = st.range(0) ? uiml::Target::Mockdesk : uiml::Target::Html;
  for (auto _ : st) benchmark::DoNotOptimize(uiml::render_document(kit(), doc, {target, std::nullopt, std::nullopt}));
}
BENCHMARK(BM_Render)->Args({0, 100})->Args({1, 100})->Args({0, 1000})->Args({1, 1000});

void BM_DataCollectionRender(benchmark::State& st) {
  auto doc = uiml::parse_document(fixture("data_collection.uiml"));
  for (auto _ : st) benchmark::DoNotOptimize(uiml::render_document(kit(), doc, {uiml::Target::Html, std::nullopt, std::nullopt}));
}
BENCHMARK(BM_DataCollectionRender);

void BM_DispatchCascade(benchmark::State& st) {
  auto doc = uiml::parse_document(fixture("cascade.uiml"));
  auto rt = uiml::instantiate_runtime(doc, uiml::empty_style(doc.interfaces[0], std::nullopt, "g:"));
  for (auto _ : st) benchmark::DoNotOptimize(uiml::dispatch(rt, doc, {"Start", "g:click", {}}));
}
BENCHMARK(BM_DispatchCascade);

}  // namespace

BENCHMARK_MAIN();
