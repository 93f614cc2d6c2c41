// Copyright 2026 The LesionSeek Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// lesionseek: corpus generation, attribute extraction, database build,
// retrieval, training-set export and evaluation.
//
// Exit codes: 0 success, 1 usage error, 2 data or format error, 3 internal
// error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "cli_support.h"
#include "lesionseek/aedb.h"
#include "lesionseek/attribute_oracle.h"
#include "lesionseek/embedding.h"
#include "lesionseek/errors.h"
#include "lesionseek/eval.h"
#include "lesionseek/manifest.h"
#include "lesionseek/parallel.h"
#include "lesionseek/retrieval.h"
#include "lesionseek/split.h"
#include "lesionseek/synth.h"
#include "lesionseek/train_export.h"
#include "lesionseek/vector_store.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace lesionseek::cli {
namespace {

std::optional<fs::path> OptionalPath(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw DataError("cannot create directory " + dir.string());
}

// ---------------------------------------------------------------- gen

struct GenFlags {
  std::size_t n = 1000;
  std::size_t patients = 50;
  std::uint64_t seed = 0;
  double train_fraction = 0.8;
  int side = 128;
  int threads = 0;
  std::string out;
};

int RunGen(const GenFlags& f) {
  ParamRanges ranges;
  ranges.image_side_px = f.side;
  const SyntheticCorpus corpus = DescribeCorpus(f.n, f.patients, ranges, f.seed);
  const DatasetSplit split = MakeSplit(corpus.entries, f.train_fraction, f.seed);
  const fs::path out(f.out);
  MakeDir(out);
  WriteCorpus(corpus, out, f.threads);
  WriteSplit(out / "split.json", split);
  WriteManifest(out / "train.jsonl", SelectEntries(corpus.entries, split.train_ids));
  WriteManifest(out / "test.jsonl", SelectEntries(corpus.entries, split.test_ids));
  WriteRunConfig(out, true,
                 {{"subcommand", "gen"},
                  {"n", f.n},
                  {"patients", f.patients},
                  {"seed", f.seed},
                  {"train_fraction", f.train_fraction},
                  {"side", f.side},
                  {"threads", f.threads},
                  {"out", f.out}});
  spdlog::info("wrote {} images ({} train, {} test) to {}", corpus.size(),
               split.train_ids.size(), split.test_ids.size(), out.string());
  return 0;
}

// ---------------------------------------------------------------- attrs

struct AttrsFlags {
  std::string manifest;
  std::string out;
  std::string manifest_out;
  int threads = 0;
};

int RunAttrs(const AttrsFlags& f) {
  Manifest m = ReadManifest(f.manifest);
  std::vector<AttributeVector> values(m.size());
  ParallelFor(m.size(), f.threads, [&](std::size_t i) {
    try {
      values[i] = ComputeAttributes(LoadLesionImage(m, i));
    } catch (const Error& e) {
      throw DataError("image " + m.entries[i].image_id + ": " + e.what());
    }
  });
  WriteAttributeDump(f.out, ManifestIds(m), values);
  if (!f.manifest_out.empty()) {
    std::vector<ManifestEntry> entries = m.entries;
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i].attributes = values[i];
    WriteManifest(f.manifest_out, entries);
  }
  WriteRunConfig(f.out, false,
                 {{"subcommand", "attrs"},
                  {"manifest", f.manifest},
                  {"out", f.out},
                  {"manifest_out", f.manifest_out},
                  {"threads", f.threads}});
  spdlog::info("computed attributes for {} images", m.size());
  return 0;
}

// ---------------------------------------------------------------- build-db

struct BuildFlags {
  std::string manifest;
  std::string provider = "tuned";
  std::string tag = "all";
  std::string out;
  std::string attrs;
  int d = 64;
  double noise_sd = 0.05;
  double attr_gain = 4.0;
  std::uint64_t seed = 0;
  int threads = 0;
};

int RunBuildDb(const BuildFlags& f) {
  const Manifest m = ReadManifest(f.manifest);
  if (m.size() == 0) throw DataError("manifest is empty");
  const fs::path out(f.out);
  MakeDir(out);
  const std::vector<std::string> ids = ManifestIds(m);
  const ImageLoader load = ManifestLoader(m);

  std::vector<DatabaseTag> tags;
  if (f.tag == "all") {
    tags.push_back(DatabaseTag::ImageOnly());
    for (AttributeId a : AllAttributes()) tags.push_back(DatabaseTag::ForAttribute(a));
  } else {
    tags.push_back(DatabaseTag::FromName(f.tag));
  }

  if (f.provider == "tuned") {
    const std::vector<AttributeVector> attrs =
        ResolveAttributes(m, OptionalPath(f.attrs), f.threads);
    std::vector<std::vector<double>> visual(m.size());
    ParallelFor(m.size(), f.threads,
                [&](std::size_t i) { visual[i] = PatchGridFeatures(load(i)); });
    const TunedSimProvider provider(ComputeCorpusStats(attrs, visual),
                                    {f.d, f.noise_sd, f.attr_gain, f.seed});
    const auto dbs = BuildDatabases(provider, ids, load, tags, f.threads);
    for (const EmbeddingDatabase& db : dbs) {
      SaveDatabase(db, TunedDbPath(out, db.tag()));
      spdlog::info("wrote {}", TunedDbPath(out, db.tag()).string());
    }
    WriteJsonFile(out / kTunedProviderFile, ProviderToJson(provider));
  } else if (f.provider == "untuned") {
    if (tags.size() != 1 || !tags[0].is_image_only()) {
      throw InvalidArgumentError("the untuned provider builds only --tag image");
    }
    const UntunedSimProvider provider({f.d, f.seed});
    SaveDatabase(BuildDatabase(provider, ids, load, tags[0], f.threads),
                 UntunedDbPath(out));
    WriteJsonFile(out / kUntunedProviderFile, ProviderToJson(provider));
  } else {
    throw InvalidArgumentError("--provider must be tuned or untuned");
  }
  WriteJsonFile(out / kSourceFile,
                {{"manifest", fs::absolute(f.manifest).lexically_normal().string()}});
  WriteRunConfig(out, true,
                 {{"subcommand", "build-db"},
                  {"manifest", f.manifest},
                  {"provider", f.provider},
                  {"tag", f.tag},
                  {"out", f.out},
                  {"attrs", f.attrs},
                  {"d", f.d},
                  {"noise_sd", f.noise_sd},
                  {"attr_gain", f.attr_gain},
                  {"seed", f.seed},
                  {"threads", f.threads}});
  return 0;
}

// ---------------------------------------------------------------- query

struct QueryFlags {
  std::string db_dir;
  std::string strategy = "image";
  std::string attribute;
  std::size_t k = 5;
  std::size_t b = 200;
  std::string query_manifest;
  std::string out;
  bool exclude_self = false;
  bool stage2_prebuilt = false;
  int threads = 0;
};

int RunQuery(const QueryFlags& f) {
  const SearchStrategy strategy = SearchStrategyFromName(f.strategy);
  std::optional<AttributeId> attribute;
  if (strategy != SearchStrategy::kImageOnly) {
    if (f.attribute.empty()) {
      throw InvalidArgumentError("--attribute is required for --strategy " + f.strategy);
    }
    attribute = AttributeFromName(f.attribute);
  }
  const fs::path dir(f.db_dir);
  const auto provider = LoadProvider(dir, kTunedProviderFile);
  const Manifest queries = ReadManifest(f.query_manifest);

  std::optional<EmbeddingDatabase> image_db;
  std::optional<EmbeddingDatabase> attr_db;
  if (strategy != SearchStrategy::kAttribute) {
    image_db = LoadDatabase(TunedDbPath(dir, DatabaseTag::ImageOnly()));
  }
  if (strategy == SearchStrategy::kAttribute ||
      (strategy == SearchStrategy::kHierarchical && f.stage2_prebuilt)) {
    attr_db = LoadDatabase(TunedDbPath(dir, DatabaseTag::ForAttribute(*attribute)));
  }

  // Stage-2 source for hierarchical search: the database's own images,
  // embedded on the fly, or rows of the prebuilt attribute database.
  std::optional<Manifest> source;
  std::vector<std::size_t> source_row;
  std::unique_ptr<CandidateEmbedder> candidates;
  if (strategy == SearchStrategy::kHierarchical) {
    if (f.stage2_prebuilt) {
      candidates = std::make_unique<DatabaseCandidateEmbedder>(
          *image_db, std::vector<const EmbeddingDatabase*>{&*attr_db});
    } else {
      const json src = ReadJsonFile(dir / kSourceFile);
      source = ReadManifest(src.at("manifest").get<std::string>());
      std::unordered_map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < source->size(); ++i) {
        index.emplace(source->entries[i].image_id, i);
      }
      for (const std::string& id : image_db->ids()) {
        const auto it = index.find(id);
        if (it == index.end()) {
          throw DataError("database id " + id + " is missing from the source manifest");
        }
        source_row.push_back(it->second);
      }
      const Manifest* sm = &*source;
      candidates = std::make_unique<ProviderCandidateEmbedder>(
          *provider, [sm, &source_row](std::size_t row) {
            return LoadLesionImage(*sm, source_row[row]);
          });
    }
  }

  const SearchOptions options{f.exclude_self};
  std::vector<std::string> lines(queries.size());
  ParallelFor(queries.size(), f.threads, [&](std::size_t i) {
    const LesionImage q = LoadLesionImage(queries, i);
    RetrievalResult r;
    switch (strategy) {
      case SearchStrategy::kImageOnly:
        r = SearchImageOnly(q, *provider, *image_db, f.k, options);
        break;
      case SearchStrategy::kAttribute:
        r = SearchAttribute(q, *attribute, *provider, *attr_db, f.k, options);
        break;
      case SearchStrategy::kHierarchical:
        r = SearchHierarchical(q, *attribute, *provider, *image_db, *candidates, f.k,
                               f.b, options);
        break;
    }
    lines[i] = RetrievalResultToJson(r).dump();
  });
  std::ofstream out(f.out, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + f.out);
  for (const std::string& line : lines) out << line << '\n';
  if (!out) throw DataError("write failed: " + f.out);
  WriteRunConfig(f.out, false,
                 {{"subcommand", "query"},
                  {"db_dir", f.db_dir},
                  {"strategy", f.strategy},
                  {"attribute", f.attribute},
                  {"k", f.k},
                  {"b", f.b},
                  {"query_manifest", f.query_manifest},
                  {"out", f.out},
                  {"exclude_self", f.exclude_self},
                  {"stage2_prebuilt", f.stage2_prebuilt},
                  {"threads", f.threads}});
  return 0;
}

// ---------------------------------------------------------------- export-train

struct ExportFlags {
  std::string manifest;
  int w = 5;
  std::uint64_t seed = 0;
  int decimals = 2;
  std::string attrs;
  std::string out;
  int threads = 0;
};

int RunExportTrain(const ExportFlags& f) {
  const Manifest m = ReadManifest(f.manifest);
  AttributeSource source = ManifestAttributeSource(m);
  std::unordered_map<std::string, AttributeVector> dumped;
  if (!f.attrs.empty()) {
    dumped = ReadAttributeDump(f.attrs);
    source = [&](std::size_t i) {
      const auto it = dumped.find(m.entries[i].image_id);
      if (it == dumped.end()) throw DataError("not in the attribute dump");
      return it->second;
    };
  }
  const std::size_t count =
      ExportTrainingSet(m, source, {f.w, f.seed, f.decimals, f.threads}, f.out);
  WriteRunConfig(f.out, false,
                 {{"subcommand", "export-train"},
                  {"manifest", f.manifest},
                  {"w", f.w},
                  {"seed", f.seed},
                  {"decimals", f.decimals},
                  {"attrs", f.attrs},
                  {"out", f.out},
                  {"threads", f.threads}});
  std::cout << count << " tuples\n";
  return 0;
}

// ---------------------------------------------------------------- eval

struct EvalFlags {
  std::string train;
  std::string test;
  std::string db_dir;
  std::string strategies = "attr,hier,image,untuned";
  std::size_t k = 5;
  std::size_t b = 200;
  std::string train_attrs;
  std::string test_attrs;
  std::string out;
  bool include_self = false;
  int threads = 0;
};

int RunEval(const EvalFlags& f) {
  BenchmarkOptions options;
  options.strategies = ParseEvalStrategies(f.strategies);
  options.k = f.k;
  options.b = f.b;
  options.exclude_self = !f.include_self;
  options.threads = f.threads;

  const Manifest train = ReadManifest(f.train);
  const Manifest test = ReadManifest(f.test);
  const fs::path dir(f.db_dir);

  BenchmarkInputs in;
  in.train_ids = ManifestIds(train);
  in.test_ids = ManifestIds(test);
  in.train_attributes = ResolveAttributes(train, OptionalPath(f.train_attrs), f.threads);
  in.test_attributes = ResolveAttributes(test, OptionalPath(f.test_attrs), f.threads);
  in.load_test = ManifestLoader(test);

  auto uses = [&](EvalStrategy s) {
    return std::find(options.strategies.begin(), options.strategies.end(), s) !=
           options.strategies.end();
  };
  std::unique_ptr<EmbeddingProvider> tuned;
  std::unique_ptr<EmbeddingProvider> untuned;
  std::optional<EmbeddingDatabase> image_db;
  std::optional<EmbeddingDatabase> untuned_db;
  std::vector<EmbeddingDatabase> attr_dbs;
  attr_dbs.reserve(kAttributeCount);
  const bool need_tuned = uses(EvalStrategy::kAttribute) ||
                          uses(EvalStrategy::kHierarchical) ||
                          uses(EvalStrategy::kImageOnly);
  if (need_tuned) {
    tuned = LoadProvider(dir, kTunedProviderFile);
    in.tuned = tuned.get();
  }
  if (uses(EvalStrategy::kImageOnly) || uses(EvalStrategy::kHierarchical)) {
    image_db = LoadDatabase(TunedDbPath(dir, DatabaseTag::ImageOnly()));
    in.image_db = &*image_db;
  }
  if (uses(EvalStrategy::kAttribute) || uses(EvalStrategy::kHierarchical)) {
    for (AttributeId a : AllAttributes()) {
      attr_dbs.push_back(LoadDatabase(TunedDbPath(dir, DatabaseTag::ForAttribute(a))));
      in.attribute_dbs[AttributeIndex(a)] = &attr_dbs.back();
    }
  }
  if (uses(EvalStrategy::kUntuned)) {
    untuned = LoadProvider(dir, kUntunedProviderFile);
    in.untuned = untuned.get();
    untuned_db = LoadDatabase(UntunedDbPath(dir));
    in.untuned_db = &*untuned_db;
  }

  const EvalReport report = RunRetrievalBenchmark(in, options);
  const fs::path out(f.out);
  MakeDir(out);
  WriteJsonFile(out / "summary.json", EvalReportToJson(report));
  WritePercentileCsv(out / "percentiles.csv", report.records);
  WriteRunConfig(out, true,
                 {{"subcommand", "eval"},
                  {"train", f.train},
                  {"test", f.test},
                  {"db_dir", f.db_dir},
                  {"strategies", f.strategies},
                  {"k", f.k},
                  {"b", f.b},
                  {"train_attrs", f.train_attrs},
                  {"test_attrs", f.test_attrs},
                  {"out", f.out},
                  {"include_self", f.include_self},
                  {"threads", f.threads}});

  std::printf("%-24s", "attribute");
  for (EvalStrategy s : report.strategies) std::printf(" %9s", EvalStrategyName(s));
  std::printf("   (median percentile)\n");
  for (AttributeId a : AllAttributes()) {
    std::printf("%-24s", std::string(AttributeName(a)).c_str());
    for (EvalStrategy s : report.strategies) {
      std::printf(" %9.2f", report.Stats(a, s).median);
    }
    std::printf("\n");
  }
  return 0;
}

// ---------------------------------------------------------------- eval-r2

struct R2Flags {
  std::string predictions;
  std::string manifest;
  std::string attrs;
  std::string out;
};

// Prediction lines are {"image_id": ..., <attribute name>: value, ...} or
// {"image_id": ..., "attribute": name, "prediction": value}.
int RunEvalR2(const R2Flags& f) {
  const Manifest m = ReadManifest(f.manifest);
  const std::vector<AttributeVector> truths = ResolveAttributes(m, OptionalPath(f.attrs), 1);
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < m.size(); ++i) index.emplace(m.entries[i].image_id, i);

  std::vector<std::array<std::optional<double>, kAttributeCount>> preds(m.size());
  ForEachJsonLine(f.predictions, [&](std::size_t, const json& j) {
    const std::string id = j.at("image_id").get<std::string>();
    const auto it = index.find(id);
    if (it == index.end()) throw DataError("prediction for unknown image " + id);
    auto& row = preds[it->second];
    if (j.contains("attribute")) {
      const AttributeId a = AttributeFromName(j.at("attribute").get<std::string>());
      row[AttributeIndex(a)] = j.at("prediction").get<double>();
      return;
    }
    json rest = j;
    rest.erase("image_id");
    const auto partial = PartialAttributesFromJson(rest);
    for (std::size_t a = 0; a < kAttributeCount; ++a) {
      if (partial[a]) row[a] = partial[a];
    }
  });

  const auto r2 = AttributeRSquared(preds, truths);
  json report = json::object();
  for (AttributeId a : AllAttributes()) {
    const auto& v = r2[AttributeIndex(a)];
    if (!v) continue;
    report[std::string(AttributeName(a))] = *v;
    std::printf("%-24s R2=%.4f\n", std::string(AttributeName(a)).c_str(), *v);
  }
  if (report.empty()) throw DataError("no attribute has at least two predictions");
  if (!f.out.empty()) {
    WriteJsonFile(f.out, {{"r_squared", report}});
    WriteRunConfig(f.out, false,
                   {{"subcommand", "eval-r2"},
                    {"predictions", f.predictions},
                    {"manifest", f.manifest},
                    {"attrs", f.attrs},
                    {"out", f.out}});
  }
  return 0;
}

// ---------------------------------------------------------------- info

int RunInfo(const std::vector<std::string>& paths) {
  std::vector<fs::path> files;
  for (const std::string& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.path().extension() == ".aedb") found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.emplace_back(p);
    }
  }
  for (const fs::path& file : files) {
    const EmbeddingHeader h = ReadEmbeddingHeader(file);
    if (paths.size() > 1 || files.size() > 1) std::cout << file.string() << ": ";
    std::cout << "tag=" << h.tag.name() << " count=" << h.count << " d=" << h.dim
              << '\n';
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Attribute-grounded skin-lesion image retrieval", "lesionseek"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lesionseek 0.1.0");

  GenFlags gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic lesion corpus and split");
  g->add_option("--n", gen.n, "Number of images")->capture_default_str();
  g->add_option("--patients", gen.patients, "Number of patients")->capture_default_str();
  g->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  g->add_option("--train-fraction", gen.train_fraction, "Fraction of images in train")
      ->capture_default_str();
  g->add_option("--side", gen.side, "Image side in pixels")->capture_default_str();
  g->add_option("--threads", gen.threads, "Worker threads (0 = all cores)");
  g->add_option("--out", gen.out, "Output directory")->required();

  AttrsFlags attrs;
  auto* at = app.add_subcommand("attrs", "Compute the 16 attributes of every image");
  at->add_option("--manifest", attrs.manifest, "Image manifest")->required();
  at->add_option("--out", attrs.out, "Attribute dump (JSON lines)")->required();
  at->add_option("--manifest-out", attrs.manifest_out,
                 "Also write the manifest with attributes attached");
  at->add_option("--threads", attrs.threads, "Worker threads (0 = all cores)");

  BuildFlags build;
  auto* bd = app.add_subcommand("build-db", "Build embedding databases");
  bd->add_option("--manifest", build.manifest, "Image manifest")->required();
  bd->add_option("--provider", build.provider, "tuned or untuned")
      ->check(CLI::IsMember({"tuned", "untuned"}))
      ->capture_default_str();
  bd->add_option("--tag", build.tag, "image, an attribute name, or all")
      ->capture_default_str();
  bd->add_option("--out", build.out, "Database directory")->required();
  bd->add_option("--attrs", build.attrs, "Attribute dump for the manifest");
  bd->add_option("--d", build.d, "Embedding dimension")->capture_default_str();
  bd->add_option("--noise-sd", build.noise_sd, "tuned: noise level")->capture_default_str();
  bd->add_option("--attr-gain", build.attr_gain, "tuned: attribute gain")
      ->capture_default_str();
  bd->add_option("--seed", build.seed, "Provider seed")->capture_default_str();
  bd->add_option("--threads", build.threads, "Worker threads (0 = all cores)");

  QueryFlags query;
  auto* qr = app.add_subcommand("query", "Retrieve similar images");
  qr->add_option("--db-dir", query.db_dir, "Database directory")->required();
  qr->add_option("--strategy", query.strategy, "image, attr or hier")
      ->check(CLI::IsMember({"image", "attr", "hier"}))
      ->capture_default_str();
  qr->add_option("--attribute", query.attribute, "Attribute name for attr and hier");
  qr->add_option("--k", query.k, "Results per query")->capture_default_str();
  qr->add_option("--b", query.b, "hier: stage-1 candidates")->capture_default_str();
  qr->add_option("--query-manifest", query.query_manifest, "Query images")->required();
  qr->add_option("--out", query.out, "Results (JSON lines)")->required();
  qr->add_flag("--exclude-self", query.exclude_self, "Drop the query id from results");
  qr->add_flag("--stage2-prebuilt", query.stage2_prebuilt,
               "hier: fill stage 2 from the prebuilt attribute database");
  qr->add_option("--threads", query.threads, "Worker threads (0 = all cores)");

  ExportFlags exp;
  auto* ex = app.add_subcommand("export-train", "Export (image, question, answer) tuples");
  ex->add_option("--manifest", exp.manifest, "Image manifest")->required();
  ex->add_option("--w", exp.w, "Attributes sampled per image")->capture_default_str();
  ex->add_option("--seed", exp.seed, "Sampling seed")->capture_default_str();
  ex->add_option("--decimals", exp.decimals, "Answer decimals")->capture_default_str();
  ex->add_option("--attrs", exp.attrs, "Attribute dump for the manifest");
  ex->add_option("--out", exp.out, "Tuples (JSON lines)")->required();
  ex->add_option("--threads", exp.threads, "Worker threads (0 = all cores)");

  EvalFlags ev;
  auto* el = app.add_subcommand("eval", "Percentile-rank retrieval benchmark");
  el->add_option("--train", ev.train, "Training manifest")->required();
  el->add_option("--test", ev.test, "Test manifest")->required();
  el->add_option("--db-dir", ev.db_dir, "Database directory")->required();
  el->add_option("--strategies", ev.strategies, "Comma-separated strategies")
      ->capture_default_str();
  el->add_option("--k", ev.k, "Results per query")->capture_default_str();
  el->add_option("--b", ev.b, "hier: stage-1 candidates")->capture_default_str();
  el->add_option("--train-attrs", ev.train_attrs, "Attribute dump for --train");
  el->add_option("--test-attrs", ev.test_attrs, "Attribute dump for --test");
  el->add_option("--out", ev.out, "Report directory")->required();
  el->add_flag("--include-self", ev.include_self, "Keep query ids in results");
  el->add_option("--threads", ev.threads, "Worker threads (0 = all cores)");

  R2Flags r2;
  auto* rr = app.add_subcommand("eval-r2", "R^2 of attribute predictions");
  rr->add_option("--predictions", r2.predictions, "Predictions (JSON lines)")->required();
  rr->add_option("--manifest", r2.manifest, "Image manifest")->required();
  rr->add_option("--attrs", r2.attrs, "Attribute dump for the manifest");
  rr->add_option("--out", r2.out, "Report (JSON)");

  std::vector<std::string> info_paths;
  auto* in = app.add_subcommand("info", "Print AEDB header fields");
  in->add_option("paths", info_paths, "AEDB files or directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ConfigureLogging();
  if (*g) return RunGen(gen);
  if (*at) return RunAttrs(attrs);
  if (*bd) return RunBuildDb(build);
  if (*qr) return RunQuery(query);
  if (*ex) return RunExportTrain(exp);
  if (*el) return RunEval(ev);
  if (*rr) return RunEvalR2(r2);
  if (*in) return RunInfo(info_paths);
  return 1;
}

}  // namespace
}  // namespace lesionseek::cli

int main(int argc, char** argv) {
  try {
    return lesionseek::cli::Main(argc, argv);
  } catch (const lesionseek::InvalidArgumentError& e) {
    std::cerr << "lesionseek: " << e.what() << '\n';
    return 1;
  } catch (const lesionseek::Error& e) {
    std::cerr << "lesionseek: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "lesionseek: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lesionseek: internal error: " << e.what() << '\n';
    return 3;
  }
}
