// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sustext Authors

#include "sustext/demo.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "sustext/error.hpp"
#include "sustext/io.hpp"
#include "sustext/keyword_matcher.hpp"
#include "sustext/rng.hpp"

namespace sustext {

namespace {

// Vocabulary for filler text. None of these words overlaps a brand or an
// issue keyword of the bundled lexicon.
constexpr std::array kPlaces = {"Bangladesh", "Cambodia", "Turkey", "India", "Vietnam",
                                "Myanmar",    "Ethiopia", "Pakistan", "Indonesia", "Morocco"};
constexpr std::array kSubjects = {"The audit", "A field study", "The survey", "Researchers",
                                  "The monitoring team", "An independent review", "The campaign"};
constexpr std::array kVerbs = {"examined", "described", "reviewed", "summarised", "compared", "mapped"};
constexpr std::array kObjects = {"several garment factories", "the spinning mills", "a group of tier two suppliers",
                                 "the sewing units", "export processing zones", "the dyeing houses"};
constexpr std::array kClosers = {"during the last season", "over three years", "in a recent report",
                                 "with local partners", "before the new collection", "across the region"};

constexpr std::array kKeywordTemplates = {
    "Workers described {kw} at several suppliers in {place}.",
    "The study links {kw} to the sourcing model used in {place}.",
    "Interviews in {place} pointed to {kw} as a recurring concern.",
    "Auditors reported evidence of {kw} at a plant in {place}.",
    "Local organisations raised {kw} with buyers in {place}.",
};
constexpr std::array kBrandKeywordTemplates = {
    "{brand} was linked to {kw} in {place}.",
    "{brand} faces questions about {kw} at its suppliers.",
    "{brand} published a statement on {kw} this year.",
};
constexpr std::array kBrandTemplates = {
    "{brand} sources garments from {place}.",
    "{brand} lists several factories in {place}.",
    "{brand} expanded its production base in {place}.",
};

// German filler used for the non-English documents.
constexpr std::array kGermanSentences = {
    "Die Fabrik zahlt den Arbeitern keinen fairen Lohn.",
    "Viele Beschäftigte arbeiten jeden Tag bis spät abends.",
    "Der Bericht nennt mehrere Zulieferer aus Asien.",
    "Gewerkschaften fordern bessere Bedingungen für Näherinnen.",
    "Die Marke reagierte bisher nicht auf Anfragen.",
    "Kontrollen finden nur selten und angekündigt statt.",
};

template <typename Array>
std::string pick(const Array& items, Rng& rng) {
  return items[static_cast<std::size_t>(rng.below(items.size()))];
}

std::string fill(std::string tmpl, const std::string& key, const std::string& value) {
  const auto pos = tmpl.find(key);
  if (pos != std::string::npos) tmpl.replace(pos, key.size(), value);
  return tmpl;
}

std::string filler_sentence(Rng& rng) {
  return pick(kSubjects, rng) + " " + pick(kVerbs, rng) + " " + pick(kObjects, rng) + " in " + pick(kPlaces, rng) +
         " " + pick(kClosers, rng) + ".";
}

std::string keyword_sentence(const std::string& kw, const std::string* brand, Rng& rng) {
  std::string s = brand ? fill(pick(kBrandKeywordTemplates, rng), "{brand}", *brand) : pick(kKeywordTemplates, rng);
  s = fill(std::move(s), "{kw}", kw);
  return fill(std::move(s), "{place}", pick(kPlaces, rng));
}

std::string brand_sentence(const std::string& brand, Rng& rng) {
  return fill(fill(pick(kBrandTemplates, rng), "{brand}", brand), "{place}", pick(kPlaces, rng));
}

// Class frequencies fall off with the class id.
std::vector<double> class_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t c = 0; c < n; ++c) w[c] = 1.0 / std::pow(static_cast<double>(c) + 1.5, 0.9);
  return w;
}

ClassId draw_class(const std::vector<double>& weights, const LabelSet& exclude, Rng& rng) {
  double total = 0.0;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (!exclude.contains(static_cast<ClassId>(c))) total += weights[c];
  }
  double u = rng.uniform01() * total;
  ClassId last = -1;
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (exclude.contains(static_cast<ClassId>(c))) continue;
    last = static_cast<ClassId>(c);
    u -= weights[c];
    if (u < 0.0) return last;
  }
  return last;
}

std::size_t draw_label_count(Rng& rng) {
  const double u = rng.uniform01();
  if (u < 0.10) return 0;
  if (u < 0.70) return 1;
  if (u < 0.95) return 2;
  return 3;
}

}  // namespace

DemoCorpus generate_demo_corpus(std::uint64_t seed, const DemoOptions& options) {
  const LabelSchema& schema = LabelSchema::builtin();
  const KeywordLexicon& lexicon = KeywordLexicon::builtin();
  const KeywordMatcher matcher(lexicon);
  const auto weights = class_weights(schema.size());
  Rng rng(seed);

  DemoCorpus out;
  for (std::size_t d = 0; d < options.n_documents; ++d) {
    Document doc;
    std::ostringstream id;
    id << "demo-" << seed << "-" << d;
    doc.id = id.str();
    doc.title = "Synthetic sustainability report " + std::to_string(d);
    if (d % 2 == 0) {
      doc.source_type = SourceType::scientific;
      doc.doi = "10.5555/sustext-demo." + std::to_string(seed) + "." + std::to_string(d);
    } else {
      doc.source_type = SourceType::ngo;
      doc.website = "https://ngo.example.org/reports/" + std::to_string(seed) + "-" + std::to_string(d);
    }

    // Window kinds in document order: 1 = relevant, 0 = irrelevant.
    std::vector<char> kinds(options.passages_per_document, 1);
    kinds.insert(kinds.end(), options.irrelevant_per_document, 0);
    rng.shuffle(std::span<char>(kinds));

    std::vector<std::string> sentences;
    for (std::size_t w = 0; w < kinds.size(); ++w) {
      const std::string passage_id = doc.id + "#" + std::to_string(w);
      std::array<std::string, 3> window;
      if (!kinds[w]) {
        for (auto& s : window) s = filler_sentence(rng);
        ++out.expected_dropped;
      } else {
        const std::string brand = pick(lexicon.brands, rng);
        LabelSet gold;
        const std::size_t n_labels = draw_label_count(rng);
        while (gold.size() < n_labels) gold.insert(draw_class(weights, gold, rng));

        std::array<std::optional<ClassId>, 3> slots;
        std::array<std::size_t, 3> order = {0, 1, 2};
        rng.shuffle(std::span<std::size_t>(order));
        std::size_t k = 0;
        for (ClassId c : gold) slots[order[k++]] = c;
        for (std::size_t s = 0; s < 3; ++s) {
          const std::string* b = s == 0 ? &brand : nullptr;
          if (slots[s]) {
            const auto& kws = lexicon.issue_keywords.at(*slots[s]);
            window[s] = keyword_sentence(kws[static_cast<std::size_t>(rng.below(kws.size()))], b, rng);
          } else {
            window[s] = b ? brand_sentence(brand, rng) : filler_sentence(rng);
          }
        }
        std::string joined = window[0] + " " + window[1] + " " + window[2];
        if (matcher.classes(joined) != gold) throw Error("demo generator planted unexpected keywords");
        out.labels.emplace(passage_id, std::move(gold));
        ++out.expected_kept;
      }
      sentences.insert(sentences.end(), window.begin(), window.end());
    }
    for (std::size_t s = 0; s < sentences.size(); ++s) {
      if (s) doc.text += (s % 3 == 0) ? "\n" : " ";
      doc.text += sentences[s];
    }
    out.documents.push_back(std::move(doc));
  }

  for (std::size_t g = 0; g < options.n_non_english; ++g) {
    Document doc;
    doc.id = "demo-" + std::to_string(seed) + "-de-" + std::to_string(g);
    doc.title = "Bericht " + std::to_string(g);
    doc.source_type = SourceType::ngo;
    doc.website = "https://ngo.example.org/de/" + std::to_string(seed) + "-" + std::to_string(g);
    const std::string brand = pick(lexicon.brands, rng);
    doc.text = brand + " lässt in Asien produzieren.";
    for (int s = 0; s < 5; ++s) doc.text += " " + pick(kGermanSentences, rng);
    out.documents.push_back(std::move(doc));
    ++out.expected_non_english_documents;
  }
  return out;
}

void write_demo_corpus(const std::filesystem::path& dir, const DemoCorpus& corpus) {
  std::filesystem::create_directories(dir);
  write_documents_jsonl(dir / "documents.jsonl", corpus.documents);

  std::vector<Passage> labeled;
  for (const auto& doc : corpus.documents) {
    for (auto& p : window_passages(doc)) {
      const auto it = corpus.labels.find(p.id);
      if (it == corpus.labels.end()) continue;
      p.gold_labels = it->second;
      labeled.push_back(std::move(p));
    }
  }
  write_passages_jsonl(dir / "labels.jsonl", labeled);
  write_file(dir / "schema.json", to_json(LabelSchema::builtin()).dump(2) + "\n");
  write_file(dir / "lexicon.json", to_json(KeywordLexicon::builtin()).dump(2) + "\n");

  std::vector<std::size_t> freq(LabelSchema::kNumClasses, 0);
  for (const auto& [id, labels] : corpus.labels) {
    for (ClassId c : labels) ++freq[static_cast<std::size_t>(c)];
  }
  const json oracle = {{"expected_kept", corpus.expected_kept},
                       {"expected_dropped", corpus.expected_dropped},
                       {"expected_non_english_documents", corpus.expected_non_english_documents},
                       {"documents", corpus.documents.size()},
                       {"labeled_passages", corpus.labels.size()},
                       {"class_frequencies", freq}};
  write_file(dir / "oracle.json", oracle.dump(2) + "\n");
}

}  // namespace sustext
