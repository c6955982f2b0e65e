#include "clusart/synthetic.hpp"

#include <cmath>
#include <fstream>

#include "clusart/error.hpp"
#include "clusart/random.hpp"

namespace clusart {

namespace {

constexpr std::string_view kGraphics[] = {
    "pixel",   "render",     "polygon", "texture",   "shader",    "bitmap",  "vertex",
    "raster",  "palette",    "monitor", "animation", "jpeg",      "gif",     "compression",
    "triangle", "mesh",      "sprite",  "opengl",    "framebuffer", "antialiasing", "voxel",
    "rgb",     "wireframe",  "tga",     "scanline"};
constexpr std::string_view kHockey[] = {
    "puck",     "goalie",  "skate",   "rink",      "playoff",  "referee",  "hockey",
    "season",   "coach",   "league",  "penalty",   "defenseman", "overtime", "trophy",
    "stadium",  "fans",    "slapshot", "winger",   "draft",    "tournament", "championship",
    "arena",    "faceoff", "zamboni", "hattrick"};
constexpr std::string_view kMedicine[] = {
    "doctor",   "patient",  "disease", "symptom",   "clinic",   "vaccine",  "surgery",
    "diagnosis", "therapy", "infection", "nurse",   "hospital", "medicine", "prescription",
    "allergy",  "cancer",   "virus",   "antibiotic", "migraine", "pharmacy", "dosage",
    "chronic",  "immune",   "fever",   "insulin"};
constexpr std::string_view kSpace[] = {
    "orbit",    "rocket",   "planet",  "galaxy",    "astronaut", "telescope", "launch",
    "satellite", "comet",   "nebula",  "lunar",     "shuttle",   "asteroid",  "cosmos",
    "gravity",  "mars",     "jupiter", "payload",   "spacecraft", "meteor",   "eclipse",
    "solar",    "crater",   "probe",   "nasa"};
constexpr std::string_view kCrypto[] = {
    "cipher",   "encryption", "key",    "algorithm", "pgp",     "clipper",  "rsa",
    "plaintext", "ciphertext", "escrow", "nsa",      "des",     "hash",     "signature",
    "modulus",  "prime",    "factoring", "wiretap",  "secure",  "password", "certificate",
    "decrypt",  "entropy",  "keyspace", "cryptanalysis"};
constexpr std::string_view kAutos[] = {
    "car",      "engine",   "brake",   "tire",      "transmission", "dealer", "sedan",
    "mileage",  "clutch",   "gearbox", "horsepower", "exhaust",  "radiator", "bumper",
    "windshield", "ignition", "carburetor", "muffler", "torque", "chassis", "headlight",
    "axle",     "ford",     "toyota",  "dashboard"};

constexpr std::string_view kBackground[] = {
    "people",  "think",   "time",    "question", "problem", "work",    "year",    "thing",
    "point",   "reason",  "number",  "system",   "place",   "world",   "case",    "group",
    "information", "idea", "fact",   "example",  "article", "answer",  "week",    "friend",
    "money",   "version", "reply",   "opinion",  "message", "experience"};

constexpr std::string_view kFiller[] = {"the", "a", "of", "and", "to", "in", "is", "it", "that",
                                        "was", "for", "on", "with", "this", "at", "by"};

constexpr SyntheticTopic kTopics[] = {
    {"comp.graphics", kGraphics}, {"rec.sport.hockey", kHockey}, {"sci.med", kMedicine},
    {"sci.space", kSpace},        {"sci.crypt", kCrypto},        {"rec.autos", kAutos},
};

std::string make_document(const SyntheticTopic& topic, const SyntheticSpec& spec,
                          const std::vector<double>& cumulative, Rng& rng) {
  const std::size_t length =
      spec.min_words + static_cast<std::size_t>(rng.below(spec.max_words - spec.min_words + 1));
  std::string text;
  std::vector<bool> background_used(spec.background_words, false);
  std::size_t in_sentence = 0;
  const std::size_t sentence_len = 6 + static_cast<std::size_t>(rng.below(7));
  for (std::size_t i = 0; i < length; ++i) {
    if (rng.uniform() < spec.stopword_rate) {
      const auto& f = kFiller[rng.below(std::size(kFiller))];
      text.append(in_sentence == 0 ? "" : " ").append(f);
      ++in_sentence;
    }
    std::string word;
    if (rng.uniform() < spec.background_rate) {
      const auto b = static_cast<std::size_t>(rng.below(spec.background_words));
      background_used[b] = true;
      word = kBackground[b];
    } else {
      const double u = rng.uniform() * cumulative.back();
      std::size_t w = 0;
      while (w + 1 < cumulative.size() && cumulative[w] <= u) ++w;
      word = topic.words[w];
    }
    if (in_sentence == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
    text.append(in_sentence == 0 ? "" : " ").append(word);
    if (++in_sentence >= sentence_len || i + 1 == length) {
      text.append(".\n");
      in_sentence = 0;
    }
  }
  // Every document carries every background word, so their idf is zero.
  if (spec.background_rate > 0.0) {
    std::string tail;
    for (std::size_t b = 0; b < spec.background_words; ++b) {
      if (!background_used[b]) tail.append(tail.empty() ? "" : " ").append(kBackground[b]);
    }
    if (!tail.empty()) text.append(tail).append(".\n");
  }
  return text;
}

}  // namespace

std::span<const SyntheticTopic> synthetic_topics() { return kTopics; }

Corpus make_synthetic_corpus(const SyntheticSpec& spec) {
  if (spec.topics < 1 || spec.topics > std::size(kTopics)) {
    throw ParameterError("synthetic corpus supports 1.." + std::to_string(std::size(kTopics)) + " topics");
  }
  if (spec.docs_per_topic < 1) throw ParameterError("docs_per_topic must be >= 1");
  if (spec.min_words < 1 || spec.max_words < spec.min_words) throw ParameterError("bad document length range");
  if (spec.words_per_topic < 1 || spec.words_per_topic > std::size(kGraphics)) {
    throw ParameterError("words_per_topic must lie in 1.." + std::to_string(std::size(kGraphics)));
  }
  if (!(spec.background_rate >= 0.0 && spec.background_rate < 1.0)) {
    throw ParameterError("background_rate must lie in [0, 1)");
  }
  if (spec.background_rate > 0.0 &&
      (spec.background_words < 1 || spec.background_words > std::size(kBackground))) {
    throw ParameterError("background_words must lie in 1.." + std::to_string(std::size(kBackground)));
  }

  std::vector<Document> docs;
  for (std::size_t t = 0; t < spec.topics; ++t) {
    const auto& topic = kTopics[t];
    // Zipf-like word weights 1 / (rank + 1)^s.
    std::vector<double> cumulative;
    double acc = 0.0;
    for (std::size_t r = 0; r < spec.words_per_topic; ++r) {
      acc += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_exponent);
      cumulative.push_back(acc);
    }
    Rng rng(derive_seed(spec.seed, t));
    for (std::size_t d = 0; d < spec.docs_per_topic; ++d) {
      char name[16];
      std::snprintf(name, sizeof name, "%04zu", d);
      docs.push_back(Document{std::string(topic.label) + "/" + name,
                              make_document(topic, spec, cumulative, rng), std::string(topic.label),
                              std::nullopt});
    }
  }
  return Corpus(std::move(docs));
}

void write_corpus_tree(const Corpus& corpus, const std::filesystem::path& root) {
  for (const auto& doc : corpus.documents()) {
    const auto path = root / doc.id;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << doc.text;
  }
}

}  // namespace clusart
