#include "clusart/textprep.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "clusart/error.hpp"

namespace clusart {

namespace detail {
extern const std::string_view kDefaultStoplistText;
}

namespace {

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_alpha_word(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_ascii_alnum(c)) {
      current.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist) {
  std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
  return tokens;
}

TokenizedDoc preprocess_document(const Document& doc, const Stoplist& stoplist) {
  TokenizedDoc out{doc.id, filter_stopwords(tokenize(doc.text), stoplist)};
  for (auto& token : out.tokens) {
    if (is_alpha_word(token)) token = porter_stem(token);
  }
  return out;
}

std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus, const Stoplist& stoplist) {
  std::vector<TokenizedDoc> out(corpus.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(corpus.size()); ++i) {
    out[i] = preprocess_document(corpus[i], stoplist);
  }
  return out;
}

Stoplist parse_stoplist(std::string_view text) {
  Stoplist out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    const auto start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    std::string term = line.substr(start);
    std::transform(term.begin(), term.end(), term.begin(), [](unsigned char c) {
      return static_cast<char>(c >= 'A' && c <= 'Z' ? c + ('a' - 'A') : c);
    });
    out.insert(std::move(term));
  }
  return out;
}

const Stoplist& default_stoplist() {
  static const Stoplist list = parse_stoplist(detail::kDefaultStoplistText);
  return list;
}

Stoplist load_stoplist(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read stoplist '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stoplist(buf.str());
}

void save_tokens(const std::vector<TokenizedDoc>& docs, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& doc : docs) {
    nlohmann::json row;
    row["id"] = doc.id;
    row["tokens"] = doc.tokens;
    out << row.dump() << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<TokenizedDoc> load_tokens(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::vector<TokenizedDoc> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto row = nlohmann::json::parse(line);
      docs.push_back({row.at("id").get<std::string>(),
                      row.at("tokens").get<std::vector<std::string>>()});
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return docs;
}

}  // namespace clusart
