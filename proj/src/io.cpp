#include "topstab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace topstab::io {
namespace {

constexpr std::string_view kSamplesHeader = "corpus_id,run_id,K,measure,kind,pair_index,value";
constexpr std::string_view kStabilityHeader =
    "distribution,K,measure,kind,mean,variance,instability,t";

// Splits into lines, dropping a trailing '\r' and a final empty line.
std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = line.find(sep, start);
    if (end == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

[[noreturn]] void fail(std::size_t line_number, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line_number) + ": " + message);
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_number) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    fail(line_number, "cannot parse number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_corpus(const Corpus& corpus) {
  std::string out = std::to_string(corpus.num_terms()) + " " + std::to_string(corpus.num_documents()) + "\n";
  for (const auto& doc : corpus.documents()) {
    for (std::size_t i = 0; i < doc.size(); ++i) {
      if (i > 0) out.push_back(' ');
      out += std::to_string(doc[i]);
    }
    out.push_back('\n');
  }
  return out;
}

Corpus parse_corpus(std::string_view text, const Vocabulary& vocabulary) {
  const auto lines = lines_of(text);
  if (lines.empty()) fail(1, "missing 'V M' header");
  const auto header = split(lines[0], ' ');
  if (header.size() != 2) fail(1, "header must be 'V M'");
  const auto v = parse_number<std::size_t>(header[0], 1);
  const auto m = parse_number<std::size_t>(header[1], 1);
  if (v != vocabulary.size()) {
    fail(1, "header V=" + std::to_string(v) + " but vocabulary has " +
                std::to_string(vocabulary.size()) + " terms");
  }
  if (lines.size() - 1 != m) {
    fail(1, "header M=" + std::to_string(m) + " but file has " + std::to_string(lines.size() - 1) +
                " document lines");
  }
  std::vector<Document> documents;
  documents.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    Document doc;
    if (lines[i].empty()) fail(i + 1, "empty document");
    for (auto field : split(lines[i], ' ')) {
      const auto w = parse_number<TermId>(field, i + 1);
      if (w >= v) fail(i + 1, "term index " + std::to_string(w) + " out of range");
      doc.push_back(w);
    }
    documents.push_back(std::move(doc));
  }
  try {
    return Corpus(vocabulary, std::move(documents));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid corpus: ") + e.what());
  }
}

std::string format_vocabulary(const Vocabulary& vocabulary) {
  std::string out;
  for (const auto& term : vocabulary.terms()) {
    out += term;
    out.push_back('\n');
  }
  return out;
}

Vocabulary parse_vocabulary(std::string_view text) {
  std::vector<std::string> terms;
  for (auto line : lines_of(text)) terms.emplace_back(line);
  try {
    return Vocabulary(std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid vocabulary: ") + e.what());
  }
}

std::string format_matrix(const StochasticMatrix& matrix) {
  std::string out;
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    const auto row = matrix.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out.push_back(',');
      out += format_double(row[c]);
    }
    out.push_back('\n');
  }
  return out;
}

StochasticMatrix parse_matrix(std::string_view text) {
  const auto lines = lines_of(text);
  std::vector<double> data;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = split(lines[i], ',');
    if (i == 0) cols = fields.size();
    if (fields.size() != cols) {
      fail(i + 1, "expected " + std::to_string(cols) + " columns, found " + std::to_string(fields.size()));
    }
    for (auto f : fields) data.push_back(parse_number<double>(f, i + 1));
  }
  try {
    return StochasticMatrix(lines.size(), cols, std::move(data));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid matrix: ") + e.what());
  }
}

TopicWordMatrix parse_topic_word(std::string_view text) {
  auto m = parse_matrix(text);
  try {
    return TopicWordMatrix(m.rows(), m.cols(), m.data());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid topic-word matrix: ") + e.what());
  }
}

DocTopicMatrix parse_doc_topic(std::string_view text) {
  auto m = parse_matrix(text);
  try {
    return DocTopicMatrix(m.rows(), m.cols(), m.data());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid document-topic matrix: ") + e.what());
  }
}

std::string format_samples(std::span<const SimilaritySample> samples) {
  std::string out(kSamplesHeader);
  out.push_back('\n');
  for (const auto& s : samples) {
    out += std::to_string(s.corpus_id) + ',' + std::to_string(s.run_id) + ',' +
           std::to_string(s.topics) + ',' + to_string(s.measure) + ',' + to_string(s.kind) + ',' +
           std::to_string(s.pair_index) + ',' + format_double(s.value) + '\n';
  }
  return out;
}

std::vector<SimilaritySample> parse_samples(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kSamplesHeader) {
    fail(1, "expected header '" + std::string(kSamplesHeader) + "'");
  }
  std::vector<SimilaritySample> samples;
  samples.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 7) fail(i + 1, "expected 7 fields");
    SimilaritySample s;
    s.corpus_id = parse_number<std::size_t>(f[0], i + 1);
    s.run_id = parse_number<std::size_t>(f[1], i + 1);
    s.topics = parse_number<std::size_t>(f[2], i + 1);
    try {
      s.measure = parse_measure(std::string(f[3]));
      s.kind = parse_kind(std::string(f[4]));
    } catch (const std::invalid_argument& e) {
      fail(i + 1, e.what());
    }
    s.pair_index = parse_number<std::size_t>(f[5], i + 1);
    s.value = parse_number<double>(f[6], i + 1);
    samples.push_back(s);
  }
  return samples;
}

std::string format_stability(std::span<const StabilityRecord> records) {
  std::string out(kStabilityHeader);
  out.push_back('\n');
  for (const auto& r : records) {
    out += r.distribution + ',' + std::to_string(r.topics) + ',' + to_string(r.measure) + ',' +
           to_string(r.kind) + ',' + format_double(r.mean) + ',' + format_double(r.variance) + ',' +
           format_double(r.instability) + ',' + std::to_string(r.t) + '\n';
  }
  return out;
}

std::vector<StabilityRecord> parse_stability(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kStabilityHeader) {
    fail(1, "expected header '" + std::string(kStabilityHeader) + "'");
  }
  std::vector<StabilityRecord> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split(lines[i], ',');
    if (f.size() != 8) fail(i + 1, "expected 8 fields");
    StabilityRecord r;
    r.distribution = std::string(f[0]);
    r.topics = parse_number<std::size_t>(f[1], i + 1);
    try {
      r.measure = parse_measure(std::string(f[2]));
      r.kind = parse_kind(std::string(f[3]));
    } catch (const std::invalid_argument& e) {
      fail(i + 1, e.what());
    }
    r.mean = parse_number<double>(f[4], i + 1);
    r.variance = parse_number<double>(f[5], i + 1);
    r.instability = parse_number<double>(f[6], i + 1);
    r.t = parse_number<std::size_t>(f[7], i + 1);
    records.push_back(std::move(r));
  }
  return records;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace topstab::io
