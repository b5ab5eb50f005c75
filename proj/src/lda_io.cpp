#include "topicforge/lda_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "topicforge/error.hpp"
#include "topicforge/text_io.hpp"

namespace topicforge {
namespace fs = std::filesystem;

namespace {

constexpr std::string_view kMagic = "topicforge-lda-model";

void write_matrix(std::ostream& out, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next() {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError(number_ + 1, "unexpected end of model file");
    ++number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  std::size_t number() const { return number_; }

  std::string field(std::string_view key) {
    const std::string line = next();
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ')
      throw ParseError(number_, "expected '" + std::string(key) + " <value>'");
    return line.substr(key.size() + 1);
  }

  std::uint64_t uint_field(std::string_view key) {
    const std::string value = field(key);
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      throw ParseError(number_, "bad integer for " + std::string(key));
    return out;
  }

  double double_field(std::string_view key) {
    const std::string value = field(key);
    try {
      return parse_double(value);
    } catch (const DataError&) {
      throw ParseError(number_, "bad number for " + std::string(key));
    }
  }

  void expect(std::string_view text) {
    if (next() != text) throw ParseError(number_, "expected '" + std::string(text) + "'");
  }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string line = next();
      const auto cells = split(line, ' ');
      if (cells.size() != cols)
        throw ParseError(number_, "expected " + std::to_string(cols) + " values");
      for (std::size_t c = 0; c < cols; ++c) {
        try {
          m(r, c) = parse_double(cells[c]);
        } catch (const DataError&) {
          throw ParseError(number_, "bad value '" + std::string(cells[c]) + "'");
        }
      }
    }
    return m;
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const LdaModel& model) {
  const auto& hp = model.hyperparams;
  out << kMagic << ' ' << kModelFormatVersion << '\n';
  out << "topics " << model.num_topics() << '\n';
  out << "vocabulary " << model.vocabulary.size() << '\n';
  out << "documents " << model.num_documents() << '\n';
  out << "alpha " << format_double(hp.alpha) << '\n';
  out << "chi " << format_double(hp.chi) << '\n';
  out << "burn_in " << hp.burn_in << '\n';
  out << "iterations " << hp.iterations << '\n';
  out << "seed " << hp.seed << '\n';
  out << "terms\n";
  for (const auto& t : model.vocabulary.terms()) out << t << '\n';
  out << "document_ids\n";
  for (const auto& id : model.document_ids) out << id << '\n';
  out << "phi\n";
  write_matrix(out, model.phi);
  out << "psi\n";
  write_matrix(out, model.psi);
}

void write_model(const fs::path& path, const LdaModel& model) {
  std::ostringstream ss;
  write_model(ss, model);
  write_file(path, ss.str());
}

LdaModel read_model(std::istream& in) {
  LineReader reader(in);
  const std::string header = reader.next();
  const std::string expected = std::string(kMagic) + ' ' + std::to_string(kModelFormatVersion);
  if (header != expected) throw ParseError(1, "not a version " +
                                                  std::to_string(kModelFormatVersion) +
                                                  " topicforge model");
  LdaModel model;
  auto& hp = model.hyperparams;
  hp.topics = reader.uint_field("topics");
  const std::size_t V = reader.uint_field("vocabulary");
  const std::size_t D = reader.uint_field("documents");
  hp.alpha = reader.double_field("alpha");
  hp.chi = reader.double_field("chi");
  hp.burn_in = reader.uint_field("burn_in");
  hp.iterations = reader.uint_field("iterations");
  hp.seed = reader.uint_field("seed");
  try {
    hp.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(reader.number(), e.what());
  }

  reader.expect("terms");
  std::vector<std::string> terms;
  terms.reserve(V);
  for (std::size_t k = 0; k < V; ++k) terms.push_back(reader.next());
  model.vocabulary = Vocabulary(std::move(terms));
  reader.expect("document_ids");
  for (std::size_t k = 0; k < D; ++k) model.document_ids.push_back(reader.next());
  reader.expect("phi");
  model.phi = reader.matrix(hp.topics, V);
  reader.expect("psi");
  model.psi = reader.matrix(D, hp.topics);
  return model;
}

LdaModel read_model(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return read_model(in);
}

void write_trace_csv(const fs::path& path, std::span<const ChainTrace> traces) {
  std::string out = "chain_id,iteration,log_likelihood\n";
  for (const auto& t : traces) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      out += std::to_string(t.chain_id);
      out += ',';
      out += std::to_string(t.iterations[k]);
      out += ',';
      out += format_double(t.log_likelihood[k]);
      out += '\n';
    }
  }
  write_file(path, out);
}

std::vector<ChainTrace> read_trace_csv(const fs::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines[0] != "chain_id,iteration,log_likelihood")
    throw ParseError(1, "bad trace header");
  std::vector<ChainTrace> traces;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto cols = split(lines[k], ',');
    if (cols.size() != 3) throw ParseError(k + 1, "trace rows need 3 columns");
    std::size_t chain = 0, iteration = 0;
    auto [p1, e1] = std::from_chars(cols[0].data(), cols[0].data() + cols[0].size(), chain);
    auto [p2, e2] = std::from_chars(cols[1].data(), cols[1].data() + cols[1].size(), iteration);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != cols[0].data() + cols[0].size() ||
        p2 != cols[1].data() + cols[1].size())
      throw ParseError(k + 1, "bad chain id or iteration");
    double value = 0.0;
    try {
      value = parse_double(cols[2]);
    } catch (const DataError&) {
      throw ParseError(k + 1, "bad log likelihood");
    }
    if (traces.empty() || traces.back().chain_id != chain) {
      traces.push_back({});
      traces.back().chain_id = chain;
    }
    traces.back().iterations.push_back(iteration);
    traces.back().log_likelihood.push_back(value);
  }
  return traces;
}

}  // namespace topicforge
