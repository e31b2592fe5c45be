#include "numasched/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

constexpr std::string_view kMagic = "numa-trace v1";

template <typename Row>
void write_row(std::ostream& out, std::size_t width, Row&& at) {
  for (std::size_t c = 0; c < width; ++c) {
    if (c) out << ',';
    out << at(c);
  }
  out << '\n';
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string next(std::string_view what) {
    std::string line;
    if (!std::getline(in_, line)) fail("unexpected end of file, expected " + std::string(what));
    ++number_;
    if (in_.eof()) fail("missing newline at end of file");
    return line;
  }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("trace line " + std::to_string(number_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::size_t number_ = 0;
};

std::uint64_t parse_uint(std::string_view text, const LineReader& reader) {
  std::uint64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    reader.fail("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<Count> parse_row(const std::string& line, std::size_t width, const LineReader& reader) {
  std::vector<Count> row;
  row.reserve(width);
  std::string_view rest = line;
  while (true) {
    const std::size_t comma = rest.find(',');
    row.push_back(parse_uint(rest.substr(0, comma), reader));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (row.size() != width) {
    reader.fail("expected " + std::to_string(width) + " values, got " + std::to_string(row.size()));
  }
  return row;
}

std::size_t parse_dim(std::string_view token, std::string_view key, const LineReader& reader) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key || token[key.size()] != '=') {
    reader.fail("expected " + std::string(key) + "=<count>");
  }
  return static_cast<std::size_t>(parse_uint(token.substr(key.size() + 1), reader));
}

}  // namespace

void write_trace(std::ostream& out, const Trace& trace) {
  const SystemConfig& cfg = trace.config;
  out << kMagic << '\n';
  out << "N=" << cfg.n_threads << " L=" << cfg.n_nodes << " K=" << cfg.cores_per_node
      << " Q=" << cfg.n_quanta << '\n';
  for (std::size_t q = 0; q < trace.quanta.size(); ++q) {
    const QuantumCounts& counts = trace.quanta[q];
    out << "quantum " << q + 1 << '\n';
    for (ThreadId i = 0; i < cfg.n_threads; ++i) {
      write_row(out, cfg.n_threads, [&](std::size_t j) { return counts.c2c(i, j); });
    }
    out << "dram\n";
    for (ThreadId t = 0; t < cfg.n_threads; ++t) {
      write_row(out, cfg.n_nodes, [&](std::size_t n) { return counts.dram(t, n); });
    }
  }
}

std::string format_trace(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

Trace parse_trace(std::istream& in) {
  LineReader reader(in);
  if (reader.next("header") != kMagic) reader.fail("expected '" + std::string(kMagic) + "'");

  const std::string dims = reader.next("dimensions");
  std::vector<std::string_view> tokens;
  {
    std::string_view rest = dims;
    while (true) {
      const std::size_t space = rest.find(' ');
      tokens.push_back(rest.substr(0, space));
      if (space == std::string_view::npos) break;
      rest.remove_prefix(space + 1);
    }
  }
  if (tokens.size() != 4) reader.fail("expected 'N=<n> L=<l> K=<k> Q=<q>'");

  Trace trace;
  SystemConfig& cfg = trace.config;
  cfg.n_threads = parse_dim(tokens[0], "N", reader);
  cfg.n_nodes = parse_dim(tokens[1], "L", reader);
  cfg.cores_per_node = parse_dim(tokens[2], "K", reader);
  cfg.n_quanta = parse_dim(tokens[3], "Q", reader);
  if (auto v = cfg.violations(); !v.empty()) reader.fail("invalid dimensions: " + v.front());

  trace.quanta.reserve(cfg.n_quanta);
  for (std::size_t q = 1; q <= cfg.n_quanta; ++q) {
    if (reader.next("quantum header") != "quantum " + std::to_string(q)) {
      reader.fail("expected 'quantum " + std::to_string(q) + "'");
    }
    std::vector<std::vector<Count>> c2c_rows;
    for (ThreadId i = 0; i < cfg.n_threads; ++i) {
      c2c_rows.push_back(parse_row(reader.next("c2c row"), cfg.n_threads, reader));
    }
    if (reader.next("'dram'") != "dram") reader.fail("expected 'dram'");
    std::vector<std::vector<Count>> dram_rows;
    for (ThreadId t = 0; t < cfg.n_threads; ++t) {
      dram_rows.push_back(parse_row(reader.next("dram row"), cfg.n_nodes, reader));
    }
    try {
      trace.quanta.push_back({C2CMatrix::from_rows(c2c_rows), DramMatrix::from_rows(dram_rows)});
    } catch (const InvalidArgument& e) {
      reader.fail(std::string("quantum ") + std::to_string(q) + ": " + e.what());
    }
  }
  if (!reader.at_end()) reader.fail("trailing content after last quantum");
  return trace;
}

Trace parse_trace(const std::string& text) {
  std::istringstream in(text);
  return parse_trace(in);
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open trace file " + path.string());
  return parse_trace(in);
}

void write_trace_file(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  write_trace(out, trace);
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

}  // namespace numasched
