#include "textdoc.hpp"

#include <charconv>

namespace hypcert::detail {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

LineReader::LineReader(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines_.push_back(line);
    start = end + 1;
  }
}

std::string_view LineReader::peek() const {
  if (done()) fail("unexpected end of certificate");
  return lines_[pos_];
}

std::string_view LineReader::next() {
  std::string_view line = peek();
  ++pos_;
  return line;
}

std::string LineReader::field(std::string_view key) {
  std::string_view line = next();
  if (!line.starts_with(key) || line.size() < key.size() + 1 || line[key.size()] != ':') {
    --pos_;
    fail("expected field '" + std::string(key) + "'");
  }
  line.remove_prefix(key.size() + 1);
  if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
  return std::string(line);
}

void LineReader::expect(std::string_view exact) {
  if (next() != exact) {
    --pos_;
    fail("expected '" + std::string(exact) + "'");
  }
}

std::string LineReader::nested_document() {
  if (peek() != kCertificateMagic) fail("expected nested certificate");
  std::string out;
  int depth = 0;
  while (true) {
    std::string_view line = next();
    if (line == kCertificateMagic) ++depth;
    if (line == "end") --depth;
    out.append(line);
    out.push_back('\n');
    if (depth == 0) return out;
  }
}

void LineReader::fail(const std::string& what) const {
  throw MalformedCertificate(what + " (line " + std::to_string(pos_ + 1) + ")");
}

long parse_long(const std::string& s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw MalformedCertificate("invalid integer '" + s + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& s) {
  const long v = parse_long(s);
  if (v < 0) throw MalformedCertificate("negative count '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace hypcert::detail
