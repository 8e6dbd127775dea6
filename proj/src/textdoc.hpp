#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hypcert/error.hpp"

namespace hypcert::detail {

inline constexpr std::string_view kCertificateMagic = "hypcert-certificate v1";

std::vector<std::string> split_words(std::string_view line);

/// Cursor over the lines of a certificate document.
class LineReader {
 public:
  explicit LineReader(std::string_view text);

  bool done() const { return pos_ >= lines_.size(); }
  std::string_view peek() const;
  std::string_view next();
  /// Consumes a "key: value" line and returns the value.
  std::string field(std::string_view key);
  std::vector<std::string> words(std::string_view key) { return split_words(field(key)); }
  void expect(std::string_view exact);
  /// Consumes lines up to (and including) the matching "end" of a nested
  /// document opened by the magic line; returns the nested text.
  std::string nested_document();

  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

long parse_long(const std::string& s);
std::size_t parse_size(const std::string& s);

}  // namespace hypcert::detail
