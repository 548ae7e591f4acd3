#pragma once

// Report serialization with a fixed number format, so that reports are
// byte-identical across runs and platforms.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace schur::cli {

/// "%.16e"; non-finite values become "nan", "inf" or "-inf".
std::string format_double(double x);

/// Minimal streaming JSON emitter. Keys keep insertion order; doubles use
/// format_double and non-finite doubles are written as null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double x);
  JsonWriter& value(int x);
  JsonWriter& value(long long x);
  JsonWriter& value(std::size_t x);
  JsonWriter& value(bool x);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null();

  template <class T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  /// The document, with a trailing newline.
  std::string str() const;

 private:
  void separate();
  void indent();
  JsonWriter& close(char bracket);
  std::string out_;
  std::vector<bool> first_;  // one per open container
  bool after_key_ = false;
};

/// CSV with a fixed header; cells are preformatted strings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  class Row {
   public:
    Row& add(double x);
    Row& add(int x);
    Row& add(std::size_t x);
    Row& add(bool x);
    Row& add(std::string_view s);
    Row& add(const char* s) { return add(std::string_view(s)); }

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& row();
  std::size_t columns() const noexcept { return header_.size(); }
  /// Throws std::logic_error if any row has the wrong number of cells.
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// write_atomic when a path is given, otherwise the stream.
void write_output(const std::optional<std::filesystem::path>& path, std::string_view content,
                  std::ostream& fallback);

}  // namespace schur::cli
