#ifndef EDGESTAT_REPORT_HPP
#define EDGESTAT_REPORT_HPP

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace edgestat {

/// Shortest string that parses back to the same double.
std::string format_double(double v);

/// RFC-4180 field quoting.
std::string csv_escape(const std::string& field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> r);
};

void write_csv(std::ostream& os, const Table& t);
/// {"meta": meta, "rows": [{column: value, ...}, ...]}
void write_json(std::ostream& os, const Table& t, const nlohmann::ordered_json& meta);

std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace edgestat

#endif
