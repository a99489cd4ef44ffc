#include <istream>

#include "situfact/ingest.hpp"

namespace situfact {

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false, any = false, at_start = true;
  line_ = next_line_;
  int ch;
  while ((ch = in_.get()) != std::char_traits<char>::eof()) {
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++next_line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && at_start) {
      quoted = true;
      at_start = false;
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      at_start = true;
      continue;
    }
    if (c == '\r' && in_.peek() == '\n') continue;
    if (c == '\n') {
      ++next_line_;
      if (fields.empty() && field.empty()) {  // blank line
        line_ = next_line_;
        any = false;
        continue;
      }
      fields.push_back(std::move(field));
      return true;
    }
    field.push_back(c);
    at_start = false;
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

}  // namespace situfact
