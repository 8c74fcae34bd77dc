#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace branchlens::csv {

// RFC 4180: fields containing comma, quote, CR or LF are quoted, quotes doubled.
std::string escape(std::string_view field);
// Joined with commas, terminated by CRLF.
std::string row(const std::vector<std::string>& fields);

struct Record {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

// Parses RFC 4180 text (CRLF or LF line breaks). Throws Error(ParseError) on an
// unterminated quote.
std::vector<Record> parse(std::string_view text);

}  // namespace branchlens::csv
