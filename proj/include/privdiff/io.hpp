// Copyright 2026 The privdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVDIFF_IO_HPP_
#define PRIVDIFF_IO_HPP_

#include <array>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace privdiff {

// Locale-independent shortest round-trip decimal text ('.' decimal point).
inline std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// --- Score-vector serialization -------------------------------------------

// JSON array of numbers.
inline void write_vector_json(std::ostream& out, std::span<const double> x) {
  out << '[';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out << ',';
    out << format_double(x[i]);
  }
  out << "]\n";
}

// Binary: 8-byte little-endian length header, then length IEEE-754 doubles,
// little-endian.
inline void write_vector_binary(std::ostream& out, std::span<const double> x) {
  const std::uint64_t len = x.size();
  std::array<unsigned char, 8> header;
  for (int b = 0; b < 8; ++b) {
    header[static_cast<std::size_t>(b)] =
        static_cast<unsigned char>((len >> (8 * b)) & 0xff);
  }
  out.write(reinterpret_cast<const char*>(header.data()), 8);
  for (double v : x) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    std::array<unsigned char, 8> word;
    for (int b = 0; b < 8; ++b) {
      word[static_cast<std::size_t>(b)] =
          static_cast<unsigned char>((bits >> (8 * b)) & 0xff);
    }
    out.write(reinterpret_cast<const char*>(word.data()), 8);
  }
}

inline std::vector<double> read_vector_binary(std::istream& in) {
  std::array<unsigned char, 8> header;
  if (!in.read(reinterpret_cast<char*>(header.data()), 8)) {
    throw std::runtime_error("read_vector_binary: truncated header");
  }
  std::uint64_t len = 0;
  for (int b = 7; b >= 0; --b) {
    len = (len << 8) | header[static_cast<std::size_t>(b)];
  }
  std::vector<double> out(len);
  for (std::uint64_t i = 0; i < len; ++i) {
    std::array<unsigned char, 8> word;
    if (!in.read(reinterpret_cast<char*>(word.data()), 8)) {
      throw std::runtime_error("read_vector_binary: truncated payload");
    }
    std::uint64_t bits = 0;
    for (int b = 7; b >= 0; --b) {
      bits = (bits << 8) | word[static_cast<std::size_t>(b)];
    }
    double v;
    std::memcpy(&v, &bits, 8);
    out[i] = v;
  }
  return out;
}

// --- CSV (RFC 4180) --------------------------------------------------------

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

inline void write_csv_row(std::ostream& out,
                          std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << "\r\n";
}

}  // namespace privdiff

#endif  // PRIVDIFF_IO_HPP_
