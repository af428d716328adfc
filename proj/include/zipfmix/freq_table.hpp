#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "zipfmix/errors.hpp"

namespace zipfmix {

// Frequency-of-frequencies table: row (value, freq) says `freq` distinct words
// occur exactly `value` times. Values strictly increasing, counts >= 1.
struct FreqOfFreqTable {
  struct Row {
    std::uint64_t value = 0;  // a word frequency i
    std::uint64_t freq = 0;   // number of words with that frequency, n_i
  };

  std::vector<Row> rows;

  std::uint64_t total_words() const {
    std::uint64_t n = 0;
    for (const auto& r : rows) n += r.freq;
    return n;
  }

  std::uint64_t total_tokens() const {
    std::uint64_t n = 0;
    for (const auto& r : rows) n += r.value * r.freq;
    return n;
  }

  std::uint64_t min_value() const { return rows.empty() ? 0 : rows.front().value; }
  std::uint64_t max_value() const { return rows.empty() ? 0 : rows.back().value; }

  void validate() const {
    if (rows.empty()) throw InvariantViolation("freq table: no rows");
    std::uint64_t prev = 0;
    for (const auto& r : rows) {
      if (r.value < 1) throw InvariantViolation("freq table: value must be >= 1");
      if (r.freq < 1) throw InvariantViolation("freq table: freq must be >= 1");
      if (r.value == prev)
        throw InvariantViolation("freq table: duplicate value " + std::to_string(r.value));
      if (r.value < prev)
        throw InvariantViolation("freq table: values must be strictly increasing");
      prev = r.value;
    }
  }
};

// CSV with header "value,freq", one row per distinct frequency, LF endings.
inline FreqOfFreqTable read_freq_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  FreqOfFreqTable table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "value,freq")
        throw ParseError("expected header \"value,freq\", got \"" + line + "\"", lineno);
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected \"value,freq\" row, got \"" + line + "\"", lineno);
    FreqOfFreqTable::Row row;
    try {
      std::size_t used = 0;
      row.value = std::stoull(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("trailing junk");
      const std::string rest = line.substr(comma + 1);
      row.freq = std::stoull(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw ParseError("malformed row \"" + line + "\"", lineno);
    }
    table.rows.push_back(row);
  }
  table.validate();
  return table;
}

inline void write_freq_table(const FreqOfFreqTable& table, const std::filesystem::path& path) {
  table.validate();
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
  if (!out) throw ParseError("cannot open " + path.string() + " for writing", 0);
  out << "value,freq\n";
  for (const auto& r : table.rows) out << r.value << ',' << r.freq << '\n';
}

}  // namespace zipfmix
