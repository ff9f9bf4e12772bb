//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/corpus.hpp"

#include <charconv>
#include <stdexcept>

#include "covgen/util/io.hpp"

namespace covgen::chem {

std::vector<CorpusRecord> read_corpus(const std::string &path) {
  const std::vector<std::string> lines = util::read_lines(path);
  std::vector<CorpusRecord> records;
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string stripped = util::strip(lines[li]);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::vector<std::string> fields = util::split(stripped, '\t');
    CorpusRecord rec;
    rec.smiles = util::strip(fields[0]);
    rec.line = static_cast<int>(li + 1);
    if (fields.size() > 1 && !fields[1].empty()) rec.id = util::strip(fields[1]);
    if (fields.size() > 2 && !fields[2].empty()) {
      const std::string label = util::strip(fields[2]);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(label.data(), label.data() + label.size(), value);
      if (ec != std::errc{} || ptr != label.data() + label.size())
        throw std::runtime_error(path + ":" + std::to_string(li + 1) +
                                 ": malformed label '" + label + "'");
      rec.label = value;
    }
    if (rec.id.empty()) rec.id = "m" + std::to_string(records.size() + 1);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_corpus(const std::string &path,
                  const std::vector<CorpusRecord> &records) {
  std::string out;
  for (const CorpusRecord &rec : records) {
    out += rec.smiles;
    out += '\t';
    out += rec.id;
    if (rec.label) {
      out += '\t';
      out += util::format_double(*rec.label);
    }
    out += '\n';
  }
  util::write_file_atomic(path, out);
}

}  // namespace covgen::chem
