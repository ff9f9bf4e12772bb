//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_UTIL_IO_HPP
#define COVGEN_UTIL_IO_HPP

#include <string>
#include <vector>

namespace covgen::util {

std::string read_file(const std::string &path);
std::vector<std::string> read_lines(const std::string &path);

// Writes to <path>.tmp then renames, so readers never observe a partial file.
void write_file_atomic(const std::string &path, const std::string &content);

std::string strip(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// Shortest decimal round-trip formatting; CSV and corpus emitters use this
// so reruns are byte-identical.
std::string format_double(double v);

}  // namespace covgen::util

#endif  // COVGEN_UTIL_IO_HPP
