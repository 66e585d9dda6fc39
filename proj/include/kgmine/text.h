// Copyright 2026 The kgmine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef KGMINE_TEXT_H_
#define KGMINE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace kgmine {

// Splits on every occurrence of sep; empty fields are preserved.
std::vector<std::string> Split(std::string_view text, char sep);

// Splits on runs of ASCII whitespace; no empty tokens.
std::vector<std::string> SplitWords(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

std::string ToLower(std::string_view text);

bool ContainsWhitespace(std::string_view text);

// Shortest decimal form that round-trips to the same double.
std::string FormatReal(double value);

// Fixed-point with the given number of decimals.
std::string FormatFixed(double value, int decimals);

// Reads a whole file; throws IoError if it cannot be opened.
std::string ReadFile(const std::string &path);

// Reads a file as lines with trailing '\r' removed.
std::vector<std::string> ReadLines(const std::string &path);

// Writes via a temporary file and rename so readers never see a partial file.
void WriteFileAtomic(const std::string &path, std::string_view content);

}  // namespace kgmine

#endif  // KGMINE_TEXT_H_
