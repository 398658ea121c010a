//
// Copyright 2026 The Microslice Authors
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
//
//
// File output helpers shared by the command-line tools.

#ifndef MICROSLICE_IO_H_
#define MICROSLICE_IO_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "microslice/slicing.h"

namespace microslice {

// Writes through a temporary sibling file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content);

std::string ReadTextFile(const std::filesystem::path& path);

// Sliced table layout:
//   slicing,v1
//   column,<i>,<attribute>,...        one line per column
//   bucket,<id>,<size>                then, per column:
//   column,<i>                        followed by <size> CSV lines
// Generalized column cells are written as "lo..hi" per attribute.
void WriteSliced(const SlicedTable& sliced, std::ostream& out);

}  // namespace microslice

#endif  // MICROSLICE_IO_H_
