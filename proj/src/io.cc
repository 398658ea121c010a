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

#include "microslice/io.h"

#include <fstream>
#include <sstream>

#include "microslice/error.h"

namespace microslice {

void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create " + path.parent_path().string() + ": " +
                    ec.message());
    }
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename into " + path.string() + ": " + ec.message());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteSliced(const SlicedTable& sliced, std::ostream& out) {
  const ColumnEncoding& enc = *sliced.encoding;
  const Table& src = enc.source();
  const auto& columns = enc.partition().columns;
  out << "slicing,v1\n";
  for (size_t i = 0; i < columns.size(); ++i) {
    out << "column," << i + 1;
    for (size_t a : columns[i]) out << ',' << CsvEscape(src.attribute(a).name);
    out << '\n';
  }
  for (size_t b = 0; b < sliced.num_buckets(); ++b) {
    const SlicedBucket& bucket = sliced.buckets[b];
    out << "bucket," << b + 1 << ',' << bucket.size() << '\n';
    for (size_t i = 0; i < columns.size(); ++i) {
      out << "column," << i + 1 << '\n';
      const ColumnGeneralization* gen = enc.generalization(i);
      for (uint32_t id : bucket.columns[i]) {
        for (size_t j = 0; j < columns[i].size(); ++j) {
          if (j) out << ',';
          const size_t a = columns[i][j];
          if (gen) {
            const auto& [lo, hi] = gen->regions[id].bounds[j];
            out << CsvEscape(src.label(a, lo) + ".." + src.label(a, hi));
          } else {
            out << CsvEscape(src.label(a, enc.codes(i, id)[j]));
          }
        }
        out << '\n';
      }
    }
  }
}

}  // namespace microslice
