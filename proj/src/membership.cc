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

#include "microslice/membership.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "microslice/error.h"
#include "microslice/random.h"

namespace microslice {

std::vector<Bucket> RandomGroup(size_t n, size_t p, uint64_t seed) {
  if (p == 0) throw ConfigError("bucket size must be at least 1");
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Bucket> out;
  for (size_t i = 0; i < n; i += p) {
    const size_t end = std::min(n, i + p);
    out.push_back(Bucket{std::vector<size_t>(order.begin() + i,
                                             order.begin() + end)});
  }
  return out;
}

namespace {

std::vector<uint32_t> Distinct(std::vector<uint32_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

using Key = unsigned __int128;

// Mixed-radix packing of one value id per column.
class KeyCodec {
 public:
  explicit KeyCodec(const ColumnEncoding& enc) {
    double bits = 0.0;
    for (size_t i = 0; i < enc.num_columns(); ++i) {
      radix_.push_back(std::max<size_t>(1, enc.num_values(i)));
      bits += std::log2(static_cast<double>(radix_.back()));
    }
    if (bits >= 127.0) {
      throw CapExceededError("tuple space too large to index (" +
                             FormatNumber(bits) + " bits)");
    }
  }

  Key Pack(std::span<const uint32_t> ids) const {
    Key k = 0;
    for (size_t i = 0; i < ids.size(); ++i) k = k * radix_[i] + ids[i];
    return k;
  }

  void Unpack(Key k, std::vector<uint32_t>* ids) const {
    ids->resize(radix_.size());
    for (size_t i = radix_.size(); i-- > 0;) {
      (*ids)[i] = static_cast<uint32_t>(k % radix_[i]);
      k /= radix_[i];
    }
  }

 private:
  std::vector<size_t> radix_;
};

// Sorted distinct keys of every tuple matching some bucket.
std::vector<Key> EnumerateCandidates(const SlicedTable& sliced,
                                     const KeyCodec& codec, uint64_t cap) {
  std::vector<Key> keys;
  const size_t c = sliced.num_columns();
  for (size_t b = 0; b < sliced.num_buckets(); ++b) {
    std::vector<std::vector<uint32_t>> sets;
    double product = 1.0;
    for (const auto& store : sliced.buckets[b].columns) {
      sets.push_back(Distinct(store));
      product *= static_cast<double>(sets.back().size());
    }
    if (product > static_cast<double>(cap) ||
        static_cast<double>(keys.size()) + product >
            static_cast<double>(cap)) {
      throw CapExceededError(
          "candidate enumeration exceeds the cap of " + std::to_string(cap) +
          " distinct tuples at bucket " + std::to_string(b) + " (" +
          FormatNumber(product) + " candidates in this bucket)");
    }
    std::vector<size_t> pos(c, 0);
    std::vector<uint32_t> ids(c);
    while (true) {
      for (size_t i = 0; i < c; ++i) ids[i] = sets[i][pos[i]];
      keys.push_back(codec.Pack(ids));
      size_t i = c;
      while (i-- > 0) {
        if (++pos[i] < sets[i].size()) break;
        pos[i] = 0;
      }
      if (i == static_cast<size_t>(-1)) break;
    }
    if (b + 1 == sliced.num_buckets() || keys.size() > (size_t{1} << 22)) {
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<Key> OriginalKeys(const SlicedTable& sliced,
                              const KeyCodec& codec) {
  const ColumnEncoding& enc = *sliced.encoding;
  std::vector<Key> keys;
  std::vector<uint32_t> ids(enc.num_columns());
  for (size_t r = 0; r < enc.num_rows(); ++r) {
    for (size_t i = 0; i < ids.size(); ++i) ids[i] = enc.value_id(r, i);
    keys.push_back(codec.Pack(ids));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<Key> FakeKeys(const SlicedTable& sliced, uint64_t cap) {
  const KeyCodec codec(*sliced.encoding);
  const std::vector<Key> candidates =
      EnumerateCandidates(sliced, codec, cap);
  const std::vector<Key> originals = OriginalKeys(sliced, codec);
  std::vector<Key> fakes;
  std::set_difference(candidates.begin(), candidates.end(), originals.begin(),
                      originals.end(), std::back_inserter(fakes));
  return fakes;
}

// Buckets containing each value, per column; postings are ascending.
using Postings = std::vector<std::vector<std::vector<uint32_t>>>;

Postings BuildPostings(const SlicedTable& sliced, bool qi_part) {
  const ColumnEncoding& enc = *sliced.encoding;
  const size_t c = enc.num_columns();
  const size_t sc = enc.sensitive_column();
  Postings postings(c);
  for (size_t i = 0; i < c; ++i) {
    postings[i].resize(qi_part && i == sc ? enc.num_qi_values()
                                          : enc.num_values(i));
  }
  for (uint32_t b = 0; b < sliced.num_buckets(); ++b) {
    for (size_t i = 0; i < c; ++i) {
      for (uint32_t id : sliced.buckets[b].columns[i]) {
        const uint32_t v = qi_part && i == sc ? enc.qi_of(id) : id;
        auto& list = postings[i][v];
        if (list.empty() || list.back() != b) list.push_back(b);
      }
    }
  }
  return postings;
}

size_t CountIntersection(std::vector<const std::vector<uint32_t>*> lists) {
  std::sort(lists.begin(), lists.end(),
            [](const auto* x, const auto* y) { return x->size() < y->size(); });
  size_t count = 0;
  for (uint32_t b : *lists[0]) {
    bool all = true;
    for (size_t i = 1; i < lists.size() && all; ++i) {
      all = std::binary_search(lists[i]->begin(), lists[i]->end(), b);
    }
    count += all;
  }
  return count;
}

}  // namespace

CandidateCount CountCandidates(const SlicedBucket& bucket) {
  CandidateCount out{1.0, 1.0};
  for (const auto& store : bucket.columns) {
    out.positional *= static_cast<double>(store.size());
    out.distinct *= static_cast<double>(Distinct(store).size());
  }
  return out;
}

void Bands::Add(size_t matches) {
  if (matches <= 10) {
    ++up_to_10;
  } else if (matches <= 20) {
    ++up_to_20;
  } else {
    ++above_20;
  }
}

size_t CountFakeTuples(const SlicedTable& sliced, uint64_t cap) {
  return FakeKeys(sliced, cap).size();
}

Bands OriginalMatchingHistogram(const SlicedTable& sliced) {
  const ColumnEncoding& enc = *sliced.encoding;
  const size_t c = enc.num_columns();
  const size_t sc = enc.sensitive_column();
  const Postings postings = BuildPostings(sliced, true);
  Bands bands;
  std::vector<const std::vector<uint32_t>*> lists(c);
  for (size_t r = 0; r < enc.num_rows(); ++r) {
    for (size_t i = 0; i < c; ++i) {
      lists[i] = &postings[i][i == sc ? enc.qi_id(r) : enc.value_id(r, i)];
    }
    bands.Add(CountIntersection(lists));
  }
  return bands;
}

namespace {

Bands FakeBands(const SlicedTable& sliced, const std::vector<Key>& fakes) {
  const KeyCodec codec(*sliced.encoding);
  const size_t c = sliced.num_columns();
  const Postings postings = BuildPostings(sliced, false);
  Bands bands;
  std::vector<uint32_t> ids;
  std::vector<const std::vector<uint32_t>*> lists(c);
  for (Key k : fakes) {
    codec.Unpack(k, &ids);
    for (size_t i = 0; i < c; ++i) lists[i] = &postings[i][ids[i]];
    bands.Add(CountIntersection(lists));
  }
  return bands;
}

}  // namespace

Bands FakeMatchingHistogram(const SlicedTable& sliced, uint64_t cap) {
  return FakeBands(sliced, FakeKeys(sliced, cap));
}

MembershipReport AnalyzeMembership(const SlicedTable& sliced, uint64_t cap) {
  MembershipReport report;
  report.n_original = sliced.source_n();
  const std::vector<Key> fakes = FakeKeys(sliced, cap);
  report.n_fake = fakes.size();
  report.original = OriginalMatchingHistogram(sliced);
  report.fake = FakeBands(sliced, fakes);
  for (const auto& b : sliced.buckets) {
    report.per_bucket.push_back(CountCandidates(b));
  }
  return report;
}

}  // namespace microslice
