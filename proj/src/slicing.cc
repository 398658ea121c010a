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

#include "microslice/slicing.h"

#include <algorithm>
#include <deque>
#include <map>
#include <string>

#include "microslice/error.h"
#include "microslice/mondrian.h"
#include "microslice/random.h"

namespace microslice {

// ---------------------------------------------------------------------------
// Column generalization

bool Region::Contains(std::span<const Code> values) const {
  for (size_t i = 0; i < bounds.size(); ++i) {
    if (values[i] < bounds[i].first || values[i] > bounds[i].second) {
      return false;
    }
  }
  return true;
}

size_t ColumnGeneralization::RegionOf(std::span<const Code> values) const {
  for (size_t r = 0; r < regions.size(); ++r) {
    if (regions[r].Contains(values)) return r;
  }
  throw ConfigError("value lies outside every region of the column");
}

namespace {

void GeneralizeRecursive(const Table& source, std::span<const size_t> column,
                         size_t k, const std::vector<size_t>& rows,
                         std::vector<std::pair<Code, Code>> bounds,
                         std::vector<Region>* regions) {
  for (size_t attr : SplitOrder(source, rows, column)) {
    auto cut = SplitAtMedian(source, rows, attr);
    if (!cut || cut->left.size() < k || cut->right.size() < k) continue;
    const size_t pos = static_cast<size_t>(
        std::find(column.begin(), column.end(), attr) - column.begin());
    auto left_bounds = bounds;
    auto right_bounds = bounds;
    left_bounds[pos].second = cut->cut;
    right_bounds[pos].first = cut->cut + 1;
    GeneralizeRecursive(source, column, k, cut->left, std::move(left_bounds),
                        regions);
    GeneralizeRecursive(source, column, k, cut->right,
                        std::move(right_bounds), regions);
    return;
  }
  regions->push_back(Region{std::move(bounds), rows.size()});
}

}  // namespace

ColumnGeneralization GeneralizeColumn(const Table& source,
                                      std::span<const size_t> column,
                                      size_t k) {
  const size_t n = source.num_rows();
  if (k == 0 || k > n) {
    throw ConfigError("column generalization needs 1 <= k <= n (k = " +
                      std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  if (column.empty()) throw ConfigError("column generalization of no attributes");
  ColumnGeneralization gen;
  gen.attributes.assign(column.begin(), column.end());
  std::vector<std::pair<Code, Code>> bounds;
  for (size_t a : column) {
    const size_t dom = source.attribute(a).domain_size();
    bounds.emplace_back(0, static_cast<Code>(dom) - 1);
  }
  std::vector<size_t> rows(n);
  for (size_t r = 0; r < n; ++r) rows[r] = r;
  GeneralizeRecursive(source, column, k, rows, std::move(bounds),
                      &gen.regions);
  return gen;
}

// ---------------------------------------------------------------------------
// Column encoding

size_t ColumnEncoding::CodesHash::operator()(
    const std::vector<Code>& v) const {
  size_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (Code c : v) {
    h ^= static_cast<size_t>(static_cast<uint32_t>(c)) + 0x9e3779b97f4a7c15ULL +
         (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<Code> ColumnEncoding::Project(const Row& t,
                                          std::span<const size_t> attrs) const {
  std::vector<Code> out;
  out.reserve(attrs.size());
  for (size_t a : attrs) out.push_back(t[a]);
  return out;
}

ColumnEncoding::ColumnEncoding(std::shared_ptr<const Table> source,
                               AttributePartition partition,
                               ColumnGeneralizations generalizations)
    : source_(std::move(source)),
      partition_(std::move(partition)),
      generalizations_(std::move(generalizations)) {
  const Table& table = *source_;
  partition_.Validate(table);
  const size_t c = partition_.num_columns();
  const size_t sc = partition_.sensitive_column();
  const size_t s = table.sensitive();
  if (!generalizations_.empty() && generalizations_.size() != c) {
    throw ConfigError("one optional generalization per column expected");
  }
  generalizations_.resize(c);
  if (generalizations_[sc]) {
    throw ConfigError("the sensitive column cannot be generalized");
  }
  for (size_t i = 0; i < c; ++i) {
    if (generalizations_[i] &&
        generalizations_[i]->attributes != partition_.columns[i]) {
      throw ConfigError("generalization attributes do not match column " +
                        std::to_string(i + 1));
    }
  }
  for (size_t a : partition_.columns[sc]) {
    if (a != s) qi_attrs_.push_back(a);
  }

  books_.resize(c);
  index_.resize(c);
  const size_t n = table.num_rows();
  ids_.resize(n * c);
  qi_ids_.resize(n);
  for (size_t i = 0; i < c; ++i) {
    if (generalizations_[i]) {
      books_[i].resize(generalizations_[i]->regions.size());
    }
  }
  for (size_t r = 0; r < n; ++r) {
    const Row& row = table.row(r);
    for (size_t i = 0; i < c; ++i) {
      std::vector<Code> proj = Project(row, partition_.columns[i]);
      if (generalizations_[i]) {
        ids_[r * c + i] =
            static_cast<uint32_t>(generalizations_[i]->RegionOf(proj));
        continue;
      }
      auto [it, inserted] = index_[i].try_emplace(
          proj, static_cast<uint32_t>(books_[i].size()));
      if (inserted) books_[i].push_back(std::move(proj));
      ids_[r * c + i] = it->second;
    }
    std::vector<Code> qproj = Project(row, qi_attrs_);
    auto [qit, qinserted] =
        qi_index_.try_emplace(qproj, static_cast<uint32_t>(qi_book_.size()));
    if (qinserted) qi_book_.push_back(std::move(qproj));
    qi_ids_[r] = qit->second;
    const uint32_t sid = ids_[r * c + sc];
    if (sid == qi_of_.size()) {
      qi_of_.push_back(qit->second);
      sa_of_.push_back(row[s]);
    }
  }
}

uint32_t ColumnEncoding::Lookup(const Row& t, size_t column) const {
  std::vector<Code> proj = Project(t, partition_.columns[column]);
  if (const auto* gen = generalization(column)) {
    for (size_t r = 0; r < gen->regions.size(); ++r) {
      if (gen->regions[r].Contains(proj)) return static_cast<uint32_t>(r);
    }
    return kNoValue;
  }
  auto it = index_[column].find(proj);
  return it == index_[column].end() ? kNoValue : it->second;
}

uint32_t ColumnEncoding::LookupQi(const Row& t) const {
  auto it = qi_index_.find(Project(t, qi_attrs_));
  return it == qi_index_.end() ? kNoValue : it->second;
}

// ---------------------------------------------------------------------------
// Slicing

void ValidateBuckets(std::span<const Bucket> buckets, size_t n) {
  std::vector<bool> seen(n, false);
  size_t total = 0;
  for (const auto& b : buckets) {
    if (b.rows.empty()) throw ConfigError("empty bucket");
    for (size_t r : b.rows) {
      if (r >= n) throw ConfigError("bucket row index out of range");
      if (seen[r]) {
        throw ConfigError("row " + std::to_string(r) +
                          " appears in two buckets");
      }
      seen[r] = true;
      ++total;
    }
  }
  if (total != n) {
    throw ConfigError("buckets cover " + std::to_string(total) + " of " +
                      std::to_string(n) + " rows");
  }
}

SlicedTable Slice(std::shared_ptr<const Table> source,
                  const AttributePartition& partition,
                  std::span<const Bucket> buckets, uint64_t seed,
                  ColumnGeneralizations generalizations) {
  ValidateBuckets(buckets, source->num_rows());
  SlicedTable out;
  out.encoding = std::make_shared<const ColumnEncoding>(
      std::move(source), partition, std::move(generalizations));
  const ColumnEncoding& enc = *out.encoding;
  Rng rng(seed);
  out.buckets.reserve(buckets.size());
  for (const auto& b : buckets) {
    SlicedBucket sb;
    sb.members = b.rows;
    sb.columns.resize(enc.num_columns());
    for (size_t i = 0; i < enc.num_columns(); ++i) {
      auto& store = sb.columns[i];
      store.reserve(b.rows.size());
      for (size_t r : b.rows) store.push_back(enc.value_id(r, i));
      std::shuffle(store.begin(), store.end(), rng);
    }
    out.buckets.push_back(std::move(sb));
  }
  return out;
}

SlicedTable Slice(const Table& source, const AttributePartition& partition,
                  std::span<const Bucket> buckets, uint64_t seed,
                  ColumnGeneralizations generalizations) {
  return Slice(std::make_shared<const Table>(source), partition, buckets, seed,
               std::move(generalizations));
}

// ---------------------------------------------------------------------------
// Per-tuple probability model, computed directly from the column stores.

bool IsMatchingBucket(const SlicedTable& sliced, size_t bucket, const Row& t) {
  const ColumnEncoding& enc = *sliced.encoding;
  const SlicedBucket& b = sliced.buckets.at(bucket);
  for (size_t i = 0; i < enc.num_columns(); ++i) {
    const uint32_t id = enc.Lookup(t, i);
    if (id == kNoValue) return false;
    if (std::find(b.columns[i].begin(), b.columns[i].end(), id) ==
        b.columns[i].end()) {
      return false;
    }
  }
  return true;
}

double MatchingDegree(const SlicedTable& sliced, size_t bucket, const Row& t,
                      size_t column) {
  const ColumnEncoding& enc = *sliced.encoding;
  const SlicedBucket& b = sliced.buckets.at(bucket);
  if (column >= enc.num_columns()) {
    throw ConfigError("column index out of range");
  }
  size_t hits = 0;
  if (column == enc.sensitive_column()) {
    const uint32_t qi = enc.LookupQi(t);
    if (qi == kNoValue) return 0.0;
    for (uint32_t id : b.columns[column]) hits += enc.qi_of(id) == qi;
  } else {
    const uint32_t id = enc.Lookup(t, column);
    if (id == kNoValue) return 0.0;
    hits = static_cast<size_t>(
        std::count(b.columns[column].begin(), b.columns[column].end(), id));
  }
  return static_cast<double>(hits) / static_cast<double>(b.size());
}

std::optional<BucketProbabilities> ResidenceProbabilities(
    const Row& t, const SlicedTable& sliced) {
  BucketProbabilities out;
  double total = 0.0;
  for (size_t b = 0; b < sliced.num_buckets(); ++b) {
    double f = 1.0;
    for (size_t i = 0; i < sliced.num_columns() && f > 0.0; ++i) {
      f *= MatchingDegree(sliced, b, t, i);
    }
    if (f > 0.0) {
      out.emplace_back(b, f);
      total += f;
    }
  }
  if (out.empty()) return std::nullopt;
  for (auto& [b, p] : out) p /= total;
  return out;
}

std::optional<SensitiveDistribution> CandidateDistribution(
    const Row& t, const SlicedTable& sliced, size_t bucket) {
  const ColumnEncoding& enc = *sliced.encoding;
  const SlicedBucket& b = sliced.buckets.at(bucket);
  const uint32_t qi = enc.LookupQi(t);
  if (qi == kNoValue) return std::nullopt;
  std::map<Code, size_t> tally;
  size_t total = 0;
  for (uint32_t id : b.columns[enc.sensitive_column()]) {
    if (enc.qi_of(id) != qi) continue;
    ++tally[enc.sensitive_of(id)];
    ++total;
  }
  if (total == 0) return std::nullopt;
  SensitiveDistribution d;
  for (const auto& [s, count] : tally) {
    d.emplace_back(s, static_cast<double>(count) / static_cast<double>(total));
  }
  return d;
}

std::optional<SensitiveDistribution> SensitiveValueProbability(
    const Row& t, const SlicedTable& sliced) {
  auto residence = ResidenceProbabilities(t, sliced);
  if (!residence) return std::nullopt;
  std::map<Code, double> acc;
  for (const auto& [b, p] : *residence) {
    auto d = CandidateDistribution(t, sliced, b);
    for (const auto& [s, q] : *d) acc[s] += p * q;
  }
  return SensitiveDistribution(acc.begin(), acc.end());
}

// ---------------------------------------------------------------------------
// Diversity checking

namespace {

struct SensitiveCounts {
  uint32_t total = 0;
  std::vector<std::pair<Code, uint32_t>> by_value;
};

// Per-bucket value frequencies: one map per non-sensitive column, and for the
// sensitive column the sensitive-value counts behind each QI part.
struct BucketStats {
  uint32_t size = 0;
  std::vector<std::unordered_map<uint32_t, uint32_t>> counts;
  std::unordered_map<uint32_t, SensitiveCounts> sensitive;
};

BucketStats BuildStats(const ColumnEncoding& enc,
                       std::span<const size_t> rows) {
  const size_t sc = enc.sensitive_column();
  const Code s = static_cast<Code>(enc.source().sensitive());
  BucketStats st;
  st.size = static_cast<uint32_t>(rows.size());
  st.counts.resize(sc);
  for (size_t r : rows) {
    for (size_t i = 0; i < sc; ++i) ++st.counts[i][enc.value_id(r, i)];
    SensitiveCounts& sens = st.sensitive[enc.qi_id(r)];
    ++sens.total;
    const Code v = enc.source().at(r, static_cast<size_t>(s));
    auto it = std::find_if(sens.by_value.begin(), sens.by_value.end(),
                           [v](const auto& e) { return e.first == v; });
    if (it == sens.by_value.end()) {
      sens.by_value.emplace_back(v, 1);
    } else {
      ++it->second;
    }
  }
  return st;
}

// Distinct QI projections of the source rows: the c-1 non-sensitive column
// ids followed by the sensitive column's QI-part id.
struct KeySet {
  size_t width = 0;
  std::vector<uint32_t> flat;
  std::vector<size_t> representative;  // one source row per key
  std::vector<uint32_t> key_of_row;

  size_t size() const { return representative.size(); }
  const uint32_t* key(size_t k) const { return flat.data() + k * width; }
};

KeySet BuildKeys(const ColumnEncoding& enc) {
  KeySet ks;
  const size_t sc = enc.sensitive_column();
  ks.width = sc + 1;
  struct VecHash {
    size_t operator()(const std::vector<uint32_t>& v) const {
      size_t h = v.size();
      for (uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      return h;
    }
  };
  std::unordered_map<std::vector<uint32_t>, uint32_t, VecHash> index;
  ks.key_of_row.resize(enc.num_rows());
  std::vector<uint32_t> key(ks.width);
  for (size_t r = 0; r < enc.num_rows(); ++r) {
    for (size_t i = 0; i < sc; ++i) key[i] = enc.value_id(r, i);
    key[sc] = enc.qi_id(r);
    auto [it, inserted] =
        index.try_emplace(key, static_cast<uint32_t>(ks.representative.size()));
    if (inserted) {
      ks.representative.push_back(r);
      ks.flat.insert(ks.flat.end(), key.begin(), key.end());
    }
    ks.key_of_row[r] = it->second;
  }
  return ks;
}

// Statistics of one matching bucket for one key: the product of the
// non-sensitive matching degrees, and the bucket's sensitive counts for the
// key's QI part. f(t,B) = weight * total / size and
// f(t,B) * D(t,B)[s] = weight * count(s) / size.
struct Entry {
  uint32_t bucket;
  uint32_t size;
  double weight;
  const SensitiveCounts* sensitive;
};

bool MakeEntry(const BucketStats& st, const uint32_t* key, size_t width,
               uint32_t bucket, Entry* out) {
  const size_t sc = width - 1;
  double weight = 1.0;
  for (size_t i = 0; i < sc; ++i) {
    auto it = st.counts[i].find(key[i]);
    if (it == st.counts[i].end()) return false;
    weight *= static_cast<double>(it->second) / static_cast<double>(st.size);
  }
  auto it = st.sensitive.find(key[sc]);
  if (it == st.sensitive.end()) return false;
  *out = Entry{bucket, st.size, weight, &it->second};
  return true;
}

struct Worst {
  double probability = 0.0;
  Code value = kMissing;
};

class Evaluator {
 public:
  explicit Evaluator(size_t sensitive_domain)
      : numerators_(sensitive_domain, 0.0) {}

  // max_s p(t,s) for a key's matching-bucket list.
  Worst Evaluate(std::span<const Entry> entries) {
    double total = 0.0;
    touched_.clear();
    for (const Entry& e : entries) {
      const double scale = e.weight / static_cast<double>(e.size);
      total += scale * static_cast<double>(e.sensitive->total);
      for (const auto& [s, count] : e.sensitive->by_value) {
        if (numerators_[s] == 0.0) touched_.push_back(s);
        numerators_[s] += scale * static_cast<double>(count);
      }
    }
    Worst w;
    for (Code s : touched_) {
      const double p = numerators_[s] / total;
      if (p > w.probability || (p == w.probability && s < w.value)) {
        w.probability = p;
        w.value = s;
      }
      numerators_[s] = 0.0;
    }
    return w;
  }

 private:
  std::vector<double> numerators_;
  std::vector<Code> touched_;
};

std::shared_ptr<const Table> Borrow(const Table& t) {
  return std::shared_ptr<const Table>(std::shared_ptr<const Table>(), &t);
}

void CheckL(double l) {
  if (!(l > 1.0)) {
    throw ConfigError("l must be greater than 1, got " + FormatNumber(l));
  }
}

}  // namespace

DiversityReport CheckDiversity(const Table& source,
                               std::span<const Bucket> buckets,
                               const AttributePartition& partition, double l,
                               const ColumnGeneralizations& generalizations) {
  CheckL(l);
  ValidateBuckets(buckets, source.num_rows());
  const ColumnEncoding enc(Borrow(source), partition, generalizations);
  const size_t sc = enc.sensitive_column();

  // Pass 1: value frequencies per bucket.
  std::vector<BucketStats> stats;
  stats.reserve(buckets.size());
  for (const auto& b : buckets) stats.push_back(BuildStats(enc, b.rows));

  // Postings: which buckets hold each column value (QI part for the
  // sensitive column), used to visit only matching buckets.
  std::vector<std::vector<std::vector<uint32_t>>> postings(sc + 1);
  for (size_t i = 0; i < sc; ++i) postings[i].resize(enc.num_values(i));
  postings[sc].resize(enc.num_qi_values());
  for (uint32_t b = 0; b < stats.size(); ++b) {
    for (size_t i = 0; i < sc; ++i) {
      for (const auto& [id, count] : stats[b].counts[i]) {
        postings[i][id].push_back(b);
      }
    }
    for (const auto& [qi, counts] : stats[b].sensitive) {
      postings[sc][qi].push_back(b);
    }
  }

  // Pass 2: matching statistics per tuple; pass 3: p(t,s).
  const KeySet keys = BuildKeys(enc);
  Evaluator evaluator(source.attribute(source.sensitive()).domain_size());
  DiversityReport report;
  std::vector<Entry> entries;
  for (size_t k = 0; k < keys.size(); ++k) {
    const uint32_t* key = keys.key(k);
    const std::vector<uint32_t>* shortest = &postings[0][key[0]];
    for (size_t i = 1; i <= sc; ++i) {
      if (postings[i][key[i]].size() < shortest->size()) {
        shortest = &postings[i][key[i]];
      }
    }
    entries.clear();
    for (uint32_t b : *shortest) {
      Entry e;
      if (MakeEntry(stats[b], key, keys.width, b, &e)) entries.push_back(e);
    }
    const Worst w = evaluator.Evaluate(entries);
    if (w.probability > report.worst_probability) {
      report.worst_probability = w.probability;
      report.worst_row = keys.representative[k];
      report.worst_value = w.value;
    }
  }
  report.satisfied = report.worst_probability <= 1.0 / l + kDiversityTolerance;
  return report;
}

bool DiversityCheck(const Table& source, std::span<const Bucket> buckets,
                    const AttributePartition& partition, double l,
                    const ColumnGeneralizations& generalizations) {
  return CheckDiversity(source, buckets, partition, l, generalizations)
      .satisfied;
}

namespace {

// Incremental form of CheckDiversity for the tuple-partition loop. Splitting
// B into B1 and B2 can only change p(t,s) for tuples that match B, so only
// those keys are re-evaluated; every other key keeps its (passing) value.
class PartitionState {
 public:
  PartitionState(const ColumnEncoding& enc, double l)
      : enc_(enc),
        keys_(BuildKeys(enc)),
        bound_(1.0 / l + kDiversityTolerance),
        evaluator_(enc.source().attribute(enc.source().sensitive())
                       .domain_size()),
        entries_(keys_.size()) {}

  // Installs the whole table as the first bucket. Returns its report.
  DiversityReport Init() {
    std::vector<size_t> all(enc_.num_rows());
    for (size_t r = 0; r < all.size(); ++r) all[r] = r;
    Node root;
    root.rows = std::move(all);
    root.stats = std::make_unique<BucketStats>(BuildStats(enc_, root.rows));
    DiversityReport report;
    for (uint32_t k = 0; k < keys_.size(); ++k) {
      Entry e;
      if (!MakeEntry(*root.stats, keys_.key(k), keys_.width, 0, &e)) continue;
      entries_[k].push_back(e);
      root.keys.push_back(k);
      const Worst w = evaluator_.Evaluate(entries_[k]);
      if (w.probability > report.worst_probability) {
        report.worst_probability = w.probability;
        report.worst_row = keys_.representative[k];
        report.worst_value = w.value;
      }
    }
    report.satisfied = report.worst_probability <= bound_;
    nodes_.push_back(std::move(root));
    return report;
  }

  const std::vector<size_t>& rows(uint32_t node) const {
    return nodes_[node].rows;
  }

  // Replaces `node` by two children when the result stays l-diverse.
  // Returns the child ids, or nullopt (state unchanged) otherwise.
  std::optional<std::pair<uint32_t, uint32_t>> TrySplit(
      uint32_t node, std::vector<size_t> left, std::vector<size_t> right) {
    const uint32_t lid = static_cast<uint32_t>(nodes_.size());
    const uint32_t rid = lid + 1;
    Node ln;
    Node rn;
    ln.rows = std::move(left);
    rn.rows = std::move(right);
    ln.stats = std::make_unique<BucketStats>(BuildStats(enc_, ln.rows));
    rn.stats = std::make_unique<BucketStats>(BuildStats(enc_, rn.rows));

    const std::vector<uint32_t>& affected = nodes_[node].keys;
    std::vector<std::vector<Entry>> updated(affected.size());
    for (size_t i = 0; i < affected.size(); ++i) {
      const uint32_t k = affected[i];
      auto& list = updated[i];
      list.reserve(entries_[k].size() + 1);
      for (const Entry& e : entries_[k]) {
        if (e.bucket != node) list.push_back(e);
      }
      Entry e;
      if (MakeEntry(*ln.stats, keys_.key(k), keys_.width, lid, &e)) {
        list.push_back(e);
        ln.keys.push_back(k);
      }
      if (MakeEntry(*rn.stats, keys_.key(k), keys_.width, rid, &e)) {
        list.push_back(e);
        rn.keys.push_back(k);
      }
      if (evaluator_.Evaluate(list).probability > bound_) return std::nullopt;
    }
    for (size_t i = 0; i < affected.size(); ++i) {
      entries_[affected[i]] = std::move(updated[i]);
    }
    Node& old = nodes_[node];
    old.stats.reset();
    old.keys = {};
    nodes_.push_back(std::move(ln));
    nodes_.push_back(std::move(rn));
    return std::make_pair(lid, rid);
  }

 private:
  struct Node {
    std::vector<size_t> rows;
    std::unique_ptr<BucketStats> stats;
    std::vector<uint32_t> keys;  // keys matching this bucket
  };

  const ColumnEncoding& enc_;
  KeySet keys_;
  double bound_;
  Evaluator evaluator_;
  std::vector<std::vector<Entry>> entries_;
  std::deque<Node> nodes_;
};

}  // namespace

std::vector<Bucket> TuplePartition(const Table& source,
                                   const AttributePartition& partition,
                                   double l,
                                   const TuplePartitionOptions& options) {
  CheckL(l);
  if (source.num_rows() == 0) return {};
  const ColumnEncoding enc(Borrow(source), partition, options.generalizations);
  PartitionState state(enc, l);
  const DiversityReport root = state.Init();
  if (!root.satisfied) {
    throw UnsatisfiableError(
        "no l-diverse slicing for l = " + FormatNumber(l) +
            ": the unsplit table already gives p(t,s) = " +
            FormatNumber(root.worst_probability) + " for " +
            source.attribute(source.sensitive()).name + " = " +
            source.label(source.sensitive(), root.worst_value),
        root.worst_probability);
  }

  const std::vector<size_t> qis = source.quasi_identifiers();
  std::deque<uint32_t> queue = {0};
  std::vector<uint32_t> sliced;

  auto snapshot = [&](const std::vector<size_t>& left,
                      const std::vector<size_t>& right) {
    std::vector<Bucket> all;
    for (uint32_t id : queue) all.push_back(Bucket{state.rows(id)});
    all.push_back(Bucket{left});
    all.push_back(Bucket{right});
    for (uint32_t id : sliced) all.push_back(Bucket{state.rows(id)});
    return all;
  };

  while (!queue.empty()) {
    const uint32_t node = queue.front();
    queue.pop_front();
    bool split = false;
    const std::vector<size_t> rows = state.rows(node);
    for (size_t attr : SplitOrder(source, rows, qis)) {
      auto cut = SplitAtMedian(source, rows, attr);
      if (!cut) continue;
      std::vector<Bucket> candidate;
      if (options.on_split) candidate = snapshot(cut->left, cut->right);
      auto children =
          state.TrySplit(node, std::move(cut->left), std::move(cut->right));
      if (options.on_split) options.on_split(candidate, children.has_value());
      if (children) {
        queue.push_back(children->first);
        queue.push_back(children->second);
        split = true;
        break;
      }
    }
    if (!split) sliced.push_back(node);
  }

  std::vector<Bucket> out;
  out.reserve(sliced.size());
  for (uint32_t id : sliced) out.push_back(Bucket{state.rows(id)});
  return out;
}

}  // namespace microslice
