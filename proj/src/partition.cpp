#include "cqg/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "cqg/caps.hpp"
#include "cqg/errors.hpp"

namespace cqg {

Partition::Partition(std::size_t ground_size, std::vector<std::vector<int>> blocks) {
  std::vector<int> labels(ground_size, -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw ArgumentError("Partition: empty block");
    for (int e : blocks[b]) {
      if (e < 1 || static_cast<std::size_t>(e) > ground_size)
        throw ArgumentError("Partition: element out of range");
      if (labels[e - 1] != -1) throw ArgumentError("Partition: blocks are not disjoint");
      labels[e - 1] = static_cast<int>(b);
    }
  }
  for (int l : labels)
    if (l == -1) throw ArgumentError("Partition: blocks do not cover the ground set");
  *this = from_labels(labels);
}

Partition Partition::from_labels(std::span<const int> labels) {
  Partition p;
  p.labels_.resize(labels.size());
  std::vector<int> remap;
  std::vector<int> seen_label;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(seen_label.begin(), seen_label.end(), labels[i]);
    int canon;
    if (it == seen_label.end()) {
      canon = static_cast<int>(seen_label.size());
      seen_label.push_back(labels[i]);
      p.blocks_.emplace_back();
    } else {
      canon = static_cast<int>(it - seen_label.begin());
    }
    p.labels_[i] = canon;
    p.blocks_[canon].push_back(static_cast<int>(i) + 1);
  }
  return p;
}

Partition Partition::singletons(std::size_t m) {
  std::vector<int> labels(m);
  std::iota(labels.begin(), labels.end(), 0);
  return from_labels(labels);
}

bool Partition::is_pairing() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const auto& b) { return b.size() == 2; });
}

bool Partition::is_noncrossing() const {
  const std::size_t m = labels_.size();
  // a < b < c < d with a,c in one block and b,d in another.
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      if (labels_[b] == labels_[a]) continue;
      for (std::size_t c = b + 1; c < m; ++c) {
        if (labels_[c] != labels_[a]) continue;
        for (std::size_t d = c + 1; d < m; ++d)
          if (labels_[d] == labels_[b]) return false;
      }
    }
  return true;
}

std::string Partition::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    os << (b ? ",{" : "{");
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) os << (i ? "," : "") << blocks_[b][i];
    os << '}';
  }
  os << '}';
  return os.str();
}

PartitionFamily::PartitionFamily(PartitionKind kind, std::optional<std::vector<bool>> colors)
    : kind_(kind), colors_(std::move(colors)) {
  if (colored() && !colors_) throw ArgumentError("PartitionFamily: colored kind needs a pattern");
  if (!colored() && colors_)
    throw ArgumentError("PartitionFamily: pattern given for an uncolored kind");
}

bool PartitionFamily::contains(const Partition& p) const {
  switch (kind_) {
    case PartitionKind::All:
      return true;
    case PartitionKind::Pairings:
      return p.is_pairing();
    case PartitionKind::Noncrossing:
      return p.is_noncrossing();
    case PartitionKind::NoncrossingPairings:
      return p.is_pairing() && p.is_noncrossing();
    case PartitionKind::ColoredPairings:
    case PartitionKind::NoncrossingColoredPairings: {
      const auto& c = *colors_;
      if (c.size() != p.ground_size() || !p.is_pairing()) return false;
      for (const auto& b : p.blocks())
        if (c[b[0] - 1] == c[b[1] - 1]) return false;
      return kind_ == PartitionKind::ColoredPairings || p.is_noncrossing();
    }
  }
  return false;
}

namespace {

void check_ground(std::size_t m) {
  if (m > caps().max_ground_size) {
    throw ResourceError("partition ground size " + std::to_string(m) +
                        " exceeds cap " + std::to_string(caps().max_ground_size));
  }
}

// Pairings by matching the smallest open position with each later one.
void enumerate_pairings(std::size_t m, const std::vector<bool>* colors, bool noncrossing,
                        std::vector<Partition>& out) {
  std::vector<int> labels(m, -1);
  int next = 0;
  std::function<void()> rec = [&]() {
    std::size_t first = 0;
    while (first < m && labels[first] != -1) ++first;
    if (first == m) {
      auto p = Partition::from_labels(labels);
      if (!noncrossing || p.is_noncrossing()) out.push_back(std::move(p));
      return;
    }
    for (std::size_t j = first + 1; j < m; ++j) {
      if (labels[j] != -1) continue;
      if (colors && (*colors)[first] == (*colors)[j]) continue;
      if (noncrossing) {
        // Positions strictly between must pair among themselves: an odd gap
        // of open positions forces a crossing.
        std::size_t open = 0;
        for (std::size_t t = first + 1; t < j; ++t) open += labels[t] == -1;
        if (open % 2) continue;
      }
      labels[first] = labels[j] = next++;
      rec();
      labels[first] = labels[j] = -1;
      --next;
    }
  };
  rec();
}

// Restricted growth strings. With `noncrossing`, a placement of position t
// into block B is rejected when some other block C has y < a < x < t with
// a in B and x, y in C.
void enumerate_rgs(std::size_t m, bool noncrossing, std::vector<Partition>& out) {
  std::vector<int> labels(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t t, int blocks) {
    if (t == m) {
      out.push_back(Partition::from_labels(labels));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      labels[t] = b;
      bool ok = true;
      if (noncrossing && b < blocks) {
        for (std::size_t a = 0; a < t && ok; ++a) {
          if (labels[a] != b) continue;
          for (std::size_t x = a + 1; x < t && ok; ++x) {
            if (labels[x] == b) continue;
            for (std::size_t y = 0; y < a; ++y)
              if (labels[y] == labels[x]) {
                ok = false;
                break;
              }
          }
        }
      }
      if (ok) rec(t + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Partition> enumerate_partitions(std::size_t m, const PartitionFamily& family) {
  check_ground(m);
  if (family.colored() && family.colors()->size() != m) {
    throw ArgumentError("enumerate_partitions: color pattern length " +
                        std::to_string(family.colors()->size()) + " != " + std::to_string(m));
  }
  std::vector<Partition> out;
  if (m == 0) {
    out.push_back(Partition::singletons(0));
    return out;
  }
  switch (family.kind()) {
    case PartitionKind::All:
      enumerate_rgs(m, false, out);
      break;
    case PartitionKind::Noncrossing:
      enumerate_rgs(m, true, out);
      break;
    case PartitionKind::Pairings:
    case PartitionKind::NoncrossingPairings:
    case PartitionKind::ColoredPairings:
    case PartitionKind::NoncrossingColoredPairings:
      if (m % 2) break;
      enumerate_pairings(m, family.colored() ? &*family.colors() : nullptr,
                         family.kind() == PartitionKind::NoncrossingPairings ||
                             family.kind() == PartitionKind::NoncrossingColoredPairings,
                         out);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Partition join(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size())
    throw ArgumentError("join: ground sizes differ");
  const std::size_t m = p.ground_size();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite_blocks = [&](const Partition& r) {
    for (const auto& b : r.blocks())
      for (std::size_t i = 1; i < b.size(); ++i) {
        int a = find(b[0] - 1), c = find(b[i] - 1);
        if (a != c) parent[std::max(a, c)] = std::min(a, c);
      }
  };
  unite_blocks(p);
  unite_blocks(q);
  std::vector<int> labels(m);
  for (std::size_t i = 0; i < m; ++i) labels[i] = find(static_cast<int>(i));
  return Partition::from_labels(labels);
}

int delta(const Partition& p, std::span<const int> idx) {
  if (idx.size() != p.ground_size()) throw ArgumentError("delta: index tuple length mismatch");
  for (const auto& b : p.blocks())
    for (std::size_t i = 1; i < b.size(); ++i)
      if (idx[b[i] - 1] != idx[b[0] - 1]) return 0;
  return 1;
}

RationalMatrix gram_matrix(std::span<const Partition> parts, std::uint32_t n) {
  if (n == 0) throw ArgumentError("gram_matrix: n must be positive");
  const std::size_t k = parts.size();
  for (const auto& p : parts) {
    check_ground(p.ground_size());
    if (p.ground_size() != parts[0].ground_size())
      throw ArgumentError("gram_matrix: partitions have different ground sizes");
  }
  RationalMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), n, join(parts[i], parts[j]).block_count());
      g(i, j) = mpq_class(v);
      g(j, i) = g(i, j);
    }
  return g;
}

RationalMatrix weingarten_matrix(std::span<const Partition> parts, std::uint32_t n) {
  return pseudo_inverse_psd(gram_matrix(parts, n));
}

}  // namespace cqg
