#include "cpd/multiindex.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cpd/errors.hpp"

namespace cpd {

long long binomial(int n, int k) {
  if (n < 0 || k < 0) {
    throw CpdError(Errc::InvalidDims, "binomial requires n >= 0 and k >= 0");
  }
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > static_cast<unsigned __int128>(INT64_MAX)) {
      throw CpdError(Errc::Overflow, "binomial coefficient exceeds 64 bits");
    }
  }
  return static_cast<long long>(acc);
}

namespace {

long long family_size(IndexKind kind, int k, int n) {
  switch (kind) {
    case IndexKind::Strict:
      return binomial(n, k);
    case IndexKind::NonDecreasing:
      return binomial(n + k - 1, k);
    case IndexKind::All: {
      unsigned __int128 acc = 1;
      for (int i = 0; i < k; ++i) {
        acc *= static_cast<unsigned>(n);
        if (acc > static_cast<unsigned __int128>(INT64_MAX)) {
          throw CpdError(Errc::Overflow, "n^k exceeds 64 bits");
        }
      }
      return static_cast<long long>(acc);
    }
  }
  return 0;
}

}  // namespace

IndexFamily IndexFamily::enumerate(IndexKind kind, int k, int n) {
  if (k < 1 || n < 1) {
    throw CpdError(Errc::InvalidDims,
                   "tuple family requires k >= 1 and n >= 1");
  }
  const long long total = family_size(kind, k, n);
  if (total > 50'000'000LL) {
    throw CpdError(Errc::TooLarge, "tuple family would exceed 50e6 entries");
  }
  IndexFamily family(kind, k, n);
  family.tuples_.reserve(static_cast<std::size_t>(total));
  if (total == 0) return family;

  std::vector<int> t(k);
  // Lexicographically first tuple of each kind.
  for (int i = 0; i < k; ++i) {
    t[i] = (kind == IndexKind::Strict) ? i + 1 : 1;
  }
  while (true) {
    family.tuples_.push_back(t);
    // Advance to the lexicographic successor within the family.
    int pos = k - 1;
    while (pos >= 0) {
      const int limit = (kind == IndexKind::Strict) ? n - (k - 1 - pos) : n;
      if (t[pos] < limit) break;
      --pos;
    }
    if (pos < 0) break;
    ++t[pos];
    for (int i = pos + 1; i < k; ++i) {
      switch (kind) {
        case IndexKind::Strict:
          t[i] = t[i - 1] + 1;
          break;
        case IndexKind::NonDecreasing:
          t[i] = t[i - 1];
          break;
        case IndexKind::All:
          t[i] = 1;
          break;
      }
    }
  }
  return family;
}

const std::vector<int>& IndexFamily::tuple(long long i) const {
  if (i < 1 || i > size()) {
    throw CpdError(Errc::NotMember, "tuple rank out of range");
  }
  return tuples_[static_cast<std::size_t>(i - 1)];
}

bool IndexFamily::contains(const std::vector<int>& t) const {
  if (static_cast<int>(t.size()) != k_) return false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 1 || t[i] > n_) return false;
    if (i > 0) {
      if (kind_ == IndexKind::Strict && t[i] <= t[i - 1]) return false;
      if (kind_ == IndexKind::NonDecreasing && t[i] < t[i - 1]) return false;
    }
  }
  return true;
}

long long IndexFamily::rank(const std::vector<int>& t) const {
  if (!contains(t)) {
    throw CpdError(Errc::NotMember, "tuple is not a member of the family");
  }
  if (kind_ == IndexKind::All) {
    long long r = 0;
    for (int v : t) r = r * n_ + (v - 1);
    return r + 1;
  }
  // Lexicographic rank by binary search: the stored list is sorted.
  const auto it = std::lower_bound(tuples_.begin(), tuples_.end(), t);
  return static_cast<long long>(it - tuples_.begin()) + 1;
}

std::vector<std::vector<int>> multiset_permutations(const std::vector<int>& t) {
  const int k = static_cast<int>(t.size());
  if (k < 1 || k > 10) {
    throw CpdError(Errc::InvalidDims,
                   "multiset_permutations requires 1 <= length <= 10");
  }
  std::vector<int> positions(k);
  std::iota(positions.begin(), positions.end(), 0);
  std::vector<std::vector<int>> result;
  // Permute position indices (all distinct) so repeated values in t produce
  // repeated tuples and the output always has exactly k! entries.
  do {
    std::vector<int> mapped(k);
    for (int i = 0; i < k; ++i) mapped[i] = t[positions[i]];
    result.push_back(std::move(mapped));
  } while (std::next_permutation(positions.begin(), positions.end()));
  return result;
}

std::vector<int> sort_tuple(const std::vector<int>& t) {
  std::vector<int> s = t;
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace cpd
