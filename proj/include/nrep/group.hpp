#pragma once

#include "nrep/arith.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace nrep {

/// Finite group on indices 0..n-1 (0 = identity), given by right multiplication by generators.
class GroupTable {
 public:
  GroupTable() : right_{{}}, words_{{}} {}
  explicit GroupTable(std::vector<std::vector<int>> right) : right_(std::move(right)) {
    std::size_t n = right_.size();
    words_.assign(n, {});
    std::vector<bool> seen(n, false);
    std::deque<int> q{0};
    seen[0] = true;
    while (!q.empty()) {
      int a = q.front();
      q.pop_front();
      for (std::size_t g = 0; g < right_[a].size(); ++g) {
        int b = right_[a][g];
        if (seen[b]) continue;
        seen[b] = true;
        words_[b] = words_[a];
        words_[b].push_back(static_cast<int>(g));
        q.push_back(b);
      }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw std::logic_error("group table is not connected");
    if (n <= 2048) {
      table_.resize(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table_[a * n + b] = walk(static_cast<int>(a), b);
    }
  }

  std::size_t size() const { return right_.size(); }
  std::size_t num_generators() const { return right_.empty() ? 0 : right_[0].size(); }
  int generator(std::size_t g) const { return right_[0][g]; }
  const std::vector<int>& word(int a) const { return words_[a]; }
  int right_mul(int a, std::size_t g) const { return right_[a][g]; }

  int mul(int a, int b) const {
    if (!table_.empty()) return table_[a * size() + b];
    return walk(a, b);
  }
  int pow(int a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 0;
    while (e > 0) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  int element_order(int a) const {
    int k = 1;
    for (int x = a; x != 0; x = mul(x, a)) ++k;
    return k;
  }
  int inv(int a) const {
    if (!table_.empty()) {
      for (std::size_t b = 0; b < size(); ++b)
        if (table_[a * size() + b] == 0) return static_cast<int>(b);
    }
    int o = element_order(a);
    return pow(a, o - 1);
  }
  int conj(int x, int g) const { return mul(mul(inv(g), x), g); }  // g^-1 x g

  long long exponent() const {
    long long e = 1;
    for (std::size_t a = 0; a < size(); ++a) e = lcm_ll(e, element_order(static_cast<int>(a)));
    return e;
  }

  bool is_abelian() const {
    for (std::size_t g = 0; g < num_generators(); ++g)
      for (std::size_t h = g + 1; h < num_generators(); ++h)
        if (mul(generator(g), generator(h)) != mul(generator(h), generator(g))) return false;
    return true;
  }

  /// Sorted elements of the subgroup generated by `gens`.
  std::vector<int> subgroup(std::span<const int> gens) const {
    std::vector<int> elems{0};
    std::vector<bool> in(size(), false);
    in[0] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int g : gens) {
        int p = mul(elems[i], g);
        if (!in[p]) {
          in[p] = true;
          elems.push_back(p);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  std::vector<int> all_elements() const {
    std::vector<int> v(size());
    for (std::size_t i = 0; i < size(); ++i) v[i] = static_cast<int>(i);
    return v;
  }

  bool is_subgroup_abelian(const std::vector<int>& H) const {
    for (int a : H)
      for (int b : H)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> conjugate_subgroup(const std::vector<int>& H, int g) const {
    std::vector<int> out;
    for (int h : H) out.push_back(conj(h, g));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool normalizes(int g, const std::vector<int>& H) const { return conjugate_subgroup(H, g) == H; }

  std::vector<int> normalizer(const std::vector<int>& H) const {
    std::vector<int> N;
    for (std::size_t g = 0; g < size(); ++g)
      if (normalizes(static_cast<int>(g), H)) N.push_back(static_cast<int>(g));
    return N;
  }

  bool is_normal(const std::vector<int>& H) const {
    for (std::size_t g = 0; g < num_generators(); ++g)
      if (!normalizes(generator(g), H)) return false;
    return true;
  }

  /// A minimal-ish generating set of a subgroup, chosen greedily.
  std::vector<int> generating_set(const std::vector<int>& H) const {
    std::vector<int> gens;
    std::vector<int> cur{0};
    for (int h : H) {
      if (std::binary_search(cur.begin(), cur.end(), h)) continue;
      gens.push_back(h);
      cur = subgroup(gens);
      if (cur.size() == H.size()) break;
    }
    return gens;
  }

  /// Every subgroup, each as a sorted element list; ordered by size then lexicographically.
  std::vector<std::vector<int>> all_subgroups() const {
    std::map<std::vector<int>, int> cyclic;
    for (std::size_t a = 0; a < size(); ++a) {
      int g = static_cast<int>(a);
      cyclic.emplace(subgroup(std::span<const int>(&g, 1)), g);
    }
    std::set<std::vector<int>> known;
    for (const auto& [C, g] : cyclic) known.insert(C);
    std::vector<std::vector<int>> work(known.begin(), known.end());
    while (!work.empty()) {
      auto H = work.back();
      work.pop_back();
      std::vector<int> base = generating_set(H);
      for (const auto& [C, c] : cyclic) {
        if (std::includes(H.begin(), H.end(), C.begin(), C.end())) continue;
        std::vector<int> gens = base;
        gens.push_back(c);
        auto J = subgroup(gens);
        if (known.insert(J).second) work.push_back(J);
      }
    }
    std::vector<std::vector<int>> out(known.begin(), known.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
  }

  /// Subgroups up to conjugacy (one representative per class).
  std::vector<std::vector<int>> subgroup_classes() const {
    auto all = all_subgroups();
    std::set<std::vector<int>> covered;
    std::vector<std::vector<int>> reps;
    for (const auto& H : all) {
      if (covered.count(H)) continue;
      reps.push_back(H);
      for (std::size_t g = 0; g < size(); ++g) covered.insert(conjugate_subgroup(H, static_cast<int>(g)));
    }
    return reps;
  }

  /// A Sylow p-subgroup, grown greedily inside normalizers.
  std::vector<int> sylow(long long p) const {
    if (!is_prime(p)) throw std::invalid_argument("sylow: " + std::to_string(p) + " is not prime");
    long long n = static_cast<long long>(size());
    if (n % p != 0)
      throw std::invalid_argument("sylow: " + std::to_string(p) + " does not divide the group order " +
                                  std::to_string(n));
    long long target = 1;
    while (n % p == 0) {
      n /= p;
      target *= p;
    }
    std::vector<int> P{0};
    while (static_cast<long long>(P.size()) < target) {
      // a p-element of N(P) outside P whose p-th power lies in P extends P by a factor p
      bool grown = false;
      for (int g : normalizer(P)) {
        if (std::binary_search(P.begin(), P.end(), g)) continue;
        if (!is_power_of(element_order(g), p)) continue;
        int x = g;
        while (!std::binary_search(P.begin(), P.end(), pow(x, p))) x = pow(x, p);
        std::vector<int> gens = generating_set(P);
        gens.push_back(x);
        P = subgroup(gens);
        grown = true;
        break;
      }
      if (!grown) throw std::logic_error("sylow: failed to extend p-subgroup");
    }
    return P;
  }

  /// Coset labelling for a normal subgroup K: label[g] = coset id, ids ordered by first element.
  std::vector<int> coset_labels(const std::vector<int>& K) const {
    std::vector<int> label(size(), -1);
    int next = 0;
    for (std::size_t g = 0; g < size(); ++g) {
      if (label[g] >= 0) continue;
      for (int k : K) label[mul(static_cast<int>(g), k)] = next;
      ++next;
    }
    return label;
  }

  /// Quotient by a normal subgroup; returns the quotient table and the coset labels.
  std::pair<GroupTable, std::vector<int>> quotient(const std::vector<int>& K) const {
    auto label = coset_labels(K);
    int m = *std::max_element(label.begin(), label.end()) + 1;
    std::vector<int> rep(m, -1);
    for (std::size_t g = 0; g < size(); ++g)
      if (rep[label[g]] < 0) rep[label[g]] = static_cast<int>(g);
    std::vector<std::vector<int>> right(m);
    for (int c = 0; c < m; ++c)
      for (std::size_t g = 0; g < num_generators(); ++g)
        right[c].push_back(label[right_[rep[c]][g]]);
    return {GroupTable(std::move(right)), label};
  }

  /// Number of elements of order exactly k.
  std::size_t count_of_order(int k) const {
    std::size_t c = 0;
    for (std::size_t a = 0; a < size(); ++a) c += element_order(static_cast<int>(a)) == k;
    return c;
  }

  bool is_cyclic() const {
    for (std::size_t a = 0; a < size(); ++a)
      if (static_cast<std::size_t>(element_order(static_cast<int>(a))) == size()) return true;
    return false;
  }

  /// Quaternion group of order 8: non-abelian with a unique involution.
  bool is_quaternion8() const {
    return size() == 8 && !is_subgroup_abelian(all_elements()) && count_of_order(2) == 1;
  }

 private:
  int walk(int a, std::size_t b) const {
    for (int g : words_[b]) a = right_[a][g];
    return a;
  }

  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> words_;
  std::vector<int> table_;
};

template <class T>
struct EnumeratedGroup {
  std::vector<T> elements;
  GroupTable table;
};

/// Breadth-first closure of `gens` under multiplication; element 0 is `identity`.
template <class T, class Mul, class Hash, class Eq = std::equal_to<T>>
EnumeratedGroup<T> enumerate_group(const T& identity, const std::vector<T>& gens, Mul mul, Hash hash,
                                   std::size_t cap = kDefaultCap, Eq eq = Eq{}) {
  EnumeratedGroup<T> out;
  std::unordered_multimap<std::size_t, int> index;
  auto find = [&](const T& x, std::size_t h) -> int {
    auto [lo, hi] = index.equal_range(h);
    for (auto it = lo; it != hi; ++it)
      if (eq(out.elements[it->second], x)) return it->second;
    return -1;
  };
  out.elements.push_back(identity);
  index.emplace(hash(identity), 0);
  std::vector<std::vector<int>> right;
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    std::vector<int> row;
    for (const T& g : gens) {
      T p = mul(out.elements[i], g);
      std::size_t h = hash(p);
      int j = find(p, h);
      if (j < 0) {
        if (out.elements.size() >= cap) throw CapExceeded(cap);
        j = static_cast<int>(out.elements.size());
        out.elements.push_back(std::move(p));
        index.emplace(h, j);
      }
      row.push_back(j);
    }
    right.push_back(std::move(row));
  }
  out.table = GroupTable(std::move(right));
  return out;
}

}  // namespace nrep
