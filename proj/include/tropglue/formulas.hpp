#pragma once

#include "tropglue/type_ops.hpp"

#include <functional>

namespace tropglue {

inline Rational multiple_cover(long long k) {
  if (k < 1)
    throw DomainError("multiple cover needs k >= 1");
  Rational v(1, Integer(k) * k);
  return k % 2 ? v : -v;
}

// ---- wall recursion ----

struct WallChild {
  Integer k = 1;
  Rational W;
  std::optional<DecoratedType> type; // used for Aut when no key is given
  std::optional<std::string> key;    // isomorphism class label
  Rational kW() const { return Rational(k) * W; }
};

struct WallRecursionInput {
  std::vector<WallChild> children;
  Rational N_out;
  Integer w_out = 1;
  std::optional<Integer> aut; // supplied |Aut(children)|
};

// permutations of the children preserving their isomorphism classes
inline Integer children_automorphisms(const std::vector<WallChild> &cs) {
  if (cs.empty())
    return 1;
  bool keyed = std::all_of(cs.begin(), cs.end(), [](auto &c) { return c.key.has_value(); });
  if (keyed) {
    std::map<std::string, std::size_t> mult;
    for (auto &c : cs)
      ++mult[*c.key];
    Integer out = 1;
    for (auto &[k, m] : mult)
      out *= detail::factorial(m);
    return out;
  }
  std::vector<DecoratedType> ts;
  for (auto &c : cs) {
    if (!c.type)
      throw DomainError("child without type or key: automorphisms cannot be computed");
    ts.push_back(*c.type);
  }
  return tuple_automorphism_count(ts);
}

struct WallRecursionResult {
  Integer aut = 1;
  Rational kW; // k_tau W_tau
};

inline WallRecursionResult wall_recursion_step(const WallRecursionInput &in) {
  WallRecursionResult r;
  r.aut = in.aut ? *in.aut : children_automorphisms(in.children);
  if (r.aut <= 0 || detail::factorial(in.children.size()) % r.aut != 0)
    throw DomainError("automorphism count " + r.aut.str() + " does not divide q!");
  Rational prod = Rational(in.w_out) * in.N_out;
  for (auto &c : in.children)
    prod *= c.kW();
  r.kW = prod / Rational(r.aut);
  return r;
}

// A tree of wall types: each node is either a base case with known k W or
// is obtained from its children by one recursion step.
struct WallTree {
  std::string label;
  std::optional<Rational> base_kW;
  Rational N_out;
  Integer w_out = 1;
  std::vector<WallTree> children;

  std::string canonical() const {
    if (base_kW)
      return label + "=" + to_string(*base_kW);
    std::vector<std::string> cs;
    for (auto &c : children)
      cs.push_back(c.canonical());
    std::sort(cs.begin(), cs.end());
    std::string s = label + "[" + to_string(N_out) + "," + w_out.str() + "](";
    for (auto &c : cs)
      s += c + ";";
    return s + ")";
  }
};

inline Rational evaluate_wall_tree(const WallTree &t) {
  if (t.base_kW)
    return *t.base_kW;
  WallRecursionInput in;
  in.N_out = t.N_out;
  in.w_out = t.w_out;
  for (auto &c : t.children) {
    WallChild ch;
    ch.W = evaluate_wall_tree(c);
    ch.key = c.canonical();
    in.children.push_back(ch);
  }
  return wall_recursion_step(in).kW;
}

// ---- partitions and the blow-up formula ----

using Partition = std::vector<unsigned>; // non-increasing, positive
using WeightKey = std::pair<int, int>;
using PartitionCollection = std::map<WeightKey, Partition>;

inline Integer partition_aut(const Partition &p) {
  std::map<unsigned, std::size_t> mult;
  for (auto x : p)
    ++mult[x];
  Integer out = 1;
  for (auto &[k, m] : mult)
    out *= detail::factorial(m);
  return out;
}

inline Integer collection_aut(const PartitionCollection &c) {
  Integer out = 1;
  for (auto &[k, p] : c)
    out *= partition_aut(p);
  return out;
}

// partitions of n in lexicographically decreasing order: (n), (n-1,1), ...
inline std::vector<Partition> partitions_of(unsigned n) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(unsigned, unsigned)> rec = [&](unsigned left, unsigned cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (unsigned p = std::min(left, cap); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

inline std::string to_string(const PartitionCollection &c) {
  std::string s;
  for (auto &[k, p] : c) {
    if (!s.empty())
      s += " ";
    s += "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")=[";
    for (std::size_t i = 0; i < p.size(); ++i)
      s += (i ? "," : "") + std::to_string(p[i]);
    s += "]";
  }
  return s;
}

// all collections, first key varying slowest
inline std::vector<PartitionCollection> enumerate_collections(const std::map<WeightKey, unsigned> &weights) {
  std::vector<WeightKey> keys;
  std::vector<std::vector<Partition>> choices;
  for (auto &[k, w] : weights) {
    keys.push_back(k);
    choices.push_back(partitions_of(w));
  }
  std::vector<PartitionCollection> out;
  std::vector<std::size_t> idx(keys.size());
  while (true) {
    PartitionCollection c;
    for (std::size_t i = 0; i < keys.size(); ++i)
      c[keys[i]] = choices[i][idx[i]];
    out.push_back(std::move(c));
    std::size_t i = keys.size();
    while (i > 0) {
      --i;
      if (++idx[i] < choices[i].size())
        break;
      idx[i] = 0;
      if (i == 0)
        return out;
    }
    if (keys.empty())
      return out;
  }
}

using PartitionOracle = std::function<Rational(const PartitionCollection &)>;

struct BlowupTerm {
  PartitionCollection collection;
  Rational oracle_value;
  Integer aut;
  Rational factor; // prod (-1)^p / p
  Rational contribution;
};

struct BlowupResult {
  std::vector<BlowupTerm> terms;
  Rational value;
};

inline BlowupResult blowup_formula(const std::map<WeightKey, unsigned> &weights, const PartitionOracle &oracle) {
  BlowupResult r;
  for (auto &c : enumerate_collections(weights)) {
    BlowupTerm t;
    t.collection = c;
    t.aut = collection_aut(c);
    t.factor = 1;
    for (auto &[k, p] : c)
      for (auto x : p)
        t.factor *= Rational(x % 2 ? -1 : 1, x);
    t.oracle_value = oracle(c);
    t.contribution = t.oracle_value * t.factor / Rational(t.aut);
    r.value += t.contribution;
    r.terms.push_back(std::move(t));
  }
  return r;
}

// ---- finite covers of toric surfaces ----

struct CoverPair {
  Integer w_tilde, w;
};

inline Rational covering_relation(const Integer &mu, const std::vector<CoverPair> &pairs, const Rational &N_tilde) {
  if (mu < 1)
    throw DomainError("lattice index must be positive");
  Rational f = N_tilde;
  for (auto &p : pairs) {
    if (p.w_tilde <= 0 || p.w <= 0)
      throw DomainError("weights must be positive");
    if (p.w % p.w_tilde != 0)
      throw DomainError("w_tilde = " + p.w_tilde.str() + " does not divide w = " + p.w.str());
    if ((mu * p.w_tilde) % p.w != 0)
      throw DomainError("mu w_tilde / w is not integral for w = " + p.w.str());
    f *= Rational(mu * p.w_tilde / p.w);
  }
  return f / Rational(mu);
}

} // namespace tropglue
