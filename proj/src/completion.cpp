#include "dsc/completion.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <functional>

namespace dsc {

bool is_dsnc(const Dsc& d) {
  for (EventId e = 0; e < d.size(); ++e)
    if (d.dep(e).size() != 1) return false;
  return true;
}

FinitePoset r_poset(const Dsc& d) {
  if (!is_dsnc(d)) throw ContractError("r_poset requires a DSNC");
  const std::size_t n = d.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (EventId a = 0; a < n; ++a) {
    leq[a][a] = 1;
    d.dep(a)[0].for_each([&](EventId b) { leq[b][a] = 1; });
  }
  return FinitePoset(d.ground().labels(), std::move(leq));
}

std::vector<std::size_t> join_irreducible_elements(const FiniteLattice& l) {
  std::vector<std::size_t> lower_covers(l.size(), 0);
  for (auto [lo, hi] : l.covers()) ++lower_covers[hi];
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < l.size(); ++i)
    if (i != l.bottom() && lower_covers[i] == 1) out.push_back(i);
  return out;
}

bool is_distributive_subset(const FiniteLattice& l, const std::vector<std::size_t>& s) {
  std::size_t j = l.bottom();
  for (std::size_t x : s) j = l.join(j, x);
  for (std::size_t x = 0; x < l.size(); ++x) {
    std::size_t lhs = l.meet(x, j);
    std::size_t rhs = l.bottom();
    for (std::size_t m : s) rhs = l.join(rhs, l.meet(x, m));
    if (lhs != rhs) return false;
  }
  return true;
}

FiniteLattice distributive_ideals(const FiniteLattice& l) {
  const std::size_t n = l.size();
  if (n > 16) throw SizeError("distributive-ideal oracle capped at 16 elements");
  const std::uint32_t all = static_cast<std::uint32_t>((1u << n) - 1);

  // per-mask join, built by peeling the lowest bit
  std::vector<std::uint16_t> join_of(std::size_t{1} << n);
  join_of[0] = static_cast<std::uint16_t>(l.bottom());
  for (std::uint32_t m = 1; m <= all; ++m) {
    std::uint32_t low = m & (~m + 1);
    int bit = std::countr_zero(low);
    join_of[m] = static_cast<std::uint16_t>(
        l.join(join_of[m ^ low], static_cast<std::size_t>(bit)));
  }

  std::vector<std::uint32_t> down(n, 0);  // strict+reflexive downmask per element
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (l.leq(j, i)) down[i] |= 1u << j;

  auto distributive = [&](std::uint32_t sub) {
    std::size_t j = join_of[sub];
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t rhs = l.bottom();
      for (std::uint32_t m = sub; m != 0; m &= m - 1)
        rhs = l.join(rhs, l.meet(x, static_cast<std::size_t>(std::countr_zero(m))));
      if (l.meet(x, j) != rhs) return false;
    }
    return true;
  };

  std::vector<EventSet> family;
  for (std::uint32_t m = 0; m <= all; ++m) {
    bool is_down = true;
    for (std::uint32_t t = m; t != 0 && is_down; t &= t - 1)
      if ((down[std::countr_zero(t)] & ~m) != 0) is_down = false;
    if (!is_down) continue;
    bool closed = true;
    for (std::uint32_t sub = m; sub != 0; sub = (sub - 1) & m) {
      if ((m >> join_of[sub]) & 1) continue;
      if (distributive(sub)) { closed = false; break; }
    }
    if (closed) family.push_back(EventSet::from_bits(m));
  }
  return FiniteLattice::from_family(l.names(), std::move(family));
}

DistributiveLatticeView bruns_lakser(const FiniteLattice& l) {
  DistributiveLatticeView view;
  view.j_ambient = join_irreducible_elements(l);
  const std::size_t k = view.j_ambient.size();
  if (k > EventSet::kMaxEvents) throw SizeError("too many join-irreducibles");

  std::vector<std::vector<char>> jleq(k, std::vector<char>(k, 0));
  std::vector<std::string> jnames(k);
  for (std::size_t i = 0; i < k; ++i) {
    jnames[i] = l.name(view.j_ambient[i]);
    for (std::size_t j = 0; j < k; ++j)
      jleq[i][j] = l.leq(view.j_ambient[i], view.j_ambient[j]) ? 1 : 0;
  }
  view.base = downsets(FinitePoset(jnames, std::move(jleq)));

  view.embedding.resize(l.size());
  for (std::size_t x = 0; x < l.size(); ++x) {
    EventSet s;
    for (std::size_t i = 0; i < k; ++i)
      if (l.leq(view.j_ambient[i], x)) s = s.with(static_cast<EventId>(i));
    auto idx = view.base.index_of_set(s);
    if (!idx) throw ContractError("embedding image is not a downset");
    view.embedding[x] = *idx;
  }
  return view;
}

Dsc dlattice_to_dsnc(const FiniteLattice& l) {
  if (!is_distributive(l)) throw ContractError("Birkhoff inverse requires a distributive lattice");
  std::vector<std::size_t> js = join_irreducible_elements(l);
  std::vector<std::string> labels;
  for (std::size_t j : js) labels.push_back(l.name(j));
  Ground g(labels);
  std::vector<std::vector<EventSet>> dep(g.size());
  for (std::size_t j : js) {
    EventSet below;
    for (std::size_t j2 : js)
      if (j2 != j && l.leq(j2, j)) below = below.with(g.index(l.name(j2)));
    dep[g.index(l.name(j))] = {below};
  }
  return Dsc(PreDsc(std::move(g), std::move(dep)));
}

Dsc merkle_dsnc(const Dsc& d, std::size_t cap) {
  std::vector<EventSet> js = join_irreducibles_of_rdp(d, cap);
  std::vector<std::string> labels;
  for (EventSet j : js) labels.push_back(d.ground().set_label(j));
  Ground g(labels);
  std::vector<std::vector<EventSet>> dep(g.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    EventSet below;
    for (EventSet j2 : js)
      if (!(j2 == js[i]) && j2.subset_of(js[i]))
        below = below.with(g.index(d.ground().set_label(j2)));
    dep[g.index(labels[i])] = {below};
  }
  return Dsc(PreDsc(std::move(g), std::move(dep)));
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("SHA-256 digest failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

MerkleStore merkle_hashes(const Dsc& d) {
  if (!is_dsnc(d)) throw ContractError("Merkle hashing requires a DSNC");
  const std::size_t n = d.size();
  std::vector<std::string> hash(n);
  std::vector<char> done(n, 0);

  // R(d) is a poset, so recursion over depset members terminates.
  std::function<const std::string&(EventId)> compute = [&](EventId e) -> const std::string& {
    if (!done[e]) {
      std::vector<std::string> deps;
      d.dep(e)[0].for_each([&](EventId c) { deps.push_back(compute(c)); });
      std::sort(deps.begin(), deps.end());
      std::string pre = d.ground().label(e) + "\n";
      for (const auto& h : deps) pre += h + "\n";
      hash[e] = sha256_hex(pre);
      done[e] = 1;
    }
    return hash[e];
  };

  MerkleStore store;
  for (EventId e = 0; e < n; ++e) {
    MerkleNode node;
    node.label = d.ground().label(e);
    node.hash = compute(e);
    d.dep(e)[0].for_each([&](EventId c) { node.dep_hashes.push_back(hash[c]); });
    std::sort(node.dep_hashes.begin(), node.dep_hashes.end());
    store.nodes.push_back(std::move(node));
  }
  std::sort(store.nodes.begin(), store.nodes.end(),
            [](const MerkleNode& a, const MerkleNode& b) { return a.hash < b.hash; });
  return store;
}

}  // namespace dsc
