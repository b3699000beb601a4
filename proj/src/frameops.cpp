#include "modaldef/frameops.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "modaldef/error.hpp"

namespace modaldef {

namespace {

constexpr std::size_t kMaxUltrafilterPoints = 6;

// Bit X of the result is set iff `w` belongs to subset X.
std::uint64_t principal_family(std::size_t w, std::size_t n) {
  std::uint64_t family = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
    if (member(x, w)) family |= std::uint64_t{1} << x;
  }
  return family;
}

}  // namespace

Frame disjoint_union(std::span<const Frame> frames) {
  if (frames.empty()) throw InputError("disjoint union of an empty family");
  std::vector<std::string> names;
  std::vector<Edge> edges;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const Frame& f = frames[i];
    for (const auto& n : f.names()) names.push_back(std::to_string(i) + "." + n);
    for (auto [a, b] : f.edges()) edges.emplace_back(a + offset, b + offset);
    offset += f.size();
  }
  return Frame(std::move(names), edges);
}

PointSet reachable_closure(const Frame& f, PointSet seed) {
  PointSet closed = seed;
  for (PointSet frontier = seed; frontier;) {
    const PointSet next = image(f, frontier) & ~closed;
    closed |= next;
    frontier = next;
  }
  return closed;
}

Frame generated_subframe(const Frame& f, PointSet seed) {
  if (seed == 0) throw InputError("generated subframe of an empty seed");
  if (seed & ~f.all()) throw InputError("seed outside the frame");
  const PointSet domain = reachable_closure(f, seed);
  std::vector<std::size_t> index(f.size(), 0);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (member(domain, i)) {
      index[i] = names.size();
      names.push_back(f.name(i));
    }
  }
  std::vector<Edge> edges;
  for (auto [a, b] : f.edges()) {
    if (member(domain, a)) edges.emplace_back(index[a], index[b]);
  }
  return Frame(std::move(names), edges);
}

std::vector<Frame> finitely_generated_subframes(const Frame& f, std::size_t max_seed) {
  if (max_seed == 0) throw InputError("max_seed must be at least 1");
  std::vector<Frame> out;
  std::set<PointSet> domains;
  const PointSet all = f.all();
  for (PointSet seed = 1; seed <= all && seed != 0; ++seed) {
    if (cardinality(seed) > max_seed) continue;
    if (domains.insert(reachable_closure(f, seed)).second) out.push_back(generated_subframe(f, seed));
    if (seed == all) break;
  }
  return out;
}

bool check_bounded_morphism(const BoundedMorphism& bm) {
  const Frame& s = bm.source;
  const Frame& t = bm.target;
  if (bm.map.size() != s.size()) throw InputError("morphism map is not total on the source");
  for (std::size_t v : bm.map) {
    if (v >= t.size()) throw InputError("morphism maps outside the target");
  }
  for (std::size_t w = 0; w < s.size(); ++w) {
    PointSet mapped = 0;
    for (std::size_t v = 0; v < s.size(); ++v) {
      if (!s.related(w, v)) continue;
      if (!t.related(bm.map[w], bm.map[v])) return false;  // forth
      mapped |= singleton(bm.map[v]);
    }
    if (t.successors(bm.map[w]) & ~mapped) return false;  // back
  }
  return true;
}

bool is_surjective(const BoundedMorphism& bm) {
  PointSet hit = 0;
  for (std::size_t v : bm.map) hit |= singleton(v);
  return hit == bm.target.all();
}

std::vector<BoundedMorphism> find_bounded_epimorphisms(const Frame& src, const Frame& dst) {
  std::vector<BoundedMorphism> out;
  if (dst.size() > src.size()) return out;
  BoundedMorphism bm{src, dst, std::vector<std::size_t>(src.size(), 0)};
  for (;;) {
    if (is_surjective(bm) && check_bounded_morphism(bm)) out.push_back(bm);
    std::size_t i = src.size();
    while (i > 0) {
      --i;
      if (++bm.map[i] < dst.size()) break;
      bm.map[i] = 0;
      if (i == 0) return out;
    }
  }
}

BoundedMorphism compose(const BoundedMorphism& f, const BoundedMorphism& g) {
  if (!(f.target == g.source)) throw InputError("morphisms do not compose");
  BoundedMorphism out{f.source, g.target, {}};
  for (std::size_t v : f.map) out.map.push_back(g.map.at(v));
  return out;
}

bool is_ultrafilter(std::uint64_t family, std::size_t n) {
  if (n > kMaxUltrafilterPoints) throw InputError("ultrafilters are enumerated up to 6 points");
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const PointSet all = full_set(n);
  auto in = [&](std::uint64_t x) { return (family >> x) & 1U; };
  if (!in(all) || in(0)) return false;
  for (std::uint64_t x = 0; x < subsets; ++x) {
    // exactly one of X and its complement
    if (in(x) == in(all & ~x)) return false;
    for (std::uint64_t y = 0; y < subsets; ++y) {
      if (in(x) && in(y) && !in(x & y)) return false;           // meets
      if (in(x) && (x & ~y) == 0 && !in(y)) return false;        // upward closed
    }
  }
  return true;
}

namespace {

constexpr std::size_t kEnumeratedFamilyPoints = 4;

// All ultrafilters on an n-point domain in ascending encoding. Up to 4 points
// every family of subsets is tested; beyond that the principal filters are
// taken directly.
const std::vector<std::uint64_t>& ultrafilters_on(std::size_t n) {
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(kMaxUltrafilterPoints + 1);
    for (std::size_t k = 1; k <= kEnumeratedFamilyPoints; ++k) {
      const std::uint64_t families = std::uint64_t{1} << (std::uint64_t{1} << k);
      for (std::uint64_t fam = 0; fam < families; ++fam) {
        if (is_ultrafilter(fam, k)) t[k].push_back(fam);
      }
    }
    for (std::size_t k = kEnumeratedFamilyPoints + 1; k <= kMaxUltrafilterPoints; ++k) {
      for (std::size_t w = 0; w < k; ++w) t[k].push_back(principal_family(w, k));
      std::sort(t[k].begin(), t[k].end());
    }
    return t;
  }();
  return table[n];
}

}  // namespace

UltrafilterExtension ultrafilter_extension(const Frame& f) {
  const std::size_t n = f.size();
  if (n > kMaxUltrafilterPoints) throw InputError("ultrafilter extensions are built up to 6 points");
  const std::uint64_t subsets = std::uint64_t{1} << n;

  UltrafilterExtension ue{Frame::numbered(1, {}), ultrafilters_on(n), {}, false};
  for (std::size_t w = 0; w < n; ++w) {
    auto it = std::find(ue.filters.begin(), ue.filters.end(), principal_family(w, n));
    if (it == ue.filters.end()) throw std::logic_error("principal filter missing");
    ue.principal.push_back(static_cast<std::size_t>(it - ue.filters.begin()));
  }

  // m_R(X): points with a successor in X.
  std::vector<PointSet> m_r(subsets);
  for (std::uint64_t x = 0; x < subsets; ++x) m_r[x] = preimage(f, x);

  std::vector<Edge> edges;
  for (std::size_t u = 0; u < ue.filters.size(); ++u) {
    for (std::size_t v = 0; v < ue.filters.size(); ++v) {
      bool related = true;
      for (std::uint64_t x = 0; x < subsets && related; ++x) {
        const bool in_v = (ue.filters[v] >> x) & 1U;
        const bool image_in_u = (ue.filters[u] >> m_r[x]) & 1U;
        if (in_v && !image_in_u) related = false;
      }
      if (related) edges.emplace_back(u, v);
    }
  }
  // Ultrafilters are named after their generator; non-principal ones cannot
  // occur on a finite domain but would be named by index.
  std::vector<std::string> names(ue.filters.size());
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = "U" + std::to_string(i);
  for (std::size_t w = 0; w < n; ++w) names[ue.principal[w]] = "u" + f.name(w);
  ue.frame = Frame(std::move(names), edges);

  ue.principal_is_isomorphism = ue.filters.size() == n;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (f.related(a, b) != ue.frame.related(ue.principal[a], ue.principal[b])) {
        ue.principal_is_isomorphism = false;
      }
    }
  }
  return ue;
}

bool is_isomorphic(const Frame& a, const Frame& b) {
  const std::size_t n = a.size();
  if (n != b.size() || a.edge_count() != b.edge_count()) return false;
  auto degrees = [](const Frame& f) {
    std::vector<std::pair<std::size_t, std::size_t>> d;
    for (std::size_t i = 0; i < f.size(); ++i) {
      d.emplace_back(cardinality(f.successors(i)), cardinality(f.predecessors(i)));
    }
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(a) != degrees(b)) return false;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (a.related(i, j) != b.related(perm[i], perm[j])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Frame relabeled(const Frame& f) { return Frame::numbered(f.size(), f.edges()); }

}  // namespace modaldef
