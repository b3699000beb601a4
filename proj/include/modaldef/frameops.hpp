#ifndef MODALDEF_FRAMEOPS_HPP_
#define MODALDEF_FRAMEOPS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "modaldef/kripke.hpp"

namespace modaldef {

// Points of the i-th frame are renamed "i.name" (0-based i).
Frame disjoint_union(std::span<const Frame> frames);

// Closure of `seed` under successors.
PointSet reachable_closure(const Frame& f, PointSet seed);

// Smallest generated subframe containing `seed`; point names and order are
// kept. Throws InputError on an empty seed or one outside the frame.
Frame generated_subframe(const Frame& f, PointSet seed);

// Generated subframes for every nonempty seed of at most `max_seed` points,
// one per distinct domain, in ascending seed order.
std::vector<Frame> finitely_generated_subframes(const Frame& f, std::size_t max_seed);

// map[i] is the image of source point i.
struct BoundedMorphism {
  Frame source;
  Frame target;
  std::vector<std::size_t> map;
};

// Forth and Back. Throws InputError if `map` is not total into the target.
bool check_bounded_morphism(const BoundedMorphism& bm);
bool is_surjective(const BoundedMorphism& bm);

// All surjective bounded morphisms src -> dst, in lexicographic map order.
std::vector<BoundedMorphism> find_bounded_epimorphisms(const Frame& src, const Frame& dst);

// g o f, for f: A -> B and g: B -> C.
BoundedMorphism compose(const BoundedMorphism& f, const BoundedMorphism& g);

struct UltrafilterExtension {
  Frame frame;
  // Ultrafilters as bitsets over the 2^n subsets of the base domain
  // (bit X set iff X is in the filter); index i of the extension.
  std::vector<std::uint64_t> filters;
  // principal[w] is the index of the ultrafilter generated by {w}.
  std::vector<std::size_t> principal;
  // Whether `principal` is a frame isomorphism onto `frame`.
  bool principal_is_isomorphism = false;
};

// Families of subsets of an n-point domain (n <= 6), encoded as above.
bool is_ultrafilter(std::uint64_t family, std::size_t n);

// Ultrafilter extension of a frame with at most 6 points. The relation is
// computed from the subset condition over all 2^n subsets X.
UltrafilterExtension ultrafilter_extension(const Frame& f);

// Exhaustive over permutations after invariant checks.
bool is_isomorphic(const Frame& a, const Frame& b);

// Frame with points renamed "1".."n" in order.
Frame relabeled(const Frame& f);

}  // namespace modaldef

#endif  // MODALDEF_FRAMEOPS_HPP_
