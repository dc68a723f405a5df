#include "plfg/corpus.hpp"

namespace plfg::corpus {

FiniteGroup trivial() { return FiniteGroup::from_generators(1, {{0}}, 4); }

FiniteGroup c2() { return FiniteGroup::from_generators(2, {{1, 0}}, 4); }

FiniteGroup c4() { return FiniteGroup::from_generators(4, {{1, 2, 3, 0}}, 8); }

FiniteGroup klein4() {
  return FiniteGroup::from_generators(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}, 8);
}

FiniteGroup s3() {
  return FiniteGroup::from_generators(3, {{1, 0, 2}, {1, 2, 0}}, 8);
}

FiniteGroup d8() {
  // square symmetries: rotation (0123), reflection (0 2)
  return FiniteGroup::from_generators(4, {{1, 2, 3, 0}, {2, 1, 0, 3}}, 16);
}

FiniteGroup q8() {
  // regular representation on 8 points: i = (0 1 2 3)(4 5 6 7) acting as
  // left multiplication; j interleaves the two 4-cycles.
  return FiniteGroup::from_generators(
      8, {{1, 2, 3, 0, 5, 6, 7, 4}, {4, 7, 6, 5, 2, 1, 0, 3}}, 16);
}

FiniteGroup a4() {
  return FiniteGroup::from_generators(4, {{1, 0, 3, 2}, {1, 2, 0, 3}}, 16);
}

FiniteGroup s4() {
  return FiniteGroup::from_generators(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, 32);
}

FiniteGroup s3_x_c3() {
  // S_3 on {0,1,2}, C_3 on {3,4,5}
  return FiniteGroup::from_generators(
      6, {{1, 0, 2, 3, 4, 5}, {1, 2, 0, 3, 4, 5}, {0, 1, 2, 4, 5, 3}}, 32);
}

}  // namespace plfg::corpus
