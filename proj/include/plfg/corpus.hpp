#pragma once

#include "plfg/groupcore.hpp"

namespace plfg::corpus {

// Standard small groups used by the self-test suite and tests, all built as
// permutation groups with a fixed generator order so element numbering is
// reproducible.
FiniteGroup trivial();
FiniteGroup c2();
FiniteGroup c4();
FiniteGroup klein4();
FiniteGroup s3();
FiniteGroup d8();
FiniteGroup q8();
FiniteGroup a4();
FiniteGroup s4();
FiniteGroup s3_x_c3();

}  // namespace plfg::corpus
