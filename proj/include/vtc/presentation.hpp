#pragma once

#include <string>
#include <vector>

#include "vtc/complex.hpp"

namespace vtc {

// Word in pairing generators; letters are +/-(generator index + 1), applied
// left to right.
using Word = std::vector<int>;

std::string word_str(const Word& w);
Word reduce_word(Word w);
Word invert_word(const Word& w);

// Face-pairing presentation of the identification groupoid: one generator per
// pairing pair (its canonical orientation), one relator per codimension-two
// face class, read off by walking the cycle of polyhedra around the class.
struct GroupPresentation {
  int generator_count = 0;
  std::vector<Word> relators;
};

// Requires a closed complex of dimension 2 or 3; throws std::invalid_argument
// otherwise. Generator k is pairing k of the complex. Relators are freely
// reduced and ordered by codimension-two class id.
GroupPresentation extract_presentation(const PolyhedralComplex& complex);

// Exponent-sum matrix of the relators (rows) in the generators (columns);
// feeds abelianization checks in the tests.
std::vector<std::vector<long long>> relator_matrix(const GroupPresentation& pres);

}  // namespace vtc
