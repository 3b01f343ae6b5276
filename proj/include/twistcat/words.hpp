#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistcat {

// Generator alphabet: the alpha twist, one beta twist per marked point,
// and the central shift letter t.
enum class Gen : std::uint8_t { Alpha, Beta, Central };

struct Letter {
  Gen gen = Gen::Alpha;
  int index = 0;  // beta component index in 1..n, 0 for alpha and t
  int exp = +1;   // +1 or -1

  bool operator==(const Letter&) const = default;
};

// Leftmost letter acts last (function-composition order).
using Word = std::vector<Letter>;

Letter alpha(int exp = +1);
Letter beta(int i, int exp = +1);
Letter central(int exp = +1);
Letter inverse(const Letter& l);

Word invert(const Word& w);
Word free_reduce(const Word& w);
Word concat(std::initializer_list<Word> parts);
Word pow(const Word& w, int k);

// 1-based residues mod n; cyclic(0, n) = n, cyclic(n + 1, n) = 1.
int cyclic(int i, int n);
int successor(int i, int n);

// True iff reading forward cyclically from i meets j no later than k.
// The strict variant additionally requires i, j, k pairwise distinct.
bool is_cyclic_triple(int i, int j, int k, int n, bool strict);

struct Relator {
  std::string name;
  Word lhs;
  Word rhs;

  // Relator word lhs * rhs^-1, freely reduced.
  Word relator_word() const;
};

enum class Variant { Boundary, Punctured, Extended, TwoAlt, ExtendedTwoAlt };

struct PresentationSpec {
  int n = 1;
  Variant variant = Variant::Extended;
};

// The 12-letter word A_{i,j}; requires n >= 2.
Word a_word(int i, int j, int n);

// Product A_{i,j} A_{i+1,j} ... A_{j-1,j}, indices advancing cyclically;
// empty when i = j.
Word gamma_twist_word(int i, int j, int n);

// lhs (a b_i b_j b_k)^3, rhs gamma(i,j) gamma(j,k) gamma(k,i);
// requires i, j, k cyclically ordered (repeats allowed).
Relator star_relator(int i, int j, int k, int n);

// lhs (a b_i)^6, rhs A_{i,i+n-1} ... A_{i+n-2,i+n-1} t^2; i = 1 gives the
// closing relation of the extended presentation.
Relator g_relator_based_at(int i, int n);

std::vector<Relator> relators(const PresentationSpec& spec);

struct ParseError : std::runtime_error {
  std::size_t position;
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what), position(pos) {}
};

// Token format: a, a', b<i>, b<i>', t, t'; whitespace separated; leftmost
// token applied last.
std::string format_letter(const Letter& l);
std::string format_word(const Word& w);
Word parse_word(const std::string& text, int n);

}  // namespace twistcat
