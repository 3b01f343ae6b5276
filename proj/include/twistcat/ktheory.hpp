#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "twistcat/sheaf.hpp"
#include "twistcat/words.hpp"

namespace twistcat {

using Integer = boost::multiprecision::cpp_int;

// Class in the numerical Grothendieck lattice Z^(n+1), coordinates
// (rank, d_1, ..., d_n).
struct KClass {
  std::vector<Integer> v;

  int n() const { return static_cast<int>(v.size()) - 1; }
  bool operator==(const KClass&) const = default;
};

// Integer (n+1)x(n+1) matrix acting on KClass coordinates.
struct LatticeMap {
  std::vector<std::vector<Integer>> m;

  int dim() const { return static_cast<int>(m.size()); }
  static LatticeMap identity(int n);  // (n+1)x(n+1)

  bool operator==(const LatticeMap&) const = default;
};

LatticeMap operator*(const LatticeMap& a, const LatticeMap& b);
KClass operator*(const LatticeMap& a, const KClass& v);
LatticeMap operator-(const LatticeMap& a);

// [O(D)[s]] = (-1)^s (1, d), [k(x_i)[s]] = (-1)^s (0, e_i).
KClass class_of(const DObject& obj);

// chi(E, F) = rank(E) deg(F) - rank(F) deg(E).
Integer euler_form(const KClass& e, const KClass& f);

// b_i: (r, d) -> (r, d + r e_i); a: (r, d) -> (r - sum d, d); t: -Id.
// Exponent -1 gives the exact integer inverse.
LatticeMap twist_matrix(const Letter& l, int n);

// Product of generator matrices in word order (leftmost letter leftmost).
LatticeMap evaluate_word_matrix(const Word& w, int n);

enum class MatrixVerdict { Equal, CentralDefect, Unequal };

struct MatrixReport {
  MatrixVerdict verdict = MatrixVerdict::Unequal;
  // When the sides differ exactly by -Identity.
  bool defect_is_minus_identity = false;
  LatticeMap lhs;
  LatticeMap rhs;
};

MatrixReport verify_relator_matrix(const Relator& rel, int n);

// Integral basis of the radical {v : chi(v, w) = 0 for all w}; rank n - 1
// for n >= 2, empty for n = 1.
std::vector<KClass> radical_basis(int n);

// True iff chi(m u, m v) = chi(u, v) on all basis pairs.
bool check_form_preserved(const LatticeMap& m, int n);

std::string format_matrix_json(const LatticeMap& m);

}  // namespace twistcat
