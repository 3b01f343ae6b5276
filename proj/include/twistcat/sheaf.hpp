#pragma once

#include <string>
#include <variant>
#include <vector>

#include "twistcat/words.hpp"

namespace twistcat {

// Divisor supported on the marked smooth points: coefficient i is the
// multiplicity at x_i on component i.
using Divisor = std::vector<int>;

int total_degree(const Divisor& d);

// Object of the closed calculus: O(D)[s] or k(x_i)[s] on the cycle of n
// projective lines.
struct DObject {
  enum class Kind { LineBundle, Skyscraper };

  Kind kind = Kind::LineBundle;
  int n = 1;
  Divisor divisor;  // length n for line bundles, empty otherwise
  int point = 0;    // 1..n for skyscrapers, 0 otherwise
  int shift = 0;

  static DObject line_bundle(Divisor d, int shift = 0);
  static DObject structure_sheaf(int n, int shift = 0);
  static DObject skyscraper(int point, int n, int shift = 0);

  bool operator==(const DObject&) const = default;
};

struct CohomDims {
  long long h0 = 0;
  long long h1 = 0;

  bool operator==(const CohomDims&) const = default;
};

// Dimension of global sections of O(D) on the cycle, by exact linear
// algebra over the integers: each component is a projective line with
// coordinate z, the node of index r glues z = infinity on component r to
// z = 0 on component r + 1, and x_i sits at z = 1 on component i.
long long h0_oracle(const Divisor& d);

// h1 is computed both as h0 - deg and as h0_oracle(-d); disagreement
// throws (it would mean the oracle itself is broken).
CohomDims cohomology(const Divisor& d);

// Raised by cohomology on internal disagreement.
struct OracleInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

// Diagnostic payload when no single-letter rule fires.
struct NotReducible {
  Divisor divisor;
  CohomDims dims;
};

// Single-letter rewrite rules:
//   b_i^(+/-): O(D)[s] -> O(D +/- x_i)[s], skyscrapers fixed
//   t^(+/-):   shift s -> s +/- 1
//   a:   O -> O, O(x_i)[s] -> k(x_i)[s], k(x_i)[s] -> O(-x_i)[s+1],
//        O(D)[s] fixed when cohomology(D) = (0,0), else NotReducible
//   a':  exact inverses of the above
std::variant<DObject, NotReducible> apply_generator(const Letter& l,
                                                    const DObject& obj);

struct StuckState {
  Word remaining;  // prefix still pending, ending in the letter that failed
  DObject object;
  NotReducible why;
};

// Applies letters right to left; stops at the first letter with no rule.
std::variant<DObject, StuckState> evaluate_word(const Word& w,
                                                const DObject& obj);

// Text format: O([a1,...,an])[s] and k(i)[s]; shift suffix optional.
std::string format_object(const DObject& o);
DObject parse_object(const std::string& text, int n);

std::string format_divisor(const Divisor& d);
Divisor parse_divisor(const std::string& text);

}  // namespace twistcat
