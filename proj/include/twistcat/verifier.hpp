#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twistcat/ktheory.hpp"
#include "twistcat/sheaf.hpp"
#include "twistcat/words.hpp"

namespace twistcat {

// The claim lhs(object) = rhs(object).
struct Goal {
  Word lhs;
  Word rhs;
  DObject object;
};

struct TraceStep {
  enum class Kind { Evaluate, BraidRewrite, Cancel, Transfer };

  Kind kind = Kind::Evaluate;
  int side = 0;  // 0 = lhs, 1 = rhs; for Transfer, the side the letter left

  // Evaluate / Transfer
  Letter letter;
  // Evaluate
  DObject before;
  DObject after;
  // BraidRewrite / Cancel
  std::size_t position = 0;
  // BraidRewrite: window u replaced by v; u * invert(v) must freely reduce
  // to a cyclic rotation of a braid or beta-commutation relator word or of
  // its inverse. direction is +1 for the table orientation, -1 reversed.
  Word removed;
  Word inserted;
  int direction = 0;
};

using ProofTrace = std::vector<TraceStep>;

enum class Status { Verified, Central, Involution, Exhausted, Mismatch };

std::string status_name(Status s);

enum class Rep { KTheory, Sheaf };

std::string rep_name(Rep r);

// One per-relator, per-generator-object outcome. K-theory outcomes have no
// generator object or trace; the matrix check is global.
struct ReportRecord {
  std::string relator;
  int n = 1;
  Rep representation = Rep::Sheaf;
  std::optional<DObject> generator_object;
  Goal goal;  // the goal actually searched (after any based replacement)
  Status status = Status::Exhausted;
  std::optional<int> central_defect_m;
  std::optional<std::string> involution;
  ProofTrace trace;
  std::uint64_t states_expanded = 0;
};

struct SearchResult {
  bool found = false;
  DObject lhs_final;
  DObject rhs_final;
  ProofTrace trace;
  std::uint64_t states_expanded = 0;
};

struct SearchOptions {
  std::uint64_t budget = 100000;
  int length_slack = 14;  // rewrite moves may grow a side beyond its start
};

// Best-first search over (lhs word, lhs object, rhs word, rhs object) with
// free cancellation, relator-window rewrites, rightmost evaluation and
// leftmost transfer. found = both words empty; the caller classifies the
// final object pair. Exhaustion is inconclusive.
SearchResult search(const Goal& goal, const SearchOptions& opts = {});

// The fixed point swap used at n <= 2: x_1 <-> x_2 on points and divisor
// coefficients, identity at n = 1.
DObject point_swap(const DObject& obj);

enum class Family { Braid, Commutation, Commutativity, G, G2, Star, LemmaG };

std::string family_name(Family f);
std::optional<Family> parse_family(const std::string& name);
std::vector<Family> applicable_families(int n);

// Relators of one family in deterministic order. Star triples are the
// lexicographically least rotation of each non-strict cyclic class.
std::vector<Relator> family_relators(Family f, int n);

// Sheaf: runs search on X in {O, k(x_1), ..., k(x_n)}; closing relators on
// k(x_k) are first rebased at k; star outcomes may differ by one uniform
// shift t^m; n <= 2 also accepts the point-swap involution. K-theory:
// exact matrix comparison.
std::vector<ReportRecord> verify_on_generators(const Relator& rel, int n,
                                               Rep representation,
                                               const SearchOptions& opts = {});

struct SuiteOptions {
  SearchOptions search;
  int jobs = 0;  // 0 = hardware concurrency
};

std::vector<ReportRecord> verify_relation_suite(
    int n, const std::vector<Family>& families,
    const std::vector<Rep>& representations, const SuiteOptions& opts = {});

// Replays a record's trace from its goal with no searcher involvement:
// every step is validated against the calculus and the rewrite table
// semantics, rewrites are also checked in the K-theory representation,
// and the claimed status must be reproduced by the final objects.
bool replay_trace(const ReportRecord& record, std::string* error = nullptr);

// A sheaf record with central defect t^m must match matrices differing by
// (-1)^m, and exact sheaf verification must match equal matrices.
bool cross_representation_consistent(const std::vector<ReportRecord>& records,
                                     std::string* error = nullptr);

// Report JSON with keys relator, n, representation, generator_object,
// status, central_defect_m, involution, trace, states_expanded.
std::string report_record_json(const ReportRecord& record);
std::string suite_json(const std::vector<ReportRecord>& records);

// Inverse of the emitters above; throws std::invalid_argument on documents
// that do not round-trip.
ReportRecord report_record_from_json(const std::string& text);
std::vector<ReportRecord> suite_from_json(const std::string& text);

}  // namespace twistcat
