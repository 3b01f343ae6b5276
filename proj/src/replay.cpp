#include <algorithm>
#include <sstream>

#include "twistcat/verifier.hpp"

namespace twistcat {

namespace {

// The replayer validates rewrite windows against its own rotation list;
// it shares only the letter/word data types with the searcher.
std::vector<Word> legal_rotations(int n) {
  std::vector<Word> base;
  for (int i = 1; i <= n; ++i)
    base.push_back(Word{alpha(), beta(i), alpha(), beta(i, -1), alpha(-1),
                        beta(i, -1)});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      base.push_back(Word{beta(i), beta(j), beta(i, -1), beta(j, -1)});

  std::vector<Word> out;
  for (const Word& w : base)
    for (const Word& v : {w, invert(w)})
      for (std::size_t r = 0; r < v.size(); ++r) {
        Word rot(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
        rot.insert(rot.end(), v.begin(),
                   v.begin() + static_cast<std::ptrdiff_t>(r));
        out.push_back(rot);
      }
  return out;
}

bool fail(std::string* error, const std::string& msg) {
  if (error) *error = msg;
  return false;
}

std::optional<int> shift_defect(const DObject& lo, const DObject& ro) {
  DObject shifted = ro;
  shifted.shift = lo.shift;
  if (lo == shifted) return lo.shift - ro.shift;
  return std::nullopt;
}

bool replay_ktheory(const ReportRecord& record, std::string* error) {
  if (!record.trace.empty())
    return fail(error, "ktheory record carries a trace");
  LatticeMap lhs = evaluate_word_matrix(record.goal.lhs, record.n);
  LatticeMap rhs = evaluate_word_matrix(record.goal.rhs, record.n);
  Status expect;
  if (lhs == rhs)
    expect = Status::Verified;
  else if (lhs == -rhs)
    expect = Status::Central;
  else
    expect = Status::Mismatch;
  if (expect != record.status)
    return fail(error, "matrix comparison does not reproduce status " +
                           status_name(record.status));
  return true;
}

}  // namespace

bool replay_trace(const ReportRecord& record, std::string* error) {
  if (record.representation == Rep::KTheory)
    return replay_ktheory(record, error);

  if (record.status == Status::Exhausted) {
    if (!record.trace.empty())
      return fail(error, "exhausted record carries a trace");
    return true;
  }

  const int n = record.goal.object.n;
  std::vector<Word> rotations = legal_rotations(n);
  Word words[2] = {record.goal.lhs, record.goal.rhs};
  DObject objs[2] = {record.goal.object, record.goal.object};

  std::size_t stepno = 0;
  for (const TraceStep& step : record.trace) {
    ++stepno;
    auto at = [&](const std::string& msg) {
      std::ostringstream os;
      os << "step " << stepno << ": " << msg;
      return fail(error, os.str());
    };
    if (step.side != 0 && step.side != 1) return at("bad side");
    Word& w = words[step.side];
    switch (step.kind) {
      case TraceStep::Kind::Evaluate: {
        if (w.empty() || !(w.back() == step.letter))
          return at("rightmost letter does not match evaluate step");
        if (!(objs[step.side] == step.before))
          return at("object before evaluate step does not match");
        auto res = apply_generator(step.letter, objs[step.side]);
        if (std::holds_alternative<NotReducible>(res))
          return at("no rule fires for claimed evaluate step");
        if (!(std::get<DObject>(res) == step.after))
          return at("rule result does not match claimed object");
        w.pop_back();
        objs[step.side] = step.after;
        break;
      }
      case TraceStep::Kind::Cancel: {
        if (step.position + 1 >= w.size()) return at("cancel out of range");
        if (!(w[step.position + 1] == inverse(w[step.position])))
          return at("cancel pair is not mutually inverse");
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(step.position),
                w.begin() + static_cast<std::ptrdiff_t>(step.position) + 2);
        break;
      }
      case TraceStep::Kind::BraidRewrite: {
        if (step.removed.empty()) return at("rewrite removes nothing");
        if (step.position + step.removed.size() > w.size())
          return at("rewrite window out of range");
        for (std::size_t k = 0; k < step.removed.size(); ++k)
          if (!(w[step.position + k] == step.removed[k]))
            return at("rewrite window does not match word");
        Word certificate =
            free_reduce(concat({step.removed, invert(step.inserted)}));
        if (std::find(rotations.begin(), rotations.end(), certificate) ==
            rotations.end())
          return at("removed * inserted^-1 is not a relator rotation");
        if (!(evaluate_word_matrix(step.removed, n) ==
              evaluate_word_matrix(step.inserted, n)))
          return at("rewrite changes the K-theory matrix");
        Word next(w.begin(),
                  w.begin() + static_cast<std::ptrdiff_t>(step.position));
        next.insert(next.end(), step.inserted.begin(), step.inserted.end());
        next.insert(next.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(
                                    step.position + step.removed.size()),
                    w.end());
        w = std::move(next);
        break;
      }
      case TraceStep::Kind::Transfer: {
        if (w.empty() || !(w.front() == step.letter))
          return at("leftmost letter does not match transfer step");
        w.erase(w.begin());
        Word& other = words[1 - step.side];
        other.insert(other.begin(), inverse(step.letter));
        break;
      }
    }
  }

  if (!words[0].empty() || !words[1].empty())
    return fail(error, "trace ends with letters remaining");

  const DObject& lo = objs[0];
  const DObject& ro = objs[1];
  switch (record.status) {
    case Status::Verified:
      if (!(lo == ro)) return fail(error, "final objects differ");
      return true;
    case Status::Central: {
      auto m = shift_defect(lo, ro);
      if (!m) return fail(error, "final objects do not differ by a shift");
      if (!record.central_defect_m || *m != *record.central_defect_m)
        return fail(error, "central defect does not match record");
      return true;
    }
    case Status::Involution: {
      if (record.n > 2) return fail(error, "involution claimed for n > 2");
      DObject swapped = point_swap(ro);
      auto m = shift_defect(lo, swapped);
      if (!m)
        return fail(error, "final objects do not match the point swap");
      int claimed = record.central_defect_m ? *record.central_defect_m : 0;
      if (*m != claimed)
        return fail(error, "involution shift does not match record");
      return true;
    }
    case Status::Mismatch: {
      if (lo == ro || shift_defect(lo, ro))
        return fail(error, "claimed mismatch but objects agree up to shift");
      if (record.n <= 2) {
        DObject swapped = point_swap(ro);
        if (lo == swapped || shift_defect(lo, swapped))
          return fail(error,
                      "claimed mismatch but objects agree up to involution");
      }
      return true;
    }
    case Status::Exhausted:
      break;
  }
  return fail(error, "unreachable status");
}

bool cross_representation_consistent(const std::vector<ReportRecord>& records,
                                     std::string* error) {
  for (const ReportRecord& sheaf : records) {
    if (sheaf.representation != Rep::Sheaf) continue;
    int m;
    if (sheaf.status == Status::Verified)
      m = 0;
    else if (sheaf.status == Status::Central)
      m = sheaf.central_defect_m.value_or(0);
    else
      continue;  // exhausted is silent; involution has no +/-Id matrix claim
    for (const ReportRecord& kt : records) {
      if (kt.representation != Rep::KTheory) continue;
      if (kt.relator != sheaf.relator || kt.n != sheaf.n) continue;
      bool even = m % 2 == 0;
      bool matches = even ? kt.status == Status::Verified
                          : kt.status == Status::Central;
      if (!matches)
        return fail(error, "relator " + sheaf.relator + ": sheaf defect t^" +
                               std::to_string(m) +
                               " but matrix verdict is " +
                               status_name(kt.status));
    }
  }
  return true;
}

}  // namespace twistcat
