#include "twistcat/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <queue>
#include <set>
#include <thread>
#include <tuple>
#include <unordered_set>

namespace twistcat {

std::string status_name(Status s) {
  switch (s) {
    case Status::Verified:
      return "verified";
    case Status::Central:
      return "verified-up-to-central";
    case Status::Involution:
      return "verified-up-to-involution";
    case Status::Exhausted:
      return "exhausted";
    case Status::Mismatch:
      return "mismatch";
  }
  return "unknown";
}

std::string rep_name(Rep r) { return r == Rep::KTheory ? "ktheory" : "sheaf"; }

std::string family_name(Family f) {
  switch (f) {
    case Family::Braid:
      return "braid";
    case Family::Commutation:
      return "commutation";
    case Family::Commutativity:
      return "commutativity";
    case Family::G:
      return "G";
    case Family::G2:
      return "G2";
    case Family::Star:
      return "star";
    case Family::LemmaG:
      return "lemmaG";
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (Family f : {Family::Braid, Family::Commutation, Family::Commutativity,
                   Family::G, Family::G2, Family::Star, Family::LemmaG})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

std::vector<Family> applicable_families(int n) {
  std::vector<Family> out{Family::Braid};
  if (n >= 2) out.push_back(Family::Commutation);
  if (n >= 3) out.push_back(Family::Commutativity);
  out.push_back(Family::G);
  if (n == 2) out.push_back(Family::G2);
  out.push_back(Family::Star);
  if (n >= 2) out.push_back(Family::LemmaG);
  return out;
}

DObject point_swap(const DObject& obj) {
  if (obj.n != 2) return obj;
  DObject out = obj;
  if (out.kind == DObject::Kind::LineBundle) {
    std::swap(out.divisor[0], out.divisor[1]);
  } else {
    out.point = out.point == 1 ? 2 : 1;
  }
  return out;
}

namespace {

// ---- byte-encoded words for the search core -------------------------------
// a = 0, a' = 1, t = 2, t' = 3, b_i = 4 + 2(i-1), b_i' = 5 + 2(i-1);
// XOR 1 inverts.
using Code = unsigned char;

Code encode_letter(const Letter& l) {
  int base;
  switch (l.gen) {
    case Gen::Alpha:
      base = 0;
      break;
    case Gen::Central:
      base = 2;
      break;
    case Gen::Beta:
      base = 4 + 2 * (l.index - 1);
      break;
    default:
      throw std::logic_error("bad letter");
  }
  return static_cast<Code>(base + (l.exp > 0 ? 0 : 1));
}

Letter decode_letter(Code c) {
  int exp = (c & 1) ? -1 : +1;
  if (c < 2) return alpha(exp);
  if (c < 4) return central(exp);
  return beta((c - 4) / 2 + 1, exp);
}

std::string encode_word(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (const Letter& l : w) s.push_back(static_cast<char>(encode_letter(l)));
  return s;
}

Word decode_word(const std::string& s) {
  Word w;
  w.reserve(s.size());
  for (char c : s) w.push_back(decode_letter(static_cast<Code>(c)));
  return w;
}

inline Code inv_code(Code c) { return c ^ 1; }

// ---- rewrite rule table ----------------------------------------------------

struct Rule {
  std::string u;
  std::string v;
  int direction;  // +1 rotation of the relator word, -1 of its inverse
};

struct RuleTable {
  std::vector<Rule> rules;
  // candidate indices by the window's first letter (single-letter rules)
  // and by its first two letters (longer rules); both index-ascending
  std::array<std::vector<std::uint32_t>, 256> by_single;
  std::vector<std::vector<std::uint32_t>> by_pair;
};

std::vector<std::string> rotations(const std::string& w) {
  std::vector<std::string> out;
  for (std::size_t r = 0; r < w.size(); ++r)
    out.push_back(w.substr(r) + w.substr(0, r));
  return out;
}

std::string invert_codes(const std::string& w) {
  std::string out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back(static_cast<char>(inv_code(static_cast<Code>(*it))));
  return out;
}

// Words whose rotations generate the rewrite moves: the braid relator for
// (alpha, beta_i) and the beta-commutation relators.
std::vector<std::string> rewrite_base_words(int n) {
  std::vector<std::string> base;
  for (int i = 1; i <= n; ++i) {
    Word w{alpha(),  beta(i),       alpha(),
           beta(i, -1), alpha(-1), beta(i, -1)};
    base.push_back(encode_word(w));
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Word w{beta(i), beta(j), beta(i, -1), beta(j, -1)};
      base.push_back(encode_word(w));
    }
  return base;
}

RuleTable build_rule_table(int n) {
  RuleTable table;
  std::set<std::pair<std::string, std::string>> seen;
  auto add = [&](const std::string& rot, int direction) {
    // every split u v' of the rotation, u nonempty
    for (std::size_t ulen = 1; ulen <= rot.size(); ++ulen) {
      std::string u = rot.substr(0, ulen);
      std::string v = invert_codes(rot.substr(ulen));
      if (u == v) continue;
      if (!seen.insert({u, v}).second) continue;
      table.rules.push_back(Rule{u, v, direction});
    }
  };
  for (const std::string& w : rewrite_base_words(n)) {
    for (const std::string& rot : rotations(w)) add(rot, +1);
    for (const std::string& rot : rotations(invert_codes(w))) add(rot, -1);
  }
  table.by_pair.resize(1 << 16);
  for (std::uint32_t idx = 0; idx < table.rules.size(); ++idx) {
    const std::string& u = table.rules[idx].u;
    if (u.size() == 1) {
      table.by_single[static_cast<unsigned char>(u[0])].push_back(idx);
    } else {
      unsigned key = (static_cast<unsigned>(static_cast<unsigned char>(u[0]))
                      << 8) |
                     static_cast<unsigned char>(u[1]);
      table.by_pair[key].push_back(idx);
    }
  }
  return table;
}

// ---- closure: free cancellation plus rightmost evaluation, zero cost ------

bool code_evaluates(Code c, const DObject& obj, DObject* out) {
  auto res = apply_generator(decode_letter(c), obj);
  if (std::holds_alternative<NotReducible>(res)) return false;
  *out = std::get<DObject>(res);
  return true;
}

void close_side(std::string& w, DObject& obj, int side, ProofTrace* steps) {
  // cancellations, leftmost first
  std::size_t pos = 0;
  while (w.size() >= 2 && pos + 1 < w.size()) {
    if (static_cast<Code>(w[pos]) ==
        inv_code(static_cast<Code>(w[pos + 1]))) {
      if (steps) {
        TraceStep st;
        st.kind = TraceStep::Kind::Cancel;
        st.side = side;
        st.position = pos;
        steps->push_back(st);
      }
      w.erase(pos, 2);
      pos = pos > 0 ? pos - 1 : 0;
    } else {
      ++pos;
    }
  }
  // rightmost evaluation while a rule fires
  DObject next;
  while (!w.empty() &&
         code_evaluates(static_cast<Code>(w.back()), obj, &next)) {
    if (steps) {
      TraceStep st;
      st.kind = TraceStep::Kind::Evaluate;
      st.side = side;
      st.letter = decode_letter(static_cast<Code>(w.back()));
      st.before = obj;
      st.after = next;
      steps->push_back(st);
    }
    w.pop_back();
    obj = next;
  }
}

void run_closure(std::string& lw, DObject& lo, std::string& rw, DObject& ro,
                 ProofTrace* steps) {
  close_side(lw, lo, 0, steps);
  close_side(rw, ro, 1, steps);
}

// ---- search ----------------------------------------------------------------

// Compact object used inside the search core; shifts are stored absolutely,
// the hash normalizes them.
constexpr int kMaxDiv = 16;
constexpr int kBufMax = 4096;

struct CObj {
  std::uint8_t kind = 0;  // 0 = line bundle, 1 = skyscraper
  std::uint8_t point = 0;
  std::int16_t shift = 0;
  std::array<std::int16_t, kMaxDiv> div{};
};

CObj to_compact(const DObject& o) {
  CObj c;
  c.kind = o.kind == DObject::Kind::Skyscraper ? 1 : 0;
  c.point = static_cast<std::uint8_t>(o.point);
  c.shift = static_cast<std::int16_t>(o.shift);
  if (c.kind == 0)
    for (int i = 0; i < o.n; ++i)
      c.div[static_cast<std::size_t>(i)] =
          static_cast<std::int16_t>(o.divisor[static_cast<std::size_t>(i)]);
  return c;
}

DObject to_object(const CObj& c, int n) {
  if (c.kind == 1) return DObject::skyscraper(c.point, n, c.shift);
  Divisor d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    d[static_cast<std::size_t>(i)] = c.div[static_cast<std::size_t>(i)];
  return DObject::line_bundle(std::move(d), c.shift);
}

// One rightmost-evaluation attempt.
bool ceval(Code c, CObj& obj, int n) {
  auto res = apply_generator(decode_letter(c), to_object(obj, n));
  if (std::holds_alternative<NotReducible>(res)) return false;
  obj = to_compact(std::get<DObject>(res));
  return true;
}

inline std::uint64_t fnv1a(const char* p, int len,
                           std::uint64_t h = 14695981039346656037ULL) {
  for (int i = 0; i < len; ++i) {
    h ^= static_cast<unsigned char>(p[i]);
    h *= 1099511628211ULL;
  }
  return h;
}

// Uniform shifts of both objects act the same way, so the state identity
// carries only the shift difference (kept on the rhs fragment).
std::uint64_t side_hash(const char* w, int len, const CObj& o, int n,
                        int delta, char tag) {
  std::uint64_t h = fnv1a(w, len);
  char extra[6 + 2 * kMaxDiv];
  int e = 0;
  extra[e++] = tag;
  extra[e++] = static_cast<char>(o.kind);
  extra[e++] = static_cast<char>(o.point);
  extra[e++] = static_cast<char>((delta >> 8) & 0xff);
  extra[e++] = static_cast<char>(delta & 0xff);
  if (o.kind == 0)
    for (int i = 0; i < n; ++i) {
      extra[e++] = static_cast<char>((o.div[static_cast<std::size_t>(i)] >> 8) &
                                     0xff);
      extra[e++] =
          static_cast<char>(o.div[static_cast<std::size_t>(i)] & 0xff);
    }
  return fnv1a(extra, e, h);
}

inline std::uint64_t mix_hash(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ULL + (b << 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x ^ b;
}

// Insert-only open-addressing set of 64-bit state fingerprints.
struct FlatSet {
  std::vector<std::uint64_t> slots;
  std::size_t count = 0;

  FlatSet() : slots(1 << 16, 0) {}

  bool insert(std::uint64_t key) {
    if (key == 0) key = 0x517cc1b727220a95ULL;
    if ((count + 1) * 4 >= slots.size() * 3) grow();
    std::size_t mask = slots.size() - 1;
    std::size_t at = (key * 0x9e3779b97f4a7c15ULL) >> 1 & mask;
    while (true) {
      if (slots[at] == 0) {
        slots[at] = key;
        ++count;
        return true;
      }
      if (slots[at] == key) return false;
      at = (at + 1) & mask;
    }
  }

  void grow() {
    std::vector<std::uint64_t> old = std::move(slots);
    slots.assign(old.size() * 2, 0);
    std::size_t mask = slots.size() - 1;
    for (std::uint64_t k : old) {
      if (!k) continue;
      std::size_t at = (k * 0x9e3779b97f4a7c15ULL) >> 1 & mask;
      while (slots[at]) at = (at + 1) & mask;
      slots[at] = k;
    }
  }
};

enum : std::uint8_t { kMoveInit = 0, kMoveRewrite = 1, kMoveTransfer = 2 };

// Full nodes exist only for expanded states (and the terminal); queued
// children are rematerialized from their parent when popped.
struct Node {
  std::string lw;
  std::string rw;
  CObj lo;
  CObj ro;
  std::uint64_t hl = 0;
  std::uint64_t hr = 0;
  std::uint32_t parent = 0;
  std::uint32_t cost = 0;
  std::uint8_t move = kMoveInit;
  std::uint8_t side = 0;   // rewrite: side; transfer: source side
  std::uint16_t pos = 0;   // rewrite window start
  std::uint32_t rule = 0;  // rewrite rule index
};

struct QEntry {
  std::uint32_t f = 0;
  std::uint16_t h = 0;
  std::uint8_t move = kMoveInit;
  std::uint8_t side = 0;
  std::uint32_t seq = 0;
  std::uint32_t parent = 0;
  std::uint32_t rule = 0;
  std::uint16_t pos = 0;
};

struct QCmp {
  bool operator()(const QEntry& a, const QEntry& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  }
};

// The modified side of a child state, after splice and closure.
struct SidePieces {
  const char* l = nullptr;
  int llen = 0;
  CObj lo;
  const char* r = nullptr;
  int rlen = 0;
  CObj ro;
};

struct Searcher {
  const RuleTable& table;
  int n;
  std::uint64_t budget;
  int maxlen;
  std::vector<Node> arena;
  FlatSet seen;
  std::priority_queue<QEntry, std::vector<QEntry>, QCmp> queue;
  std::uint32_t seq = 0;
  std::uint64_t expanded = 0;
  std::int64_t found = -1;
  char buf_a[kBufMax];
  char buf_b[kBufMax];

  Searcher(const RuleTable& t, int n_, std::uint64_t b, int ml)
      : table(t), n(n_), budget(b), maxlen(ml) {}

  // Splices v over w[pos, pos+ulen) with stack cancellation into out. The
  // parent word is reduced and evaluation-stable, so the result needs the
  // evaluation loop only when its final letter is new: either the window
  // reached the end of the word, or cancellation consumed the old last
  // letter.
  void splice_close(const char* w, int len, const CObj& obj, int pos, int ulen,
                    const char* v, int vlen, char* out, int* outlen,
                    CObj* outobj) const {
    int o = pos;
    std::memcpy(out, w, static_cast<std::size_t>(pos));
    bool last_canceled = false;
    auto push = [&](char c) {
      if (o > 0 && static_cast<Code>(out[o - 1]) ==
                       inv_code(static_cast<Code>(c))) {
        --o;
        last_canceled = true;
      } else {
        out[o++] = c;
        last_canceled = false;
      }
    };
    for (int i = 0; i < vlen; ++i) push(v[i]);
    for (int i = pos + ulen; i < len; ++i) push(w[i]);
    CObj ob = obj;
    if (pos + ulen == len || last_canceled)
      while (o > 0 && ceval(static_cast<Code>(out[o - 1]), ob, n)) --o;
    *outlen = o;
    *outobj = ob;
  }

  // Applies a queued move to its parent; modified sides land in buf_a/buf_b.
  SidePieces apply_move(const Node& parent, std::uint8_t move,
                        std::uint8_t side, std::uint16_t pos,
                        std::uint32_t rule_idx) {
    SidePieces out;
    out.lo = parent.lo;
    out.ro = parent.ro;
    if (move == kMoveRewrite) {
      const Rule& rule = table.rules[rule_idx];
      const std::string& w = side == 0 ? parent.lw : parent.rw;
      const std::string& keep = side == 0 ? parent.rw : parent.lw;
      int mlen = 0;
      CObj mobj = side == 0 ? parent.lo : parent.ro;
      splice_close(w.data(), static_cast<int>(w.size()), mobj, pos,
                   static_cast<int>(rule.u.size()), rule.v.data(),
                   static_cast<int>(rule.v.size()), buf_a, &mlen, &mobj);
      if (side == 0) {
        out.l = buf_a;
        out.llen = mlen;
        out.lo = mobj;
        out.r = keep.data();
        out.rlen = static_cast<int>(keep.size());
      } else {
        out.r = buf_a;
        out.rlen = mlen;
        out.ro = mobj;
        out.l = keep.data();
        out.llen = static_cast<int>(keep.size());
      }
      return out;
    }
    // transfer: source side loses its first letter, the other side gains
    // the inverse in front
    const std::string& from = side == 0 ? parent.lw : parent.rw;
    const std::string& to = side == 0 ? parent.rw : parent.lw;
    Code moved = static_cast<Code>(from[0]);
    Code arriving = inv_code(moved);
    int tlen = 0;
    CObj tobj = side == 0 ? parent.ro : parent.lo;
    if (!to.empty() && static_cast<Code>(to[0]) == moved) {
      // the arriving inverse cancels the first letter in place
      tlen = static_cast<int>(to.size()) - 1;
      std::memcpy(buf_b, to.data() + 1, static_cast<std::size_t>(tlen));
    } else {
      buf_b[0] = static_cast<char>(arriving);
      std::memcpy(buf_b + 1, to.data(), to.size());
      tlen = static_cast<int>(to.size()) + 1;
      if (to.empty())
        while (tlen > 0 && ceval(static_cast<Code>(buf_b[tlen - 1]), tobj, n))
          --tlen;
    }
    if (side == 0) {
      out.l = from.data() + 1;
      out.llen = static_cast<int>(from.size()) - 1;
      out.r = buf_b;
      out.rlen = tlen;
      out.ro = tobj;
    } else {
      out.r = from.data() + 1;
      out.rlen = static_cast<int>(from.size()) - 1;
      out.l = buf_b;
      out.llen = tlen;
      out.lo = tobj;
    }
    return out;
  }

  std::uint64_t left_hash(const SidePieces& p) const {
    return side_hash(p.l, p.llen, p.lo, n, 0, 'L');
  }
  std::uint64_t right_hash(const SidePieces& p) const {
    return side_hash(p.r, p.rlen, p.ro, n, p.ro.shift - p.lo.shift, 'R');
  }

  Node build_node(const SidePieces& p, std::uint32_t parent,
                  std::uint32_t cost, std::uint8_t move, std::uint8_t side,
                  std::uint16_t pos, std::uint32_t rule) const {
    Node node;
    node.lw.assign(p.l, static_cast<std::size_t>(p.llen));
    node.rw.assign(p.r, static_cast<std::size_t>(p.rlen));
    node.lo = p.lo;
    node.ro = p.ro;
    node.hl = left_hash(p);
    node.hr = right_hash(p);
    node.parent = parent;
    node.cost = cost;
    node.move = move;
    node.side = side;
    node.pos = pos;
    node.rule = rule;
    return node;
  }

  // Dedups a freshly generated child, queueing it or finishing the search.
  bool admit(std::uint32_t parent_idx, const Node& parent, std::uint8_t move,
             std::uint8_t side, std::uint16_t pos, std::uint32_t rule,
             const SidePieces& p) {
    bool lhs_bytes = move == kMoveTransfer || side == 0;
    bool rhs_bytes = move == kMoveTransfer || side == 1;
    std::uint64_t hl = lhs_bytes ? left_hash(p) : parent.hl;
    std::uint64_t hr = rhs_bytes || p.lo.shift != parent.lo.shift
                           ? right_hash(p)
                           : parent.hr;
    if (!seen.insert(mix_hash(hl, hr))) return false;
    if (p.llen == 0 && p.rlen == 0) {
      Node node = build_node(p, parent_idx, parent.cost + 1, move, side, pos,
                             rule);
      arena.push_back(std::move(node));
      found = static_cast<std::int64_t>(arena.size() - 1);
      return true;
    }
    QEntry e;
    e.h = static_cast<std::uint16_t>(p.llen + p.rlen);
    e.f = parent.cost + 1 + e.h;
    e.move = move;
    e.side = side;
    e.seq = seq++;
    e.parent = parent_idx;
    e.rule = rule;
    e.pos = pos;
    queue.push(e);
    return false;
  }

  bool expand(std::uint32_t idx) {
    // the arena only grows when a terminal child ends the expansion, so
    // holding a reference across admit() is safe
    const Node& parent = arena[idx];
    // children in fixed order: window rewrites by side, position and rule
    // index, then the two transfers
    for (int side = 0; side < 2; ++side) {
      const std::string& w = side == 0 ? parent.lw : parent.rw;
      const int len = static_cast<int>(w.size());
      for (int pos = 0; pos < len; ++pos) {
        const auto& singles =
            table.by_single[static_cast<unsigned char>(w[static_cast<std::size_t>(pos)])];
        static const std::vector<std::uint32_t> kNone;
        const auto& pairs =
            pos + 1 < len
                ? table.by_pair[(static_cast<unsigned>(static_cast<unsigned char>(
                                     w[static_cast<std::size_t>(pos)]))
                                 << 8) |
                                static_cast<unsigned char>(
                                    w[static_cast<std::size_t>(pos + 1)])]
                : kNone;
        std::size_t si = 0, pi = 0;
        while (si < singles.size() || pi < pairs.size()) {
          std::uint32_t ridx;
          if (pi >= pairs.size() ||
              (si < singles.size() && singles[si] < pairs[pi]))
            ridx = singles[si++];
          else
            ridx = pairs[pi++];
          const Rule& rule = table.rules[ridx];
          const int ulen = static_cast<int>(rule.u.size());
          const int vlen = static_cast<int>(rule.v.size());
          if (pos + ulen > len) continue;
          if (len - ulen + vlen > maxlen) continue;
          if (std::memcmp(w.data() + pos, rule.u.data(),
                          static_cast<std::size_t>(ulen)) != 0)
            continue;
          SidePieces p = apply_move(parent, kMoveRewrite,
                                    static_cast<std::uint8_t>(side),
                                    static_cast<std::uint16_t>(pos), ridx);
          if (admit(idx, parent, kMoveRewrite,
                    static_cast<std::uint8_t>(side),
                    static_cast<std::uint16_t>(pos), ridx, p))
            return true;
        }
      }
    }
    for (int side = 0; side < 2; ++side) {
      const std::string& from = side == 0 ? parent.lw : parent.rw;
      const std::string& to = side == 0 ? parent.rw : parent.lw;
      if (from.empty() || static_cast<int>(to.size()) + 1 > maxlen) continue;
      SidePieces p = apply_move(parent, kMoveTransfer,
                                static_cast<std::uint8_t>(side), 0, 0);
      if (admit(idx, parent, kMoveTransfer, static_cast<std::uint8_t>(side),
                0, 0, p))
        return true;
    }
    return false;
  }

  void run(const Goal& goal) {
    Node root;
    {
      std::string lw = encode_word(goal.lhs);
      std::string rw = encode_word(goal.rhs);
      DObject lo = goal.object;
      DObject ro = goal.object;
      run_closure(lw, lo, rw, ro, nullptr);
      root.lw = std::move(lw);
      root.rw = std::move(rw);
      root.lo = to_compact(lo);
      root.ro = to_compact(ro);
    }
    root.hl = side_hash(root.lw.data(), static_cast<int>(root.lw.size()),
                        root.lo, n, 0, 'L');
    root.hr = side_hash(root.rw.data(), static_cast<int>(root.rw.size()),
                        root.ro, n, root.ro.shift - root.lo.shift, 'R');
    seen.insert(mix_hash(root.hl, root.hr));
    bool terminal = root.lw.empty() && root.rw.empty();
    std::uint16_t h =
        static_cast<std::uint16_t>(root.lw.size() + root.rw.size());
    arena.push_back(std::move(root));
    if (terminal) {
      found = 0;
      return;
    }
    QEntry e;
    e.f = h;
    e.h = h;
    e.move = kMoveInit;
    e.seq = seq++;
    queue.push(e);

    while (!queue.empty() && expanded < budget) {
      QEntry top = queue.top();
      queue.pop();
      ++expanded;
      std::uint32_t idx;
      if (top.move == kMoveInit) {
        idx = 0;
      } else {
        SidePieces p =
            apply_move(arena[top.parent], top.move, top.side, top.pos,
                       top.rule);
        Node node = build_node(p, top.parent, arena[top.parent].cost + 1,
                               top.move, top.side, top.pos, top.rule);
        arena.push_back(std::move(node));
        idx = static_cast<std::uint32_t>(arena.size() - 1);
      }
      if (expand(idx)) return;
    }
  }
};

}  // namespace

SearchResult search(const Goal& goal, const SearchOptions& opts) {
  if (goal.object.n < 1) throw std::invalid_argument("goal object malformed");
  if (goal.object.n > kMaxDiv)
    throw std::invalid_argument("search supports n <= 16");
  int maxlen = static_cast<int>(std::max(goal.lhs.size(), goal.rhs.size())) +
               opts.length_slack;
  if (maxlen + 2 > kBufMax)
    throw std::invalid_argument("goal too large for the search buffers");
  RuleTable table = build_rule_table(goal.object.n);
  Searcher searcher(table, goal.object.n, opts.budget, maxlen);
  searcher.run(goal);

  SearchResult result;
  result.states_expanded = searcher.expanded;
  if (searcher.found < 0) return result;
  result.found = true;
  const Node& terminal =
      searcher.arena[static_cast<std::size_t>(searcher.found)];
  result.lhs_final = to_object(terminal.lo, goal.object.n);
  result.rhs_final = to_object(terminal.ro, goal.object.n);

  // regenerate the step list from the parent chain
  std::vector<std::uint32_t> chain;
  for (std::int64_t at = searcher.found; at >= 0;) {
    const Node& node = searcher.arena[static_cast<std::size_t>(at)];
    chain.push_back(static_cast<std::uint32_t>(at));
    if (node.move == kMoveInit) break;
    at = node.parent;
  }
  std::reverse(chain.begin(), chain.end());

  std::string lw = encode_word(goal.lhs);
  std::string rw = encode_word(goal.rhs);
  DObject lo = goal.object;
  DObject ro = goal.object;
  for (std::uint32_t idx : chain) {
    const Node& node = searcher.arena[idx];
    switch (node.move) {
      case kMoveInit:
        break;
      case kMoveRewrite: {
        const Rule& rule = table.rules[node.rule];
        TraceStep st;
        st.kind = TraceStep::Kind::BraidRewrite;
        st.side = node.side;
        st.position = node.pos;
        st.removed = decode_word(rule.u);
        st.inserted = decode_word(rule.v);
        st.direction = rule.direction;
        result.trace.push_back(st);
        std::string& w = node.side == 0 ? lw : rw;
        w = w.substr(0, node.pos) + rule.v + w.substr(node.pos + rule.u.size());
        break;
      }
      case kMoveTransfer: {
        std::string& from = node.side == 0 ? lw : rw;
        std::string& to = node.side == 0 ? rw : lw;
        Code moved = static_cast<Code>(from[0]);
        TraceStep st;
        st.kind = TraceStep::Kind::Transfer;
        st.side = node.side;
        st.letter = decode_letter(moved);
        result.trace.push_back(st);
        from.erase(0, 1);
        to.insert(to.begin(), static_cast<char>(inv_code(moved)));
        break;
      }
    }
    run_closure(lw, lo, rw, ro, &result.trace);
  }
  if (lw != terminal.lw || rw != terminal.rw ||
      !(to_compact(lo).shift == terminal.lo.shift &&
        lo == to_object(terminal.lo, goal.object.n)) ||
      !(ro == to_object(terminal.ro, goal.object.n)))
    throw std::logic_error("trace regeneration diverged from search state");
  return result;
}

namespace {

std::optional<Family> family_of_relator(const std::string& name) {
  std::string prefix = name.substr(0, name.find('('));
  if (prefix == "braid") return Family::Braid;
  if (prefix == "commutation") return Family::Commutation;
  if (prefix == "commutativity") return Family::Commutativity;
  if (prefix == "G" || prefix == "G~") return Family::G;
  if (prefix == "G2" || prefix == "G~2") return Family::G2;
  if (prefix == "star") return Family::Star;
  if (prefix == "lemmaG") return Family::LemmaG;
  return std::nullopt;
}

// lhs(X) = rhs(X) t^m exactly when the terminal objects agree after adding
// m to the rhs shift.
std::optional<int> shift_defect(const DObject& lo, const DObject& ro) {
  DObject shifted = ro;
  shifted.shift = lo.shift;
  if (lo == shifted) return lo.shift - ro.shift;
  return std::nullopt;
}

void classify_outcome(ReportRecord& record, const DObject& lo,
                      const DObject& ro, int n) {
  if (lo == ro) {
    record.status = Status::Verified;
    return;
  }
  if (auto m = shift_defect(lo, ro)) {
    record.status = Status::Central;
    record.central_defect_m = *m;
    return;
  }
  if (n <= 2) {
    DObject swapped = point_swap(ro);
    if (lo == swapped) {
      record.status = Status::Involution;
      record.involution = "x1<->x2";
      return;
    }
    if (auto m = shift_defect(lo, swapped)) {
      record.status = Status::Involution;
      record.involution = "x1<->x2";
      record.central_defect_m = *m;
      return;
    }
  }
  record.status = Status::Mismatch;
}

}  // namespace

std::vector<ReportRecord> verify_on_generators(const Relator& rel, int n,
                                               Rep representation,
                                               const SearchOptions& opts) {
  std::vector<ReportRecord> records;
  if (representation == Rep::KTheory) {
    ReportRecord record;
    record.relator = rel.name;
    record.n = n;
    record.representation = Rep::KTheory;
    record.goal = Goal{rel.lhs, rel.rhs, DObject::structure_sheaf(n)};
    MatrixReport mr = verify_relator_matrix(rel, n);
    switch (mr.verdict) {
      case MatrixVerdict::Equal:
        record.status = Status::Verified;
        break;
      case MatrixVerdict::CentralDefect:
        record.status = Status::Central;
        record.central_defect_m = 1;  // defined mod 2 by the matrix action
        break;
      case MatrixVerdict::Unequal:
        record.status = Status::Mismatch;
        break;
    }
    records.push_back(std::move(record));
    return records;
  }

  std::optional<Family> family = family_of_relator(rel.name);
  std::vector<DObject> objects{DObject::structure_sheaf(n)};
  for (int i = 1; i <= n; ++i)
    objects.push_back(DObject::skyscraper(i, n));

  for (const DObject& X : objects) {
    Relator effective = rel;
    if (family && (*family == Family::G || *family == Family::LemmaG) &&
        X.kind == DObject::Kind::Skyscraper && n >= 2) {
      // closing relation evaluated on k(x_k): use the relation based at k
      effective = g_relator_based_at(X.point, n);
    }
    ReportRecord record;
    record.relator = rel.name;
    record.n = n;
    record.representation = Rep::Sheaf;
    record.generator_object = X;
    record.goal = Goal{effective.lhs, effective.rhs, X};
    SearchResult res = search(record.goal, opts);
    record.states_expanded = res.states_expanded;
    if (!res.found) {
      record.status = Status::Exhausted;
    } else {
      record.trace = std::move(res.trace);
      classify_outcome(record, res.lhs_final, res.rhs_final, n);
    }
    records.push_back(std::move(record));
  }

  // star outcomes must share one uniform central shift
  if (family && *family == Family::Star) {
    std::optional<int> uniform;
    bool ok = true;
    for (const ReportRecord& r : records) {
      std::optional<int> m;
      if (r.status == Status::Verified) m = 0;
      if (r.status == Status::Central) m = r.central_defect_m;
      if (!m) continue;
      if (uniform && *uniform != *m) ok = false;
      uniform = m;
    }
    if (!ok)
      for (ReportRecord& r : records)
        if (r.status == Status::Central || r.status == Status::Verified)
          r.status = Status::Mismatch;
  }
  return records;
}

std::vector<Relator> family_relators(Family f, int n) {
  switch (f) {
    case Family::Braid: {
      std::vector<Relator> out;
      for (const Relator& r : relators({n, Variant::Boundary}))
        if (r.name.rfind("braid", 0) == 0) out.push_back(r);
      return out;
    }
    case Family::Commutation: {
      if (n < 2)
        throw std::invalid_argument("commutation family requires n >= 2");
      std::vector<Relator> out;
      for (const Relator& r : relators({n, Variant::Boundary}))
        if (r.name.rfind("commutation", 0) == 0) out.push_back(r);
      return out;
    }
    case Family::Commutativity: {
      if (n < 3)
        throw std::invalid_argument("commutativity family requires n >= 3");
      std::vector<Relator> out;
      for (const Relator& r : relators({n, Variant::Boundary}))
        if (r.name.rfind("commutativity", 0) == 0) out.push_back(r);
      return out;
    }
    case Family::G: {
      for (const Relator& r : relators({n, Variant::Extended}))
        if (r.name == "G~") return {r};
      throw std::logic_error("missing closing relator");
    }
    case Family::G2: {
      if (n != 2) throw std::invalid_argument("G2 family requires n = 2");
      for (const Relator& r : relators({n, Variant::ExtendedTwoAlt}))
        if (r.name == "G~2") return {r};
      throw std::logic_error("missing closing relator");
    }
    case Family::Star: {
      std::vector<Relator> out;
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
          for (int k = 1; k <= n; ++k) {
            if (!is_cyclic_triple(i, j, k, n, /*strict=*/false)) continue;
            // keep the least valid rotation as the class representative
            std::array<std::array<int, 3>, 3> rots{
                {{i, j, k}, {j, k, i}, {k, i, j}}};
            std::array<int, 3> least{0, 0, 0};
            bool have = false;
            for (const auto& r : rots) {
              if (!is_cyclic_triple(r[0], r[1], r[2], n, false)) continue;
              if (!have || r < least) {
                least = r;
                have = true;
              }
            }
            if (least != std::array<int, 3>{i, j, k}) continue;
            out.push_back(star_relator(i, j, k, n));
          }
      return out;
    }
    case Family::LemmaG: {
      if (n < 2) throw std::invalid_argument("lemmaG family requires n >= 2");
      std::vector<Relator> out;
      for (int i = 1; i <= n; ++i) out.push_back(g_relator_based_at(i, n));
      return out;
    }
  }
  throw std::logic_error("unknown family");
}

std::vector<ReportRecord> verify_relation_suite(
    int n, const std::vector<Family>& families,
    const std::vector<Rep>& representations, const SuiteOptions& opts) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  struct Job {
    Relator relator;
    Rep representation;
  };
  std::vector<Job> jobs;
  for (Rep rep : representations)
    for (Family f : families)
      for (const Relator& rel : family_relators(f, n))
        jobs.push_back(Job{rel, rep});

  std::vector<std::vector<ReportRecord>> slots(jobs.size());
  std::atomic<std::size_t> next{0};
  int workers = opts.jobs > 0
                    ? opts.jobs
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min<int>(workers, static_cast<int>(jobs.size()));

  auto work = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) break;
      slots[i] = verify_on_generators(jobs[i].relator, n,
                                      jobs[i].representation, opts.search);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  std::vector<ReportRecord> out;
  for (auto& slot : slots)
    for (ReportRecord& r : slot) out.push_back(std::move(r));
  return out;
}

}  // namespace twistcat
