#include "twistcat/words.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace twistcat {

Letter alpha(int exp) { return Letter{Gen::Alpha, 0, exp}; }

Letter beta(int i, int exp) {
  if (i < 1) throw std::invalid_argument("beta index must be positive");
  return Letter{Gen::Beta, i, exp};
}

Letter central(int exp) { return Letter{Gen::Central, 0, exp}; }

Letter inverse(const Letter& l) { return Letter{l.gen, l.index, -l.exp}; }

Word invert(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse(*it));
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const Word& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word pow(const Word& w, int k) {
  if (k < 0) return pow(invert(w), -k);
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(k));
  for (int r = 0; r < k; ++r) out.insert(out.end(), w.begin(), w.end());
  return out;
}

int cyclic(int i, int n) {
  if (n < 1) throw std::invalid_argument("modulus must be positive");
  int r = (i - 1) % n;
  if (r < 0) r += n;
  return r + 1;
}

int successor(int i, int n) { return cyclic(i + 1, n); }

namespace {

// Forward distance 0..n-1 from i to j in Z/n.
int cyclic_distance(int i, int j, int n) {
  int d = (j - i) % n;
  if (d < 0) d += n;
  return d;
}

void check_index(int i, int n) {
  if (i < 1 || i > n) throw std::invalid_argument("index out of range 1..n");
}

}  // namespace

bool is_cyclic_triple(int i, int j, int k, int n, bool strict) {
  check_index(i, n);
  check_index(j, n);
  check_index(k, n);
  int dj = cyclic_distance(i, j, n);
  int dk = cyclic_distance(i, k, n);
  if (strict) {
    return i != j && j != k && i != k && 0 < dj && dj < dk;
  }
  return dj <= dk;
}

Word a_word(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("a_word requires n >= 2");
  i = cyclic(i, n);
  j = cyclic(j, n);
  int i1 = successor(i, n);
  int j1 = successor(j, n);
  return Word{beta(j1),     alpha(),      beta(i1, -1), beta(i),
              alpha(-1),    beta(j1, -1), alpha(),      beta(i, -1),
              beta(i1),     alpha(-1),    beta(i1, -1), beta(i)};
}

Word gamma_twist_word(int i, int j, int n) {
  if (n < 2) throw std::invalid_argument("gamma_twist_word requires n >= 2");
  i = cyclic(i, n);
  j = cyclic(j, n);
  Word out;
  for (int k = i; k != j; k = successor(k, n)) {
    Word a = a_word(k, j, n);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

Word Relator::relator_word() const {
  return free_reduce(concat({lhs, invert(rhs)}));
}

namespace {

Word braid_lhs(int i) { return Word{alpha(), beta(i), alpha()}; }
Word braid_rhs(int i) { return Word{beta(i), alpha(), beta(i)}; }

Relator braid_relator(int i) {
  return Relator{"braid(" + std::to_string(i) + ")", braid_lhs(i),
                 braid_rhs(i)};
}

Relator commutation_relator(int i, int j) {
  return Relator{"commutation(" + std::to_string(i) + "," + std::to_string(j) +
                     ")",
                 Word{beta(i), beta(j)}, Word{beta(j), beta(i)}};
}

// Inner word of the commutativity relation for the triple (i, j, k).
Word commutativity_inner(int j, int k, int n) {
  int k1 = successor(k, n);
  return Word{alpha(-1), beta(k1, -1), beta(j, -1), alpha(-1), beta(k),
              alpha(),   beta(j),      beta(k1),    alpha()};
}

Relator commutativity_relator(int i, int j, int k, int n) {
  Word c = commutativity_inner(j, k, n);
  return Relator{"commutativity(" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) + ")",
                 concat({Word{beta(i)}, c}), concat({c, Word{beta(i)}})};
}

// Rotation-and-reduction fingerprint used to drop relators that are cyclic
// conjugates of an earlier one.
Word cyclic_canonical(const Word& w0) {
  Word w = free_reduce(w0);
  // cyclically reduce
  while (w.size() >= 2 && w.front() == inverse(w.back())) {
    w.erase(w.begin());
    w.pop_back();
    w = free_reduce(w);
  }
  auto key = [](const Word& v) {
    std::string s;
    for (const Letter& l : v) {
      s += static_cast<char>('0' + static_cast<int>(l.gen));
      s += std::to_string(l.index);
      s += l.exp > 0 ? '+' : '-';
    }
    return s;
  };
  Word best = w;
  std::string best_key = key(w);
  for (std::size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
    std::string k = key(rot);
    if (k < best_key) {
      best_key = k;
      best = rot;
    }
  }
  return best;
}

}  // namespace

Relator star_relator(int i, int j, int k, int n) {
  check_index(i, n);
  check_index(j, n);
  check_index(k, n);
  if (!is_cyclic_triple(i, j, k, n, /*strict=*/false))
    throw std::invalid_argument("star_relator requires a cyclic triple");
  Word lhs = pow(Word{alpha(), beta(i), beta(j), beta(k)}, 3);
  Word rhs;
  if (i == j && j == k) {
    // degenerate star: rhs is the full cycle product gamma(i, i-1)
    if (n >= 2) rhs = gamma_twist_word(i, cyclic(i - 1, n), n);
  } else {
    rhs = concat({gamma_twist_word(i, j, n), gamma_twist_word(j, k, n),
                  gamma_twist_word(k, i, n)});
  }
  return Relator{"star(" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(k) + ")",
                 lhs, rhs};
}

Relator g_relator_based_at(int i, int n) {
  if (n < 2) throw std::invalid_argument("g_relator_based_at requires n >= 2");
  check_index(i, n);
  Word rhs = gamma_twist_word(i, cyclic(i - 1, n), n);
  rhs.push_back(central());
  rhs.push_back(central());
  return Relator{"lemmaG(" + std::to_string(i) + ")",
                 pow(Word{alpha(), beta(i)}, 6), rhs};
}

std::vector<Relator> relators(const PresentationSpec& spec) {
  int n = spec.n;
  if (n < 1) throw std::invalid_argument("n must be positive");
  bool two_alt =
      spec.variant == Variant::TwoAlt || spec.variant == Variant::ExtendedTwoAlt;
  bool extended = spec.variant == Variant::Extended ||
                  spec.variant == Variant::ExtendedTwoAlt;
  if (two_alt && n != 2)
    throw std::invalid_argument("two-generator variants require n = 2");

  std::vector<Relator> out;
  // the two-generator alternative presentation lists only braid relations
  // and its closing relation
  if (!two_alt)
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        out.push_back(commutation_relator(i, j));
  for (int i = 1; i <= n; ++i) out.push_back(braid_relator(i));

  std::set<std::string> seen;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (!is_cyclic_triple(i, j, k, n, /*strict=*/true)) continue;
        Relator rel = commutativity_relator(i, j, k, n);
        Word canon = cyclic_canonical(rel.relator_word());
        std::ostringstream key;
        for (const Letter& l : canon)
          key << format_letter(l) << ' ';
        if (!seen.insert(key.str()).second) continue;
        out.push_back(rel);
      }

  switch (spec.variant) {
    case Variant::Boundary:
      break;
    case Variant::Punctured: {
      Word rhs = n >= 2 ? gamma_twist_word(1, n, n) : Word{};
      out.push_back(Relator{"G", pow(Word{alpha(), beta(1)}, 6), rhs});
      break;
    }
    case Variant::Extended: {
      Word rhs = n >= 2 ? gamma_twist_word(1, n, n) : Word{};
      rhs.push_back(central());
      rhs.push_back(central());
      out.push_back(Relator{"G~", pow(Word{alpha(), beta(1)}, 6), rhs});
      break;
    }
    case Variant::TwoAlt:
      out.push_back(
          Relator{"G2", pow(Word{beta(1), alpha(), beta(2)}, 4), Word{}});
      break;
    case Variant::ExtendedTwoAlt:
      out.push_back(Relator{"G~2", pow(Word{beta(1), alpha(), beta(2)}, 4),
                            Word{central(), central()}});
      break;
  }

  if (extended) {
    std::vector<Letter> gens{alpha()};
    for (int i = 1; i <= n; ++i) gens.push_back(beta(i));
    for (const Letter& g : gens) {
      out.push_back(Relator{"central(" + format_letter(g) + ")",
                            Word{central(), g}, Word{g, central()}});
    }
  }
  return out;
}

std::string format_letter(const Letter& l) {
  std::string s;
  switch (l.gen) {
    case Gen::Alpha:
      s = "a";
      break;
    case Gen::Beta:
      s = "b" + std::to_string(l.index);
      break;
    case Gen::Central:
      s = "t";
      break;
  }
  if (l.exp < 0) s += '\'';
  return s;
}

std::string format_word(const Word& w) {
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    s += format_letter(l);
  }
  return s;
}

Word parse_word(const std::string& text, int n) {
  Word out;
  std::size_t pos = 0;
  const std::size_t len = text.size();
  while (pos < len) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    std::size_t start = pos;
    char c = text[pos];
    if (c == 'a' || c == 't') {
      ++pos;
      int exp = +1;
      if (pos < len && text[pos] == '\'') {
        exp = -1;
        ++pos;
      }
      out.push_back(c == 'a' ? alpha(exp) : central(exp));
    } else if (c == 'b') {
      ++pos;
      std::size_t dstart = pos;
      while (pos < len && std::isdigit(static_cast<unsigned char>(text[pos])))
        ++pos;
      if (pos == dstart)
        throw ParseError("expected digits after 'b'", start);
      int idx = std::stoi(text.substr(dstart, pos - dstart));
      if (idx < 1 || idx > n)
        throw ParseError("beta index out of range 1..n", dstart);
      int exp = +1;
      if (pos < len && text[pos] == '\'') {
        exp = -1;
        ++pos;
      }
      out.push_back(beta(idx, exp));
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    if (pos < len && !std::isspace(static_cast<unsigned char>(text[pos])))
      throw ParseError("tokens must be whitespace separated", pos);
  }
  return out;
}

}  // namespace twistcat
