#include "twistcat/sheaf.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>

namespace twistcat {

namespace {
using BigInt = boost::multiprecision::cpp_int;
}

int total_degree(const Divisor& d) {
  return std::accumulate(d.begin(), d.end(), 0);
}

DObject DObject::line_bundle(Divisor d, int shift) {
  DObject o;
  o.kind = Kind::LineBundle;
  o.n = static_cast<int>(d.size());
  o.divisor = std::move(d);
  o.shift = shift;
  if (o.n < 1) throw std::invalid_argument("divisor must be nonempty");
  return o;
}

DObject DObject::structure_sheaf(int n, int shift) {
  return line_bundle(Divisor(static_cast<std::size_t>(n), 0), shift);
}

DObject DObject::skyscraper(int point, int n, int shift) {
  if (n < 1 || point < 1 || point > n)
    throw std::invalid_argument("skyscraper point out of range 1..n");
  DObject o;
  o.kind = Kind::Skyscraper;
  o.n = n;
  o.point = point;
  o.shift = shift;
  return o;
}

namespace {

// Sections with pole order <= a_i at x_i on component i are spanned by
// z^k / (z-1)^{a_i}, k = 0..a_i; the basis element has value
// [k == 0] (-1)^{a_i} at z = 0 and [k == a_i] at z = infinity.
// H^0 is the kernel of the node conditions f_r(inf) = f_{r+1}(0).
long long h0_uncached(const Divisor& d) {
  const int n = static_cast<int>(d.size());
  if (n < 1) throw std::invalid_argument("divisor must be nonempty");
  std::vector<int> dims(d.size());
  std::vector<int> off(d.size());
  int nvars = 0;
  for (int i = 0; i < n; ++i) {
    dims[static_cast<std::size_t>(i)] = std::max(d[static_cast<std::size_t>(i)] + 1, 0);
    off[static_cast<std::size_t>(i)] = nvars;
    nvars += dims[static_cast<std::size_t>(i)];
  }
  if (nvars == 0) return 0;

  std::vector<std::vector<BigInt>> rows(
      static_cast<std::size_t>(n),
      std::vector<BigInt>(static_cast<std::size_t>(nvars), 0));
  for (int r = 0; r < n; ++r) {
    int i = r;
    int j = (r + 1) % n;
    auto& row = rows[static_cast<std::size_t>(r)];
    if (dims[static_cast<std::size_t>(i)] > 0)
      row[static_cast<std::size_t>(off[static_cast<std::size_t>(i)] +
                                   dims[static_cast<std::size_t>(i)] - 1)] += 1;
    if (dims[static_cast<std::size_t>(j)] > 0) {
      int sign = d[static_cast<std::size_t>(j)] % 2 == 0 ? 1 : -1;
      row[static_cast<std::size_t>(off[static_cast<std::size_t>(j)])] -= sign;
    }
  }

  // fraction-free elimination; entries stay integral
  int rank = 0;
  for (int col = 0; col < nvars && rank < n; ++col) {
    int sel = -1;
    for (int r = rank; r < n; ++r) {
      if (rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)],
              rows[static_cast<std::size_t>(sel)]);
    const auto pivot_row = rows[static_cast<std::size_t>(rank)];
    const BigInt& p = pivot_row[static_cast<std::size_t>(col)];
    for (int r = rank + 1; r < n; ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      if (row[static_cast<std::size_t>(col)] == 0) continue;
      BigInt f = row[static_cast<std::size_t>(col)];
      for (int c = 0; c < nvars; ++c) {
        row[static_cast<std::size_t>(c)] =
            row[static_cast<std::size_t>(c)] * p -
            pivot_row[static_cast<std::size_t>(c)] * f;
      }
    }
    ++rank;
  }
  return nvars - rank;
}

std::shared_mutex h0_cache_mutex;
std::map<Divisor, long long> h0_cache;

}  // namespace

long long h0_oracle(const Divisor& d) {
  {
    std::shared_lock lock(h0_cache_mutex);
    auto it = h0_cache.find(d);
    if (it != h0_cache.end()) return it->second;
  }
  long long value = h0_uncached(d);
  std::unique_lock lock(h0_cache_mutex);
  h0_cache.emplace(d, value);
  return value;
}

CohomDims cohomology(const Divisor& d) {
  long long h0 = h0_oracle(d);
  long long h1_rr = h0 - total_degree(d);
  Divisor neg(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) neg[i] = -d[i];
  long long h1_serre = h0_oracle(neg);
  if (h1_rr != h1_serre) {
    std::ostringstream msg;
    msg << "cohomology oracle disagreement on " << format_divisor(d)
        << ": h0 - deg = " << h1_rr << ", h0(-D) = " << h1_serre;
    throw OracleInconsistency(msg.str());
  }
  return CohomDims{h0, h1_rr};
}

namespace {

// Index i such that d = e_i, or 0.
int unit_vector_index(const Divisor& d) {
  int idx = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (d[i] != 1 || idx != 0) return 0;
    idx = static_cast<int>(i) + 1;
  }
  return idx;
}

int negative_unit_vector_index(const Divisor& d) {
  int idx = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (d[i] != -1 || idx != 0) return 0;
    idx = static_cast<int>(i) + 1;
  }
  return idx;
}

bool is_zero(const Divisor& d) {
  for (int a : d)
    if (a != 0) return false;
  return true;
}

}  // namespace

std::variant<DObject, NotReducible> apply_generator(const Letter& l,
                                                    const DObject& obj) {
  if (l.gen == Gen::Beta && (l.index < 1 || l.index > obj.n))
    throw std::invalid_argument("letter index out of range for object");

  DObject out = obj;
  switch (l.gen) {
    case Gen::Central:
      out.shift += l.exp;
      return out;
    case Gen::Beta:
      if (obj.kind == DObject::Kind::Skyscraper) return out;
      out.divisor[static_cast<std::size_t>(l.index - 1)] += l.exp;
      return out;
    case Gen::Alpha:
      break;
  }

  if (obj.kind == DObject::Kind::Skyscraper) {
    if (l.exp > 0) {
      // k(x_i)[s] -> O(-x_i)[s+1]
      out = DObject::structure_sheaf(obj.n, obj.shift + 1);
      out.divisor[static_cast<std::size_t>(obj.point - 1)] = -1;
    } else {
      // k(x_i)[s] -> O(x_i)[s]
      out = DObject::structure_sheaf(obj.n, obj.shift);
      out.divisor[static_cast<std::size_t>(obj.point - 1)] = 1;
    }
    return out;
  }

  const Divisor& d = obj.divisor;
  if (is_zero(d)) return out;
  if (l.exp > 0) {
    if (int i = unit_vector_index(d)) {
      return DObject::skyscraper(i, obj.n, obj.shift);
    }
  } else {
    if (int i = negative_unit_vector_index(d)) {
      return DObject::skyscraper(i, obj.n, obj.shift - 1);
    }
  }
  CohomDims dims = cohomology(d);
  if (dims.h0 == 0 && dims.h1 == 0) return out;
  return NotReducible{d, dims};
}

std::variant<DObject, StuckState> evaluate_word(const Word& w,
                                                const DObject& obj) {
  DObject cur = obj;
  for (std::size_t applied = 0; applied < w.size(); ++applied) {
    const Letter& l = w[w.size() - 1 - applied];
    auto step = apply_generator(l, cur);
    if (std::holds_alternative<NotReducible>(step)) {
      Word remaining(w.begin(), w.end() - static_cast<std::ptrdiff_t>(applied));
      return StuckState{std::move(remaining), cur,
                        std::get<NotReducible>(step)};
    }
    cur = std::get<DObject>(step);
  }
  return cur;
}

std::string format_divisor(const Divisor& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d[i]);
  }
  return s + "]";
}

std::string format_object(const DObject& o) {
  std::string s;
  if (o.kind == DObject::Kind::LineBundle) {
    s = "O(" + format_divisor(o.divisor) + ")";
  } else {
    s = "k(" + std::to_string(o.point) + ")";
  }
  if (o.shift != 0) s += "[" + std::to_string(o.shift) + "]";
  return s;
}

namespace {

std::size_t skip_space(const std::string& t, std::size_t pos) {
  while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos])))
    ++pos;
  return pos;
}

int parse_int(const std::string& t, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) ++pos;
  std::size_t dstart = pos;
  while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos])))
    ++pos;
  if (pos == dstart) throw ParseError("expected integer", start);
  return std::stoi(t.substr(start, pos - start));
}

void expect(const std::string& t, std::size_t& pos, char c) {
  if (pos >= t.size() || t[pos] != c)
    throw ParseError(std::string("expected '") + c + "'", pos);
  ++pos;
}

Divisor parse_divisor_at(const std::string& t, std::size_t& pos) {
  pos = skip_space(t, pos);
  expect(t, pos, '[');
  Divisor d;
  pos = skip_space(t, pos);
  if (pos < t.size() && t[pos] == ']') {
    ++pos;
    throw ParseError("divisor must have at least one coefficient", pos - 1);
  }
  while (true) {
    pos = skip_space(t, pos);
    d.push_back(parse_int(t, pos));
    pos = skip_space(t, pos);
    if (pos < t.size() && t[pos] == ',') {
      ++pos;
      continue;
    }
    expect(t, pos, ']');
    break;
  }
  return d;
}

}  // namespace

Divisor parse_divisor(const std::string& text) {
  std::size_t pos = 0;
  Divisor d = parse_divisor_at(text, pos);
  pos = skip_space(text, pos);
  if (pos != text.size()) throw ParseError("trailing input after divisor", pos);
  return d;
}

DObject parse_object(const std::string& text, int n) {
  std::size_t pos = skip_space(text, 0);
  if (pos >= text.size()) throw ParseError("empty object literal", pos);
  DObject out;
  if (text[pos] == 'O') {
    ++pos;
    expect(text, pos, '(');
    Divisor d = parse_divisor_at(text, pos);
    pos = skip_space(text, pos);
    expect(text, pos, ')');
    if (static_cast<int>(d.size()) != n)
      throw ParseError("divisor length does not match n", pos);
    out = DObject::line_bundle(std::move(d));
  } else if (text[pos] == 'k') {
    ++pos;
    expect(text, pos, '(');
    pos = skip_space(text, pos);
    int i = parse_int(text, pos);
    pos = skip_space(text, pos);
    expect(text, pos, ')');
    if (i < 1 || i > n)
      throw ParseError("skyscraper point out of range 1..n", pos);
    out = DObject::skyscraper(i, n);
  } else {
    throw ParseError("object must start with 'O' or 'k'", pos);
  }
  pos = skip_space(text, pos);
  if (pos < text.size() && text[pos] == '[') {
    ++pos;
    pos = skip_space(text, pos);
    out.shift = parse_int(text, pos);
    pos = skip_space(text, pos);
    expect(text, pos, ']');
  }
  pos = skip_space(text, pos);
  if (pos != text.size()) throw ParseError("trailing input after object", pos);
  return out;
}

}  // namespace twistcat
