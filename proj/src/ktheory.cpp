#include "twistcat/ktheory.hpp"

#include <sstream>

namespace twistcat {

LatticeMap LatticeMap::identity(int n) {
  LatticeMap id;
  id.m.assign(static_cast<std::size_t>(n + 1),
              std::vector<Integer>(static_cast<std::size_t>(n + 1), 0));
  for (int i = 0; i <= n; ++i)
    id.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return id;
}

LatticeMap operator*(const LatticeMap& a, const LatticeMap& b) {
  const std::size_t d = a.m.size();
  if (d != b.m.size()) throw std::invalid_argument("matrix size mismatch");
  LatticeMap out;
  out.m.assign(d, std::vector<Integer>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      const Integer& aik = a.m[i][k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < d; ++j) out.m[i][j] += aik * b.m[k][j];
    }
  return out;
}

KClass operator*(const LatticeMap& a, const KClass& v) {
  const std::size_t d = a.m.size();
  if (d != v.v.size()) throw std::invalid_argument("matrix size mismatch");
  KClass out;
  out.v.assign(d, 0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out.v[i] += a.m[i][j] * v.v[j];
  return out;
}

LatticeMap operator-(const LatticeMap& a) {
  LatticeMap out = a;
  for (auto& row : out.m)
    for (auto& x : row) x = -x;
  return out;
}

KClass class_of(const DObject& obj) {
  KClass out;
  out.v.assign(static_cast<std::size_t>(obj.n + 1), 0);
  int sign = obj.shift % 2 == 0 ? 1 : -1;
  if (obj.kind == DObject::Kind::LineBundle) {
    out.v[0] = sign;
    for (int i = 1; i <= obj.n; ++i)
      out.v[static_cast<std::size_t>(i)] =
          sign * obj.divisor[static_cast<std::size_t>(i - 1)];
  } else {
    out.v[static_cast<std::size_t>(obj.point)] = sign;
  }
  return out;
}

Integer euler_form(const KClass& e, const KClass& f) {
  if (e.v.size() != f.v.size())
    throw std::invalid_argument("euler_form size mismatch");
  Integer deg_e = 0, deg_f = 0;
  for (std::size_t i = 1; i < e.v.size(); ++i) {
    deg_e += e.v[i];
    deg_f += f.v[i];
  }
  return e.v[0] * deg_f - f.v[0] * deg_e;
}

LatticeMap twist_matrix(const Letter& l, int n) {
  if (l.gen == Gen::Beta && (l.index < 1 || l.index > n))
    throw std::invalid_argument("letter index out of range for n");
  LatticeMap out = LatticeMap::identity(n);
  switch (l.gen) {
    case Gen::Beta:
      // (r, d) -> (r, d + r e_i), inverse subtracts
      out.m[static_cast<std::size_t>(l.index)][0] = l.exp;
      break;
    case Gen::Alpha:
      // (r, d) -> (r - sum d, d), inverse adds
      for (int j = 1; j <= n; ++j)
        out.m[0][static_cast<std::size_t>(j)] = -l.exp;
      break;
    case Gen::Central:
      out = -out;
      break;
  }
  return out;
}

LatticeMap evaluate_word_matrix(const Word& w, int n) {
  LatticeMap out = LatticeMap::identity(n);
  for (const Letter& l : w) out = out * twist_matrix(l, n);
  return out;
}

MatrixReport verify_relator_matrix(const Relator& rel, int n) {
  MatrixReport report;
  report.lhs = evaluate_word_matrix(rel.lhs, n);
  report.rhs = evaluate_word_matrix(rel.rhs, n);
  if (report.lhs == report.rhs) {
    report.verdict = MatrixVerdict::Equal;
  } else if (report.lhs == -report.rhs) {
    report.verdict = MatrixVerdict::CentralDefect;
    report.defect_is_minus_identity = true;
  } else {
    report.verdict = MatrixVerdict::Unequal;
  }
  return report;
}

std::vector<KClass> radical_basis(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<KClass> basis;
  for (int i = 1; i < n; ++i) {
    KClass v;
    v.v.assign(static_cast<std::size_t>(n + 1), 0);
    v.v[static_cast<std::size_t>(i)] = 1;
    v.v[static_cast<std::size_t>(i + 1)] = -1;
    basis.push_back(std::move(v));
  }
  return basis;
}

bool check_form_preserved(const LatticeMap& m, int n) {
  for (int i = 0; i <= n; ++i) {
    KClass u;
    u.v.assign(static_cast<std::size_t>(n + 1), 0);
    u.v[static_cast<std::size_t>(i)] = 1;
    for (int j = 0; j <= n; ++j) {
      KClass v;
      v.v.assign(static_cast<std::size_t>(n + 1), 0);
      v.v[static_cast<std::size_t>(j)] = 1;
      if (euler_form(m * u, m * v) != euler_form(u, v)) return false;
    }
  }
  return true;
}

std::string format_matrix_json(const LatticeMap& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.m.size(); ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < m.m[i].size(); ++j) {
      if (j) out << ',';
      out << m.m[i][j];
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

}  // namespace twistcat
