#include "rglie/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace rglie {

std::string family_name(Family f) {
  switch (f) {
  case Family::A: return "A";
  case Family::B: return "B";
  case Family::C: return "C";
  case Family::D: return "D";
  case Family::BC: return "BC";
  }
  return "?";
}

Family parse_family(const std::string &s) {
  std::string u;
  for (char c : s) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (u == "A") return Family::A;
  if (u == "B") return Family::B;
  if (u == "C") return Family::C;
  if (u == "D") return Family::D;
  if (u == "BC") return Family::BC;
  throw DomainError("unknown root-system family '" + s + "'");
}

Root::Root(std::map<int, int> coords) : coords_(std::move(coords)) {
  for (auto it = coords_.begin(); it != coords_.end();) it = it->second == 0 ? coords_.erase(it) : std::next(it);
}

Root Root::eps(int i, int c) { return Root(std::map<int, int>{{i, c}}); }

int Root::operator[](int i) const {
  auto it = coords_.find(i);
  return it == coords_.end() ? 0 : it->second;
}

int Root::dot(const Root &o) const {
  int s = 0;
  for (const auto &[i, c] : coords_) s += c * o[i];
  return s;
}

Root Root::operator+(const Root &o) const {
  auto m = coords_;
  for (const auto &[i, c] : o.coords_) m[i] += c;
  return Root(std::move(m));
}

Root Root::operator-(const Root &o) const { return *this + (-o); }

Root Root::operator-() const { return *this * -1; }

Root Root::operator*(int s) const {
  auto m = coords_;
  for (auto &[i, c] : m) c *= s;
  return Root(std::move(m));
}

std::string Root::str() const {
  if (coords_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[i, c] : coords_) {
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (std::abs(c) != 1) os << std::abs(c);
    os << "e" << i;
    first = false;
  }
  return os.str();
}

Rational coroot_pairing(const Root &beta, const Root &alpha) {
  if (alpha.is_zero()) throw DomainError("coroot of the zero root");
  return rat(2L * beta.dot(alpha), alpha.norm());
}

std::string length_name(LengthClass l) {
  switch (l) {
  case LengthClass::Short: return "short";
  case LengthClass::Long: return "long";
  case LengthClass::ExtraLong: return "extralong";
  }
  return "?";
}

std::vector<Root> RootSystem::nonzero() const {
  std::vector<Root> out;
  for (const auto &r : roots)
    if (!r.is_zero()) out.push_back(r);
  return out;
}

RootSystem generate(Family family, int n) {
  if (n < 1) throw DomainError("truncation size must be positive");
  RootSystem R{family, n, {Root()}};
  auto &S = R.roots;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      S.insert(Root::eps(i) - Root::eps(j));
      if (family != Family::A) {
        S.insert(Root::eps(i) + Root::eps(j));
        S.insert(-(Root::eps(i) + Root::eps(j)));
      }
    }
  for (int i = 1; i <= n; ++i) {
    if (family == Family::B || family == Family::BC) {
      S.insert(Root::eps(i));
      S.insert(Root::eps(i, -1));
    }
    if (family == Family::C || family == Family::BC) {
      S.insert(Root::eps(i, 2));
      S.insert(Root::eps(i, -2));
    }
  }
  return R;
}

Root reflect(const Root &alpha, const Root &beta) {
  if (alpha.is_zero()) throw DomainError("reflection in the zero root");
  const int num = 2 * beta.dot(alpha);
  const int den = alpha.norm();
  if (num % den != 0) throw DomainError("non-integral coroot pairing " + beta.str() + " vs " + alpha.str());
  return beta - alpha * (num / den);
}

std::map<Root, LengthClass> classify_lengths(const RootSystem &R) {
  std::map<Root, LengthClass> out;
  auto nz = R.nonzero();
  if (nz.empty()) return out;
  int min_norm = nz.front().norm();
  for (const auto &r : nz) min_norm = std::min(min_norm, r.norm());
  std::set<Root> shorts;
  for (const auto &r : nz)
    if (r.norm() == min_norm) shorts.insert(r);
  for (const auto &r : nz) {
    if (shorts.count(r))
      out[r] = LengthClass::Short;
    else {
      bool extra = false;
      for (const auto &s : shorts)
        if (s * 2 == r) extra = true;
      out[r] = extra ? LengthClass::ExtraLong : LengthClass::Long;
    }
  }
  return out;
}

RootSystem semidivisible(const RootSystem &R) {
  RootSystem out{R.family == Family::BC ? Family::C : R.family, R.n, {}};
  for (const auto &r : R.roots)
    if (r.is_zero() || !R.contains(r * 2)) out.roots.insert(r);
  return out;
}

std::string validate_root_set(const std::set<Root> &roots) {
  if (!roots.count(Root())) return "zero root missing";
  for (const auto &a : roots) {
    if (!roots.count(-a)) return "not closed under negation at " + a.str();
    if (a.is_zero()) continue;
    for (const auto &b : roots) {
      const int num = 2 * b.dot(a);
      if (num % a.norm() != 0) return "non-integral pairing <" + b.str() + ", " + a.str() + "^>";
      if (!roots.count(reflect(a, b))) return "s_" + a.str() + "(" + b.str() + ") not in the set";
    }
  }
  return "";
}

bool is_full_subsystem(const std::set<Root> &S, const RootSystem &R) {
  for (const auto &s : S)
    if (!R.contains(s)) throw DomainError("root " + s.str() + " is not in the ambient system");
  if (!S.count(Root())) return false;
  for (const auto &a : S) {
    if (a.is_zero()) continue;
    for (const auto &b : S)
      if (!S.count(reflect(a, b))) return false;
  }
  std::vector<std::string> labels;
  for (int i = 1; i <= R.n; ++i) labels.push_back("e" + std::to_string(i));
  auto sp = make_space(labels);
  auto vec = [&](const Root &r) {
    Coeffs c;
    for (const auto &[i, k] : r.coords()) c.emplace(static_cast<std::size_t>(i - 1), Rational(k));
    return c;
  };
  std::vector<Coeffs> span;
  for (const auto &s : S) span.push_back(vec(s));
  Subspace sub(sp, span);
  for (const auto &r : R.roots)
    if (sub.contains(vec(r)) && !S.count(r)) return false;
  return true;
}

std::vector<std::set<Root>> connected_components(const std::set<Root> &roots) {
  std::vector<Root> nz;
  for (const auto &r : roots)
    if (!r.is_zero()) nz.push_back(r);
  std::vector<int> comp(nz.size(), -1);
  std::vector<std::set<Root>> out;
  for (std::size_t s = 0; s < nz.size(); ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<std::size_t> queue{s};
    comp[s] = id;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      out.back().insert(nz[u]);
      for (std::size_t v = 0; v < nz.size(); ++v)
        if (comp[v] < 0 && nz[u].dot(nz[v]) != 0) {
          comp[v] = id;
          queue.push_back(v);
        }
    }
  }
  return out;
}

std::vector<std::set<Root>> connected_components(const RootSystem &R) { return connected_components(R.roots); }

std::set<Root> restrict_to_indices(const RootSystem &R, const std::set<int> &indices) {
  std::set<Root> out;
  for (const auto &r : R.roots) {
    bool inside = true;
    for (const auto &[i, c] : r.coords())
      if (!indices.count(i)) inside = false;
    if (inside) out.insert(r);
  }
  return out;
}

}  // namespace rglie
