#include "blab/solvable.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "blab/errors.hpp"

namespace blab {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw InvalidArgument(message);
  }
}

IntMatrix identity_matrix(int d) {
  IntMatrix id(d, std::vector<std::int64_t>(d, 0));
  for (int i = 0; i < d; ++i) {
    id[i][i] = 1;
  }
  return id;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t d = a.size();
  IntMatrix c(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t j = 0; j < d; ++j) {
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

}  // namespace

std::size_t AffineHash::operator()(const AffineElement& g) const noexcept {
  std::uint64_t h = 1469598103934665603ULL ^ static_cast<std::uint64_t>(g.k);
  for (std::int64_t x : g.v) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

SemidirectGroup::SemidirectGroup(std::string name, int d, int m,
                                 IntMatrix action,
                                 std::vector<AffineElement> generators)
    : name_(std::move(name)), d_(d), m_(m) {
  require(d >= 0, "dimension must be non-negative");
  require(m >= 1, "rotation order must be at least 1");
  require(static_cast<int>(action.size()) == d, "action must be d x d");
  for (const auto& row : action) {
    require(static_cast<int>(row.size()) == d, "action must be d x d");
  }
  powers_.push_back(identity_matrix(d));
  for (int i = 1; i <= m; ++i) {
    IntMatrix next = matmul(powers_.back(), action);
    if (i == m) {
      require(next == identity_matrix(d),
              "action matrix must have order dividing m");
    } else {
      powers_.push_back(std::move(next));
    }
  }
  require(!generators.empty(), "a generating set is required");
  for (const AffineElement& g : generators) {
    require(static_cast<int>(g.v.size()) == d && g.k >= 0 && g.k < m,
            "generator has the wrong shape");
  }
  std::vector<AffineElement> closed;
  for (const AffineElement& g : generators) {
    closed.push_back(g);
    closed.push_back(inverse(g));
  }
  std::sort(closed.begin(), closed.end());
  closed.erase(std::unique(closed.begin(), closed.end()), closed.end());
  closed.erase(std::remove(closed.begin(), closed.end(), identity()),
               closed.end());
  generators_ = std::move(closed);
}

SemidirectGroup SemidirectGroup::infinite_dihedral() {
  SemidirectGroup g("infinite dihedral", 1, 2, {{-1}},
                    {AffineElement{{0}, 1}, AffineElement{{1}, 1}});
  g.line_ = true;
  return g;
}

SemidirectGroup SemidirectGroup::with_standard_generators(std::string name,
                                                          int d, int m,
                                                          IntMatrix action) {
  std::vector<AffineElement> gens;
  for (int i = 0; i < d; ++i) {
    AffineElement e{std::vector<std::int64_t>(d, 0), 0};
    e.v[i] = 1;
    gens.push_back(std::move(e));
  }
  if (m > 1) {
    gens.push_back(AffineElement{std::vector<std::int64_t>(d, 0), 1});
  }
  return SemidirectGroup(std::move(name), d, m, std::move(action),
                         std::move(gens));
}

SemidirectGroup SemidirectGroup::from_json(const nlohmann::json& desc) {
  try {
    const std::string type = desc.at("type").get<std::string>();
    if (type == "infinite-dihedral") {
      return infinite_dihedral();
    }
    require(type == "semidirect", "unknown group type '" + type + "'");
    const int d = desc.at("d").get<int>();
    const int m = desc.at("m").get<int>();
    IntMatrix action = desc.at("action").get<IntMatrix>();
    const std::string name = desc.value(
        "name", "Z^" + std::to_string(d) + " x| Z/" + std::to_string(m));
    if (!desc.contains("generators")) {
      return with_standard_generators(name, d, m, std::move(action));
    }
    std::vector<AffineElement> gens;
    for (const auto& gj : desc.at("generators")) {
      gens.push_back(AffineElement{gj.at("v").get<std::vector<std::int64_t>>(),
                                   gj.at("k").get<int>()});
    }
    return SemidirectGroup(name, d, m, std::move(action), std::move(gens));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed group description: ") + e.what());
  }
}

AffineElement SemidirectGroup::identity() const {
  return AffineElement{std::vector<std::int64_t>(d_, 0), 0};
}

std::vector<std::int64_t> SemidirectGroup::act(
    int k, const std::vector<std::int64_t>& v) const {
  const IntMatrix& a = powers_[k];
  std::vector<std::int64_t> out(d_, 0);
  for (int i = 0; i < d_; ++i) {
    for (int j = 0; j < d_; ++j) {
      out[i] += a[i][j] * v[j];
    }
  }
  return out;
}

AffineElement SemidirectGroup::multiply(const AffineElement& a,
                                        const AffineElement& b) const {
  AffineElement c{act(a.k, b.v), (a.k + b.k) % m_};
  for (int i = 0; i < d_; ++i) {
    c.v[i] += a.v[i];
  }
  return c;
}

AffineElement SemidirectGroup::inverse(const AffineElement& a) const {
  const int k = (m_ - a.k) % m_;
  AffineElement c{act(k, a.v), k};
  for (auto& x : c.v) {
    x = -x;
  }
  return c;
}

AffineElement SemidirectGroup::power(const AffineElement& a,
                                     std::int64_t e) const {
  AffineElement base = e < 0 ? inverse(a) : a;
  std::uint64_t n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  AffineElement acc = identity();
  while (n > 0) {
    if (n & 1) {
      acc = multiply(acc, base);
    }
    base = multiply(base, base);
    n >>= 1;
  }
  return acc;
}

bool SemidirectGroup::is_torsion(const AffineElement& a) const {
  return power(a, m_) == identity();
}

std::string SemidirectGroup::format(const AffineElement& a) const {
  std::string s = "(";
  for (int i = 0; i < d_; ++i) {
    s += (i ? "," : "") + std::to_string(a.v[i]);
  }
  return s + ";" + std::to_string(a.k) + ")";
}

Ball cayley_ball(const SemidirectGroup& g, int r) {
  require(r >= 0, "ball radius must be non-negative");
  Ball ball;
  std::unordered_set<AffineElement, AffineHash> seen;
  std::vector<AffineElement> frontier{g.identity()};
  seen.insert(g.identity());
  for (int j = 0; j <= r; ++j) {
    std::sort(frontier.begin(), frontier.end());
    ball.sphere.push_back(frontier.size());
    for (const AffineElement& x : frontier) {
      ball.elements.push_back(x);
      ball.norm.push_back(j);
    }
    if (j == r) {
      break;
    }
    std::vector<AffineElement> next;
    for (const AffineElement& x : frontier) {
      for (const AffineElement& s : g.generators()) {
        AffineElement y = g.multiply(x, s);
        if (seen.insert(y).second) {
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
  }
  return ball;
}

std::vector<DensityPoint> ball_torsion_density(const SemidirectGroup& g, int r) {
  const Ball ball = cayley_ball(g, r);
  std::vector<DensityPoint> out;
  std::uint64_t size = 0;
  std::uint64_t torsion = 0;
  std::size_t idx = 0;
  for (int j = 0; j <= r; ++j) {
    for (std::size_t n = 0; n < ball.sphere[j]; ++n, ++idx) {
      ++size;
      if (g.is_torsion(ball.elements[idx])) {
        ++torsion;
      }
    }
    out.push_back({j, size, torsion,
                   static_cast<double>(torsion) / static_cast<double>(size)});
  }
  return out;
}

MnReport mn_density_bound(const SemidirectGroup& g,
                          const std::vector<AffineElement>& M,
                          const MembershipPredicate& in_n, int r) {
  require(!M.empty(), "M must be nonempty");
  require(r >= 0, "radius must be non-negative");
  const Ball ball = cayley_ball(g, r);
  std::unordered_map<AffineElement, int, AffineHash> norm;
  for (std::size_t i = 0; i < ball.elements.size(); ++i) {
    norm.emplace(ball.elements[i], ball.norm[i]);
  }

  MnReport rep;
  for (const AffineElement& x : M) {
    auto it = norm.find(x);
    require(it != norm.end(),
            "element " + g.format(x) + " of M lies outside the ball");
    rep.l = std::max(rep.l, it->second);
  }
  for (int j = 0; j <= rep.l; ++j) {
    rep.ball_l += ball.sphere[j];
  }
  rep.c = 1.0 / (static_cast<double>(M.size()) * static_cast<double>(rep.ball_l));

  std::vector<AffineElement> m_inv;
  for (const AffineElement& x : M) {
    m_inv.push_back(g.inverse(x));
  }
  for (const AffineElement& x : ball.elements) {
    bool ok = false;
    for (const AffineElement& y : m_inv) {
      if (in_n(g.multiply(y, x))) {
        ok = true;
        break;
      }
    }
    if (!ok && rep.counterexamples.size() < 16) {
      rep.counterexamples.push_back(g.format(x));
    }
  }
  rep.factorization_ok = rep.counterexamples.empty();

  std::uint64_t size = 0;
  std::uint64_t in = 0;
  std::size_t idx = 0;
  for (int j = 0; j <= r; ++j) {
    for (std::size_t n = 0; n < ball.sphere[j]; ++n, ++idx) {
      ++size;
      if (in_n(ball.elements[idx])) {
        ++in;
      }
    }
    const double density = static_cast<double>(in) / static_cast<double>(size);
    rep.n_density.push_back({j, size, in, density});
    if (j >= rep.l && density < rep.c && rep.first_failure < 0) {
      rep.first_failure = j;
    }
  }
  rep.holds = rep.factorization_ok && rep.first_failure < 0;
  return rep;
}

int euler_phi(int m) {
  require(m >= 1, "phi needs m >= 1");
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) {
        n /= p;
      }
      result -= result / p;
    }
  }
  if (n > 1) {
    result -= result / n;
  }
  return result;
}

namespace {

// Lazy walk on the Cayley line of the infinite dihedral group: position p
// is torsion iff p is odd or p = 0.
WalkBaseline line_walk(int r_max) {
  WalkBaseline out;
  const auto half = static_cast<std::size_t>(
      std::min<double>(r_max, std::ceil(12.0 * std::sqrt(r_max + 1.0)) + 2));
  const std::size_t width = 2 * half + 1;
  std::vector<double> cur(width + 2, 0.0);
  std::vector<double> next(width + 2, 0.0);
  // cur[1 + half + p] holds position p; cur[0] and cur[width + 1] collect
  // mass that leaves the window.
  cur[1 + half] = 1.0;
  const double third = 1.0 / 3.0;
  long double leaked = 0;
  for (int j = 0; j <= r_max; ++j) {
    // Odd positions sit at indices of parity opposite to the centre.
    double torsion = cur[1 + half];
    for (std::size_t i = (half % 2 == 0) ? 2 : 1; i <= width; i += 2) {
      torsion += cur[i];
    }
    out.torsion.push_back(torsion);
    if (j == r_max) {
      break;
    }
    for (std::size_t i = 1; i <= width; ++i) {
      next[i] = (cur[i - 1] + cur[i] + cur[i + 1]) * third;
    }
    leaked += (cur[1] + cur[width]) * third;
    std::swap(cur, next);
  }
  out.leaked_mass = static_cast<double>(leaked);
  if (out.leaked_mass >= 1e-9) {
    throw BudgetExceeded("line convolution leaked mass " +
                         std::to_string(out.leaked_mass));
  }
  return out;
}

}  // namespace

WalkBaseline walk_torsion_baseline(const SemidirectGroup& g, int r_max) {
  require(r_max >= 0, "r_max must be non-negative");
  WalkBaseline out;
  if (g.is_line()) {
    out = line_walk(r_max);
  } else {
    const double w = 1.0 / static_cast<double>(g.generators().size() + 1);
    std::unordered_map<AffineElement, double, AffineHash> cur{{g.identity(), 1.0}};
    for (int j = 0; j <= r_max; ++j) {
      double torsion = 0;
      for (const auto& [x, p] : cur) {
        if (g.is_torsion(x)) {
          torsion += p;
        }
      }
      out.torsion.push_back(torsion);
      if (j == r_max) {
        break;
      }
      std::unordered_map<AffineElement, double, AffineHash> next;
      next.reserve(cur.size() * 2);
      for (const auto& [x, p] : cur) {
        next[x] += p * w;
        for (const AffineElement& s : g.generators()) {
          next[g.multiply(x, s)] += p * w;
        }
      }
      cur = std::move(next);
    }
  }
  const int m = g.rotation_order();
  out.phi_ratio = static_cast<double>(euler_phi(m)) / m;
  out.index_bound = 1.0 - 1.0 / m;
  return out;
}

}  // namespace blab
