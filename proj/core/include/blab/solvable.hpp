#pragma once

// Virtually abelian comparison groups Z^d x| Z/m with exact normal forms:
// ball torsion densities, the finite-set decomposition density bound, and
// lazy random-walk torsion probabilities.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace blab {

/// (v, k): translate by v, then act by the k-th power of the action.
struct AffineElement {
  std::vector<std::int64_t> v;
  int k = 0;

  auto operator<=>(const AffineElement&) const = default;
};

struct AffineHash {
  std::size_t operator()(const AffineElement& g) const noexcept;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class SemidirectGroup {
 public:
  // Z^d x| Z/m where the generator of Z/m acts by `action` (action^m = I).
  // `generators` are closed under inverses on construction.
  SemidirectGroup(std::string name, int d, int m, IntMatrix action,
                  std::vector<AffineElement> generators);

  // <s, t | s^2, t^2> as Z x| Z/2 with s = (0, 1) and t = (1, 1).
  static SemidirectGroup infinite_dihedral();
  // Standard generators: the unit translations and (0, 1).
  static SemidirectGroup with_standard_generators(std::string name, int d,
                                                  int m, IntMatrix action);
  // {"type": "infinite-dihedral"} or {"type": "semidirect", "d", "m",
  // "action", optional "generators": [{"v": [...], "k": k}, ...]}.
  static SemidirectGroup from_json(const nlohmann::json& desc);

  const std::string& name() const { return name_; }
  int dimension() const { return d_; }
  int rotation_order() const { return m_; }
  const std::vector<AffineElement>& generators() const { return generators_; }
  bool is_line() const { return line_; }

  AffineElement identity() const;
  AffineElement multiply(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  AffineElement power(const AffineElement& a, std::int64_t e) const;

  // (v, k) has finite order iff its m-th power is the identity.
  bool is_torsion(const AffineElement& a) const;
  bool is_translation(const AffineElement& a) const { return a.k == 0; }

  std::string format(const AffineElement& a) const;

 private:
  std::vector<std::int64_t> act(int k, const std::vector<std::int64_t>& v) const;

  std::string name_;
  int d_;
  int m_;
  std::vector<IntMatrix> powers_;  // action^0 .. action^(m-1)
  std::vector<AffineElement> generators_;
  bool line_ = false;
};

// Elements sorted by word length then normal form.
struct Ball {
  std::vector<AffineElement> elements;
  std::vector<int> norm;             // word length of each element
  std::vector<std::size_t> sphere;   // sizes of spheres 0..r
};

Ball cayley_ball(const SemidirectGroup& g, int r);

struct DensityPoint {
  int radius = 0;
  std::uint64_t ball = 0;
  std::uint64_t torsion = 0;  // identity included
  double density = 0;
};

std::vector<DensityPoint> ball_torsion_density(const SemidirectGroup& g, int r);

struct MnReport {
  int l = 0;              // largest norm of an element of M
  std::uint64_t ball_l = 0;
  double c = 0;           // 1 / (|M| |B(l)|)
  bool factorization_ok = false;
  std::vector<std::string> counterexamples;  // elements not in M N
  std::vector<DensityPoint> n_density;       // |N cap B(j)| / |B(j)|
  int first_failure = -1;                    // radius >= l with density < c
  bool holds = false;
};

using MembershipPredicate = std::function<bool(const AffineElement&)>;

MnReport mn_density_bound(const SemidirectGroup& g,
                          const std::vector<AffineElement>& M,
                          const MembershipPredicate& in_n, int r);

struct WalkBaseline {
  std::vector<double> torsion;  // Pr(X_j is torsion), j = 0..r_max
  double leaked_mass = 0;
  double phi_ratio = 0;    // phi(m) / m
  double index_bound = 0;  // 1 - 1/[G : Z^d]
};

// Lazy uniform walk on {e} and the generating set. The line group uses a
// banded convolution whose truncation leak must stay below 1e-9.
WalkBaseline walk_torsion_baseline(const SemidirectGroup& g, int r_max);

int euler_phi(int m);

}  // namespace blab
