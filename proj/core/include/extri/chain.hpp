#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "extri/abgroup.hpp"
#include "extri/laurent.hpp"
#include "extri/matrix.hpp"
#include "extri/modp.hpp"

namespace extri {

// Finitely generated free chain complex over R. The grading lives in Z/modulus:
// modulus 0 is a Z-grading, modulus 1 an ungraded differential module.
// differential(g) maps C_g to C_{g-1}.
template <class R>
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(int modulus, std::map<int, std::size_t> ranks, std::map<int, Matrix<R>> differentials)
      : modulus_(modulus) {
    if (modulus < 0) throw std::invalid_argument("negative grading modulus");
    for (const auto& [g, n] : ranks)
      if (n) ranks_[normalize(g)] += n;
    for (auto& [g, m] : differentials) {
      int k = normalize(g);
      if (m.rows() != rank(k - 1) || m.cols() != rank(k))
        throw std::invalid_argument("differential shape does not match ranks at grade " + std::to_string(g));
      if (!m.is_zero()) d_[k] = m;
    }
  }

  // Also checks that the differential squares to zero.
  static ChainComplex checked(int modulus, std::map<int, std::size_t> ranks,
                              std::map<int, Matrix<R>> differentials) {
    ChainComplex c(modulus, std::move(ranks), std::move(differentials));
    if (!c.squares_to_zero()) throw std::invalid_argument("differential does not square to zero");
    return c;
  }

  static ChainComplex differential_module(const Matrix<R>& d) {
    if (!d.is_square()) throw std::invalid_argument("differential module needs a square matrix");
    return ChainComplex(1, {{0, d.rows()}}, {{0, d}});
  }

  int modulus() const { return modulus_; }
  int normalize(int g) const {
    if (modulus_ == 0) return g;
    return ((g % modulus_) + modulus_) % modulus_;
  }
  std::size_t rank(int g) const {
    auto it = ranks_.find(normalize(g));
    return it == ranks_.end() ? 0 : it->second;
  }
  const std::map<int, std::size_t>& ranks() const { return ranks_; }
  std::vector<int> grades() const {
    std::vector<int> out;
    for (const auto& [g, n] : ranks_) out.push_back(g);
    return out;
  }
  std::size_t total_rank() const {
    std::size_t n = 0;
    for (const auto& [g, r] : ranks_) n += r;
    return n;
  }

  Matrix<R> differential(int g) const {
    int k = normalize(g);
    auto it = d_.find(k);
    if (it != d_.end()) return it->second;
    return Matrix<R>(rank(k - 1), rank(k));
  }
  const std::map<int, Matrix<R>>& differentials() const { return d_; }

  bool squares_to_zero() const {
    for (const auto& [g, n] : ranks_)
      if (!(differential(g - 1) * differential(g)).is_zero()) return false;
    return true;
  }

  // Offset of each grade in the flattened basis (grades in ascending order).
  std::map<int, std::size_t> offsets() const {
    std::map<int, std::size_t> off;
    std::size_t o = 0;
    for (const auto& [g, n] : ranks_) {
      off[g] = o;
      o += n;
    }
    return off;
  }

  // Whole differential as one square matrix on the flattened basis.
  Matrix<R> total_differential() const {
    auto off = offsets();
    Matrix<R> m(total_rank(), total_rank());
    for (const auto& [g, d] : d_) {
      int target = normalize(g - 1);
      if (d.rows() == 0 || d.cols() == 0) continue;
      m.set_block(off.at(target), off.at(g), d);
    }
    return m;
  }

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.modulus_ == b.modulus_ && a.ranks_ == b.ranks_ && a.d_ == b.d_;
  }

 private:
  int modulus_ = 0;
  std::map<int, std::size_t> ranks_;
  std::map<int, Matrix<R>> d_;
};

using ZComplex = ChainComplex<Integer>;
using LaurentComplex = ChainComplex<LaurentPoly>;

// Map of a fixed degree between complexes: block(g) sends C_g to D_{g+degree}.
template <class R>
struct ChainMap {
  ChainComplex<R> source;
  ChainComplex<R> target;
  int degree = 0;
  std::map<int, Matrix<R>> blocks;

  Matrix<R> block(int g) const {
    int k = source.normalize(g);
    auto it = blocks.find(k);
    if (it != blocks.end()) return it->second;
    return Matrix<R>(target.rank(g + degree), source.rank(k));
  }

  void validate() const {
    if (source.modulus() != target.modulus()) throw std::invalid_argument("chain map between differently graded complexes");
    for (const auto& [g, m] : blocks)
      if (m.rows() != target.rank(g + degree) || m.cols() != source.rank(g))
        throw std::invalid_argument("chain map block shape mismatch at grade " + std::to_string(g));
  }

  // Residuals of d f - sign * f d per source grade; empty when the identity holds.
  std::map<int, Matrix<R>> commutator_residuals(int sign) const {
    std::map<int, Matrix<R>> out;
    for (const auto& [g, n] : source.ranks()) {
      Matrix<R> lhs = target.differential(g + degree) * block(g);
      Matrix<R> rhs = block(g - 1) * source.differential(g);
      Matrix<R> res = sign > 0 ? lhs - rhs : lhs + rhs;
      if (!res.is_zero()) out[g] = res;
    }
    return out;
  }

  // d f = (-1)^degree f d, or the given sign.
  bool is_chain_map(std::optional<int> sign = std::nullopt) const {
    int s = sign ? *sign : (degree % 2 == 0 ? 1 : -1);
    return commutator_residuals(s).empty();
  }

  Matrix<R> total_matrix() const {
    auto so = source.offsets(), to = target.offsets();
    Matrix<R> m(target.total_rank(), source.total_rank());
    for (const auto& [g, b] : blocks) {
      if (b.rows() == 0 || b.cols() == 0) continue;
      m.set_block(to.at(target.normalize(g + degree)), so.at(g), b);
    }
    return m;
  }
};

using ZChainMap = ChainMap<Integer>;

struct HomotopyCheck {
  bool ok = false;
  std::map<int, IntMatrix> residuals;
};

// Checks d H + eps * H d = a - b, where H has degree deg(a) + 1.
HomotopyCheck verify_homotopy(const ZChainMap& h, const ZChainMap& a, const ZChainMap& b, int eps);

// Homology over Z; the result carries the complex's grading modulus.
GradedGroup homology(const ZComplex& c);
// Homology of the differential module (Z^n, d).
FgAbelianGroup module_homology(const IntMatrix& d);
bool is_acyclic(const IntMatrix& d);

// Complex over F_p.
struct FpComplex {
  std::uint64_t prime = 2;
  int modulus = 0;
  std::map<int, std::size_t> ranks;
  std::map<int, ModpMatrix> differentials;

  ModpMatrix differential(int g) const;
  int normalize(int g) const;
  std::size_t rank(int g) const;
};

FpComplex reduce_mod_p(const ZComplex& c, std::uint64_t p);
// T -> unit, then reduce mod p.
FpComplex specialize_mod_p(const LaurentComplex& c, std::uint64_t p, std::uint64_t unit);
std::map<int, std::uint64_t> homology_dims(const FpComplex& c);
std::map<int, std::uint64_t> homology_dims(const ZComplex& c, Field k);

LaurentComplex extend_scalars(const ZComplex& c);
// T -> 1.
ZComplex specialize_at_one(const LaurentComplex& c);

struct Cone {
  ZComplex complex;
  // target -> cone
  ZChainMap inclusion;
  // cone -> source, degree -1
  ZChainMap projection;
};

// Cone_g = B_g + A_{g-1}, differential [[d_B, f], [0, -d_A]].
Cone mapping_cone(const ZChainMap& f);

// [[d_target, f], [0, sign * d_source]] on flattened modules. sign = -1 is
// the cone of a chain map, sign = +1 the cone of an anti-chain map.
IntMatrix cone_differential(const IntMatrix& d_target, const IntMatrix& d_source, const IntMatrix& f, int sign);

// Filtration aligned with the basis: level[g][i] is the filtration level of
// basis element i in grade g. The differential must not raise levels.
struct Filtration {
  ZComplex complex;
  std::map<int, std::vector<int>> level;

  void validate() const;
  int min_level() const;
  int max_level() const;
};

struct SpectralPage {
  int r = 0;
  // (level, grade) -> dim E^r
  std::map<std::pair<int, int>, std::uint64_t> dims;
  // (level, grade) -> rank of d_r leaving that spot
  std::map<std::pair<int, int>, std::uint64_t> d_ranks;

  std::uint64_t dim(int level, int grade = 0) const;
  std::uint64_t d_rank(int level, int grade = 0) const;
  std::uint64_t total() const;
};

struct SpectralSequence {
  std::vector<SpectralPage> pages;
  // Smallest r with d_s = 0 for all s >= r.
  int collapse_page = 0;
  std::map<int, std::uint64_t> homology;
  bool abutment_ok = false;

  const SpectralPage& page(int r) const;
};

// Spectral sequence of a filtered complex over F_p, pages E^0 onward until
// every further differential must vanish.
SpectralSequence spectral_sequence(const Filtration& f, std::uint64_t p);

}  // namespace extri
