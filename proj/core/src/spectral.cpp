#include <algorithm>
#include <limits>

#include "extri/chain.hpp"

namespace extri {

void Filtration::validate() const {
  for (const auto& [g, n] : complex.ranks()) {
    auto it = level.find(g);
    if (it == level.end() || it->second.size() != n)
      throw std::invalid_argument("filtration levels missing for grade " + std::to_string(g));
  }
  for (const auto& [g, d] : complex.differentials()) {
    const auto& src = level.at(g);
    const auto& dst = level.at(complex.normalize(g - 1));
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j)
        if (sgn(d(i, j)) != 0 && dst[i] > src[j])
          throw std::invalid_argument("differential raises filtration level");
  }
}

int Filtration::min_level() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& [g, v] : level)
    for (int x : v) m = std::min(m, x);
  return m == std::numeric_limits<int>::max() ? 0 : m;
}

int Filtration::max_level() const {
  int m = std::numeric_limits<int>::min();
  for (const auto& [g, v] : level)
    for (int x : v) m = std::max(m, x);
  return m == std::numeric_limits<int>::min() ? 0 : m;
}

std::uint64_t SpectralPage::dim(int level, int grade) const {
  auto it = dims.find({level, grade});
  return it == dims.end() ? 0 : it->second;
}

std::uint64_t SpectralPage::d_rank(int level, int grade) const {
  auto it = d_ranks.find({level, grade});
  return it == d_ranks.end() ? 0 : it->second;
}

std::uint64_t SpectralPage::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : dims) t += v;
  return t;
}

const SpectralPage& SpectralSequence::page(int r) const {
  for (const auto& p : pages)
    if (p.r == r) return p;
  return pages.back();
}

namespace {

// Subspace bookkeeping inside C_g over F_p, spanned by matrix columns.
class Engine {
 public:
  Engine(const Filtration& f, const FpComplex& c) : f_(f), c_(c) {}

  // Columns spanning Z^r_s in grade g: x in F_s with dx in F_{s-r}.
  ModpMatrix z(int r, int s, int g) const {
    int k = c_.normalize(g);
    std::size_t n = c_.rank(k);
    std::vector<std::size_t> src;
    for (std::size_t i = 0; i < n; ++i)
      if (level(k, i) <= s) src.push_back(i);
    ModpMatrix basis(c_.prime, n, 0);
    if (src.empty()) return basis;
    ModpMatrix local;
    if (r <= 0) {
      local = ModpMatrix::identity(c_.prime, src.size());
    } else {
      int t = c_.normalize(k - 1);
      std::vector<std::size_t> bad;
      for (std::size_t i = 0; i < c_.rank(t); ++i)
        if (level(t, i) > s - r) bad.push_back(i);
      if (bad.empty())
        local = ModpMatrix::identity(c_.prime, src.size());
      else
        local = c_.differential(k).select_rows(bad).select_cols(src).kernel();
    }
    ModpMatrix out(c_.prime, n, local.cols());
    for (std::size_t a = 0; a < src.size(); ++a)
      for (std::size_t b = 0; b < local.cols(); ++b) out(src[a], b) = local(a, b);
    return out;
  }

  // d(Z^r_s) from grade g+1, as columns in grade g.
  ModpMatrix dz(int r, int s, int g) const {
    int up = c_.normalize(g + 1);
    ModpMatrix zz = z(r, s, up);
    return c_.differential(up) * zz;
  }

  static std::size_t span_dim(const ModpMatrix& a, const ModpMatrix& b) {
    return ModpMatrix::hstack(a, b).rank();
  }

 private:
  int level(int g, std::size_t i) const { return f_.level.at(g)[i]; }

  const Filtration& f_;
  const FpComplex& c_;
};

}  // namespace

SpectralSequence spectral_sequence(const Filtration& f, std::uint64_t p) {
  f.validate();
  FpComplex c = reduce_mod_p(f.complex, p);
  Engine e(f, c);
  int lo = f.min_level(), hi = f.max_level();
  int last = hi - lo + 1;

  SpectralSequence ss;
  for (int r = 0; r <= last; ++r) {
    SpectralPage page;
    page.r = r;
    for (const auto& [g, n] : c.ranks) {
      for (int s = lo; s <= hi; ++s) {
        ModpMatrix zr = e.z(r, s, g);
        std::size_t dz_r = zr.rank();
        ModpMatrix lower = e.z(r - 1, s - 1, g);
        ModpMatrix bdry = e.dz(r - 1, s + r - 1, g);
        std::size_t denom = Engine::span_dim(lower, bdry);
        std::uint64_t dim = dz_r - denom;
        if (dim) page.dims[{s, g}] = dim;
        std::size_t kernel_part = Engine::span_dim(e.z(r + 1, s, g), lower);
        std::uint64_t rank = dz_r - kernel_part;
        if (rank) page.d_ranks[{s, g}] = rank;
      }
    }
    ss.pages.push_back(page);
  }

  ss.collapse_page = 0;
  for (const auto& page : ss.pages)
    if (!page.d_ranks.empty()) ss.collapse_page = page.r + 1;

  ss.homology = homology_dims(c);
  const auto& inf = ss.pages.back();
  ss.abutment_ok = true;
  for (const auto& [g, n] : c.ranks) {
    std::uint64_t sum = 0;
    for (int s = lo; s <= hi; ++s) sum += inf.dim(s, g);
    if (sum != ss.homology[g]) ss.abutment_ok = false;
  }
  return ss;
}

}  // namespace extri
