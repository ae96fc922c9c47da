#include "bosonic/lattice.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

#include "bosonic/combinatorics.hpp"
#include "bosonic/errors.hpp"
#include "bosonic/parity.hpp"

namespace bosonic {

namespace {

void check_dyck_spec(const DyckSpec& s) {
  if (s.k < 0 || s.delta1 < 0 || s.delta2 < 0) throw DomainError("Dyck parameters must be non-negative");
  if ((s.k + s.delta2 - s.delta1) % 2 != 0) {
    throw DomainError("k + delta2 - delta1 must be even (k=" + std::to_string(s.k) + ", delta1=" +
                      std::to_string(s.delta1) + ", delta2=" + std::to_string(s.delta2) + ")");
  }
}

}  // namespace

std::uint64_t dyck_count(const DyckSpec& s) {
  check_dyck_spec(s);
  const std::uint64_t all = binomial_or_zero(s.k, (s.k + s.delta2 - s.delta1) / 2);
  const long low = s.k - s.delta2 - s.delta1 - 2;
  const std::uint64_t bad = low < 0 ? 0 : binomial_or_zero(s.k, low / 2);
  return all - bad;
}

std::vector<std::string> enumerate_dyck_paths(const DyckSpec& s) {
  check_dyck_spec(s);
  std::vector<std::string> out;
  std::string word;
  std::function<void(long)> walk = [&](long height) {
    const long left = s.k - static_cast<long>(word.size());
    if (left == 0) {
      if (height == s.delta2) out.push_back(word);
      return;
    }
    if (std::abs(height - s.delta2) > left) return;
    if (height > 0) {
      word.push_back('D');
      walk(height - 1);
      word.pop_back();
    }
    word.push_back('U');
    walk(height + 1);
    word.pop_back();
  };
  walk(s.delta1);
  return out;
}

StaircasePath staircase_iso(const std::string& word, const DyckSpec& spec) {
  check_dyck_spec(spec);
  if (static_cast<long>(word.size()) != spec.k) throw DomainError("word length differs from k");
  StaircasePath path;
  long x = 0, y = spec.delta1;
  path.points.emplace_back(x - y, -(x + y));
  for (char step : word) {
    if (step == 'U') {
      ++y;
    } else if (step == 'D') {
      --y;
    } else {
      throw DomainError(std::string("invalid Dyck step '") + step + "'");
    }
    ++x;
    if (y < 0) throw DomainError("word " + word + " dips below height 0");
    path.points.emplace_back(x - y, -(x + y));
  }
  if (y != spec.delta2) throw DomainError("word " + word + " does not end at delta2");
  return path;
}

std::pair<std::string, DyckSpec> staircase_inverse(const StaircasePath& path) {
  if (path.points.empty()) throw DomainError("empty staircase path");
  auto to_dyck = [](std::pair<long, long> p) {
    const long sx = p.first - p.second, sy = -(p.first + p.second);
    if (sx % 2 != 0 || sy % 2 != 0) throw DomainError("staircase point off the rotated lattice");
    return std::pair<long, long>{sx / 2, sy / 2};
  };
  std::string word;
  auto prev = to_dyck(path.points.front());
  if (prev.first != 0) throw DomainError("staircase path does not start at x = 0");
  const long start = prev.second;
  for (std::size_t k = 1; k < path.points.size(); ++k) {
    const auto cur = to_dyck(path.points[k]);
    if (cur.first != prev.first + 1 || std::abs(cur.second - prev.second) != 1 || cur.second < 0) {
      throw DomainError("staircase path has an invalid step");
    }
    word.push_back(cur.second > prev.second ? 'U' : 'D');
    prev = cur;
  }
  return {word, DyckSpec{static_cast<long>(word.size()), start, prev.second}};
}

ExtendedFerrers::ExtendedFerrers(std::vector<unsigned> columns) : columns_(std::move(columns)) {
  if (columns_.empty() || columns_.front() != 0) throw DomainError("extended diagram must start with 0");
  for (std::size_t c = 1; c < columns_.size(); ++c) {
    if (columns_[c] < columns_[c - 1]) throw DomainError("diagram columns must be non-decreasing: " + to_string());
  }
}

ExtendedFerrers::ExtendedFerrers(std::initializer_list<unsigned> columns)
    : ExtendedFerrers(std::vector<unsigned>(columns)) {}

ExtendedFerrers ExtendedFerrers::from_partition(const std::vector<unsigned>& mu) {
  std::vector<unsigned> cols{0};
  cols.insert(cols.end(), mu.begin(), mu.end());
  if (!mu.empty()) cols.push_back(mu.back());
  return ExtendedFerrers(std::move(cols));
}

std::string ExtendedFerrers::to_string() const {
  std::string out = "(";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += std::to_string(columns_[c]);
  }
  return out + ")";
}

bool ExtendedFerrers::contained_in(const ExtendedFerrers& other) const {
  if (other.size() != size()) return false;
  for (std::size_t c = 0; c < size(); ++c) {
    if (columns_[c] > other.columns_[c]) return false;
  }
  return true;
}

std::size_t ExtendedFerrersHash::operator()(const ExtendedFerrers& f) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto c : f.columns()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

DetectionPattern ferrers_to_pattern(const ExtendedFerrers& f) {
  std::vector<DetectionPattern::Count> counts;
  for (std::size_t c = 1; c < f.size(); ++c) {
    counts.push_back(static_cast<DetectionPattern::Count>(f[c] - f[c - 1]));
  }
  return DetectionPattern(std::move(counts));
}

ExtendedFerrers pattern_to_ferrers(const DetectionPattern& p) {
  std::vector<unsigned> cols{0};
  for (std::size_t k = 0; k < p.modes(); ++k) cols.push_back(cols.back() + p[k]);
  return ExtendedFerrers(std::move(cols));
}

YoungLattice::YoungLattice(ExtendedFerrers mu, std::vector<ExtendedFerrers> vertices)
    : mu_(std::move(mu)), vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  for (std::size_t v = 0; v < vertices_.size(); ++v) index_.emplace(vertices_[v], v);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    std::vector<unsigned> up = vertices_[v].columns();
    for (std::size_t c = 1; c < up.size(); ++c) {
      ++up[c];
      if (c + 1 == up.size() || up[c] <= up[c + 1]) {
        auto it = index_.find(ExtendedFerrers(up));
        if (it != index_.end()) edges_.emplace_back(v, it->second);
      }
      --up[c];
    }
  }
}

bool YoungLattice::contains(const ExtendedFerrers& f) const { return index_.count(f) != 0; }

std::size_t YoungLattice::index_of(const ExtendedFerrers& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) throw DomainError("diagram " + f.to_string() + " is not a lattice vertex");
  return it->second;
}

YoungLattice young_lattice(const ExtendedFerrers& mu, std::size_t max_vertices) {
  std::vector<ExtendedFerrers> vertices;
  const auto& top = mu.columns();
  if (top.size() <= 2) return YoungLattice(mu, {mu});
  // Columns 1..k vary under mu and the previous column; the last column is held.
  std::vector<unsigned> cur(top.size(), 0);
  cur.back() = top.back();
  std::function<void(std::size_t)> fill = [&](std::size_t c) {
    if (c + 1 == top.size()) {
      if (vertices.size() >= max_vertices) {
        throw RefusalError("Young lattice exceeds " + std::to_string(max_vertices) + " vertices");
      }
      vertices.emplace_back(cur);
      return;
    }
    for (unsigned v = cur[c - 1]; v <= top[c]; ++v) {
      cur[c] = v;
      fill(c + 1);
    }
  };
  fill(1);
  return YoungLattice(mu, std::move(vertices));
}

namespace {

void check_catalan_args(std::size_t modes, unsigned photons, std::size_t depth) {
  if (modes < 2 || (photons != modes && photons + 1 != modes) || depth < 1 || depth > modes - 1) {
    throw DomainError("invalid (M, n, depth) = (" + std::to_string(modes) + ", " + std::to_string(photons) +
                      ", " + std::to_string(depth) + "); need n in {M-1, M} and 1 <= depth <= M-1");
  }
}

}  // namespace

DyckSpec catalan_dyck_spec(std::size_t modes, unsigned photons, std::size_t depth) {
  check_catalan_args(modes, photons, depth);
  const long i = static_cast<long>(depth);
  return DyckSpec{static_cast<long>(photons + modes - 1), photons == modes ? i + 1 : i, i};
}

ExtendedFerrers catalan_top(std::size_t modes, unsigned photons, std::size_t depth) {
  const DyckSpec s = catalan_dyck_spec(modes, photons, depth);
  std::vector<unsigned> cols{0};
  for (std::size_t d = 1; d < modes; ++d) {
    cols.push_back(std::min<unsigned>(static_cast<unsigned>(d - 1 + s.delta1), photons));
  }
  cols.push_back(photons);
  return ExtendedFerrers(std::move(cols));
}

YoungLattice catalan_lattice(std::size_t modes, unsigned photons, std::size_t depth) {
  return young_lattice(catalan_top(modes, photons, depth));
}

ExtendedFerrers pattern_to_cascade_ferrers(const DetectionPattern& p) {
  std::vector<DetectionPattern::Count> rev(p.counts().rbegin(), p.counts().rend());
  return pattern_to_ferrers(DetectionPattern(std::move(rev)));
}

DetectionPattern cascade_ferrers_to_pattern(const ExtendedFerrers& f) {
  const DetectionPattern p = ferrers_to_pattern(f);
  return DetectionPattern(std::vector<DetectionPattern::Count>(p.counts().rbegin(), p.counts().rend()));
}

std::vector<DetectionPattern> catalan_basis(std::size_t modes, unsigned photons, std::size_t depth) {
  const YoungLattice lattice = catalan_lattice(modes, photons, depth);
  std::vector<DetectionPattern> out;
  out.reserve(lattice.size());
  for (const auto& f : lattice.vertices()) out.push_back(cascade_ferrers_to_pattern(f));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

BoxBitString::BoxBitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  if (bits_.size() < 2 || bits_.front() != 0 || bits_.back() != 0) {
    throw DomainError("box bit string needs zero boundary entries");
  }
  for (auto b : bits_) {
    if (b > 1) throw DomainError("box bit string entries must be 0 or 1");
  }
}

BoxBitString BoxBitString::from_code(std::uint64_t code, std::size_t modes) {
  std::vector<std::uint8_t> bits(modes + 1, 0);
  for (std::size_t k = 1; k < modes; ++k) bits[k] = static_cast<std::uint8_t>((code >> (k - 1)) & 1u);
  return BoxBitString(std::move(bits));
}

ExtendedFerrers box_bitstring_apply(const ExtendedFerrers& top, const BoxBitString& s) {
  if (s.bits().size() != top.size()) throw DomainError("box bit string length differs from the diagram");
  std::vector<unsigned> cols = top.columns();
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c] < s.bits()[c]) throw DomainError("box removal leaves a negative column");
    cols[c] -= s.bits()[c];
  }
  return ExtendedFerrers(std::move(cols));
}

ExtendedFerrers box_top(std::size_t modes) {
  if (modes < 2) throw DomainError("box bit strings need M >= 2");
  std::vector<unsigned> cols;
  for (std::size_t c = 0; c < modes; ++c) cols.push_back(static_cast<unsigned>(c));
  cols.push_back(static_cast<unsigned>(modes - 1));
  return ExtendedFerrers(std::move(cols));
}

bool parity_distinctness_check(std::size_t modes) {
  const ExtendedFerrers top = box_top(modes);
  std::set<BitString> images;
  const std::uint64_t count = std::uint64_t{1} << (modes - 1);
  for (std::uint64_t code = 0; code < count; ++code) {
    const ExtendedFerrers lower = box_bitstring_apply(top, BoxBitString::from_code(code, modes));
    images.insert(parity_map(ferrers_to_pattern(lower), 0));
  }
  return images.size() == count;
}

namespace {

ExtendedFerrers meet(const ExtendedFerrers& a, const ExtendedFerrers& b) {
  std::vector<unsigned> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::min(a[k], b[k]);
  return ExtendedFerrers(std::move(c));
}

ExtendedFerrers join(const ExtendedFerrers& a, const ExtendedFerrers& b) {
  std::vector<unsigned> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::max(a[k], b[k]);
  return ExtendedFerrers(std::move(c));
}

// Raises columns cols[t] for every bit t of mask; nullopt when the result is not a diagram.
std::optional<ExtendedFerrers> raised(const ExtendedFerrers& base, const std::vector<std::size_t>& cols,
                                      std::uint64_t mask) {
  std::vector<unsigned> c = base.columns();
  for (std::size_t t = 0; t < cols.size(); ++t) {
    if ((mask >> t) & 1u) ++c[cols[t]];
  }
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] < c[k - 1]) return std::nullopt;
  }
  return ExtendedFerrers(std::move(c));
}

std::uint64_t count_intervals(const YoungLattice& lattice, unsigned k) {
  if (lattice.vertices().empty()) return 0;
  const std::size_t ncols = lattice.vertices().front().size();
  if (ncols < 2 || k > ncols - 1) return 0;
  const std::uint64_t subsets = std::uint64_t{1} << k;
  std::uint64_t count = 0;
  std::vector<std::size_t> cols(k);
  for (const auto& bottom : lattice.vertices()) {
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t t, std::size_t from) {
      if (t == k) {
        std::vector<ExtendedFerrers> members;
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
          auto v = raised(bottom, cols, mask);
          if (!v || !lattice.contains(*v)) return;
          members.push_back(std::move(*v));
        }
        for (std::uint64_t a = 0; a < subsets; ++a) {
          for (std::uint64_t b = a + 1; b < subsets; ++b) {
            if (meet(members[a], members[b]) != members[a & b] || join(members[a], members[b]) != members[a | b]) {
              return;
            }
          }
        }
        ++count;
        return;
      }
      for (std::size_t c = from; c < ncols; ++c) {
        cols[t] = c;
        choose(t + 1, c + 1);
      }
    };
    choose(0, 1);
  }
  return count;
}

std::uint64_t count_sublattices(const YoungLattice& lattice, unsigned k) {
  const auto& v = lattice.vertices();
  if (v.size() > 5000) throw RefusalError("sublattice counting is limited to 5000 vertices");
  const std::uint64_t subsets = std::uint64_t{1} << k;
  std::uint64_t count = 0;
  std::vector<std::size_t> atoms;
  for (const auto& bottom : v) {
    std::vector<std::size_t> above;
    for (std::size_t a = 0; a < v.size(); ++a) {
      if (v[a] != bottom && bottom.contained_in(v[a])) above.push_back(a);
    }
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
      if (atoms.size() == k) {
        std::vector<ExtendedFerrers> members;
        std::set<ExtendedFerrers> distinct;
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
          ExtendedFerrers e = bottom;
          for (std::size_t t = 0; t < k; ++t) {
            if ((mask >> t) & 1u) e = join(e, v[atoms[t]]);
          }
          if (!lattice.contains(e)) return;
          distinct.insert(e);
          members.push_back(std::move(e));
        }
        if (distinct.size() != subsets) return;
        for (std::uint64_t a = 0; a < subsets; ++a) {
          for (std::uint64_t b = a + 1; b < subsets; ++b) {
            if (meet(members[a], members[b]) != members[a & b]) return;
          }
        }
        ++count;
        return;
      }
      for (std::size_t t = from; t < above.size(); ++t) {
        const auto& cand = v[above[t]];
        bool ok = true;
        for (auto a : atoms) ok = ok && meet(v[a], cand) == bottom;
        if (!ok) continue;
        atoms.push_back(above[t]);
        choose(t + 1);
        atoms.pop_back();
      }
    };
    choose(0);
  }
  return count;
}

}  // namespace

std::uint64_t count_boolean_sublattices(const YoungLattice& lattice, unsigned k, BooleanCounting counting) {
  if (k == 0) throw DomainError("Boolean lattice rank must be at least 1");
  if (k > 20) throw RefusalError("Boolean lattice rank above 20 is not supported");
  return counting == BooleanCounting::Interval ? count_intervals(lattice, k) : count_sublattices(lattice, k);
}

std::string OrdinalSum::to_string() const {
  if (factors.empty()) return residual ? "(empty, residual)" : "(empty)";
  std::string out;
  for (std::size_t t = 0; t < factors.size(); ++t) {
    if (t) out += " (+) ";
    out += "B" + std::to_string(factors[t]);
  }
  if (residual) out += " (+) residual";
  return out;
}

OrdinalSum ordinal_sum_decomposition(const YoungLattice& lattice) {
  OrdinalSum result;
  const auto& v = lattice.vertices();
  if (v.empty()) return result;
  ExtendedFerrers least = v.front(), greatest = v.front();
  for (const auto& f : v) {
    least = meet(least, f);
    greatest = join(greatest, f);
  }
  if (!lattice.contains(least) || !lattice.contains(greatest)) {
    result.residual = true;
    result.uncovered = v;
    return result;
  }
  std::set<ExtendedFerrers> covered{greatest};
  ExtendedFerrers current = greatest;
  while (current != least) {
    // Corners: boxes whose removal keeps a vertex of the lattice.
    std::vector<std::size_t> corners;
    for (std::size_t c = 1; c + 1 < current.size(); ++c) {
      if (current[c] == 0 || current[c] - 1 < current[c - 1]) continue;
      std::vector<unsigned> cols = current.columns();
      --cols[c];
      if (lattice.contains(ExtendedFerrers(cols))) corners.push_back(c);
    }
    if (corners.empty()) break;
    std::vector<unsigned> low = current.columns();
    for (auto c : corners) --low[c];
    const ExtendedFerrers bottom(low);
    std::vector<ExtendedFerrers> members;
    bool boolean = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << corners.size()); ++mask) {
      auto m = raised(bottom, corners, mask);
      if (!m || !lattice.contains(*m)) {
        boolean = false;
        break;
      }
      members.push_back(*m);
    }
    if (!boolean) break;
    covered.insert(members.begin(), members.end());
    result.factors.push_back(static_cast<unsigned>(corners.size()));
    current = bottom;
  }
  result.residual = current != least;
  for (unsigned r : result.factors) {
    if (!result.runs.empty() && result.runs.back().first == r) {
      ++result.runs.back().second;
    } else {
      result.runs.emplace_back(r, 1);
    }
  }
  result.covered_vertices = covered.size();
  for (const auto& f : v) {
    if (!covered.count(f)) result.uncovered.push_back(f);
  }
  return result;
}

std::string export_lattice_text(const YoungLattice& lattice) {
  std::ostringstream out;
  out << "# mu=" << lattice.mu().to_string() << " vertices=" << lattice.size()
      << " edges=" << lattice.cover_edges().size() << "\n";
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const auto& f = lattice.vertices()[k];
    const DetectionPattern p = ferrers_to_pattern(f);
    out << "v" << k << " diagram=" << f.to_string() << " pattern=" << p.to_string()
        << " bits=" << parity_map(p, 0).to_string() << "\n";
  }
  for (const auto& [a, b] : lattice.cover_edges()) out << "e v" << a << " v" << b << "\n";
  return out.str();
}

}  // namespace bosonic
