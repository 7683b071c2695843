#include "shrinklab/proj_distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "shrinklab/truth_table.hpp"

namespace shrinklab {

namespace {

using Point = ProjDistribution::Point;

// Saturating product of support sizes.
std::uint64_t mul_capped(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > (kSupportCap + 1) / a + 1) return kSupportCap + 1;
  return std::min<std::uint64_t>(a * b, kSupportCap + 1);
}

std::uint64_t pow_capped(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = mul_capped(r, base);
  return r;
}

std::vector<Point> product(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (mul_capped(a.size(), b.size()) > kSupportCap) {
    throw CapExceeded("product support exceeds " + std::to_string(kSupportCap) + " points");
  }
  std::vector<Point> out;
  out.reserve(a.size() * b.size());
  for (const auto& [pa, wa] : a) {
    for (const auto& [pb, wb] : b) out.emplace_back(concat(pa, pb), Rational(wa * wb));
  }
  return out;
}

Image signed_literal(int var, bool tau) { return Image::literal(var, !tau); }

}  // namespace

ProjDistribution ProjDistribution::exact(int n, int m, std::vector<Point> points) {
  if (n < 0 || m < 0) throw std::invalid_argument("negative arity");
  if (points.empty()) throw std::invalid_argument("empty support");
  if (points.size() > kSupportCap) {
    throw CapExceeded("support of " + std::to_string(points.size()) + " points exceeds cap");
  }
  std::map<Projection, Rational> merged;
  for (auto& [pi, w] : points) {
    if (pi.source_arity() != n || pi.target_arity() != m) {
      throw std::invalid_argument("projection arity does not match distribution " +
                                  std::to_string(n) + "->" + std::to_string(m));
    }
    w.canonicalize();
    if (w <= 0) throw std::invalid_argument("weights must be positive");
    merged[std::move(pi)] += w;
  }
  ProjDistribution d;
  d.n_ = n;
  d.m_ = m;
  Rational total = 0;
  double running = 0;
  for (auto& [pi, w] : merged) {
    total += w;
    running += to_double(w);
    d.points_.emplace_back(pi, w);
    d.cumulative_.push_back(running);
  }
  if (total != 1) throw std::invalid_argument("weights sum to " + format_rational(total) + ", not 1");
  d.description_ = "exact, " + std::to_string(d.points_.size()) + " points";
  return d;
}

ProjDistribution ProjDistribution::sampler(int n, int m, Draw draw, std::string support) {
  if (!draw) throw std::invalid_argument("sampler needs a draw function");
  ProjDistribution d;
  d.n_ = n;
  d.m_ = m;
  d.draw_ = std::move(draw);
  d.description_ = std::move(support);
  return d;
}

const std::vector<Point>& ProjDistribution::support() const {
  if (!is_exact()) throw std::logic_error("sampler distribution has no exact support: " + description_);
  return points_;
}

Rational ProjDistribution::probability(const Projection& pi) const {
  const auto& pts = support();
  auto it = std::lower_bound(pts.begin(), pts.end(), pi,
                             [](const Point& p, const Projection& key) { return p.first < key; });
  if (it == pts.end() || it->first != pi) return 0;
  return it->second;
}

Projection ProjDistribution::sample_with(Rng& rng) const {
  if (draw_) return draw_(rng);
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                       points_.size() - 1);
  return points_[k].first;
}

Projection ProjDistribution::sample(std::uint64_t seed, std::uint64_t index) const {
  Rng rng(derive_seed(seed, index));
  return sample_with(rng);
}

ProjDistribution join(const ProjDistribution& a, const ProjDistribution& b) {
  const int n = a.source_arity() + b.source_arity();
  const int m = a.target_arity() + b.target_arity();
  if (a.is_exact() && b.is_exact()) {
    return ProjDistribution::exact(n, m, product(a.support(), b.support()));
  }
  auto pa = std::make_shared<ProjDistribution>(a);
  auto pb = std::make_shared<ProjDistribution>(b);
  return ProjDistribution::sampler(
      n, m, [pa, pb](Rng& rng) {
        Projection x = pa->sample_with(rng);
        return concat(x, pb->sample_with(rng));
      },
      "join(" + a.description() + ", " + b.description() + ")");
}

ProjDistribution m_fold(const ProjDistribution& d, int copies) {
  if (copies < 1) throw std::invalid_argument("m_fold needs at least one copy");
  const int n = d.source_arity() * copies;
  const int m = d.target_arity() * copies;
  if (d.is_exact() && pow_capped(d.support().size(), copies) <= kSupportCap) {
    std::vector<Point> acc = d.support();
    for (int c = 1; c < copies; ++c) acc = product(acc, d.support());
    return ProjDistribution::exact(n, m, std::move(acc));
  }
  auto base = std::make_shared<ProjDistribution>(d);
  return ProjDistribution::sampler(
      n, m, [base, copies](Rng& rng) {
        Projection acc = base->sample_with(rng);
        for (int c = 1; c < copies; ++c) acc = concat(acc, base->sample_with(rng));
        return acc;
      },
      std::to_string(copies) + "-fold(" + d.description() + ")");
}

HidingToFixing hiding_to_fixing(const ProjDistribution& d) {
  const int m = d.target_arity();
  const auto& pts = d.support();
  const std::uint64_t rhos = pow_capped(3, m);
  if (mul_capped(pts.size(), rhos) > kSupportCap) {
    throw CapExceeded("hiding_to_fixing: support times 3^m exceeds cap");
  }
  // rho(y_j): 0 keep, 1 fix to 0, 2 fix to 1.
  const Rational keep = m == 0 ? Rational(1) : make_rational(2L * m - 1, 2L * m);
  const Rational fix = m == 0 ? Rational(0) : make_rational(1, 4L * m);
  std::vector<Projection> rho_list;
  std::vector<Rational> rho_weight;
  for (std::uint64_t code = 0; code < rhos; ++code) {
    std::vector<Image> images;
    Rational w = 1;
    std::uint64_t c = code;
    for (int j = 1; j <= m; ++j, c /= 3) {
      switch (c % 3) {
        case 0: images.push_back(Image::pos(j)); w *= keep; break;
        case 1: images.push_back(Image::constant(false)); w *= fix; break;
        default: images.push_back(Image::constant(true)); w *= fix; break;
      }
    }
    rho_list.emplace_back(m, std::move(images));
    rho_weight.push_back(w);
  }

  std::map<Projection, Rational> out;
  HidingToFixing r{d, rho_weight.front(), 0, {}};
  for (const auto& [p, wp] : pts) {
    Rational identity = 0;
    Rational unchanged = 0;
    for (std::size_t k = 0; k < rho_list.size(); ++k) {
      Projection composed = then(p, rho_list[k]);
      if (k == 0) identity += rho_weight[k];
      if (composed == p) unchanged += rho_weight[k];
      out[std::move(composed)] += wp * rho_weight[k];
    }
    r.unchanged_probability += wp * unchanged;
    r.per_point.push_back({p, identity, unchanged});
  }
  std::vector<Point> points(out.begin(), out.end());
  r.result = ProjDistribution::exact(d.source_arity(), m, std::move(points));
  return r;
}

ProjDistribution adversary_to_hiding(const PairDistribution& mu) {
  if (!mu.binary()) throw std::invalid_argument("adversary_to_hiding needs a binary alphabet");
  if (mu.pairs().empty()) throw std::invalid_argument("empty pair distribution");
  std::vector<Point> points;
  for (const auto& wp : mu.pairs()) {
    std::vector<Image> images;
    for (int i = 0; i < mu.length(); ++i) {
      const bool a = wp.a[static_cast<std::size_t>(i)] != 0;
      const bool b = wp.b[static_cast<std::size_t>(i)] != 0;
      if (a == b) {
        images.push_back(Image::constant(a));
      } else {
        images.push_back(Image::literal(1, !a));
      }
    }
    points.emplace_back(Projection(1, std::move(images)), wp.weight);
  }
  return ProjDistribution::exact(mu.length(), 1, std::move(points));
}

std::optional<ClosureWitness> check_filter_closure(const ProjDistribution& d,
                                                   const FilterPredicate& filter) {
  std::set<Projection> seen;
  std::deque<Projection> queue;
  for (const auto& [p, w] : d.support()) {
    if (seen.insert(p).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    Projection p = std::move(queue.front());
    queue.pop_front();
    for (int j : p.used_variables()) {
      for (bool sigma : {false, true}) {
        Projection s = substitute(p, j, sigma);
        if (seen.insert(s).second) {
          if (seen.size() > kSupportCap) throw CapExceeded("filter closure exceeds cap");
          queue.push_back(std::move(s));
        }
      }
    }
  }
  for (const auto& p : seen) {
    if (!filter.accepts(p)) continue;
    for (int j = 1; j <= d.target_arity(); ++j) {
      for (bool sigma : {false, true}) {
        if (!filter.accepts(substitute(p, j, sigma))) return ClosureWitness{p, j, sigma};
      }
    }
  }
  return std::nullopt;
}

ProjDistribution condition_on_filter(const ProjDistribution& d, const FilterPredicate& filter) {
  if (auto w = check_filter_closure(d, filter)) {
    std::ostringstream msg;
    msg << "filter '" << filter.name << "' is not closed: accepts [" << w->pi.to_text()
        << "] but rejects y" << w->y << " <- " << (w->sigma ? 1 : 0);
    std::string s = msg.str();
    std::replace(s.begin(), s.end(), '\n', ';');
    throw std::invalid_argument(s);
  }
  std::vector<Point> kept;
  Rational mass = 0;
  for (const auto& [p, w] : d.support()) {
    if (filter.accepts(p)) {
      kept.emplace_back(p, w);
      mass += w;
    }
  }
  if (mass == 0) throw std::invalid_argument("filter '" + filter.name + "' has probability zero");
  for (auto& pt : kept) pt.second /= mass;
  return ProjDistribution::exact(d.source_arity(), d.target_arity(), std::move(kept));
}

ProjDistribution p_random_restriction(int n, const Rational& p) {
  if (n < 0) throw std::invalid_argument("negative arity");
  if (p <= 0 || p >= 1) throw std::invalid_argument("restriction parameter must lie in (0,1)");
  const Rational half_fixed = (1 - p) / 2;
  if (pow_capped(3, n) <= kSupportCap) {
    std::vector<Point> acc{{Projection(0, {}), Rational(1)}};
    const std::vector<Point> one{{Projection(1, {Image::pos(1)}), p},
                                 {Projection(1, {Image::constant(false)}), half_fixed},
                                 {Projection(1, {Image::constant(true)}), half_fixed}};
    for (int i = 0; i < n; ++i) acc = product(acc, one);
    return ProjDistribution::exact(n, n, std::move(acc));
  }
  const double live = to_double(p);
  return ProjDistribution::sampler(
      n, n, [n, live](Rng& rng) {
        std::vector<Image> images;
        for (int i = 1; i <= n; ++i) {
          const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
          images.push_back(u < live ? Image::pos(i) : Image::constant(coin(rng)));
        }
        return Projection(n, std::move(images));
      },
      "p-random restriction on " + std::to_string(n) + " variables, p=" + format_rational(p));
}

ProjDistribution random_m_alive(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("random_m_alive needs 1 <= m <= n");
  std::uint64_t size = 1;
  for (int k = 0; k < m; ++k) size = mul_capped(size, static_cast<std::uint64_t>(n - k));
  size = mul_capped(size, pow_capped(2, n));
  if (size <= kSupportCap) {
    std::vector<Point> points;
    const Rational w = Rational(1) / Rational(mpz_class(static_cast<unsigned long>(size)));
    std::vector<int> chosen;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    // Ordered choice of the live positions, then all 2^n sign/bit patterns.
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(chosen.size()) == m) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
          std::vector<Image> images(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = Image::constant((bits >> i) & 1);
          for (int j = 0; j < m; ++j) {
            const int pos = chosen[static_cast<std::size_t>(j)];
            images[static_cast<std::size_t>(pos)] = signed_literal(j + 1, (bits >> pos) & 1);
          }
          points.emplace_back(Projection(m, std::move(images)), w);
        }
        return;
      }
      for (int i = 0; i < n; ++i) {
        if (used[static_cast<std::size_t>(i)]) continue;
        used[static_cast<std::size_t>(i)] = true;
        chosen.push_back(i);
        self(self);
        chosen.pop_back();
        used[static_cast<std::size_t>(i)] = false;
      }
    };
    rec(rec);
    return ProjDistribution::exact(n, m, std::move(points));
  }
  return ProjDistribution::sampler(
      n, m, [n, m](Rng& rng) {
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        for (int k = 0; k < m; ++k) {
          const auto pick = k + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - k)));
          std::swap(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(pick)]);
        }
        std::vector<Image> images(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = Image::constant(coin(rng));
        for (int j = 0; j < m; ++j) {
          images[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] =
              signed_literal(j + 1, coin(rng));
        }
        return Projection(m, std::move(images));
      },
      "random " + std::to_string(m) + " alive of " + std::to_string(n));
}

ProjDistribution random_edge(int n) { return random_m_alive(n, 1); }

ProjDistribution majority_block(int block, int k) {
  if (block < 1 || block % 2 == 0) throw std::invalid_argument("majority block size must be odd");
  if (k < 1) throw std::invalid_argument("majority_block needs at least one block");
  const int half = (block - 1) / 2;
  std::vector<Point> one;
  std::vector<std::uint64_t> balanced;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (block - 1)); ++bits) {
    if (std::popcount(bits) == half) balanced.push_back(bits);
  }
  const Rational w = Rational(1) / Rational(mpz_class(static_cast<unsigned long>(block * balanced.size())));
  for (int pos = 0; pos < block; ++pos) {
    for (std::uint64_t bits : balanced) {
      std::vector<Image> images;
      int other = 0;
      for (int i = 0; i < block; ++i) {
        if (i == pos) {
          images.push_back(Image::pos(1));
        } else {
          images.push_back(Image::constant((bits >> other++) & 1));
        }
      }
      one.emplace_back(Projection(1, std::move(images)), w);
    }
  }
  return m_fold(ProjDistribution::exact(block, 1, std::move(one)), k);
}

std::string format_proj_distribution(const ProjDistribution& d) {
  std::ostringstream out;
  out << "projdist " << d.source_arity() << ' ' << d.target_arity() << '\n';
  for (const auto& [p, w] : d.support()) {
    out << "w " << format_fraction(w) << '\n' << format_projection(p);
  }
  return out.str();
}

ProjDistribution parse_proj_distribution(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  int m = -1;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag != "projdist" || !(ls >> n >> m) || n < 0 || m < 0) {
      throw std::invalid_argument("expected header 'projdist <n> <m>'");
    }
    break;
  }
  if (n < 0) throw std::invalid_argument("missing projdist header");
  std::vector<Point> points;
  std::optional<Rational> weight;
  std::string body;
  auto flush = [&] {
    if (!weight) return;
    Projection p = parse_projection(body, m);
    if (p.source_arity() != n) {
      throw std::invalid_argument("projection lists " + std::to_string(p.source_arity()) +
                                  " variables, expected " + std::to_string(n));
    }
    points.emplace_back(std::move(p), *weight);
    body.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "w") {
      flush();
      std::string q;
      if (!(ls >> q)) throw std::invalid_argument("weight line needs a rational");
      weight = parse_rational(q);
    } else {
      if (!weight) throw std::invalid_argument("projection line before any weight");
      body += line + '\n';
    }
  }
  flush();
  return ProjDistribution::exact(n, m, std::move(points));
}

}  // namespace shrinklab
