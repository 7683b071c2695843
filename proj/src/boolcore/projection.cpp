#include "shrinklab/projection.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace shrinklab {

Projection::Projection(int target_arity, std::vector<Image> images)
    : m_(target_arity), images_(std::move(images)) {
  if (m_ < 0) throw std::invalid_argument("negative target arity");
  for (const auto& im : images_) {
    if (im.is_literal() && (im.var() < 1 || im.var() > m_)) {
      throw std::out_of_range("projection image y" + std::to_string(im.var()) +
                              " outside target arity " + std::to_string(m_));
    }
  }
}

bool Projection::all_constant() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const Image& im) { return im.is_constant(); });
}

std::uint64_t Projection::as_input() const {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!images_[i].is_constant()) throw std::logic_error("projection is not a constant string");
    if (images_[i].constant_value()) x |= std::uint64_t{1} << i;
  }
  return x;
}

std::vector<int> Projection::used_variables() const {
  std::vector<int> vars;
  for (const auto& im : images_) {
    if (im.is_literal()) vars.push_back(im.var());
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Projection::mentions(int var) const {
  return std::any_of(images_.begin(), images_.end(), [var](const Image& im) {
    return im.is_literal() && im.var() == var;
  });
}

std::string Projection::to_text() const { return format_projection(*this); }

Projection make_restriction(const std::vector<int>& values) {
  std::vector<Image> images;
  images.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) {
      images.push_back(Image::pos(static_cast<int>(i) + 1));
    } else {
      images.push_back(Image::constant(values[i] != 0));
    }
  }
  return Projection(static_cast<int>(values.size()), std::move(images));
}

Projection substitute(const Projection& pi, int j, bool sigma) {
  if (j < 1 || j > pi.target_arity()) {
    throw std::out_of_range("substitute: y" + std::to_string(j) + " out of range");
  }
  std::vector<Image> images = pi.images();
  for (auto& im : images) {
    if (im.is_literal() && im.var() == j) im = Image::constant(im.value_at(sigma));
  }
  return Projection(pi.target_arity(), std::move(images));
}

TruthTable restrict_tt(const TruthTable& f, const Projection& pi) {
  if (pi.source_arity() != f.arity()) {
    throw std::invalid_argument("restrict_tt: projection has " +
                                std::to_string(pi.source_arity()) +
                                " sources but f has arity " + std::to_string(f.arity()));
  }
  const int n = f.arity();
  const int m = pi.target_arity();
  TruthTable out(m);
  // Fixed part of the source input, then one mask per target variable.
  std::uint64_t base = 0;
  std::vector<std::uint64_t> pos_mask(static_cast<std::size_t>(m) + 1, 0);
  std::vector<std::uint64_t> neg_mask(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 0; i < n; ++i) {
    const Image& im = pi.images()[static_cast<std::size_t>(i)];
    const std::uint64_t bit = std::uint64_t{1} << i;
    switch (im.kind()) {
      case Image::Kind::Zero: break;
      case Image::Kind::One: base |= bit; break;
      case Image::Kind::Pos: pos_mask[static_cast<std::size_t>(im.var())] |= bit; break;
      case Image::Kind::Neg: neg_mask[static_cast<std::size_t>(im.var())] |= bit; break;
    }
  }
  for (std::uint64_t y = 0; y < out.size(); ++y) {
    std::uint64_t x = base;
    for (int j = 1; j <= m; ++j) {
      x |= ((y >> (j - 1)) & 1u) ? pos_mask[static_cast<std::size_t>(j)]
                                 : neg_mask[static_cast<std::size_t>(j)];
    }
    out.set(y, f[x]);
  }
  return out;
}

Projection concat(const Projection& a, const Projection& b) {
  std::vector<Image> images = a.images();
  images.reserve(images.size() + b.images().size());
  const int shift = a.target_arity();
  for (const auto& im : b.images()) {
    images.push_back(im.is_literal() ? Image::literal(im.var() + shift, im.negated()) : im);
  }
  return Projection(a.target_arity() + b.target_arity(), std::move(images));
}

Projection then(const Projection& pi, const Projection& rho) {
  if (rho.source_arity() != pi.target_arity()) {
    throw std::invalid_argument("composition arity mismatch");
  }
  std::vector<Image> images;
  images.reserve(pi.images().size());
  for (const auto& im : pi.images()) {
    if (im.is_constant()) {
      images.push_back(im);
      continue;
    }
    const Image& r = rho(im.var());
    if (r.is_constant()) {
      images.push_back(Image::constant(r.constant_value() != im.negated()));
    } else {
      images.push_back(Image::literal(r.var(), r.negated() != im.negated()));
    }
  }
  return Projection(rho.target_arity(), std::move(images));
}

std::string format_projection(const Projection& pi) {
  std::ostringstream out;
  for (int i = 1; i <= pi.source_arity(); ++i) {
    const Image& im = pi(i);
    out << 'x' << i << " = ";
    switch (im.kind()) {
      case Image::Kind::Zero: out << '0'; break;
      case Image::Kind::One: out << '1'; break;
      case Image::Kind::Pos: out << 'y' << im.var(); break;
      case Image::Kind::Neg: out << "!y" << im.var(); break;
    }
    out << '\n';
  }
  return out.str();
}

Projection parse_projection(std::string_view text, int target_arity) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<Image> images;
  int max_var = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string lhs, eq, rhs;
    if (!(ls >> lhs)) continue;
    if (!(ls >> eq >> rhs) || eq != "=" || lhs.size() < 2 || lhs[0] != 'x') {
      throw std::invalid_argument("bad projection line '" + line + "'");
    }
    const int i = std::stoi(lhs.substr(1));
    if (i != static_cast<int>(images.size()) + 1) {
      throw std::invalid_argument("projection lines must list x1, x2, ... in order");
    }
    if (rhs == "0" || rhs == "1") {
      images.push_back(Image::constant(rhs == "1"));
    } else {
      const bool neg = rhs[0] == '!';
      const std::string v = neg ? rhs.substr(1) : rhs;
      if (v.size() < 2 || v[0] != 'y') throw std::invalid_argument("bad image '" + rhs + "'");
      const int j = std::stoi(v.substr(1));
      if (j < 1) throw std::invalid_argument("target variables are 1-based");
      max_var = std::max(max_var, j);
      images.push_back(Image::literal(j, neg));
    }
  }
  return Projection(target_arity < 0 ? max_var : target_arity, std::move(images));
}

}  // namespace shrinklab
