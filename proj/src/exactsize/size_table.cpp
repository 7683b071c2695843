#include "shrinklab/size_table.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace shrinklab {

namespace {

constexpr std::uint8_t kUnset = 0xFF;
constexpr std::uint64_t kNoCandidate = std::numeric_limits<std::uint64_t>::max();
constexpr char kMagic[8] = {'S', 'L', 'S', 'I', 'Z', 'E', '0', '1'};
constexpr std::size_t kRecordBytes = 2 + 2 + 1 + 4 + 4;

template <bool Parallel>
inline void store_min(std::uint64_t& slot, std::uint64_t value) {
  if constexpr (Parallel) {
    std::atomic_ref<std::uint64_t> ref(slot);
    std::uint64_t cur = ref.load(std::memory_order_relaxed);
    while (value < cur && !ref.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
    }
  } else {
    slot = std::min(slot, value);
  }
}

template <bool Parallel>
inline void mark(std::uint8_t& slot) {
  if constexpr (Parallel) {
    std::atomic_ref<std::uint8_t>(slot).store(1, std::memory_order_relaxed);
  } else {
    slot = 1;
  }
}

}  // namespace

class SizeTableBuilder {
 public:
  SizeTableBuilder(int m, bool parallel) : m_(m), parallel_(parallel) {
    const std::uint64_t count = std::uint64_t{1} << (1u << m);
    mask_ = count - 1;
    t_.m_ = m;
    t_.size_.assign(count, kUnset);
    t_.depth_.assign(count, kUnset);
    t_.op_.assign(count, static_cast<std::uint8_t>(WitnessOp::Const));
    t_.left_.assign(count, 0);
    t_.right_.assign(count, 0);
  }

  SizeTable build() {
    seed();
    if (parallel_) {
      sizes<true>();
      depths<true>();
    } else {
      sizes<false>();
      depths<false>();
    }
    return std::move(t_);
  }

 private:
  void seed() {
    for (std::uint64_t c : {std::uint64_t{0}, mask_}) {
      t_.size_[c] = 0;
      t_.depth_[c] = 0;
    }
    remaining_ = mask_ + 1 - 2;
    for (int v = 1; v <= m_; ++v) {
      for (bool neg : {false, true}) {
        const auto t = static_cast<std::uint32_t>(TruthTable::literal(m_, v, neg).low_word());
        t_.size_[t] = 1;
        t_.depth_[t] = 0;
        t_.op_[t] = static_cast<std::uint8_t>(WitnessOp::Leaf);
        t_.left_[t] = static_cast<std::uint32_t>(v);
        t_.right_[t] = neg ? 1 : 0;
        literals_.push_back(t);
        --remaining_;
      }
    }
    std::sort(literals_.begin(), literals_.end());
  }

  // Uniform-cost layers: every function first produced from two finalized
  // layers whose costs sum to c has L = c. Constants never help.
  template <bool Parallel>
  void sizes() {
    std::vector<std::vector<std::uint32_t>> layers(2);
    layers[1] = literals_;
    std::vector<std::uint64_t> cand_and(mask_ + 1, kNoCandidate);
    std::vector<std::uint64_t> cand_or(mask_ + 1, kNoCandidate);
    std::uint64_t left = remaining_;
    for (int c = 2; left > 0; ++c) {
      std::fill(cand_and.begin(), cand_and.end(), kNoCandidate);
      std::fill(cand_or.begin(), cand_or.end(), kNoCandidate);
      for (int c1 = 1; c1 <= c / 2; ++c1) {
        const auto& a = layers[static_cast<std::size_t>(c1)];
        const auto& b = layers[static_cast<std::size_t>(c - c1)];
        const bool same = c1 == c - c1;
        const auto na = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
        for (std::int64_t ia = 0; ia < na; ++ia) {
          const std::uint32_t f = a[static_cast<std::size_t>(ia)];
          const std::size_t start = same ? static_cast<std::size_t>(ia) + 1 : 0;
          for (std::size_t ib = start; ib < b.size(); ++ib) {
            const std::uint32_t g = b[ib];
            const std::uint64_t key = f < g ? (std::uint64_t{f} << 32) | g : (std::uint64_t{g} << 32) | f;
            const std::uint32_t x = f & g;
            const std::uint32_t y = f | g;
            if (t_.size_[x] == kUnset) store_min<Parallel>(cand_and[x], key);
            if (t_.size_[y] == kUnset) store_min<Parallel>(cand_or[y], key);
          }
        }
      }
      layers.emplace_back();
      auto& fresh = layers.back();
      for (std::uint64_t t = 0; t <= mask_; ++t) {
        if (t_.size_[t] != kUnset) continue;
        std::uint64_t key;
        WitnessOp op;
        if (cand_and[t] != kNoCandidate) {
          key = cand_and[t];
          op = WitnessOp::And;
        } else if (cand_or[t] != kNoCandidate) {
          key = cand_or[t];
          op = WitnessOp::Or;
        } else {
          continue;
        }
        t_.size_[t] = static_cast<std::uint8_t>(c);
        t_.op_[t] = static_cast<std::uint8_t>(op);
        t_.left_[t] = static_cast<std::uint32_t>(key >> 32);
        t_.right_[t] = static_cast<std::uint32_t>(key);
        fresh.push_back(static_cast<std::uint32_t>(t));
        --left;
      }
      if (c > 250) throw std::logic_error("size DP did not converge");
    }
  }

  // Level sets: depth d is reached by pairing a depth d-1 function with
  // any function of depth at most d-1.
  template <bool Parallel>
  void depths() {
    std::vector<std::uint32_t> level = literals_;
    std::vector<std::uint32_t> upto = literals_;
    std::vector<std::uint8_t> hit(mask_ + 1, 0);
    std::uint64_t left = remaining_;
    for (int d = 1; left > 0; ++d) {
      std::fill(hit.begin(), hit.end(), 0);
      const auto nl = static_cast<std::int64_t>(level.size());
#pragma omp parallel for schedule(dynamic, 16) if (Parallel)
      for (std::int64_t i = 0; i < nl; ++i) {
        const std::uint32_t f = level[static_cast<std::size_t>(i)];
        for (const std::uint32_t g : upto) {
          const std::uint32_t x = f & g;
          const std::uint32_t y = f | g;
          if (t_.depth_[x] == kUnset) mark<Parallel>(hit[x]);
          if (t_.depth_[y] == kUnset) mark<Parallel>(hit[y]);
        }
      }
      level.clear();
      for (std::uint64_t t = 0; t <= mask_; ++t) {
        if (hit[t] && t_.depth_[t] == kUnset) {
          t_.depth_[t] = static_cast<std::uint8_t>(d);
          level.push_back(static_cast<std::uint32_t>(t));
          --left;
        }
      }
      upto.insert(upto.end(), level.begin(), level.end());
      if (level.empty()) throw std::logic_error("depth DP stalled");
    }
  }

  int m_;
  bool parallel_;
  std::uint64_t mask_ = 0;
  std::uint64_t remaining_ = 0;
  std::vector<std::uint32_t> literals_;
  SizeTable t_;
};

SizeEntry SizeTable::entry(std::uint64_t index) const {
  SizeEntry e;
  e.size = size_.at(index);
  e.depth = depth_.at(index);
  e.op = static_cast<WitnessOp>(op_.at(index));
  e.left = left_.at(index);
  e.right = right_.at(index);
  return e;
}

Formula SizeTable::witness(std::uint64_t index) const {
  const SizeEntry e = entry(index);
  switch (e.op) {
    case WitnessOp::Const: return Formula::constant((index & 1u) != 0);
    case WitnessOp::Leaf: return Formula::leaf(static_cast<int>(e.left), e.right != 0);
    case WitnessOp::And: return Formula::land(witness(e.left), witness(e.right));
    case WitnessOp::Or: return Formula::lor(witness(e.left), witness(e.right));
  }
  throw std::logic_error("corrupt size table entry");
}

namespace {

template <typename T>
void put_le(std::string& buf, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) buf.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return static_cast<T>(v);
}

}  // namespace

void SizeTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  std::string header(kMagic, sizeof(kMagic));
  put_le<std::uint32_t>(header, static_cast<std::uint32_t>(m_));
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  std::string buf;
  buf.reserve(kRecordBytes * 4096);
  for (std::uint64_t i = 0; i < size_.size(); ++i) {
    put_le<std::uint16_t>(buf, size_[i]);
    put_le<std::uint16_t>(buf, depth_[i]);
    put_le<std::uint8_t>(buf, op_[i]);
    put_le<std::uint32_t>(buf, left_[i]);
    put_le<std::uint32_t>(buf, right_[i]);
    if (buf.size() >= kRecordBytes * 4096 || i + 1 == size_.size()) {
      out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
      buf.clear();
    }
  }
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

SizeTable SizeTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  unsigned char header[sizeof(kMagic) + 4];
  if (!in.read(reinterpret_cast<char*>(header), sizeof(header)) ||
      std::memcmp(header, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("'" + path + "' is not a size table file");
  }
  const auto m = get_le<std::uint32_t>(header + sizeof(kMagic));
  if (m > 5) throw std::runtime_error("size table header has arity " + std::to_string(m));
  SizeTable t;
  t.m_ = static_cast<int>(m);
  const std::uint64_t count = t.function_count();
  t.size_.resize(count);
  t.depth_.resize(count);
  t.op_.resize(count);
  t.left_.resize(count);
  t.right_.resize(count);
  unsigned char rec[kRecordBytes];
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!in.read(reinterpret_cast<char*>(rec), sizeof(rec))) {
      throw std::runtime_error("'" + path + "' is truncated");
    }
    t.size_[i] = static_cast<std::uint8_t>(get_le<std::uint16_t>(rec));
    t.depth_[i] = static_cast<std::uint8_t>(get_le<std::uint16_t>(rec + 2));
    t.op_[i] = rec[4];
    t.left_[i] = get_le<std::uint32_t>(rec + 5);
    t.right_[i] = get_le<std::uint32_t>(rec + 9);
    if (t.op_[i] > 3) throw std::runtime_error("'" + path + "' has a corrupt record");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error("'" + path + "' has trailing data");
  }
  return t;
}

std::uint64_t size_table_memory_estimate(int m) {
  if (m < 0 || m > 5) throw std::invalid_argument("arity must be in 0..5");
  // Table columns (1+1+1+4+4), two candidate arrays, the depth hit array
  // and the layer lists.
  const std::uint64_t per_function = 11 + 16 + 1 + 8;
  return per_function << (1u << m);
}

SizeTable build_size_table(int m, const SizeTableOptions& options) {
  if (m < 0) throw std::invalid_argument("arity must be non-negative");
  if (m > 5 || (m == 5 && !options.allow_arity5)) {
    throw CapExceeded("size table for arity " + std::to_string(m) + " needs about " +
                      std::to_string(size_table_memory_estimate(std::min(m, 5)) >> 30) +
                      " GiB; arity 5 must be enabled explicitly");
  }
  return SizeTableBuilder(m, options.parallel).build();
}

const SizeTable& cached_size_table(int m) {
  static std::array<std::once_flag, 5> once;
  static std::array<std::unique_ptr<SizeTable>, 5> tables;
  if (m < 0 || m > 4) throw CapExceeded("no cached size table for arity " + std::to_string(m));
  std::call_once(once[static_cast<std::size_t>(m)], [m] {
    tables[static_cast<std::size_t>(m)] = std::make_unique<SizeTable>(build_size_table(m));
  });
  return *tables[static_cast<std::size_t>(m)];
}

namespace {

struct Compressed {
  std::vector<int> vars;
  std::uint64_t index = 0;
};

Compressed compress_for_oracle(const TruthTable& f) {
  Compressed c;
  c.vars = f.essential_variables();
  if (c.vars.size() > 4) {
    throw CapExceeded("function depends on " + std::to_string(c.vars.size()) +
                      " variables; the exact-size oracle covers at most 4");
  }
  c.index = f.compress(c.vars).low_word();
  return c;
}

Formula rename(const Formula& phi, const std::vector<int>& vars) {
  if (phi.is_const()) return phi;
  if (phi.is_leaf()) {
    return Formula::leaf(vars[static_cast<std::size_t>(phi.literal().var - 1)], phi.literal().negated);
  }
  const Formula l = rename(phi.left(), vars);
  const Formula r = rename(phi.right(), vars);
  return phi.kind() == Formula::Kind::And ? Formula::land(l, r) : Formula::lor(l, r);
}

}  // namespace

int L_exact(const TruthTable& f) {
  const Compressed c = compress_for_oracle(f);
  return cached_size_table(static_cast<int>(c.vars.size())).size(c.index);
}

int D_exact(const TruthTable& f) {
  const Compressed c = compress_for_oracle(f);
  return cached_size_table(static_cast<int>(c.vars.size())).depth(c.index);
}

Formula witness_formula(const TruthTable& f) {
  const Compressed c = compress_for_oracle(f);
  return rename(cached_size_table(static_cast<int>(c.vars.size())).witness(c.index), c.vars);
}

std::pair<TruthTable, int> max_L_function(int k) {
  const SizeTable& t = cached_size_table(k);
  std::uint64_t best = 0;
  for (std::uint64_t i = 1; i < t.function_count(); ++i) {
    if (t.size(i) > t.size(best)) best = i;
  }
  TruthTable f(k);
  for (std::uint64_t x = 0; x < f.size(); ++x) f.set(x, (best >> x) & 1u);
  return {f, t.size(best)};
}

}  // namespace shrinklab
