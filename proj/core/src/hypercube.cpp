#include "mtsim/hypercube.hpp"

namespace mtsim {

Point Point::flipped(const IndexSet& s) const {
  Point r = *this;
  std::uint32_t prev = 0;
  for (std::uint32_t i : s) {
    if (i <= prev) throw ContractError("IndexSet not strictly increasing");
    prev = i;
    r.flip_inplace(i);
  }
  return r;
}

IndexSet Point::ones() const {
  IndexSet r;
  r.reserve(weight_);
  for (std::uint32_t i = 1; i <= static_cast<std::uint32_t>(n_); ++i)
    if (bit_unchecked(i)) r.push_back(i);
  return r;
}

IndexSet Point::zeros() const {
  IndexSet r;
  r.reserve(n_ - weight_);
  for (std::uint32_t i = 1; i <= static_cast<std::uint32_t>(n_); ++i)
    if (!bit_unchecked(i)) r.push_back(i);
  return r;
}

bool Point::leq(const Point& other) const {
  if (n_ != other.n_) throw ContractError("dimension mismatch in leq");
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w]) return false;
  return true;
}

std::string Point::to_string() const {
  std::string s(n_, '0');
  for (int i = 1; i <= n_; ++i)
    if (bit_unchecked(i)) s[i - 1] = '1';
  return s;
}

Point Point::from_string(const std::string& s) {
  Point p(static_cast<int>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') p.set_bit(static_cast<std::uint32_t>(i + 1), true);
    else if (s[i] != '0') throw ContractError("point string must be 0/1");
  }
  return p;
}

Point Point::from_mask(int n, std::uint64_t v) {
  if (n > 64) throw ContractError("from_mask supports n <= 64");
  Point p(n);
  if (n > 0) {
    p.words_[0] = (n == 64) ? v : (v & ((std::uint64_t{1} << n) - 1));
    p.weight_ = __builtin_popcountll(p.words_[0]);
  }
  return p;
}

std::uint64_t Point::to_mask() const {
  if (n_ > 64) throw ContractError("to_mask supports n <= 64");
  return words_.empty() ? 0 : words_[0];
}

int weight(const Point& x) { return x.weight(); }

Point flip(const Point& x, const IndexSet& s) { return x.flipped(s); }

bool in_middle_layers(int w, int n) {
  const int r = isqrt(n);
  // n/2 rounded down; for paper-default parameters n is a perfect square
  // and even, so no rounding occurs.
  return 2 * w >= n - 2 * r && 2 * w <= n + 2 * r;
}

bool in_sandwich_layers(int w, int n) {
  if (n % 4 != 0) throw ContractError("sandwich layers need n divisible by 4");
  const int lo = 3 * n / 4;
  return w >= lo && w <= lo + 1;
}

Point sample_layer(int n, int w, Rng& rng) {
  if (w < 0 || w > n) throw ContractError("sample_layer weight out of range");
  Point p(n);
  for (std::uint32_t i : rng.choose(static_cast<std::uint32_t>(n),
                                    static_cast<std::uint32_t>(w)))
    p.set_bit(i + 1, true);
  return p;
}

bool term_eval(const LiteralList& t, const Point& x) {
  for (std::uint32_t i : t)
    if (!x.bit(i)) return false;
  return true;
}

bool clause_eval(const LiteralList& c, const Point& x) {
  for (std::uint32_t i : c)
    if (x.bit(i)) return true;
  return false;
}

unsigned __int128 binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i);
    r = r / static_cast<unsigned>(i);
  }
  return r;
}

}  // namespace mtsim
