#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "mtsim/common.hpp"
#include "mtsim/rng.hpp"

namespace mtsim {

// Sorted list of distinct coordinates in [n] (1-based).
using IndexSet = std::vector<std::uint32_t>;

// Multiset of coordinates in [n]; houses the index tuple of a term/clause.
// Repeats allowed.
using LiteralList = std::vector<std::uint32_t>;

// A vertex of {0,1}^n as a packed bit vector with cached Hamming weight.
// Coordinates are 1-based in the public API.
class Point {
 public:
  Point() : n_(0), weight_(0) {}
  explicit Point(int n) : n_(n), weight_(0), words_((n + 63) / 64, 0) {}

  int n() const { return n_; }
  int weight() const { return weight_; }

  bool bit(std::uint32_t i) const {
    check_coord(i);
    return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
  }

  void set_bit(std::uint32_t i, bool v) {
    check_coord(i);
    const std::uint64_t mask = std::uint64_t{1} << ((i - 1) & 63);
    std::uint64_t& w = words_[(i - 1) >> 6];
    if (v && !(w & mask)) { w |= mask; ++weight_; }
    else if (!v && (w & mask)) { w &= ~mask; --weight_; }
  }

  // Unchecked fast-path accessor for hot loops (coordinate already validated).
  bool bit_unchecked(std::uint32_t i) const {
    return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
  }

  Point flipped(const IndexSet& s) const;
  void flip_inplace(std::uint32_t i) {
    check_coord(i);
    const std::uint64_t mask = std::uint64_t{1} << ((i - 1) & 63);
    std::uint64_t& w = words_[(i - 1) >> 6];
    weight_ += (w & mask) ? -1 : 1;
    w ^= mask;
  }

  IndexSet ones() const;
  IndexSet zeros() const;

  // Coordinatewise partial order: *this <= other.
  bool leq(const Point& other) const;

  bool operator==(const Point& other) const {
    return n_ == other.n_ && words_ == other.words_;
  }
  bool operator<(const Point& other) const {  // for ordered containers
    if (n_ != other.n_) return n_ < other.n_;
    return words_ < other.words_;
  }

  // Fixed-length 0/1 string, coordinate 1 leftmost.
  std::string to_string() const;
  static Point from_string(const std::string& s);

  // Interpret the low n bits of v as coordinates 1..n (for exhaustive scans).
  static Point from_mask(int n, std::uint64_t v);
  std::uint64_t to_mask() const;  // requires n <= 64

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void check_coord(std::uint32_t i) const {
    if (i < 1 || static_cast<int>(i) > n_)
      throw std::out_of_range("Point coordinate out of [n]");
  }
  int n_;
  int weight_;
  std::vector<std::uint64_t> words_;
};

int weight(const Point& x);
Point flip(const Point& x, const IndexSet& s);

// (n/2)-sqrt(n) <= |x| <= (n/2)+sqrt(n), bounds inclusive. Uses floor sqrt;
// spec constructors enforce integral sqrt(n) where paper defaults demand it.
bool in_middle_layers(int weight, int n);
inline bool in_middle_layers(const Point& x, int n) {
  return in_middle_layers(x.weight(), n);
}

// 3n/4 <= |x| <= 3n/4+1 (n divisible by 4).
bool in_sandwich_layers(int weight, int n);
inline bool in_sandwich_layers(const Point& x, int n) {
  return in_sandwich_layers(x.weight(), n);
}

// Uniform point of exactly weight w (Fisher-Yates selection, integer-only).
Point sample_layer(int n, int w, Rng& rng);

// T(x) = AND of listed coordinates; C(x) = OR. Repeats idempotent.
bool term_eval(const LiteralList& t, const Point& x);
bool clause_eval(const LiteralList& c, const Point& x);

// Exact binomial C(n, k) in unsigned 128-bit; n <= 64 supported.
unsigned __int128 binomial(int n, int k);

}  // namespace mtsim
