#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dca/errors.hpp"
#include "dca/rational.hpp"

namespace dca::words {

// Word over {b, w}; cyclic words compare up to rotation.
struct Word {
  std::string letters;  // 'b' / 'w'
  bool cyclic = true;
};

bool cyclic_equal(const Word& a, const Word& b);

// Pair-insertion map T: between every pair of neighbouring letters insert
//   bw -> bwbw, wb -> wbwb, bb -> bwb, ww -> wbw
// then delete the old letters. Linear words use adjacent pairs only
// (no wrap pair).
Word substitute(const Word& w);

// Recoded alphabet: pair starting at each position.
//   bw -> w_b, wb -> b_w, ww -> w_w, bb -> b_b
enum class RSym : uint8_t { wb = 0, bw = 1, ww = 2, bb = 3 };

const char* rsym_name(RSym s);  // "w_b", "b_w", "w_w", "b_b"

struct RecodedWord {
  std::vector<RSym> syms;
  bool cyclic = true;
};

RecodedWord recode(const Word& w);
Word decode(const RecodedWord& r);  // checks pair overlap consistency
RecodedWord substitute_recoded(const RecodedWord& r);

// Abelianization of the recoded substitution over (w_b, b_w, w_w, b_b):
// A[i][j] counts letter i in the image of letter j.
std::array<std::array<long, 4>, 4> abelianization_matrix();

struct PerronCertificate {
  std::array<std::array<long, 4>, 4> matrix;
  std::array<long, 5> charpoly;              // monic, coeff of x^0..x^4
  std::array<long, 3> factor;                // x^2 - 4x + 1
  std::array<long, 3> cofactor;              // quotient polynomial
  bool divides = false;                      // factor * cofactor == charpoly
  std::array<std::array<long, 2>, 2> quotient;  // b/w symmetry collapse
  bool primitive = false;                    // A^4 strictly positive
  std::array<Sqrt3Q, 4> eigenvector;         // positive, in Q(sqrt 3)
  Sqrt3Q lambda;                             // 2 + sqrt 3
  bool eigen_identity = false;               // A v = lambda v, exact
  double lambda_float = 0.0;
  bool pass = false;
};

PerronCertificate perron_certificate();

struct GrowthSeries {
  std::vector<size_t> lengths;   // |T^j(word)|, j = 0..steps
  std::vector<double> ratios;    // consecutive ratios
  double final_ratio_deviation;  // |last ratio - (2 + sqrt 3)|
  std::vector<Word> iterates;    // filled only when requested
};

GrowthSeries growth_series(const Word& start, int steps, size_t length_cap,
                           bool keep_words = false);

}  // namespace dca::words
