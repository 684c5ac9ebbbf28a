#include "dca/words.hpp"

#include <cmath>
#include <functional>

namespace dca::words {

namespace {

void check_letters(const Word& w) {
  if (w.letters.empty()) throw Error(ErrorCode::too_short, "empty word");
  for (char c : w.letters)
    if (c != 'b' && c != 'w')
      throw Error(ErrorCode::parse, "word letters must be 'b' or 'w'");
}

const char* insertion(char a, char b) {
  if (a == 'b' && b == 'w') return "bwbw";
  if (a == 'w' && b == 'b') return "wbwb";
  if (a == 'b' && b == 'b') return "bwb";
  return "wbw";  // ww
}

}  // namespace

bool cyclic_equal(const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size()) return false;
  if (!a.cyclic || !b.cyclic) return a.letters == b.letters;
  std::string doubled = a.letters + a.letters;
  return doubled.find(b.letters) != std::string::npos;
}

Word substitute(const Word& w) {
  check_letters(w);
  size_t n = w.letters.size();
  if (n < 2) throw Error(ErrorCode::too_short, "substitution needs at least 2 letters");
  std::string out;
  size_t pairs = w.cyclic ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i)
    out += insertion(w.letters[i], w.letters[(i + 1) % n]);
  return Word{std::move(out), w.cyclic};
}

const char* rsym_name(RSym s) {
  switch (s) {
    case RSym::wb: return "w_b";
    case RSym::bw: return "b_w";
    case RSym::ww: return "w_w";
    case RSym::bb: return "b_b";
  }
  return "?";
}

namespace {

RSym pair_sym(char a, char b) {
  if (a == 'b' && b == 'w') return RSym::wb;
  if (a == 'w' && b == 'b') return RSym::bw;
  if (a == 'w' && b == 'w') return RSym::ww;
  return RSym::bb;
}

// first letter of the underlying pair
char sym_first(RSym s) {
  switch (s) {
    case RSym::wb: return 'b';
    case RSym::bw: return 'w';
    case RSym::ww: return 'w';
    case RSym::bb: return 'b';
  }
  return '?';
}

char sym_second(RSym s) {
  switch (s) {
    case RSym::wb: return 'w';
    case RSym::bw: return 'b';
    case RSym::ww: return 'w';
    case RSym::bb: return 'b';
  }
  return '?';
}

// Recoded image words of the substitution:
//   w_b -> w_b b_w w_b w_w      b_w -> b_w w_b b_w b_b
//   w_w -> b_w w_b w_w          b_b -> w_b b_w b_b
const std::vector<RSym>& rimage(RSym s) {
  static const std::vector<RSym> img_wb{RSym::wb, RSym::bw, RSym::wb, RSym::ww};
  static const std::vector<RSym> img_bw{RSym::bw, RSym::wb, RSym::bw, RSym::bb};
  static const std::vector<RSym> img_ww{RSym::bw, RSym::wb, RSym::ww};
  static const std::vector<RSym> img_bb{RSym::wb, RSym::bw, RSym::bb};
  switch (s) {
    case RSym::wb: return img_wb;
    case RSym::bw: return img_bw;
    case RSym::ww: return img_ww;
    case RSym::bb: return img_bb;
  }
  return img_wb;
}

}  // namespace

RecodedWord recode(const Word& w) {
  check_letters(w);
  size_t n = w.letters.size();
  if (n < 2) throw Error(ErrorCode::too_short, "recoding needs at least 2 letters");
  RecodedWord r;
  r.cyclic = w.cyclic;
  size_t pairs = w.cyclic ? n : n - 1;
  for (size_t i = 0; i < pairs; ++i)
    r.syms.push_back(pair_sym(w.letters[i], w.letters[(i + 1) % n]));
  return r;
}

Word decode(const RecodedWord& r) {
  if (r.syms.empty()) throw Error(ErrorCode::too_short, "empty recoded word");
  size_t n = r.syms.size();
  for (size_t i = 0; i + (r.cyclic ? 0 : 1) < n; ++i) {
    RSym a = r.syms[i], b = r.syms[(i + 1) % n];
    if (sym_second(a) != sym_first(b))
      throw Error(ErrorCode::parse, "recoded letters do not overlap consistently");
  }
  Word w;
  w.cyclic = r.cyclic;
  for (RSym s : r.syms) w.letters += sym_first(s);
  if (!r.cyclic) w.letters += sym_second(r.syms.back());
  return w;
}

RecodedWord substitute_recoded(const RecodedWord& r) {
  if (r.syms.empty()) throw Error(ErrorCode::too_short, "empty recoded word");
  RecodedWord out;
  out.cyclic = r.cyclic;
  for (RSym s : r.syms) {
    const auto& img = rimage(s);
    out.syms.insert(out.syms.end(), img.begin(), img.end());
  }
  return out;
}

std::array<std::array<long, 4>, 4> abelianization_matrix() {
  std::array<std::array<long, 4>, 4> a{};
  for (int j = 0; j < 4; ++j)
    for (RSym s : rimage(static_cast<RSym>(j))) a[static_cast<int>(s)][j]++;
  return a;
}

namespace {

// characteristic polynomial of a 4x4 integer matrix by expansion of
// det(xI - A) with polynomial entries (exact, small sizes)
std::array<long, 5> charpoly4(const std::array<std::array<long, 4>, 4>& a) {
  // polynomials as vector<long>, index = degree
  using Poly = std::vector<long>;
  auto axpy = [](Poly& r, const Poly& q, long sign) {
    if (r.size() < q.size()) r.resize(q.size(), 0);
    for (size_t i = 0; i < q.size(); ++i) r[i] += sign * q[i];
  };
  auto mul = [](const Poly& p, const Poly& q) {
    Poly r(p.size() + q.size() - 1, 0);
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
  };

  std::array<std::array<Poly, 4>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j)
        m[i][j] = Poly{-a[i][j], 1};
      else
        m[i][j] = Poly{-a[i][j]};
    }

  // Laplace expansion over the first remaining column (4x4: fine)
  std::function<Poly(std::vector<int>, std::vector<int>)> det =
      [&](std::vector<int> rows, std::vector<int> cols) -> Poly {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    Poly acc{0};
    for (size_t i = 0; i < rows.size(); ++i) {
      std::vector<int> r2;
      for (size_t k = 0; k < rows.size(); ++k)
        if (k != i) r2.push_back(rows[k]);
      std::vector<int> c2(cols.begin() + 1, cols.end());
      Poly term = mul(m[rows[i]][cols[0]], det(r2, c2));
      axpy(acc, term, (i % 2 == 0) ? 1 : -1);
    }
    return acc;
  };
  Poly p = det({0, 1, 2, 3}, {0, 1, 2, 3});
  std::array<long, 5> out{};
  for (size_t i = 0; i < p.size() && i < 5; ++i) out[i] = p[i];
  return out;
}

}  // namespace

PerronCertificate perron_certificate() {
  PerronCertificate cert;
  cert.matrix = abelianization_matrix();
  cert.charpoly = charpoly4(cert.matrix);
  cert.factor = {1, -4, 1};  // x^2 - 4x + 1, roots 2 +- sqrt 3

  // exact division charpoly / factor (monic divisor of degree 2)
  {
    std::array<long, 5> rem = cert.charpoly;
    std::array<long, 3> quot{};
    for (int d = 4; d >= 2; --d) {
      long c = rem[d];  // divisor is monic in x^2 with factor[2] = 1
      quot[d - 2] = c;
      rem[d] -= c * cert.factor[2];
      rem[d - 1] -= c * cert.factor[1];
      rem[d - 2] -= c * cert.factor[0];
    }
    cert.cofactor = quot;
    cert.divides = rem[0] == 0 && rem[1] == 0;
  }

  // b/w symmetry swaps w_b<->b_w and w_w<->b_b; collapse to 2x2 on the classes
  // {w_b, b_w} and {w_w, b_b}
  {
    auto& a = cert.matrix;
    cert.quotient[0][0] = a[0][0] + a[1][0];
    cert.quotient[0][1] = a[0][2] + a[1][2];
    cert.quotient[1][0] = a[2][0] + a[3][0];
    cert.quotient[1][1] = a[2][2] + a[3][2];
  }

  // primitivity: A^4 strictly positive
  {
    std::array<std::array<long, 4>, 4> p = cert.matrix;
    for (int it = 0; it < 3; ++it) {
      std::array<std::array<long, 4>, 4> q{};
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
          for (int j = 0; j < 4; ++j) q[i][j] += p[i][k] * cert.matrix[k][j];
      p = q;
    }
    cert.primitive = true;
    for (auto& row : p)
      for (long v : row)
        if (v <= 0) cert.primitive = false;
  }

  // positive eigenvector (2, 2, sqrt3 - 1, sqrt3 - 1) for lambda = 2 + sqrt3
  cert.lambda = Sqrt3Q(Rat(2), Rat(1));
  cert.eigenvector = {Sqrt3Q(Rat(2)), Sqrt3Q(Rat(2)), Sqrt3Q(Rat(-1), Rat(1)),
                      Sqrt3Q(Rat(-1), Rat(1))};
  cert.eigen_identity = true;
  for (int i = 0; i < 4; ++i) {
    Sqrt3Q acc;
    for (int j = 0; j < 4; ++j)
      acc += Sqrt3Q(Rat(cert.matrix[i][j])) * cert.eigenvector[j];
    if (!(acc == cert.lambda * cert.eigenvector[i])) cert.eigen_identity = false;
  }
  cert.lambda_float = cert.lambda.approx(std::sqrt(3.0));
  cert.pass = cert.divides && cert.primitive && cert.eigen_identity;
  return cert;
}

GrowthSeries growth_series(const Word& start, int steps, size_t length_cap,
                           bool keep_words) {
  if (steps < 1) throw Error(ErrorCode::invalid_argument, "steps must be >= 1");
  GrowthSeries gs;
  Word w = start;
  gs.lengths.push_back(w.letters.size());
  if (keep_words) gs.iterates.push_back(w);
  for (int j = 0; j < steps; ++j) {
    w = substitute(w);
    if (w.letters.size() > length_cap)
      throw Error(ErrorCode::too_large, "length cap exceeded in growth series");
    gs.lengths.push_back(w.letters.size());
    if (keep_words) gs.iterates.push_back(w);
    gs.ratios.push_back(static_cast<double>(gs.lengths[gs.lengths.size() - 1]) /
                        static_cast<double>(gs.lengths[gs.lengths.size() - 2]));
  }
  gs.final_ratio_deviation = std::abs(gs.ratios.back() - (2.0 + std::sqrt(3.0)));
  return gs;
}

}  // namespace dca::words
