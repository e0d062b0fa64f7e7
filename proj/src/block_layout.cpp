#include "omega/block_layout.hpp"

#include "omega/errors.hpp"

namespace omega {

namespace {

Slot source(const BigNat& index) { return Slot{Slot::Kind::Source, 0, index}; }
Slot marker(Letter a) { return Slot{Slot::Kind::Marker, a, 0}; }
Slot filler(Letter a) { return Slot{Slot::Kind::Filler, a, 0}; }

Slot theta_slot(std::uint64_t s, const BigNat& p) {
  if (s == 1) {
    BigNat block = (p + 1) / 2;
    return (p - 1) % 2 == 0 ? source(block) : filler('E');
  }
  BigNat start = 1;
  BigNat power = s;
  for (BigNat n = 1;; ++n) {
    BigNat len = power + 1;
    if (p < start + len) {
      return p == start ? source(n) : filler('E');
    }
    start += len;
    power *= s;
  }
}

Slot hk_layout(const BigNat& run, const BigNat& offset, const BigNat& n, bool first) {
  // first block: A C^run x B ; later blocks: C^run A C^run x B
  if (first) {
    if (offset == 0) return marker('A');
    if (offset <= run) return filler('C');
    if (offset == run + 1) return source(n);
    return marker('B');
  }
  if (offset < run) return filler('C');
  if (offset == run) return marker('A');
  if (offset <= 2 * run) return filler('C');
  if (offset == 2 * run + 1) return source(n);
  return marker('B');
}

Slot hk_slot(std::uint64_t k, const BigNat& p) {
  BigNat first_len = BigNat(k) + 3;
  if (p <= first_len) return hk_layout(k, p - 1, 1, true);
  if (k == 1) {
    BigNat rest = p - first_len - 1;
    return hk_layout(1, rest % 5, 2 + rest / 5, false);
  }
  BigNat start = first_len + 1;
  BigNat power = BigNat(k) * k;
  for (BigNat n = 2;; ++n) {
    BigNat len = 2 * power + 3;
    if (p < start + len) return hk_layout(power, p - start, n, false);
    start += len;
    power *= k;
  }
}

Slot phik_slot(std::uint64_t k, const BigNat& p) {
  BigNat block = (p + k - 1) / k;
  BigNat offset = (p - 1) % k;
  return offset == k - 1 ? source(block) : filler('F');
}

Slot h_slot(const BigNat& p) {
  // block m has length m + 2; the first m blocks span m(m+5)/2 letters
  BigNat m = triangular_ceiling(p, 5);
  BigNat before = (m - 1) * (m + 4) / 2;
  BigNat offset = p - before - 1;
  if (offset == 0) return marker('D');
  if (offset <= m) return filler('0');
  return source(m);
}

}  // namespace

BigNat triangular_ceiling(const BigNat& p, unsigned c) {
  // m(m+c)/2 >= p  <=>  m >= (-c + sqrt(c^2 + 8p)) / 2
  BigNat disc = BigNat(c) * c + 8 * p;
  BigNat root = boost::multiprecision::sqrt(disc);
  BigNat m = root > c ? (root - c) / 2 : BigNat(0);
  while (m > 0 && (m - 1) * (m - 1 + c) / 2 >= p) --m;
  while (m * (m + c) / 2 < p) ++m;
  return m;
}

Slot coding_slot(Coding coding, std::uint64_t param, const BigNat& n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  switch (coding) {
    case Coding::Theta:
      if (param < 1) throw Error(ErrorCode::InvalidArgument, "theta needs S >= 1");
      return theta_slot(param, n);
    case Coding::HK:
      if (param < 1) throw Error(ErrorCode::InvalidArgument, "h_K needs K >= 1");
      return hk_slot(param, n);
    case Coding::PhiK:
      if (param < 1) throw Error(ErrorCode::InvalidArgument, "phi_K needs K >= 1");
      return phik_slot(param, n);
    case Coding::H:
      return h_slot(n);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown coding");
}

Letter alpha_letter(const BigNat& n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "positions are 1-based");
  // block m = D 0^m, the first m blocks span m(m+3)/2 letters
  BigNat m = triangular_ceiling(n, 3);
  BigNat before = (m - 1) * (m + 2) / 2;
  return n - before == 1 ? 'D' : '0';
}

std::string coding_letters(Coding coding) {
  switch (coding) {
    case Coding::Theta: return "E";
    case Coding::HK: return "ABC";
    case Coding::PhiK: return "F";
    case Coding::H: return "0D";
  }
  return "";
}

}  // namespace omega
