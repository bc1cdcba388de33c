#include "gcnnvc/group.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "gcnnvc/errors.hpp"

namespace gcnnvc {

namespace {

constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

// Keeps the tables addressable with 32-bit entries.
constexpr std::size_t kMaxOrder = 1u << 16;

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw InvalidArgument("group descriptor: expected a non-negative integer for " +
                          std::string(what) + ", got '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits "a,b" at the top-level comma (commas nested in parentheses ignored).
std::pair<std::string_view, std::string_view> split_top_level(std::string_view s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {trim(s.substr(0, i)), trim(s.substr(i + 1))};
  }
  throw InvalidArgument("group descriptor: product needs two comma-separated factors");
}

void check_order(std::size_t r) {
  if (r > kMaxOrder) {
    throw InvalidArgument("group order " + std::to_string(r) + " exceeds the supported " +
                          std::to_string(kMaxOrder));
  }
}

}  // namespace

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("group descriptor '" + std::string(text) +
                          "': expected kind:parameters");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = trim(text.substr(colon + 1));
  GroupDescriptor d;
  if (kind == "cyclic") {
    d.kind = GroupKind::cyclic;
    d.n = parse_count(rest, "cyclic order");
  } else if (kind == "dihedral") {
    d.kind = GroupKind::dihedral;
    d.n = parse_count(rest, "dihedral n");
  } else if (kind == "grid") {
    d.kind = GroupKind::grid;
    const auto x = rest.find('x');
    if (x == std::string_view::npos) {
      throw InvalidArgument("group descriptor: grid expects HxW, got '" + std::string(rest) + "'");
    }
    d.height = parse_count(rest.substr(0, x), "grid height");
    d.width = parse_count(rest.substr(x + 1), "grid width");
  } else if (kind == "product") {
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
      throw InvalidArgument("group descriptor: product expects (desc,desc)");
    }
    auto [left, right] = split_top_level(rest.substr(1, rest.size() - 2));
    d.kind = GroupKind::product;
    d.factors.push_back(parse(left));
    d.factors.push_back(parse(right));
  } else {
    throw InvalidArgument("group descriptor: unknown kind '" + std::string(kind) + "'");
  }
  return d;
}

std::string GroupDescriptor::to_string() const {
  switch (kind) {
    case GroupKind::cyclic:
      return "cyclic:" + std::to_string(n);
    case GroupKind::dihedral:
      return "dihedral:" + std::to_string(n);
    case GroupKind::grid:
      return "grid:" + std::to_string(height) + "x" + std::to_string(width);
    case GroupKind::product:
      return "product:(" + factors.at(0).to_string() + "," + factors.at(1).to_string() + ")";
    case GroupKind::custom:
      break;
  }
  return "custom";
}

DiscretizedGroup build_group(const GroupDescriptor& desc) {
  switch (desc.kind) {
    case GroupKind::cyclic:
      return build_cyclic(desc.n);
    case GroupKind::dihedral:
      return build_dihedral(desc.n);
    case GroupKind::grid:
      return build_grid_translation(desc.height, desc.width);
    case GroupKind::product:
      if (desc.factors.size() != 2) throw InvalidArgument("product descriptor needs two factors");
      return build_product(build_group(desc.factors[0]), build_group(desc.factors[1]));
    case GroupKind::custom:
      break;
  }
  throw InvalidArgument("custom groups have no builder descriptor");
}

// ---------------------------------------------------------------------------

void DiscretizedGroup::derive_closed_differences() {
  diff_count_ = r_;
  identity_diff_ = identity_;
  diff_.assign(r_ * r_, kInvalid);
  for (Element i = 0; i < r_; ++i) {
    const std::uint32_t inv = inverse_[i];
    if (inv >= r_) continue;
    for (Element j = 0; j < r_; ++j) diff_[i * r_ + j] = compose_[inv * r_ + j];
  }
}

DiscretizedGroup DiscretizedGroup::from_tables(std::vector<std::uint32_t> compose,
                                               std::vector<std::uint32_t> inverse,
                                               Element identity, std::string label) {
  const std::size_t r = inverse.size();
  if (r == 0) throw InvalidArgument("from_tables: empty inverse table");
  check_order(r);
  if (compose.size() != r * r) {
    throw InvalidArgument("from_tables: compose table must be r*r = " + std::to_string(r * r));
  }
  if (identity >= r) throw InvalidArgument("from_tables: identity index out of range");
  DiscretizedGroup g;
  g.r_ = r;
  g.identity_ = identity;
  g.closed_ = true;
  g.kind_ = GroupKind::custom;
  g.label_ = std::move(label);
  g.compose_ = std::move(compose);
  g.inverse_ = std::move(inverse);
  g.derive_closed_differences();
  return g;
}

Element DiscretizedGroup::compose(Element a, Element b) const {
  if (!closed_) throw UnsupportedOperation("compose: " + label_ + " is not a closed group");
  if (a >= r_ || b >= r_) throw InvalidArgument("compose: element index out of range");
  return compose_[a * r_ + b];
}

Element DiscretizedGroup::inverse(Element a) const {
  if (!closed_) throw UnsupportedOperation("inverse: " + label_ + " is not a closed group");
  if (a >= r_) throw InvalidArgument("inverse: element index out of range");
  return inverse_[a];
}

std::span<const std::uint32_t> DiscretizedGroup::compose_table() const {
  if (!closed_) throw UnsupportedOperation(label_ + " has no composition table");
  return compose_;
}

std::span<const std::uint32_t> DiscretizedGroup::inverse_table() const {
  if (!closed_) throw UnsupportedOperation(label_ + " has no inverse table");
  return inverse_;
}

std::size_t DiscretizedGroup::grid_offset_index(long dr, long dc) const {
  if (kind_ != GroupKind::grid) throw UnsupportedOperation(label_ + " is not a grid group");
  const long h = static_cast<long>(grid_h_);
  const long w = static_cast<long>(grid_w_);
  if (dr <= -h || dr >= h || dc <= -w || dc >= w) {
    throw InvalidArgument("grid offset (" + std::to_string(dr) + "," + std::to_string(dc) +
                          ") outside the difference domain");
  }
  return static_cast<std::size_t>((dr + h - 1) * (2 * w - 1) + (dc + w - 1));
}

// ---------------------------------------------------------------------------

DiscretizedGroup build_cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("build_cyclic: order must be positive");
  check_order(n);
  DiscretizedGroup g;
  g.r_ = n;
  g.identity_ = 0;
  g.closed_ = true;
  g.kind_ = GroupKind::cyclic;
  g.label_ = "Z" + std::to_string(n);
  g.descriptor_ = GroupDescriptor{GroupKind::cyclic, n, 0, 0, {}};
  g.compose_.resize(n * n);
  g.inverse_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.inverse_[i] = static_cast<std::uint32_t>((n - i) % n);
    for (std::size_t j = 0; j < n; ++j) g.compose_[i * n + j] = static_cast<std::uint32_t>((i + j) % n);
  }
  g.derive_closed_differences();
  return g;
}

DiscretizedGroup build_dihedral(std::size_t n) {
  if (n < 3) throw InvalidArgument("build_dihedral: n must be at least 3");
  check_order(2 * n);
  const std::size_t r = 2 * n;
  DiscretizedGroup g;
  g.r_ = r;
  g.identity_ = 0;
  g.closed_ = true;
  g.kind_ = GroupKind::dihedral;
  g.label_ = "D" + std::to_string(n);
  g.descriptor_ = GroupDescriptor{GroupKind::dihedral, n, 0, 0, {}};
  g.compose_.resize(r * r);
  g.inverse_.resize(r);
  // (s1,k1)(s2,k2) = sigma^(s1^s2) rho^(+-k1 + k2), the sign flipping when s2 = 1.
  for (std::size_t a = 0; a < r; ++a) {
    const std::size_t s1 = a / n, k1 = a % n;
    for (std::size_t b = 0; b < r; ++b) {
      const std::size_t s2 = b / n, k2 = b % n;
      const std::size_t k = (s2 ? (n - k1) + k2 : k1 + k2) % n;
      g.compose_[a * r + b] = static_cast<std::uint32_t>((s1 ^ s2) * n + k);
    }
    g.inverse_[a] = static_cast<std::uint32_t>(s1 ? a : (n - k1) % n);
  }
  g.derive_closed_differences();
  return g;
}

DiscretizedGroup build_grid_translation(std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) {
    throw InvalidArgument("build_grid_translation: dimensions must be positive");
  }
  check_order(height * width);
  const std::size_t r = height * width;
  const std::size_t dw = 2 * width - 1;
  DiscretizedGroup g;
  g.r_ = r;
  g.identity_ = 0;
  g.closed_ = false;
  g.kind_ = GroupKind::grid;
  g.label_ = "T" + std::to_string(height) + "x" + std::to_string(width);
  g.descriptor_ = GroupDescriptor{GroupKind::grid, 0, height, width, {}};
  g.grid_h_ = height;
  g.grid_w_ = width;
  g.diff_count_ = (2 * height - 1) * dw;
  g.identity_diff_ = (height - 1) * dw + (width - 1);
  g.diff_.resize(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t ri = i / width, ci = i % width;
    for (std::size_t j = 0; j < r; ++j) {
      const std::size_t rj = j / width, cj = j % width;
      // offset t_j - t_i, shifted to be non-negative
      const std::size_t row = rj + height - 1 - ri;
      const std::size_t col = cj + width - 1 - ci;
      g.diff_[i * r + j] = static_cast<std::uint32_t>(row * dw + col);
    }
  }
  return g;
}

DiscretizedGroup build_product(const DiscretizedGroup& a, const DiscretizedGroup& b) {
  if (!a.closed() || !b.closed()) {
    throw UnsupportedOperation("build_product: both factors must be closed groups");
  }
  const std::size_t ra = a.resolution(), rb = b.resolution();
  check_order(ra * rb);
  const std::size_t r = ra * rb;
  DiscretizedGroup g;
  g.r_ = r;
  g.identity_ = a.identity() * rb + b.identity();
  g.closed_ = true;
  g.kind_ = GroupKind::product;
  g.label_ = a.label() + "x" + b.label();
  if (a.descriptor() && b.descriptor()) {
    GroupDescriptor d;
    d.kind = GroupKind::product;
    d.factors = {*a.descriptor(), *b.descriptor()};
    g.descriptor_ = std::move(d);
  }
  g.compose_.resize(r * r);
  g.inverse_.resize(r);
  const auto ca = a.compose_table(), cb = b.compose_table();
  const auto ia = a.inverse_table(), ib = b.inverse_table();
  for (std::size_t x = 0; x < r; ++x) {
    const std::size_t xa = x / rb, xb = x % rb;
    g.inverse_[x] = static_cast<std::uint32_t>(ia[xa] * rb + ib[xb]);
    for (std::size_t y = 0; y < r; ++y) {
      const std::size_t ya = y / rb, yb = y % rb;
      g.compose_[x * r + y] = static_cast<std::uint32_t>(ca[xa * ra + ya] * rb + cb[xb * rb + yb]);
    }
  }
  g.derive_closed_differences();
  return g;
}

// ---------------------------------------------------------------------------

std::string AxiomViolation::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case AxiomKind::closure:
      os << "closure: compose(" << a << "," << b << ") or inverse(" << a << ") outside the group";
      break;
    case AxiomKind::identity:
      os << "identity: e o g != g or g o e != g for g=" << a;
      break;
    case AxiomKind::inverse:
      os << "inverse: inverse(" << a << ") o " << a << " != e";
      break;
    case AxiomKind::associativity:
      os << "associativity: (" << a << " o " << b << ") o " << c << " != " << a << " o (" << b
         << " o " << c << ")";
      break;
    case AxiomKind::difference_table:
      os << "difference table: entry (" << a << "," << b << ") != compose(inverse(" << a << "),"
         << b << ")";
      break;
  }
  return os.str();
}

ValidationReport validate_group_axioms(const DiscretizedGroup& g) {
  if (!g.closed()) {
    throw UnsupportedOperation("validate_group_axioms: " + g.label() + " is not a closed group");
  }
  ValidationReport report;
  auto record = [&report](AxiomKind kind, Element a, Element b = 0, Element c = 0) {
    ++report.total;
    if (report.violations.size() < ValidationReport::kMaxListed) {
      report.violations.push_back({kind, a, b, c});
    }
  };

  const std::size_t r = g.resolution();
  const auto comp = g.compose_table();
  const auto inv = g.inverse_table();
  const Element e = g.identity();

  bool closed = true;
  for (Element a = 0; a < r; ++a) {
    if (inv[a] >= r) {
      record(AxiomKind::closure, a, a);
      closed = false;
    }
    for (Element b = 0; b < r; ++b) {
      if (comp[a * r + b] >= r) {
        record(AxiomKind::closure, a, b);
        closed = false;
      }
    }
  }
  // The remaining checks index through table entries; skip them when those
  // entries are out of range.
  if (!closed) return report;

  for (Element a = 0; a < r; ++a) {
    if (comp[e * r + a] != a || comp[a * r + e] != a) record(AxiomKind::identity, a);
    if (comp[inv[a] * r + a] != e || comp[a * r + inv[a]] != e) record(AxiomKind::inverse, a);
  }
  for (Element a = 0; a < r; ++a) {
    for (Element b = 0; b < r; ++b) {
      const std::size_t ab = comp[a * r + b];
      for (Element c = 0; c < r; ++c) {
        if (comp[ab * r + c] != comp[a * r + comp[b * r + c]]) {
          record(AxiomKind::associativity, a, b, c);
        }
      }
    }
  }
  for (Element a = 0; a < r; ++a) {
    for (Element b = 0; b < r; ++b) {
      if (g.difference(a, b) != comp[inv[a] * r + b]) record(AxiomKind::difference_table, a, b);
    }
  }
  return report;
}

Permutation left_action_permutation(const DiscretizedGroup& g, Element a) {
  if (!g.closed()) {
    throw UnsupportedOperation("left_action_permutation: " + g.label() + " is not a closed group");
  }
  if (a >= g.resolution()) throw InvalidArgument("left_action_permutation: element out of range");
  const Element a_inv = g.inverse(a);
  Permutation pi(g.resolution());
  for (Element j = 0; j < pi.size(); ++j) pi[j] = g.compose(a_inv, j);
  return pi;
}

}  // namespace gcnnvc
