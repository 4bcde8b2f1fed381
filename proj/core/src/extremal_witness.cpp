#include "evasive/extremal_witness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "evasive/error.hpp"
#include "evasive/integer_linalg.hpp"

namespace evasive {

namespace {

std::size_t parse_size(std::string_view token, std::size_t line_no, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, "invalid " + std::string(what) + " '" + std::string(token) + "'");
  }
  return v;
}

BigInt big_pow(const BigInt& base, std::uint64_t exp) {
  if (exp > 1u << 16) throw DomainError("box threshold exponent too large");
  return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

std::uint64_t product(const std::vector<std::size_t>& v, std::size_t from, std::size_t to) {
  std::uint64_t m = 1;
  for (std::size_t i = from; i < to; ++i) {
    if (v[i] != 0 && m > std::numeric_limits<std::uint64_t>::max() / v[i]) {
      throw DomainError("box size product overflows");
    }
    m *= v[i];
  }
  return m;
}

class BoxSearch {
 public:
  BoxSearch(const std::vector<std::size_t>& part_sizes, const std::vector<std::size_t>& sizes,
            const BoxOptions& options)
      : part_sizes_(part_sizes), sizes_(sizes), options_(options), parts_(sizes.size()) {}

  bool run(std::size_t level, const std::vector<Edge>& edges) {
    const std::size_t s = sizes_[level];
    if (level + 1 == sizes_.size()) {
      std::vector<std::size_t> vertices;
      for (const auto& e : edges) {
        if (vertices.empty() || vertices.back() != e[0]) vertices.push_back(e[0]);
      }
      if (vertices.size() < s) return false;
      parts_[level].assign(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(s));
      return true;
    }

    // Tails of the edges through each vertex of this part; edges are sorted,
    // so each tail list is sorted too.
    const std::uint64_t need = product(sizes_, level + 1, sizes_.size());
    std::map<std::size_t, std::vector<Edge>> tails;
    for (const auto& e : edges) tails[e[0]].emplace_back(e.begin() + 1, e.end());
    std::vector<std::pair<std::size_t, const std::vector<Edge>*>> candidates;
    for (const auto& [v, list] : tails) {
      if (list.size() >= need) candidates.emplace_back(v, &list);
    }

    const std::vector<std::size_t> sub_parts(part_sizes_.begin() + static_cast<std::ptrdiff_t>(level + 1),
                                             part_sizes_.end());
    const std::vector<std::size_t> sub_sizes(sizes_.begin() + static_cast<std::ptrdiff_t>(level + 1),
                                             sizes_.end());
    auto meets = [&](const std::vector<Edge>& n) {
      return box_hypothesis_holds(sub_parts, n.size(), sub_sizes);
    };

    const int passes = options_.threshold_pruning ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      std::vector<std::size_t> chosen;
      const std::function<bool(std::size_t, const std::vector<Edge>*)> grow =
          [&](std::size_t start, const std::vector<Edge>* common) -> bool {
        if (chosen.size() == s) {
          if (++nodes_ > options_.max_nodes) {
            throw BudgetExceeded("box search", nodes_, options_.max_nodes);
          }
          if (options_.threshold_pruning && meets(*common) != (pass == 0)) return false;
          if (!run(level + 1, *common)) return false;
          parts_[level] = chosen;
          return true;
        }
        for (std::size_t j = start; j + (s - chosen.size()) <= candidates.size(); ++j) {
          std::vector<Edge> next;
          const std::vector<Edge>* inter = candidates[j].second;
          if (common) {
            std::set_intersection(common->begin(), common->end(), inter->begin(), inter->end(),
                                  std::back_inserter(next));
            if (next.size() < need) continue;
            inter = &next;
          }
          chosen.push_back(candidates[j].first);
          const bool found = grow(j + 1, inter);
          chosen.pop_back();
          if (found) return true;
        }
        return false;
      };
      if (grow(0, nullptr)) return true;
    }
    return false;
  }

  BoxWitness witness() const { return {parts_}; }

 private:
  const std::vector<std::size_t>& part_sizes_;
  const std::vector<std::size_t>& sizes_;
  const BoxOptions& options_;
  std::vector<std::vector<std::size_t>> parts_;
  std::uint64_t nodes_ = 0;
};

std::uint64_t checked_size_pow(std::uint64_t p, std::size_t e) {
  const BigInt v = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e));
  if (v > BigInt(std::numeric_limits<std::int64_t>::max())) {
    throw DomainError("block F_" + std::to_string(p) + "^" + std::to_string(e) + " too large to index");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

RPartiteHypergraph::RPartiteHypergraph(std::vector<std::size_t> part_sizes)
    : part_sizes_(std::move(part_sizes)) {
  if (part_sizes_.empty()) throw DomainError("hypergraph needs at least one part");
}

void RPartiteHypergraph::add_edge(Edge e) {
  if (e.size() != r()) {
    throw DomainError("edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(r()));
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= part_sizes_[i]) {
      throw DomainError("vertex " + std::to_string(e[i]) + " outside part " + std::to_string(i + 1) +
                        " of size " + std::to_string(part_sizes_[i]));
    }
  }
  edges_.insert(std::move(e));
}

std::string format_hypergraph(const RPartiteHypergraph& h) {
  std::ostringstream os;
  os << "hypergraph r=" << h.r() << " sizes=";
  for (std::size_t i = 0; i < h.r(); ++i) os << (i ? "," : "") << h.part_sizes()[i];
  os << '\n';
  for (const auto& e : h.edges()) {
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << '\n';
  }
  return os.str();
}

RPartiteHypergraph parse_hypergraph(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<RPartiteHypergraph> h;
  while (std::getline(is, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto b = raw.find_first_not_of(" \t");
    if (b == std::string::npos || raw[b] == '#') continue;
    if (!h) {
      std::size_t r = 0;
      std::vector<std::size_t> sizes;
      bool saw_r = false, saw_sizes = false;
      for (const auto& [key, value] : parse_header_fields(raw, "hypergraph", line_no)) {
        if (key == "r") {
          r = parse_size(value, line_no, "r");
          saw_r = true;
        } else if (key == "sizes") {
          std::string_view rest = value;
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            sizes.push_back(parse_size(rest.substr(0, comma), line_no, "part size"));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
          }
          saw_sizes = true;
        } else {
          throw ParseError(line_no, "unknown header field '" + key + "'");
        }
      }
      if (!saw_r || !saw_sizes) throw ParseError(line_no, "header needs r= and sizes=");
      if (r == 0 || sizes.size() != r) throw ParseError(line_no, "sizes= must list r part sizes");
      h.emplace(std::move(sizes));
      continue;
    }
    std::istringstream fields(raw);
    std::string tok;
    Edge e;
    while (fields >> tok) e.push_back(parse_size(tok, line_no, "vertex"));
    try {
      h->add_edge(std::move(e));
    } catch (const DomainError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  if (!h) throw ParseError(line_no + 1, "missing hypergraph header");
  return std::move(*h);
}

bool box_hypothesis_holds(const std::vector<std::size_t>& part_sizes, std::uint64_t edge_count,
                          const std::vector<std::size_t>& sizes) {
  const std::size_t r = part_sizes.size();
  if (r == 0 || sizes.size() != r) throw DomainError("need one box size per part");
  if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s < 2; })) return false;
  const BigInt last = part_sizes[r - 1];
  for (std::size_t i = 0; i + 1 < r; ++i) {
    const std::uint64_t pi = product(sizes, i, r - 1);
    if (big_pow(BigInt(part_sizes[i]), pi) < big_pow(BigInt(sizes[i]), 2 * pi) * last) return false;
  }
  const std::uint64_t m = product(sizes, 0, r - 1);
  BigInt a = 1;
  for (std::size_t i = 0; i + 1 < r; ++i) a *= part_sizes[i];
  const BigInt rhs = big_pow(2 * a, m) * sizes[r - 1] * big_pow(last, m - 1);
  return big_pow(BigInt(edge_count), m) >= rhs;
}

bool box_hypothesis_holds(const RPartiteHypergraph& h, const std::vector<std::size_t>& sizes) {
  return box_hypothesis_holds(h.part_sizes(), h.edge_count(), sizes);
}

std::optional<BoxWitness> find_box(const RPartiteHypergraph& h, const std::vector<std::size_t>& sizes,
                                   const BoxOptions& options) {
  if (sizes.size() != h.r()) throw DomainError("need one box size per part");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] == 0) throw DomainError("box sides must be positive");
    if (sizes[i] > h.part_sizes()[i]) return std::nullopt;
  }
  const std::vector<Edge> edges(h.edges().begin(), h.edges().end());
  BoxSearch search(h.part_sizes(), sizes, options);
  if (!search.run(0, edges)) return std::nullopt;
  return search.witness();
}

bool verify_box(const RPartiteHypergraph& h, const BoxWitness& box, const std::vector<std::size_t>& sizes) {
  if (box.parts.size() != h.r() || sizes.size() != h.r()) return false;
  for (std::size_t i = 0; i < h.r(); ++i) {
    const auto& part = box.parts[i];
    if (part.size() != sizes[i] || !std::is_sorted(part.begin(), part.end()) ||
        std::adjacent_find(part.begin(), part.end()) != part.end()) {
      return false;
    }
  }
  Edge e(h.r());
  std::vector<std::size_t> idx(h.r(), 0);
  while (true) {
    for (std::size_t i = 0; i < h.r(); ++i) e[i] = box.parts[i][idx[i]];
    if (!h.has_edge(e)) return false;
    std::size_t i = h.r();
    while (i > 0) {
      --i;
      if (++idx[i] < box.parts[i].size()) break;
      idx[i] = 0;
      if (i == 0) return true;
    }
  }
}

LowerBoundParams lowerbound_params(std::size_t d, std::size_t k, double eps) {
  if (!(eps > 0.0) || eps > 0.25) throw DomainError("epsilon must lie in (0, 1/4]");
  // Largest m with eps * 2^m <= 1; scaling by powers of two is exact.
  std::size_t m = 0;
  while (std::ldexp(eps, static_cast<int>(m + 1)) <= 1.0) ++m;
  LowerBoundParams lp;
  lp.r = m - 1;
  if (lp.r > k) {
    throw DomainError("r = " + std::to_string(lp.r) + " exceeds k = " + std::to_string(k));
  }
  if (lp.r > 60) throw DomainError("epsilon too small");
  const std::uint64_t denom = 3ull << lp.r;
  for (std::size_t i = 1; i < lp.r; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(d) << (i + 1);
    lp.t.push_back(static_cast<std::size_t>((num + denom - 1) / denom));
    lp.T += lp.t.back();
  }
  if (lp.T >= d) {
    throw DomainError("dimension " + std::to_string(d) + " too small: blocks use " + std::to_string(lp.T) +
                      " coordinates");
  }
  lp.s.assign(lp.r - 1, 2);
  lp.s.push_back(k - lp.r + 2);
  return lp;
}

LowerBoundWitness lowerbound_witness(const PointSet& s, std::size_t k, double eps, const BoxOptions& options) {
  const PrimeField field = s.field();
  const std::size_t d = s.dim();
  const std::uint64_t p = field.modulus();
  LowerBoundParams lp = lowerbound_params(d, k, eps);

  std::vector<std::size_t> widths = lp.t;
  widths.push_back(d - lp.T);
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> part_sizes;
  std::size_t off = 0;
  for (auto w : widths) {
    offsets.push_back(off);
    off += w;
    part_sizes.push_back(checked_size_pow(p, w));
  }

  RPartiteHypergraph h(part_sizes);
  for (const auto& x : s.points()) {
    Edge e(lp.r, 0);
    for (std::size_t b = 0; b < lp.r; ++b) {
      for (std::size_t j = 0; j < widths[b]; ++j) {
        e[b] = e[b] * p + static_cast<std::size_t>(x[offsets[b] + j]);
      }
    }
    h.add_edge(std::move(e));
  }

  const bool hyp = box_hypothesis_holds(h, lp.s);
  auto box = find_box(h, lp.s, options);
  if (!box) {
    std::ostringstream msg;
    msg << "no box of sizes (";
    for (std::size_t i = 0; i < lp.s.size(); ++i) msg << (i ? "," : "") << lp.s[i];
    msg << ") in hypergraph with parts (";
    for (std::size_t i = 0; i < part_sizes.size(); ++i) msg << (i ? "," : "") << part_sizes[i];
    msg << ") and " << h.edge_count() << " edges; lemma hypothesis " << (hyp ? "holds" : "fails");
    throw Error(msg.str());
  }

  // Block b of vertex v, placed in F_p^d with zeros elsewhere.
  auto embed = [&](std::size_t b, std::size_t v) {
    FieldVector y(d, 0);
    for (std::size_t j = widths[b]; j > 0; --j) {
      y[offsets[b] + j - 1] = v % p;
      v /= p;
    }
    return y;
  };
  auto minus = [&](const FieldVector& a, const FieldVector& c) {
    FieldVector y(d);
    for (std::size_t i = 0; i < d; ++i) y[i] = field.sub(a[i], c[i]);
    return y;
  };

  const auto& parts = box->parts;
  FieldVector through = embed(lp.r - 1, parts[lp.r - 1][0]);
  std::vector<FieldVector> gens;
  for (std::size_t b = 0; b + 1 < lp.r; ++b) {
    const FieldVector u = embed(b, parts[b][0]);
    for (std::size_t i = 0; i < d; ++i) through[i] = field.add(through[i], u[i]);
    gens.push_back(minus(embed(b, parts[b][1]), u));
  }
  const FieldVector w0 = embed(lp.r - 1, parts[lp.r - 1][0]);
  for (std::size_t j = 1; j < parts[lp.r - 1].size(); ++j) gens.push_back(minus(embed(lp.r - 1, parts[lp.r - 1][j]), w0));

  LowerBoundWitness out{lp, part_sizes, h.edge_count(), hyp, *box, {},
                        AffineFlat(LinearSubspace::span(field, d, gens), through), 0};

  // Expand the box back into points of S.
  std::vector<std::size_t> idx(lp.r, 0);
  std::vector<FieldVector> members;
  while (true) {
    IntVector x(d, 0);
    for (std::size_t b = 0; b < lp.r; ++b) {
      const FieldVector y = embed(b, parts[b][idx[b]]);
      for (std::size_t i = 0; i < d; ++i) x[i] += static_cast<std::int64_t>(y[i]);
    }
    const auto it = std::lower_bound(s.points().begin(), s.points().end(), x);
    if (it == s.points().end() || *it != x) throw Error("box tuple is not a point of S");
    out.subset.push_back(static_cast<std::size_t>(it - s.points().begin()));
    members.emplace_back(x.begin(), x.end());
    if (!contains(out.flat, members.back())) throw Error("box point escapes the witness flat");
    std::size_t b = lp.r;
    bool done = true;
    while (b > 0) {
      --b;
      if (++idx[b] < parts[b].size()) {
        done = false;
        break;
      }
      idx[b] = 0;
    }
    if (done) break;
  }
  std::sort(out.subset.begin(), out.subset.end());
  out.affine_dim = affine_dim(field, members);
  return out;
}

std::vector<std::size_t> hamming_partition(std::size_t k, std::size_t c) {
  const std::size_t parts = c + 1;
  std::vector<std::size_t> out(parts, k / parts);
  for (std::size_t i = 0; i < k % parts; ++i) ++out[i];
  return out;
}

std::optional<HammingWitness> hamming_witness(const PointSet& s, std::size_t k, std::size_t c,
                                              std::uint64_t max_nodes) {
  if (2 * (c + 1) > k) throw DomainError("need C <= k/2 - 1");
  const PrimeField field = s.field();
  const auto pts = s.field_points();
  HammingWitness w;
  w.part_dims = hamming_partition(k, c);
  std::vector<bool> used(pts.size(), false);

  for (std::size_t ki : w.part_dims) {
    std::vector<std::size_t> chosen;
    const std::function<bool(std::size_t, const FieldSpan&)> grow = [&](std::size_t start,
                                                                        const FieldSpan& span) -> bool {
      if (chosen.size() == ki + 1) return true;
      for (std::size_t j = start; j < pts.size(); ++j) {
        if (used[j]) continue;
        const bool inside = span.contains(pts[j]);
        if (!inside && span.rank() == ki) continue;
        if (++w.nodes > max_nodes) throw BudgetExceeded("hamming witness search", w.nodes, max_nodes);
        FieldSpan next = span;
        if (!inside) next.insert(pts[j]);
        chosen.push_back(j);
        if (grow(j + 1, next)) return true;
        chosen.pop_back();
      }
      return false;
    };
    if (!grow(0, FieldSpan(field, s.dim()))) return std::nullopt;
    for (auto j : chosen) used[j] = true;
    w.parts.push_back(std::move(chosen));
  }

  std::vector<FieldVector> all;
  for (const auto& part : w.parts) {
    for (auto j : part) all.push_back(pts[j]);
  }
  w.union_dim = linear_dim(field, all);
  return w;
}

CodeSummary parity_check_code(const PointSet& s, std::uint64_t max_codewords) {
  const PrimeField field = s.field();
  const auto pts = s.field_points();
  CodeSummary out;
  out.modulus = field.modulus();
  out.length = pts.size();
  FieldMatrix m(field, s.dim(), pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < s.dim(); ++i) m(i, j) = pts[j][i];
  }
  const auto basis = kernel_basis(m);
  out.dimension = basis.size();
  out.rank = out.length - out.dimension;
  if (out.dimension == 0) return out;

  const BigInt total = boost::multiprecision::pow(BigInt(field.modulus()), static_cast<unsigned>(out.dimension));
  if (total > max_codewords) {
    const std::uint64_t shown = total > BigInt(std::numeric_limits<std::uint64_t>::max())
                                    ? std::numeric_limits<std::uint64_t>::max()
                                    : static_cast<std::uint64_t>(total);
    throw BudgetExceeded("codeword enumeration", shown, max_codewords);
  }

  // Odometer over coefficient vectors. Every digit step adds its basis
  // vector once; a wrap adds it p times in total, which is zero.
  std::vector<Residue> digits(out.dimension, 0);
  FieldVector word(out.length, 0);
  while (true) {
    std::size_t i = out.dimension;
    bool wrapped_all = true;
    while (i > 0) {
      --i;
      for (std::size_t j = 0; j < out.length; ++j) word[j] = field.add(word[j], basis[i][j]);
      if (++digits[i] < field.modulus()) {
        wrapped_all = false;
        break;
      }
      digits[i] = 0;
    }
    if (wrapped_all) break;
    const auto weight = static_cast<std::size_t>(
        std::count_if(word.begin(), word.end(), [](Residue x) { return x != 0; }));
    if (!out.min_distance || weight < *out.min_distance) {
      out.min_distance = weight;
      out.min_weight_codeword = word;
    }
  }
  return out;
}

bool hamming_bound_check(std::uint64_t set_size, std::uint64_t p, std::size_t d, std::size_t k) {
  if (k == 0) throw DomainError("Hamming bound needs k >= 1");
  const std::size_t r = (k + 1) / 2;
  BigInt lhs = boost::multiprecision::pow(BigInt(set_size), static_cast<unsigned>(r));
  BigInt rhs = boost::multiprecision::pow(BigInt(2 * k), static_cast<unsigned>(r));
  if (d >= r) {
    rhs *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d - r));
  } else {
    lhs *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(r - d));
  }
  return lhs <= rhs;
}

}  // namespace evasive
