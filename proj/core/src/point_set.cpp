#include "evasive/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "evasive/error.hpp"

namespace evasive {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class Int>
Int parse_int(std::string_view token, std::size_t line_no, std::string_view what) {
  Int v{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError(line_no, "invalid " + std::string(what) + " '" + std::string(token) + "'");
  }
  return v;
}

}  // namespace

Domain Domain::prime_field(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("modulus " + std::to_string(p) + " is not prime");
  return {Kind::prime_field, p};
}

std::string Domain::tag() const {
  return is_field() ? "fp:" + std::to_string(modulus) : std::string("z");
}

PointSet PointSet::from_points(Domain domain, std::size_t dim, std::vector<IntVector> points) {
  for (const auto& x : points) {
    if (x.size() != dim) {
      throw DomainError("point of length " + std::to_string(x.size()) + " in dimension " +
                        std::to_string(dim));
    }
    if (domain.is_field()) {
      for (auto c : x) {
        if (c < 0 || static_cast<std::uint64_t>(c) >= domain.modulus) {
          throw DomainError("coordinate " + std::to_string(c) + " outside [0, " +
                            std::to_string(domain.modulus) + ")");
        }
      }
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  PointSet s(domain, dim);
  s.points_ = std::move(points);
  return s;
}

PointSet PointSet::from_field_points(const PrimeField& field, std::size_t dim,
                                     const std::vector<FieldVector>& points) {
  std::vector<IntVector> pts;
  pts.reserve(points.size());
  for (const auto& x : points) pts.emplace_back(x.begin(), x.end());
  return from_points(Domain::prime_field(field.modulus()), dim, std::move(pts));
}

PrimeField PointSet::field() const {
  if (!domain_.is_field()) throw DomainError("point set is over the integers, not a prime field");
  return PrimeField(domain_.modulus);
}

std::vector<FieldVector> PointSet::field_points() const {
  (void)field();
  std::vector<FieldVector> out;
  out.reserve(points_.size());
  for (const auto& x : points_) out.emplace_back(x.begin(), x.end());
  return out;
}

void write_point_set(std::ostream& out, const PointSet& s) {
  out << "pointset domain=" << s.domain().tag() << " d=" << s.dim() << " count=" << s.size()
      << '\n';
  for (const auto& x : s.points()) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (j) out << ' ';
      out << x[j];
    }
    out << '\n';
  }
}

std::string format_point_set(const PointSet& s) {
  std::ostringstream os;
  write_point_set(os, s);
  return os.str();
}

void write_point_set(const std::filesystem::path& path, const PointSet& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  write_point_set(out, s);
}

std::vector<std::pair<std::string, std::string>> parse_header_fields(std::string_view line,
                                                                     std::string_view magic,
                                                                     std::size_t line_no) {
  std::istringstream is{std::string(line)};
  std::string word;
  if (!(is >> word) || word != magic) {
    throw ParseError(line_no, "expected header starting with '" + std::string(magic) + "'");
  }
  std::vector<std::pair<std::string, std::string>> fields;
  while (is >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError(line_no, "malformed header field '" + word + "'");
    }
    fields.emplace_back(word.substr(0, eq), word.substr(eq + 1));
  }
  return fields;
}

PointSet parse_point_set(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  Domain domain;
  std::size_t dim = 0;
  std::size_t declared = 0;
  std::vector<IntVector> points;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      bool saw_domain = false, saw_d = false, saw_count = false;
      for (const auto& [key, value] : parse_header_fields(line, "pointset", line_no)) {
        if (key == "domain") {
          if (value == "z") {
            domain = Domain::integers();
          } else if (value.rfind("fp:", 0) == 0) {
            const auto p = parse_int<std::uint64_t>(std::string_view(value).substr(3), line_no,
                                                    "modulus");
            if (!is_prime(p)) throw ParseError(line_no, "modulus " + std::to_string(p) + " is not prime");
            domain = Domain::prime_field(p);
          } else {
            throw ParseError(line_no, "unknown domain '" + value + "'");
          }
          saw_domain = true;
        } else if (key == "d") {
          dim = parse_int<std::size_t>(value, line_no, "dimension");
          saw_d = true;
        } else if (key == "count") {
          declared = parse_int<std::size_t>(value, line_no, "count");
          saw_count = true;
        } else {
          throw ParseError(line_no, "unknown header field '" + key + "'");
        }
      }
      if (!saw_domain || !saw_d || !saw_count) {
        throw ParseError(line_no, "header needs domain=, d= and count=");
      }
      have_header = true;
      continue;
    }

    IntVector x;
    std::size_t pos = 0;
    while (pos < line.size()) {
      const auto start = line.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      auto end = line.find_first_of(" \t", start);
      if (end == std::string_view::npos) end = line.size();
      x.push_back(parse_int<std::int64_t>(line.substr(start, end - start), line_no, "coordinate"));
      pos = end;
    }
    if (x.size() != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " coordinates, found " +
                                    std::to_string(x.size()));
    }
    if (domain.is_field()) {
      for (auto c : x) {
        if (c < 0 || static_cast<std::uint64_t>(c) >= domain.modulus) {
          throw ParseError(line_no, "coordinate " + std::to_string(c) + " is not a residue mod " +
                                        std::to_string(domain.modulus));
        }
      }
    }
    points.push_back(std::move(x));
  }

  // A file with no content at all is the empty set.
  if (!have_header) return PointSet(Domain::integers(), 0);
  if (points.size() != declared) {
    throw ParseError(line_no, "header declares " + std::to_string(declared) + " points, found " +
                                  std::to_string(points.size()));
  }
  const std::size_t before = points.size();
  PointSet s = PointSet::from_points(domain, dim, std::move(points));
  if (s.size() != before) throw ParseError(line_no, "duplicate points");
  return s;
}

PointSet parse_point_set(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_point_set(is);
}

PointSet read_point_set(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse_point_set(in);
}

}  // namespace evasive
