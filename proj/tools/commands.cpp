#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evasive/error.hpp"
#include "evasive/evasive_core.hpp"
#include "evasive/extremal_witness.hpp"
#include "evasive/incidence.hpp"
#include "evasive/lattice_lift.hpp"
#include "evasive/random_algebraic.hpp"

namespace evasive::cli {

namespace {

std::string big(const BigInt& v) { return v.str(); }

Json budget_json(const Budget& b) {
  return {{"max_flats", b.max_flats}, {"max_subsets", b.max_subsets}, {"max_trials", b.max_trials}};
}

Json header(std::string_view command, Json parameters, std::optional<std::uint64_t> seed, const Budget& b) {
  Json r;
  r["format_version"] = kFormatVersion;
  r["command"] = command;
  r["parameters"] = std::move(parameters);
  r["seed"] = seed ? Json(*seed) : Json(nullptr);
  r["budgets"] = budget_json(b);
  return r;
}

void finish(CommandResult& out, Json outputs) {
  out.report["outputs"] = std::move(outputs);
  out.report["passed"] = out.passed;
}

Json flat_json(const AffineFlat& f) {
  Json basis = Json::array();
  for (std::size_t i = 0; i < f.dim(); ++i) basis.push_back(f.direction().basis().row_vector(i));
  return {{"dim", f.dim()}, {"base", f.base()}, {"basis", basis}};
}

Json certificate_json(const PointSet& s, const EvasivenessCertificate& c, bool verified) {
  Json pts = Json::array();
  for (auto i : c.subset) pts.push_back(s[i]);
  Json j{{"k", c.k},
         {"flavor", to_string(c.flavor)},
         {"oracle", to_string(c.oracle)},
         {"c_max", c.c_max},
         {"subset", c.subset},
         {"points", pts}};
  j["flat"] = c.flat ? flat_json(*c.flat) : Json(nullptr);
  j["work"] = c.work;
  j["verified"] = verified;
  return j;
}

Json box_json(const BoxWitness& b) { return b.parts; }

std::vector<std::size_t> parse_sizes(const std::vector<std::size_t>& sizes, std::size_t r) {
  if (sizes.size() != r) {
    throw DomainError("--sizes needs " + std::to_string(r) + " values, got " + std::to_string(sizes.size()));
  }
  return sizes;
}

}  // namespace

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("EVASIVE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      b.max_flats = b.max_subsets = b.max_trials = v;
    }
  }
  return b;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CommandResult cmd_construct(const ConstructArgs& a, const Budget& budget) {
  CommandResult out;
  out.report = header("construct", {{"p", a.p}, {"d", a.d}, {"k", a.k}, {"seeds", a.seeds}}, a.seed, budget);
  std::uint64_t used = a.seed;
  Construction c;
  if (a.seeds <= 1) {
    c = construct_evasive(a.p, a.d, a.k, a.seed, budget);
  } else {
    std::tie(used, c) = construct_best_of_seeds(a.p, a.d, a.k, a.seed, a.seeds, budget);
  }
  Json o;
  o["seed_used"] = used;
  o["degree"] = c.degree;
  o["flat_dim"] = c.flat_dim;
  o["size"] = c.set.size();
  o["small_image"] = c.small_image;
  out.passed = !c.set.empty();
  if (c.certificate) {
    const bool ok = verify_certificate(c.set, *c.certificate);
    out.passed = out.passed && ok;
    o["certificate"] = certificate_json(c.set, *c.certificate, ok);
  } else {
    o["certificate"] = nullptr;
    o["certificate_skipped"] = *c.certificate_skipped;
  }
  out.files[".points"] = format_point_set(c.set);
  out.files[".poly"] = format_polynomial_map(c.map);
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_verify(const VerifyArgs& a, const Budget& budget) {
  CommandResult out;
  Json params{{"input", a.input}, {"k", a.k}, {"flavor", a.flavor}, {"oracle", a.oracle}};
  params["c"] = a.c ? Json(*a.c) : Json(nullptr);
  out.report = header("verify", std::move(params), std::nullopt, budget);
  const Flavor flavor = parse_flavor(a.flavor);
  if (a.oracle != "enum" && a.oracle != "subset" && a.oracle != "both") {
    throw DomainError("unknown oracle '" + a.oracle + "'");
  }
  const PointSet s = read_point_set(a.input);

  std::vector<EvasivenessCertificate> certs;
  if (a.oracle != "subset") certs.push_back(max_intersection_enum(s, a.k, flavor, budget.max_flats));
  if (a.oracle != "enum") certs.push_back(max_intersection_subsets(s, a.k, flavor, budget.max_subsets));

  Json o;
  o["domain"] = s.domain().tag();
  o["d"] = s.dim();
  o["size"] = s.size();
  Json list = Json::array();
  for (const auto& c : certs) {
    const bool ok = verify_certificate(s, c);
    out.passed = out.passed && ok;
    list.push_back(certificate_json(s, c, ok));
  }
  const bool agree = std::all_of(certs.begin(), certs.end(),
                                 [&](const EvasivenessCertificate& c) { return c.c_max == certs.front().c_max; });
  out.passed = out.passed && agree;
  o["c_max"] = certs.front().c_max;
  o["oracles_agree"] = agree;
  if (a.c) {
    const bool evasive = certs.front().c_max <= *a.c;
    o["evasive"] = evasive;
    out.passed = out.passed && evasive;
  }
  o["certificates"] = std::move(list);
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_lift(const LiftArgs& a, const Budget& budget) {
  CommandResult out;
  out.report = header("lift", {{"mode", a.mode}, {"n", a.n}, {"d", a.d}, {"k", a.k}}, a.seed, budget);
  LiftReport r;
  if (a.mode == "affine") {
    r = lift_affine(a.n, a.d, a.k, a.seed, budget);
  } else if (a.mode == "linear") {
    r = lift_linear(a.n, a.d, a.k, a.seed, budget);
  } else {
    throw DomainError("unknown lift mode '" + a.mode + "'");
  }
  const auto n = static_cast<std::int64_t>(a.n);
  const bool in_box = std::all_of(r.lifted.points().begin(), r.lifted.points().end(), [&](const IntVector& x) {
    return std::all_of(x.begin(), x.end(), [&](std::int64_t v) { return v >= 1 && v <= n; });
  });
  Json o;
  o["p"] = r.p;
  o["source_size"] = r.source_size;
  o["lifted_size"] = r.lifted.size();
  o["in_box"] = in_box;
  out.passed = in_box;
  if (a.mode == "affine") out.passed = out.passed && r.lifted.size() == r.source_size;
  if (r.field_certificate) {
    const bool ok = verify_certificate(r.source, *r.field_certificate);
    out.passed = out.passed && ok;
    o["field_certificate"] = certificate_json(r.source, *r.field_certificate, ok);
  } else {
    o["field_certificate"] = nullptr;
  }
  if (r.integer_certificate) {
    const bool ok = verify_certificate(r.lifted, *r.integer_certificate);
    out.passed = out.passed && ok;
    o["integer_certificate"] = certificate_json(r.lifted, *r.integer_certificate, ok);
  } else {
    o["integer_certificate"] = nullptr;
  }
  if (r.certificate_skipped) o["certificate_skipped"] = *r.certificate_skipped;
  if (a.mode == "linear") {
    o["sign_pattern"] = r.sign_pattern;
    o["bucket_bound"] = r.bucket_bound;
    o["grid_bound"] = r.grid_bound;
  }
  out.files[".points"] = format_point_set(r.lifted);
  out.files[".source.points"] = format_point_set(r.source);
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_cover(const CoverArgs& a, const Budget& budget) {
  CommandResult out;
  Json params{{"n", a.n}, {"d", a.d}, {"k", a.k}};
  params["prime"] = a.prime ? Json(*a.prime) : Json(nullptr);
  out.report = header("cover", std::move(params), std::nullopt, budget);
  const ProjectiveWitness w = a.prime ? covering_witness_with_prime(*a.prime, a.d, a.n, budget.max_flats)
                                      : covering_witness(a.n, a.d, budget.max_flats);
  const CoveringBound b = covering_bound_certificate(w, a.k, budget.max_flats);

  const BigInt expected = (boost::multiprecision::pow(BigInt(w.p), static_cast<unsigned>(w.d)) - 1) / (w.p - 1);
  std::int64_t sup = 0;
  for (const auto& y : w.representatives) {
    for (auto v : y) sup = std::max(sup, v < 0 ? -v : v);
  }
  Json o;
  o["p"] = w.p;
  o["classes"] = w.representatives.size();
  o["expected_classes"] = big(expected);
  o["max_abs_coordinate"] = sup;
  o["subspaces"] = b.subspaces;
  o["per_subspace_max"] = b.per_subspace_max;
  o["per_subspace_limit"] = b.per_subspace_limit;
  o["lower_bound"] = b.lower_bound;
  out.passed = BigInt(w.representatives.size()) == expected && b.per_subspace_max <= b.per_subspace_limit &&
               static_cast<std::uint64_t>(sup) <= a.n;
  out.files[".points"] =
      format_point_set(PointSet::from_points(Domain::integers(), w.d, w.representatives));
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_incidence(const IncidenceArgs& a, const Budget& budget) {
  CommandResult out;
  out.report = header("incidence", {{"d", a.d}, {"n", a.n}, {"m", a.m}, {"check_free", a.check_free}}, a.seed,
                      budget);
  const IncidenceConfig cfg = build_config(a.d, a.n, a.m, a.seed, budget);
  const ExponentReport er = incidence_exponent_report(cfg);
  const std::uint64_t expected = cfg.points.size() * cfg.normals.size();

  Json o;
  o["k"] = cfg.k;
  o["n0"] = cfg.n0;
  o["m0"] = cfg.m0;
  o["point_prime"] = cfg.point_lift.p;
  o["normal_prime"] = cfg.normal_lift.p;
  o["points"] = cfg.points.size();
  o["normals"] = cfg.normals.size();
  o["hyperplanes"] = cfg.hyperplanes.size();
  o["incidences"] = er.incidences;
  o["expected_incidences"] = expected;
  o["hyperplane_budget"] = er.hyperplane_budget;
  o["c1"] = cfg.c1 ? Json(*cfg.c1) : Json(nullptr);
  o["c2"] = cfg.c2 ? Json(*cfg.c2) : Json(nullptr);
  out.passed = er.incidences == expected && er.hyperplanes <= er.hyperplane_budget;

  if (a.check_free && cfg.c1 && cfg.c2) {
    const BipartiteCheck bc = check_bipartite_free(cfg, *cfg.c1 + 1, *cfg.c2 + 1, budget.max_subsets);
    o["bipartite_free"] = {{"a", *cfg.c1 + 1},
                           {"b", *cfg.c2 + 1},
                           {"free", bc.free},
                           {"witness_points", bc.witness_points},
                           {"witness_hyperplanes", bc.witness_hyperplanes},
                           {"nodes", bc.nodes}};
    out.passed = out.passed && bc.free;
  } else {
    o["bipartite_free"] = nullptr;
  }
  o["target_exponent"] = er.target_exponent;
  o["realized_exponent"] = er.realized_exponent;
  o["point_slack"] = er.point_slack;
  o["hyperplane_slack"] = er.hyperplane_slack;

  out.files[".points"] = format_point_set(cfg.points);
  out.files[".normals.points"] = format_point_set(cfg.normals);
  out.files[".hyperplanes"] = format_hyperplanes(cfg.d, cfg.hyperplanes);
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_witness(const WitnessArgs& a, const Budget& budget) {
  CommandResult out;
  Json params{{"mode", a.mode}, {"input", a.input}};
  if (a.mode == "box") {
    params["sizes"] = a.sizes;
    params["exhaustive"] = a.exhaustive;
  } else if (a.mode == "lower") {
    params["k"] = a.k;
    params["eps"] = a.eps;
  } else if (a.mode == "hamming") {
    params["k"] = a.k;
    params["c"] = a.c;
  } else if (a.mode != "code") {
    throw DomainError("unknown witness mode '" + a.mode + "'");
  }
  out.report = header("witness", std::move(params), std::nullopt, budget);
  const std::string text = read_text_file(a.input);
  Json o;

  if (a.mode == "box") {
    const RPartiteHypergraph h = parse_hypergraph(text);
    const auto sizes = parse_sizes(a.sizes, h.r());
    BoxOptions opts;
    opts.threshold_pruning = !a.exhaustive;
    opts.max_nodes = budget.max_subsets;
    const auto box = find_box(h, sizes, opts);
    o["edges"] = h.edge_count();
    o["hypothesis_holds"] = box_hypothesis_holds(h, sizes);
    o["found"] = box.has_value();
    o["box"] = box ? box_json(*box) : Json(nullptr);
    const bool ok = box && verify_box(h, *box, sizes);
    o["verified"] = ok;
    out.passed = ok;
  } else {
    const PointSet s = parse_point_set(text);
    if (a.mode == "lower") {
      BoxOptions opts;
      opts.max_nodes = budget.max_subsets;
      const LowerBoundWitness w = lowerbound_witness(s, a.k, a.eps, opts);
      std::size_t prod = 1;
      for (auto v : w.params.s) prod *= v;
      o["r"] = w.params.r;
      o["t"] = w.params.t;
      o["s"] = w.params.s;
      o["part_sizes"] = w.part_sizes;
      o["edges"] = w.edge_count;
      o["hypothesis_holds"] = w.hypothesis_holds;
      o["box"] = box_json(w.box);
      o["witness_size"] = w.subset.size();
      o["box_product"] = prod;
      o["subset"] = w.subset;
      o["flat"] = flat_json(w.flat);
      o["affine_dim"] = w.affine_dim;
      out.passed = w.affine_dim <= a.k && w.subset.size() == prod;
    } else if (a.mode == "hamming") {
      const auto w = hamming_witness(s, a.k, a.c, budget.max_subsets);
      o["part_dims"] = hamming_partition(a.k, a.c);
      o["found"] = w.has_value();
      if (w) {
        o["parts"] = w->parts;
        o["union_dim"] = w->union_dim;
        o["nodes"] = w->nodes;
        std::size_t total = 0;
        for (const auto& p : w->parts) total += p.size();
        out.passed = w->union_dim <= a.k && total == a.k + a.c + 1;
      } else {
        o["parts"] = nullptr;
        out.passed = false;
      }
    } else {
      const CodeSummary code = parity_check_code(s, budget.max_flats);
      o["length"] = code.length;
      o["dimension"] = code.dimension;
      o["rank"] = code.rank;
      o["min_distance"] = code.min_distance ? Json(*code.min_distance) : Json(nullptr);
      o["min_weight_codeword"] = code.min_weight_codeword ? Json(*code.min_weight_codeword) : Json(nullptr);
    }
  }
  finish(out, std::move(o));
  return out;
}

CommandResult cmd_moments(const MomentsArgs& a, const Budget& budget) {
  CommandResult out;
  Json params{{"p", a.p}, {"d", a.d}, {"k", a.k}, {"s", a.s}, {"trials", a.trials}};
  params["degree"] = a.degree ? Json(*a.degree) : Json(nullptr);
  out.report = header("moments", std::move(params), a.seed, budget);
  const MomentReport r = moment_diagnostic(a.p, a.d, a.k, a.s, a.trials, a.seed, a.degree, budget);
  Json hist = Json::array();
  for (const auto& [n, count] : r.histogram) hist.push_back({n, count});
  Json o;
  o["degree"] = r.degree;
  o["histogram"] = std::move(hist);
  o["moment_numerator"] = big(r.moment_numerator);
  o["empirical_moment"] = r.empirical_moment;
  o["std_error"] = r.std_error;
  o["bound"] = big(r.bound);
  o["mean"] = r.mean;
  o["mean_std_error"] = r.mean_std_error;
  o["in_regime"] = r.in_regime;
  o["gap"] = r.gap;
  const bool within = r.empirical_moment <= r.bound.convert_to<double>() + 5 * r.std_error;
  o["within_bound"] = within;
  out.passed = within;
  finish(out, std::move(o));
  return out;
}

}  // namespace evasive::cli
