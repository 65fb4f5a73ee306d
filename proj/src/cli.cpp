#include "cobordize/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cobordize/error.hpp"
#include "cobordize/json_io.hpp"

namespace cobordize::cli {

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Verification failure carrying the failing step.
struct VerifyFailure {
  std::string detail;
  std::optional<std::size_t> step;
};

std::size_t max_rank() {
  const char* s = std::getenv("COBORDIZE_MAX_RANK");
  if (!s || !*s) return 6;
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != std::string(s).size() || v < 1) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Usage(std::string("COBORDIZE_MAX_RANK must be a positive integer, got ") + s);
  }
}

void check_rank(std::size_t n) {
  std::size_t limit = max_rank();
  if (n > limit)
    throw Error(ErrorCode::rank_limit, "ambient rank " + std::to_string(n) +
                                           " exceeds COBORDIZE_MAX_RANK=" + std::to_string(limit));
}

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream ss;
  if (path.empty() || path == "-") {
    ss << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw Usage("cannot open " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void check_rank_field(const Json& j) {
  if (j.is_object() && j.contains("ambient_rank") && j["ambient_rank"].is_number_unsigned())
    check_rank(j["ambient_rank"].get<std::size_t>());
}

CobordismFan read_cobordism(const Json& j) {
  check_rank_field(j);
  return cobordism_from_json(j);
}

std::vector<Integer> parse_ints(const std::string& s) {
  std::vector<Integer> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer x;
    if (item.empty() || x.set_str(item, 10) != 0) throw Usage("bad weight '" + item + "'");
    out.push_back(x);
  }
  return out;
}

WeightSpec parse_weights(const std::string& s) {
  auto c1 = s.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
    throw Usage("weights must look like a1,a2:b1,b2:r");
  WeightSpec w;
  w.a = parse_ints(s.substr(0, c1));
  w.b = parse_ints(s.substr(c1 + 1, c2 - c1 - 1));
  auto r = parse_ints(s.substr(c2 + 1));
  if (r.size() != 1 || sgn(r[0]) < 0 || !r[0].fits_ulong_p()) throw Usage("r must be a nonnegative integer");
  w.r = r[0].get_ui();
  return w;
}

Json components_json(const CobordismFan& b) {
  auto rays = b.fan().rays();
  auto ray_index = [&](const LatticeVector& r) {
    return static_cast<std::size_t>(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin());
  };
  auto cone_json = [&](const Cone& c) {
    std::vector<std::size_t> idx;
    for (const auto& r : c.rays()) idx.push_back(ray_index(r));
    std::sort(idx.begin(), idx.end());
    return idx;
  };
  Json comps = Json::array();
  for (const auto& f : b.components()) {
    Json cones = Json::array(), minimal = Json::array();
    for (const auto& c : f.cones) cones.push_back(cone_json(c));
    std::size_t l = 0, m = 0;
    auto mins = minimal_dependent_cones(b, f);
    for (const auto& c : mins) minimal.push_back(cone_json(c));
    if (!mins.empty())
      for (const auto& x : v0_expansion(b, mins.front())) (sgn(x) > 0 ? l : m) += 1;
    comps.push_back(Json{{"id", f.id}, {"cones", cones}, {"minimal", minimal}, {"l", l}, {"m", m}});
  }
  Json jr = Json::array();
  for (const auto& r : rays) {
    Json v = Json::array();
    for (const auto& x : r.coords()) v.push_back(x.get_si());
    jr.push_back(v);
  }
  return Json{{"rays", jr}, {"components", comps}};
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Factor toric birational cobordisms into flips, blow-ups and blow-downs"};
  app.require_subcommand(1);

  std::string input, side = "lower", dot_path, weights, fixture;
  std::vector<std::string> polytopes, verify_inputs;
  std::uint64_t seed = 1;
  bool reverse = false, bundle = false;

  auto* construct = app.add_subcommand("construct", "Build a cobordism and print it as JSON");
  auto* w_opt = construct->add_option("--weights", weights, "a1,a2:b1,b2:r");
  auto* p_opt = construct->add_option("--polytopes", polytopes, "P.json Q.json")->expected(2);
  auto* f_opt = construct->add_option("--fixture", fixture)->group("");
  construct->add_option("--seed", seed)->group("");
  w_opt->excludes(p_opt)->excludes(f_opt);
  p_opt->excludes(f_opt);

  auto* boundary = app.add_subcommand("boundary", "Lower or upper boundary fan");
  boundary->add_option("input", input, "cobordism JSON (default stdin)");
  boundary->add_option("--side", side)->required()->check(CLI::IsMember({"lower", "upper"}));

  auto* quotient = app.add_subcommand("quotient", "Quotient fan of a boundary");
  quotient->add_option("input", input);
  quotient->add_option("--side", side)->check(CLI::IsMember({"lower", "upper"}));

  auto* components = app.add_subcommand("components", "Fixed point components");
  components->add_option("input", input);

  auto* order = app.add_subcommand("order", "Predecessor order of the fixed components");
  order->add_option("input", input);
  order->add_option("--dot", dot_path, "write the predecessor graph as DOT ('-' for stdout)");

  auto* factor_cmd = app.add_subcommand("factor", "Factor into elementary moves");
  factor_cmd->add_option("input", input);
  factor_cmd->add_flag("--reverse", reverse, "emit the trace read from the upper end");
  factor_cmd->add_flag("--bundle", bundle, "emit {cobordism, trace} for piping into verify");

  auto* verify = app.add_subcommand("verify", "Check a trace against a cobordism");
  verify->add_option("inputs", verify_inputs, "trace.json cobordism.json, or one bundle")
      ->expected(0, 2);

  auto* classify_cmd = app.add_subcommand("classify", "Move of an elementary cobordism");
  classify_cmd->add_option("input", input);

  auto domain_error = [&](const std::string& code, const std::string& detail, Json extra) {
    Json j{{"error", code}, {"detail", detail}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    err << j.dump() << '\n';
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    domain_error("usage", e.what(), Json::object());
    return 2;
  }

  try {
    if (construct->parsed()) {
      CobordismFan b = [&] {
        if (!weights.empty()) {
          WeightSpec w = parse_weights(weights);
          check_rank(w.a.size() + w.b.size() + w.r);
          return from_weights(w);
        }
        if (!polytopes.empty()) {
          Polytope p = polytope_from_json(parse_json(slurp(polytopes[0], in)));
          Polytope q = polytope_from_json(parse_json(slurp(polytopes[1], in)));
          check_rank(p.ambient_rank() + 1);
          return from_polytopes(p, q);
        }
        std::mt19937_64 rng(seed);
        if (fixture == "two-block") return two_block_fixture(false);
        if (fixture == "two-block-reversed") return two_block_fixture(true);
        if (fixture == "chain") return random_chain(rng, 5, 4);
        if (fixture == "polytopes2" || fixture == "polytopes3") {
          std::size_t n = fixture == "polytopes2" ? 2 : 3;
          Polytope p = random_polytope(rng, n);
          Polytope q = random_polytope(rng, n);
          return from_polytopes(p, q);
        }
        throw Usage("construct needs --weights or --polytopes");
      }();
      emit(out, to_json(b));
      return 0;
    }

    if (verify->parsed()) {
      Json tj, bj;
      if (verify_inputs.size() == 2) {
        tj = parse_json(slurp(verify_inputs[0], in));
        bj = parse_json(slurp(verify_inputs[1], in));
      } else {
        Json j = parse_json(slurp(verify_inputs.empty() ? "" : verify_inputs[0], in));
        if (!j.is_object() || !j.contains("trace") || !j.contains("cobordism"))
          throw Error(ErrorCode::parse_error, "expected a bundle with \"trace\" and \"cobordism\"");
        tj = j["trace"];
        bj = j["cobordism"];
      }
      CobordismFan b = read_cobordism(bj);
      FactorizationTrace t = trace_from_json(tj);
      TraceReport rep = verify_trace(b, t);
      if (!rep.ok) {
        std::string detail;
        for (const auto& d : rep.diagnostics) detail += (detail.empty() ? "" : "; ") + d;
        Json extra = Json::object();
        if (rep.failed_step) extra["step"] = *rep.failed_step;
        domain_error(to_string(ErrorCode::replay_mismatch), detail, extra);
        return 1;
      }
      emit(out, Json{{"ok", true}, {"steps", t.moves.size()}});
      return 0;
    }

    CobordismFan b = read_cobordism(parse_json(slurp(input, in)));

    if (boundary->parsed()) {
      emit(out, to_json(side == "lower" ? lower_boundary(b) : upper_boundary(b)));
    } else if (quotient->parsed()) {
      emit(out, to_json(quotient_fan(b, side == "lower" ? lower_boundary(b) : upper_boundary(b))));
    } else if (components->parsed()) {
      emit(out, components_json(b));
    } else if (order->parsed()) {
      PredecessorGraph g = predecessor_graph(b);
      if (!dot_path.empty() && dot_path != "-") {
        std::ofstream f(dot_path);
        if (!f) throw Usage("cannot write " + dot_path);
        f << to_dot(b, g);
      }
      Collapsibility c = collapsibility(g);
      if (!c.collapsible) {
        std::string cyc;
        for (auto id : c.cycle) cyc += std::to_string(id) + " -> ";
        cyc += std::to_string(c.cycle.front());
        domain_error(to_string(ErrorCode::not_collapsible), "cycle " + cyc,
                     Json{{"cycle", c.cycle}});
        return 1;
      }
      if (dot_path == "-") {
        out << to_dot(b, g);
      } else {
        Json edges = Json::array();
        for (const auto& e : g.edges) edges.push_back({e.from, e.to});
        emit(out, Json{{"order", c.order}, {"edges", edges}, {"components", g.components.size()}});
      }
    } else if (factor_cmd->parsed()) {
      FactorizationTrace t = factor(b);
      if (reverse) t = reversed(t);
      if (bundle) emit(out, Json{{"cobordism", to_json(b)}, {"trace", to_json(t)}});
      else emit(out, to_json(t));
    } else if (classify_cmd->parsed()) {
      const auto& comps = b.components();
      if (comps.size() != 1)
        throw Error(ErrorCode::non_elementary,
                    std::to_string(comps.size()) + " fixed components, expected one");
      emit(out, to_json(classify(b, comps.front())));
    }
    return 0;
  } catch (const Usage& e) {
    domain_error("usage", e.what(), Json::object());
    return 2;
  } catch (const Error& e) {
    domain_error(to_string(e.code()), e.detail(), Json::object());
    return e.code() == ErrorCode::parse_error ? 2 : 1;
  }
}

}  // namespace cobordize::cli
