#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "angle_forge/angle_forge.hpp"

using namespace angle_forge;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string engine;
  std::size_t window = 5;
  std::string out;
  std::string format = "json";
  unsigned precision = 0;
  std::uint64_t seed = 1;
  // gen and sweep
  std::string kind;
  long n = 12;
  bool centre = false;
  std::string ratio = "2";
  long den = 360;
  std::vector<long> sizes;
  // convexity
  std::string x = "1/2";
  std::string a = "1/2";
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "configuration JSON file");
  sub->add_option("--engine", o.engine, "census engine")->check(CLI::IsMember({"coords", "arcs"}));
  sub->add_option("--window", o.window, "neighbour window")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "output file (default stdout)");
  sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--precision", o.precision, "MPFR bits (convexity) or rounding bits (gen)");
  sub->add_option("--seed", o.seed, "generator seed");
}

void add_generator(CLI::App* sub, Options& o) {
  sub->add_option("--kind", o.kind, "generator kind")->check(CLI::IsMember(generator_kinds()));
  sub->add_option("--ratio", o.ratio, "hyperbola ratio r");
  sub->add_option("--den", o.den, "circle-arcs denominator");
  sub->add_flag("--centre", o.centre, "add the circle centre");
}

Config need_config(const Options& o) {
  if (o.config.empty()) throw UsageError("--config is required");
  Config cfg = load_config(o.config);
  if (!o.engine.empty() && (o.engine == "arcs") != cfg.is_arcs())
    throw UsageError("--engine " + o.engine + " does not match " + (cfg.is_arcs() ? "an arc" : "a coordinate") + " config");
  return cfg;
}

GeneratorSpec generator_spec(const Options& o) {
  GeneratorSpec g;
  if (!o.config.empty()) {
    g = generator_from_json(read_json_file(o.config));
  } else {
    if (o.kind.empty()) throw UsageError("gen needs --kind or --config");
    g.kind = o.kind;
    g.n = o.n;
    g.ratio = parse_rational(o.ratio);
    g.with_centre = o.centre;
    g.den = o.den;
  }
  if (!o.kind.empty()) g.kind = o.kind;
  g.seed = o.seed;
  if (o.precision) g.precision = o.precision;
  return g;
}

VerifyOptions verify_options(const Options& o) {
  VerifyOptions v;
  v.window = o.window;
  return v;
}

std::string config_csv(const Config& cfg) {
  std::string out;
  if (cfg.is_coords()) {
    out = "index,x1,x2\n";
    const auto& pts = cfg.coords().points;
    for (std::size_t i = 0; i < pts.size(); ++i) out += std::to_string(i) + "," + to_string(pts[i].x1) + "," + to_string(pts[i].x2) + "\n";
  } else {
    out = "index,turns\n";
    const auto& a = cfg.arcs();
    for (std::size_t i = 0; i < a.arcs.size(); ++i) out += std::to_string(i) + "," + to_string(a.arcs[i].turns) + "\n";
    if (a.with_centre) out += std::to_string(a.arcs.size()) + ",centre\n";
  }
  return out;
}

std::string census_csv(const Json& j) {
  std::string out = "index," + j["valueKind"].get<std::string>() + "\n";
  for (std::size_t i = 0; i < j["values"].size(); ++i) out += std::to_string(i) + "," + j["values"][i].get<std::string>() + "\n";
  return out;
}

std::string graph_csv(const VerifyReport& rep) {
  if (!rep.json.contains("graph")) return rep.csv();
  std::string out = "x,m,neighbours,intervals,normal,sum_nu,sum_nu_sq,diff_size,sumset_size,eq1,eq2,c1a,c1b\n";
  for (const auto& v : rep.json["graph"]["perVertex"]) {
    bool first = true;
    for (const auto& [k, val] : v.items()) {
      out += (first ? "" : ",") + (val.is_boolean() ? std::string(val.get<bool>() ? "1" : "0") : val.dump());
      first = false;
    }
    out += "\n";
  }
  return out;
}

std::string curves_csv(const VerifyReport& rep) {
  if (!rep.json.contains("curves") || !rep.json["curves"].contains("list")) return rep.csv();
  std::string out = "p,q,s,t,class,multiplicity\n";
  for (const auto& c : rep.json["curves"]["list"]) {
    for (const auto& i : c["pqst"]) out += i.dump() + ",";
    out += c["class"].get<std::string>() + "," + c["multiplicity"].dump() + "\n";
  }
  return out;
}

std::string bisector_csv(const VerifyReport& rep) {
  if (!rep.json.contains("bisectorEnergy")) return rep.csv();
  const auto& b = rep.json["bisectorEnergy"];
  return "N,Q,bisectors,max_n,m_prime,ratio\n" + b["N"].dump() + "," + b["Q"].dump() + "," + b["bisectors"].dump() + "," +
         b["maxN"].dump() + "," + b["Mprime"].dump() + "," + fixed(b["ratio"].get<double>()) + "\n";
}

std::string convexity_csv(const Json& j) {
  std::string out = "size,angles_at_a,angles_at_x,union,b_minus_b,fb_minus_fb\n";
  for (const auto& r : j["growth"]["rows"])
    out += r["size"].dump() + "," + r["anglesAtA"].dump() + "," + r["anglesAtX"].dump() + "," + r["union"].dump() + "," +
           r["BminusB"].dump() + "," + r["fBminusfB"].dump() + "\n";
  return out;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.out);
  f << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

int emit_report(const Options& o, const VerifyReport& rep, std::string (*csv)(const VerifyReport&)) {
  emit(o, o.format == "csv" ? csv(rep) : json_text(rep.json));
  for (const auto& v : rep.verdicts)
    if (v.status == Status::Fail) std::cerr << "fail: " << v.name << ": " << v.reason << "\n";
  return rep.failed() ? kVerifyFail : kOk;
}

std::string verdict_csv(const VerifyReport& rep) { return rep.csv(); }

bool usage_code(Errc e) {
  return e == Errc::ParseError || e == Errc::InvalidArgument || e == Errc::CoincidentPoint || e == Errc::TooFewPoints ||
         e == Errc::PoleInAP;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinct-angle census and verification pipeline for planar point sets"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "emit a generated configuration");
  add_common(gen, o);
  add_generator(gen, o);
  gen->add_option("--n", o.n, "size parameter");

  auto* count = app.add_subcommand("count-angles", "exact distinct-angle census");
  auto* order = app.add_subcommand("check-order", "split and common cyclic order check");
  auto* graph = app.add_subcommand("graph", "bipartite angle graph and normal-interval chain");
  auto* curves = app.add_subcommand("curves", "equal-angle curves, classification and multiplicities");
  auto* inc = app.add_subcommand("incidence", "weighted incidences and incidence bounds");
  auto* bis = app.add_subcommand("bisector-energy", "perpendicular bisector energy of P2");
  auto* verify = app.add_subcommand("verify-all", "full verification pipeline");
  for (auto* s : {count, order, graph, curves, inc, bis, verify}) add_common(s, o);

  auto* conv = app.add_subcommand("convexity", "slope-map derivatives and angle growth on a circle");
  add_common(conv, o);
  conv->add_option("--x", o.x, "external point (x, 0), rational");
  conv->add_option("--a", o.a, "circle point a, in turns");
  conv->add_option("--sizes", o.sizes, "AP arc prefix sizes")->delimiter(',');

  auto* sw = app.add_subcommand("sweep", "census and graph size across generator sizes");
  add_common(sw, o);
  add_generator(sw, o);
  sw->add_option("--sizes", o.sizes, "generator sizes")->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      const Config cfg = generate(generator_spec(o));
      emit(o, o.format == "csv" ? config_csv(cfg) : json_text(config_json(cfg)));
      return kOk;
    }
    if (count->parsed()) {
      const Config cfg = need_config(o);
      Json j{{"schema", kSchema}, {"command", "count-angles"}};
      j["census"] = census_json(census(cfg));
      emit(o, o.format == "csv" ? census_csv(j["census"]) : json_text(j));
      return kOk;
    }
    if (order->parsed()) return emit_report(o, check_order_report(need_config(o), verify_options(o)), verdict_csv);
    if (graph->parsed()) return emit_report(o, graph_report(need_config(o), verify_options(o)), graph_csv);
    if (curves->parsed()) return emit_report(o, curves_report(need_config(o), verify_options(o)), curves_csv);
    if (inc->parsed()) return emit_report(o, incidence_report(need_config(o), verify_options(o)), verdict_csv);
    if (bis->parsed()) return emit_report(o, bisector_report(need_config(o), verify_options(o)), bisector_csv);
    if (verify->parsed()) return emit_report(o, verify_all(need_config(o), verify_options(o)), verdict_csv);
    if (conv->parsed()) {
      std::vector<std::size_t> sizes{16, 32, 64, 128};
      if (!o.sizes.empty()) {
        sizes.clear();
        for (long s : o.sizes) {
          if (s < 4) throw UsageError("--sizes entries must be at least 4");
          sizes.push_back(static_cast<std::size_t>(s));
        }
      }
      const Json j = convexity_json(parse_rational(o.x), TurnAngle(parse_rational(o.a)), sizes, o.precision ? o.precision : 128);
      emit(o, o.format == "csv" ? convexity_csv(j) : json_text(j));
      return kOk;
    }
    if (sw->parsed()) {
      if (o.kind.empty() && o.config.empty()) throw UsageError("sweep needs --kind or --config");
      const auto r = sweep(generator_spec(o), o.sizes, o.window);
      emit(o, o.format == "csv" ? sweep_csv(r) : json_text(sweep_json(r)));
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return usage_code(e.code()) ? kUsage : kVerifyFail;
  }
  return kUsage;
}
