#include "cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcc/cocycle.hpp"
#include "wcc/io.hpp"
#include "wcc/monomial.hpp"

namespace wcc::cli {

namespace {

using nlohmann::json;

constexpr int kFormatVersion = 1;

const char* kFormats = R"(File formats (whitespace separated, one matrix row per line):
  scheme     "n r" then n rows of class indices        3 2 / 0 1 1 / 1 0 1 / 1 1 0
  group      "n" then the Cayley table, 0 = identity   2 / 0 1 / 1 0
  permgroup  "n k" then k generators as image lists    3 2 / 1 2 0 / 1 0 2
  weight     "n" then n rows of 0 | a+bi | R:k/m       2 / 1 R:1/4 / R:3/4 1
  cocycle    "n m" then n rows of exponents mod m      2 2 / 0 0 / 0 1
  character  "l m", the elements of H, phi exponents   2 2 / 0 1 / 0 1
("/" marks a line break.) Reports are JSON; complex numbers are [re, im],
exact roots of unity {"root": [k, m]} meaning exp(2 pi i k / m).
Exit status: 0 ok, 1 diagnostic, 2 usage error.)";

struct Flags {
  double eps = kDefaultEps;
  int max_aut_points = 16;
  int max_group = 12;
  std::uint64_t seed = 0;
  std::string output;
};

struct Inputs {
  std::string scheme, group, perm, weight, weight2, cocycle, character, classes;
  std::int64_t m = 2;
  bool mod = false;
};

struct Outcome {
  json payload = json::object();
  std::optional<Diagnostic> diagnostic;
};

json cplx(Complex z) { return json::array({z.real(), z.imag()}); }

json root_json(const Root& r) { return {{"root", {r.k, r.m}}}; }

json cplx_list(const std::vector<Complex>& v) {
  json out = json::array();
  for (auto z : v) out.push_back(cplx(z));
  return out;
}

json diagnostic_json(const Diagnostic& d) { return {{"code", d.code}, {"message", d.message}, {"witness", d.witness}}; }

json weight_json(const WeightMatrix& w) {
  json rows = json::array();
  for (int x = 0; x < w.size(); ++x) {
    json row = json::array();
    for (int y = 0; y < w.size(); ++y) {
      if (w.is_exact())
        row.push_back(w.exact(x, y).nonzero ? root_json(w.exact(x, y).root) : json(0));
      else
        row.push_back(cplx(w(x, y)));
    }
    rows.push_back(row);
  }
  return {{"n", w.size()}, {"entries", rows}, {"text", io::format_weight(w)}};
}

json verdict_json(const WeightVerdict& v) {
  json beta = json::array();
  const int r = v.beta.dim();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        if (std::abs(v.beta(i, j, k)) > 1e-12) beta.push_back({i, j, k, cplx(v.beta(i, j, k))});
  json flags = {{"W1", v.w1}, {"W2", v.w2}, {"W3", v.w3}};
  if (v.w4) flags["W4"] = *v.w4;
  const auto profile = algebra_profile(v);
  return {{"support_classes", v.support_classes},
          {"flags", flags},
          {"beta", beta},
          {"algebra", {{"dimension", profile.dimension}, {"center_dimension", profile.center_dimension}}}};
}

json witness_json(const EquivalenceWitness& w) {
  return {{"sigma", w.sigma}, {"a", cplx_list(w.a)}, {"gamma", cplx_list(w.gamma)}};
}

json cocycle_json(const RootCocycle& a) {
  json rows = json::array();
  for (int g = 0; g < a.n(); ++g) {
    json row = json::array();
    for (int h = 0; h < a.n(); ++h) row.push_back(a.at(g, h));
    rows.push_back(row);
  }
  return {{"m", a.m}, {"exponents", rows}, {"text", io::format_cocycle(a)}};
}

json complex_cocycle_json(const ComplexCocycle& a) {
  json rows = json::array();
  for (int g = 0; g < a.n(); ++g) {
    json row = json::array();
    for (int h = 0; h < a.n(); ++h) row.push_back(cplx(a.at(g, h)));
    rows.push_back(row);
  }
  return rows;
}

json coboundary_json(const CoboundaryWitness& w) {
  json gamma = json::array();
  for (const auto& r : w.gamma()) gamma.push_back(root_json(r));
  return gamma;
}

json cohomology_json(const CohomologyGroup& h) {
  json reps = json::array();
  for (const auto& r : h.representatives) reps.push_back(cocycle_json(r));
  return {{"coefficients", h.coefficients},
          {"invariant_factors", h.invariant_factors},
          {"order", h.order()},
          {"representatives", reps}};
}

json scheme_json(const CoherentConfiguration& cc) {
  std::vector<std::int64_t> valency;
  for (int c = 0; c < cc.rank(); ++c) valency.push_back(cc.valency(c));
  return {{"n", cc.n()},
          {"rank", cc.rank()},
          {"homogeneous", cc.homogeneous()},
          {"diagonal_classes", cc.diagonal_classes()},
          {"converse", cc.converse_map()},
          {"valency", valency},
          {"text", io::format_scheme(cc.base())}};
}

template <class T, class Parse>
T load(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open " + path);
  return parse(in);
}

std::vector<int> parse_classes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 0) throw CLI::ValidationError("--classes", "expected comma separated class indices");
    out.push_back(v);
  }
  return out;
}

class Context {
 public:
  Context(const Flags& f, const Inputs& in) : flags(f), inputs(in) {}

  Configuration raw_scheme() const { return load<Configuration>(inputs.scheme, io::parse_scheme); }

  /// Loading a scheme for any command other than verify-cc requires it to be coherent.
  CoherentConfiguration scheme() const {
    auto raw = raw_scheme();
    auto cfg = make_configuration(raw.n, raw.r, std::move(raw.color));
    if (!cfg.ok()) throw InvalidInput(cfg.diagnostic());
    return require_coherent(*cfg);
  }
  FiniteGroup group() const { return load<FiniteGroup>(inputs.group, io::parse_group); }
  WeightMatrix weight(const std::string& path) const {
    return load<WeightMatrix>(path, [&](std::istream& in) { return io::parse_weight(in, flags.eps); });
  }
  RootCocycle cocycle(const FiniteGroup& g) const {
    auto a = load<RootCocycle>(inputs.cocycle, [&](std::istream& in) { return io::parse_cocycle(in, g); });
    if (auto d = verify_cocycle(a)) throw InvalidInput(*d);
    return a;
  }
  io::CharacterSpec character() const { return load<io::CharacterSpec>(inputs.character, io::parse_character); }
  CohomologyLimits limits() const { return {flags.max_group}; }
  EquivalenceOptions equivalence() const {
    EquivalenceOptions o;
    o.bounds.max_points = flags.max_aut_points;
    return o;
  }

  const Flags& flags;
  const Inputs& inputs;
};

Outcome fail(Outcome o, const Diagnostic& d) {
  o.diagnostic = d;
  return o;
}

Outcome verify_cc(const Context& ctx) {
  const auto raw = ctx.raw_scheme();
  auto cfg = make_configuration(raw.n, raw.r, raw.color);
  if (!cfg.ok()) return fail({}, cfg.diagnostic());
  auto cc = verify_coherent(*cfg);
  if (!cc.ok()) return fail({}, cc.diagnostic());
  return {scheme_json(*cc), {}};
}

Outcome thin(const Context& ctx) {
  auto t = thin_scheme(ctx.group());
  json p = scheme_json(t.cc);
  p["class_of_element"] = t.class_of_element;
  return {p, {}};
}

Outcome schurian(const Context& ctx) {
  auto spec = load<io::PermGroupSpec>(ctx.inputs.perm, io::parse_permgroup);
  auto cc = schurian_scheme(spec.degree, spec.generators);
  json p = scheme_json(cc);
  p["group_order"] = groups::permutation_closure(spec.degree, spec.generators).size();
  return {p, {}};
}

Outcome closed(const Context& ctx) {
  auto cc = ctx.scheme();
  auto d = closed_subset_check(cc, parse_classes(ctx.inputs.classes));
  if (!d.ok()) return fail({}, d.diagnostic());
  return {{{"classes", d->classes}}, {}};
}

Outcome factor(const Context& ctx) {
  auto cc = ctx.scheme();
  auto d = closed_subset_check(cc, parse_classes(ctx.inputs.classes));
  if (!d.ok()) return fail({}, d.diagnostic());
  auto f = factor_configuration(cc, *d);
  return {{{"classes", d->classes},
           {"blocks", f.partition.blocks},
           {"class_quotient", f.class_quotient},
           {"members", f.members},
           {"quotient", scheme_json(f.quotient)}},
          {}};
}

Outcome aut(const Context& ctx) {
  AutomorphismBounds b;
  b.max_points = ctx.flags.max_aut_points;
  auto perms = automorphisms(ctx.scheme(), b);
  return {{{"count", perms.size()}, {"automorphisms", perms}}, {}};
}

Outcome verify_w(const Context& ctx, bool h) {
  auto cc = ctx.scheme();
  auto w = ctx.weight(ctx.inputs.weight);
  auto v = h ? verify_h_weight(cc, w) : verify_weight(cc, w);
  if (!v.ok()) return fail({}, v.diagnostic());
  return {verdict_json(*v), {}};
}

Outcome equiv(const Context& ctx, bool h) {
  auto cc = ctx.scheme();
  auto w = ctx.weight(ctx.inputs.weight), w2 = ctx.weight(ctx.inputs.weight2);
  for (const auto* x : {&w, &w2}) {
    auto v = h ? verify_h_weight(cc, *x) : verify_weight(cc, *x);
    if (!v.ok()) {
      Diagnostic d = v.diagnostic();
      d.with("input", std::string(x == &w ? "weight" : "weight2"));
      return fail({}, d);
    }
  }
  auto wit = h ? h_weight_equivalent(cc, w, w2, ctx.equivalence()) : weight_equivalent(cc, w, w2, ctx.equivalence());
  json p = {{"equivalent", wit.has_value()}};
  if (wit) {
    p["witness"] = witness_json(*wit);
    p["residual"] = witness_residual(cc, w, w2, *wit);
  }
  return {p, {}};
}

Outcome h2(const Context& ctx) { return {cohomology_json(h2_over_C(ctx.group(), ctx.limits())), {}}; }

Outcome h2_zn(const Context& ctx) {
  return {cohomology_json(cocycle_group_Zn(ctx.group(), ctx.inputs.m, ctx.limits())), {}};
}

Outcome normalize(const Context& ctx) {
  auto g = ctx.group();
  auto n = normalize_cocycle(ctx.cocycle(g));
  return {{{"beta", cocycle_json(n.beta)}, {"gamma", coboundary_json(n.gamma)}}, {}};
}

Outcome coboundary(const Context& ctx) {
  auto g = ctx.group();
  auto a = ctx.cocycle(g);
  auto wit = ctx.inputs.mod ? is_coboundary_mod(a) : is_coboundary_over_C(a);
  json p = {{"coefficients", ctx.inputs.mod ? "Z_" + std::to_string(a.m) : std::string("C^x")},
            {"coboundary", wit.has_value()}};
  if (wit) p["gamma"] = coboundary_json(*wit);
  return {p, {}};
}

Outcome w_from_cocycle(const Context& ctx) {
  auto g = ctx.group();
  return {{{"weight", weight_json(weight_from_cocycle(ctx.cocycle(g), ctx.flags.eps))}}, {}};
}

Outcome cocycle_from_w(const Context& ctx) {
  auto g = ctx.group();
  auto r = cocycle_from_weight(g, ctx.weight(ctx.inputs.weight));
  if (!r.ok()) return fail({}, r.diagnostic());
  json p = {{"values", complex_cocycle_json(r->complex)}};
  if (r->exact) p["exact"] = cocycle_json(*r->exact);
  return {p, {}};
}

Outcome to_h(const Context& ctx) {
  auto g = ctx.group();
  auto r = to_h_weight(g, ctx.weight(ctx.inputs.weight));
  if (!r.ok()) return fail({}, r.diagnostic());
  json p = {{"h_weight", weight_json(r->h_weight)}, {"witness", witness_json(r->witness)}};
  if (r->normalized) p["normalized"] = cocycle_json(*r->normalized);
  return {p, {}};
}

Outcome classify(const Context& ctx) {
  auto c = classify_weights(ctx.group(), ctx.limits(), ctx.equivalence());
  json reps = json::array();
  for (std::size_t i = 0; i < c.cocycles.size(); ++i)
    reps.push_back({{"combination", c.combinations[i]},
                    {"cocycle", cocycle_json(c.cocycles[i])},
                    {"weight", weight_json(c.weights[i])}});
  json p = {{"h2", cohomology_json(c.h2)},
            {"classes", c.cocycles.size()},
            {"representatives", reps},
            {"pairwise_equivalent", c.equivalent},
            {"consistent", c.consistent}};
  if (!c.consistent)
    return fail({p, {}}, Diagnostic{"classification", "weight equivalence disagrees with the cohomology classes", {}});
  return {p, {}};
}

json monomial_json(const MonomialWeightResult& r) {
  json reps = json::array();
  for (const auto& rep : r.representatives) reps.push_back(rep ? json(*rep) : json(nullptr));
  return {{"weight", weight_json(r.w)},
          {"representatives", reps},
          {"mu", cplx_list(r.mu)},
          {"verdict", verdict_json(r.verdict)},
          {"residuals",
           {{"proportionality", r.proportionality_residual},
            {"hermitian", r.hermitian_residual},
            {"multiplicativity", r.multiplicativity_residual}}},
          {"basis_rank", r.basis_rank},
          {"compressed_dimension", r.compressed_dimension}};
}

Outcome monomial(const Context& ctx, bool rescale) {
  auto g = ctx.group();
  auto spec = ctx.character();
  auto r = induced_h_weight(g, spec.subgroup, spec.phi, ctx.flags.eps);
  if (!r.ok()) return fail({}, r.diagnostic());
  json p = monomial_json(r->monomial);
  p["factor"] = scheme_json(r->factor.quotient);
  p["blocks"] = r->factor.partition.blocks;
  if (rescale) {
    p["h_weight"] = weight_json(r->h_weight);
    p["witness"] = witness_json(r->witness);
    p["class_scaling_sufficed"] = r->class_scaling_sufficed;
  }
  return {p, {}};
}

struct Command {
  std::string name;
  std::string help;
  std::vector<std::string> needs;  // input options this command requires
  std::function<Outcome(const Context&)> handler;
};

std::vector<Command> commands() {
  return {
      {"verify-cc", "check the coherent configuration axioms", {"scheme"}, verify_cc},
      {"thin", "thin scheme of a group", {"group"}, thin},
      {"schurian", "orbital scheme of a transitive permutation group", {"perm"}, schurian},
      {"closed", "check that a set of classes is closed", {"scheme", "classes"}, closed},
      {"factor", "blocks and factor configuration of a closed subset", {"scheme", "classes"}, factor},
      {"aut", "color-preserving automorphisms", {"scheme"}, aut},
      {"verify-w", "check the weight axioms W1-W3", {"scheme", "weight"}, [](const Context& c) { return verify_w(c, false); }},
      {"verify-hw", "check the H-weight axioms W1-W4", {"scheme", "weight"}, [](const Context& c) { return verify_w(c, true); }},
      {"equiv", "search for an equivalence of two weights", {"scheme", "weight", "weight2"}, [](const Context& c) { return equiv(c, false); }},
      {"h-equiv", "search for an H-equivalence of two H-weights", {"scheme", "weight", "weight2"}, [](const Context& c) { return equiv(c, true); }},
      {"h2", "second cohomology with coefficients in C^x", {"group"}, h2},
      {"h2-zn", "second cohomology with coefficients in Z_m", {"group", "m"}, h2_zn},
      {"normalize", "normalized cohomologous cocycle", {"group", "cocycle"}, normalize},
      {"coboundary", "test whether a cocycle is a coboundary", {"group", "cocycle"}, coboundary},
      {"w-from-cocycle", "weight on the thin scheme from a cocycle", {"group", "cocycle"}, w_from_cocycle},
      {"cocycle-from-w", "cocycle of a weight on the thin scheme", {"group", "weight"}, cocycle_from_w},
      {"to-h-weight", "equivalent H-weight of a weight on the thin scheme", {"group", "weight"}, to_h},
      {"classify", "weights on the thin scheme up to equivalence", {"group"}, classify},
      {"monomial-weight", "weight on the factor scheme from a linear character of H", {"group", "character"}, [](const Context& c) { return monomial(c, false); }},
      {"example24", "monomial weight rescaled to an H-weight", {"group", "character"}, [](const Context& c) { return monomial(c, true); }},
  };
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Flags flags;
  Inputs inputs;
  CLI::App app{"Weights on coherent configurations", "wcc"};
  app.footer(kFormats);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for all commands");

  const auto table = commands();
  std::map<std::string, const Command*> by_name;
  for (const auto& cmd : table) {
    auto* sub = app.add_subcommand(cmd.name, cmd.help);
    by_name[cmd.name] = &cmd;
    sub->add_option("--eps", flags.eps, "zero tolerance")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--max-aut-points", flags.max_aut_points, "largest scheme for automorphism search")
        ->capture_default_str();
    sub->add_option("--max-group", flags.max_group, "largest group for cohomology")->capture_default_str();
    sub->add_option("--seed", flags.seed, "random seed")->capture_default_str();
    sub->add_option("--output,-o", flags.output, "write the report here instead of standard output");
    for (const auto& need : cmd.needs) {
      if (need == "scheme") sub->add_option("--scheme", inputs.scheme, "scheme file")->required()->check(CLI::ExistingFile);
      if (need == "group") sub->add_option("--group", inputs.group, "group file")->required()->check(CLI::ExistingFile);
      if (need == "perm") sub->add_option("--perm", inputs.perm, "permgroup file")->required()->check(CLI::ExistingFile);
      if (need == "weight") sub->add_option("--weight", inputs.weight, "weight file")->required()->check(CLI::ExistingFile);
      if (need == "weight2")
        sub->add_option("--weight2", inputs.weight2, "second weight file")->required()->check(CLI::ExistingFile);
      if (need == "cocycle") sub->add_option("--cocycle", inputs.cocycle, "cocycle file")->required()->check(CLI::ExistingFile);
      if (need == "character")
        sub->add_option("--character", inputs.character, "character file")->required()->check(CLI::ExistingFile);
      if (need == "classes") sub->add_option("--classes", inputs.classes, "comma separated class indices")->required();
      if (need == "m") sub->add_option("--m", inputs.m, "coefficient modulus")->required()->check(CLI::PositiveNumber);
    }
    if (cmd.name == "coboundary") sub->add_flag("--mod", inputs.mod, "test over Z_m instead of C^x");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const Command* cmd = by_name.at(app.get_subcommands().front()->get_name());
  Context ctx(flags, inputs);
  Outcome outcome;
  try {
    outcome = cmd->handler(ctx);
  } catch (const io::ParseError& e) {
    outcome.diagnostic = Diagnostic{"parse", e.detail(), {}}.with("line", e.line()).with("column", e.column());
  } catch (const InvalidInput& e) {
    outcome.diagnostic = e.diagnostic();
  } catch (const Refusal& e) {
    outcome.diagnostic = Diagnostic{"refusal", e.what(), {}};
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  json report = {{"command", cmd->name},
                 {"status", outcome.diagnostic ? "diagnostic" : "ok"},
                 {"formats", {{"scheme", kFormatVersion}, {"group", kFormatVersion}, {"permgroup", kFormatVersion},
                              {"weight", kFormatVersion}, {"cocycle", kFormatVersion}, {"character", kFormatVersion}}},
                 {"flags", {{"eps", flags.eps}, {"max_aut_points", flags.max_aut_points}, {"max_group", flags.max_group},
                            {"seed", flags.seed}}},
                 {"payload", outcome.payload}};
  if (outcome.diagnostic) report["diagnostic"] = diagnostic_json(*outcome.diagnostic);

  const std::string text = report.dump(2) + "\n";
  if (flags.output.empty()) {
    out << text;
  } else {
    std::ofstream file(flags.output);
    if (!file) {
      err << "error: cannot write " << flags.output << "\n";
      return 2;
    }
    file << text;
  }
  return outcome.diagnostic ? 1 : 0;
}

}  // namespace wcc::cli
