#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gcdh/cartan.hpp"
#include "gcdh/dgamodel.hpp"
#include "gcdh/error.hpp"
#include "gcdh/gclinear.hpp"
#include "gcdh/gcydh.hpp"
#include "gcdh/parser.hpp"

using json = nlohmann::ordered_json;
using namespace gcdh;

namespace {

struct Options {
  std::string file;
  std::optional<int> trunc;
  std::optional<int> orientation;
  std::string structure;
  std::string form;
  std::string family;
  bool moment = false;
  bool pretty = false;
};

/// A usage problem discovered after CLI parsing, e.g. a missing block.
struct Usage : DomainError {
  using DomainError::DomainError;
};

json betti(const BettiPair& b) { return {{"even", b.even}, {"odd", b.odd}}; }

const GCMap& pick_structure(const ModelFile& f, const Options& o) {
  if (f.structures.empty()) throw Usage("model declares no gcmap");
  if (o.structure.empty()) return f.structures.front().second;
  const GCMap* j = f.structure(o.structure);
  if (!j) throw Usage("no gcmap named " + o.structure);
  return *j;
}

std::string structure_name(const ModelFile& f, const Options& o) {
  return o.structure.empty() ? f.structures.front().first : o.structure;
}

const TorusAction& require_action(const ModelFile& f) {
  if (!f.action) throw Usage("model declares no action");
  return *f.action;
}

const Connection& require_connection(const ModelFile& f) {
  if (!f.connection) throw Usage("model declares no connection");
  return *f.connection;
}

int truncation(const ModelFile& f, const Options& o) {
  int t = o.trunc ? *o.trunc : f.option("trunc", std::max(2, 2 * ((f.model.generators() + 1) / 2)));
  if (t < 1) throw Usage("--trunc must be at least 1");
  return t;
}

std::vector<std::pair<std::string, EqForm>> selected_eqforms(const ModelFile& f, const Options& o) {
  if (o.form.empty()) return f.eqforms;
  for (const auto& p : f.eqforms)
    if (p.first == o.form) return {p};
  throw Usage("no eqform named " + o.form);
}

json cmd_validate(const ModelFile& f) {
  json out;
  out["ok"] = true;
  out["model"] = f.name;
  out["generators"] = f.model.names();
  out["parameters"] = f.parameters;
  json structures = json::array();
  for (const auto& [name, j] : f.structures) structures.push_back(name);
  out["structures"] = structures;
  out["action_rank"] = f.action ? f.action->rank() : 0;
  out["connection"] = f.connection.has_value();
  json families = json::array();
  for (const auto& [name, spec] : f.families) families.push_back(name);
  out["families"] = families;
  out["canonical"] = print_model(f);
  return out;
}

json cmd_gclinear(const ModelFile& f) {
  const Model& m = f.model;
  json out;
  json structures = json::object();
  for (const auto& [name, j] : f.structures) {
    IsotropicSubspace l = i_eigenspace(j);
    json s;
    s["type"] = type_of(j);
    s["eigenspace_dim"] = l.dim();
    s["pure_spinor"] = m.print(pure_spinor(l));
    structures[name] = s;
  }
  out["structures"] = structures;
  json spinors = json::object();
  for (const auto& name : f.spinors) {
    const Form& rho = *f.form(name);
    json s;
    s["mukai"] = mukai(rho, rho.conj()).to_string();
    Form at = f.samples.empty() ? rho : substitute(rho, f.samples.front());
    bool numeric = true;
    for (const auto& [mask, c] : at.terms()) numeric = numeric && c.is_constant();
    if (numeric) {
      AnnihilatorResult a = annihilator(at);
      s["annihilator_dim"] = a.space.dim();
      s["maximal_isotropic"] = a.maximal_isotropic;
      s["nondegenerate"] = a.nondegenerate;
      s["transverse"] = a.transverse;
    }
    spinors[name] = s;
  }
  out["spinors"] = spinors;
  return out;
}

json cmd_grading(const ModelFile& f, const Options& o) {
  const GCMap& j = pick_structure(f, o);
  json comps = json::array();
  for (const auto& c : uk_grading(j)) {
    json basis = json::array();
    for (const auto& b : c.basis) basis.push_back(f.model.print(b));
    comps.push_back({{"k", c.k}, {"dim", c.basis.size()}, {"basis", basis}});
  }
  return {{"structure", structure_name(f, o)}, {"components", comps}};
}

json cmd_equivariant(const ModelFile& f, const Options& o) {
  const TorusAction& act = require_action(f);
  int trunc = truncation(f, o);
  EqForm h_g = o.moment ? moment_twist(f.model, act, trunc) : h_equivariant(f.model, act, trunc);
  EquivariantRanks r = equivariant_cohomology(f.model, act, h_g, trunc);
  json per = json::array();
  for (const auto& b : r.per_degree) per.push_back(betti(b));
  json cum = json::array();
  for (const auto& b : r.cumulative) cum.push_back(betti(b));
  return {{"trunc", r.trunc},          {"twist", f.model.print(h_g.at_zero())},
          {"per_degree", per},         {"cumulative", cum},
          {"total", betti(r.total)},   {"stable", r.stable},
          {"free", r.free},            {"model_betti", betti(r.model_betti)}};
}

json cmd_cartanmap(const ModelFile& f, const Options& o) {
  const TorusAction& act = require_action(f);
  const Connection& conn = require_connection(f);
  json images = json::object();
  for (const auto& [name, eta] : selected_eqforms(f, o)) {
    EqForm closed = d_equivariant(f.model, act, eta.with_trunc(eta.trunc() + 1));
    Form image = cartan_map(act, conn, eta);
    images[name] = {{"image", f.model.print(image)},
                    {"equivariantly_closed", closed.is_zero()},
                    {"basic", is_basic(f.model, act, image)}};
  }
  return {{"images", images}};
}

json cmd_kirwan(const ModelFile& f, const Options& o) {
  const TorusAction& act = require_action(f);
  const Connection& conn = require_connection(f);
  Quotient q = quotient_model(f.model, act, conn);
  GammaResult g = gamma_from_connection(f.model, act, conn);
  Form h_tilde = descend(q, f.model, act, g.basic_h);
  Morphism id = identity_morphism(f.model);
  json images = json::object();
  for (const auto& [name, eta] : selected_eqforms(f, o))
    images[name] = q.model.print(kirwan_map(f.model, id, act, conn, eta));
  return {{"quotient_generators", q.model.names()},
          {"gamma", f.model.print(g.gamma)},
          {"h_tilde", q.model.print(h_tilde)},
          {"quotient_cohomology", betti(twisted_cohomology(q.model.with_h(h_tilde)))},
          {"images", images}};
}

json cmd_dh(const ModelFile& f, const Options& o) {
  if (f.families.empty()) throw Usage("model declares no family");
  const FamilySpec* spec = &f.families.front().second;
  if (!o.family.empty()) {
    spec = nullptr;
    for (const auto& [name, s] : f.families)
      if (name == o.family) spec = &s;
    if (!spec) throw Usage("no family named " + o.family);
  }
  if (!f.options.count("n") || !f.options.count("k")) throw Usage("dh needs 'option n' and 'option k'");
  GCYFamily fam = quotient_family(f.model, *f.form(spec->spinor), *f.form(spec->c_name), spec->parameter, f.samples);
  int orientation = o.orientation ? *o.orientation : f.model.orientation();
  DHResult r = dh_density(fam, f.option("n", 0), f.option("k", 0), orientation, f.option("type", 0));
  json out{{"density", r.density.to_string()},
           {"degree_bound", r.degree_bound},
           {"normalization", r.normalization.to_string()}};
  if (!r.diagnostics.empty()) out["diagnostics"] = r.diagnostics;
  return out;
}

json cmd_ddbar(const ModelFile& f, const Options& o) {
  DdbarResult r = ddbar_lemma_check(f.model, pick_structure(f, o));
  json out{{"structure", structure_name(f, o)},
           {"ok", r.ok},
           {"ker_del_im_delbar", r.ker_del_im_delbar},
           {"im_del_ker_delbar", r.im_del_ker_delbar},
           {"im_delbar_del", r.im_delbar_del}};
  if (!r.ok) {
    out["failed"] = r.failed;
    out["witness"] = f.model.print(r.witness);
  }
  return out;
}

json cmd_extension(const ModelFile& f, const Options& o) {
  const TorusAction& act = require_action(f);
  std::string name = o.form.empty() ? "phi" : o.form;
  const Form* phi = f.form(name);
  if (!phi) throw Usage("no form named " + name);
  ExtensionResult r = canonical_extension(f.model, act, pick_structure(f, o), *phi, truncation(f, o));
  const auto& names = f.model.names();
  return {{"phi_g", r.phi_g.to_string(names)}, {"residual", r.residual.to_string(names)}, {"steps", r.steps}};
}

void emit(const json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact twisted equivariant cohomology and Duistermaat-Heckman densities on invariant models"};
  app.require_subcommand(1);
  Options o;
  bool json_flag = false;
  app.add_flag("--json", json_flag, "Compact JSON output (default)");
  app.add_flag("--pretty", o.pretty, "Indented JSON output");

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"validate", "Load and validate a model file"},
      {"cohomology", "Twisted cohomology ranks"},
      {"gclinear", "Types, eigenspaces and pure spinors"},
      {"grading", "U^k grading of a generalized complex structure"},
      {"equivariant", "Truncated equivariant cohomology ranks"},
      {"cartanmap", "Cartan map images of equivariant forms"},
      {"kirwan", "Kirwan map to the quotient"},
      {"dh", "Duistermaat-Heckman density of a quotient family"},
      {"ddbar", "ddbar-lemma check"},
      {"extension", "Canonical equivariant extension"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("model", o.file, "Model file")->required();
    sub->add_flag("--json", json_flag, "Compact JSON output (default)");
    sub->add_flag("--pretty", o.pretty, "Indented JSON output");
    sub->add_option("--trunc", o.trunc, "Cartan truncation degree");
    sub->add_option("--orientation", o.orientation, "Orientation sign, +1 or -1");
    sub->add_option("--structure", o.structure, "gcmap to use");
    sub->add_option("--form", o.form, "Named form or eqform");
    sub->add_option("--family", o.family, "Family to integrate");
    sub->add_flag("--moment", o.moment, "Use the moment differential D_G");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit({{"error", {{"kind", "usage"}, {"message", e.what()}}}}, o.pretty);
    return 2;
  }
  std::string cmd = app.get_subcommands().front()->get_name();

  try {
    if (o.orientation && *o.orientation != 1 && *o.orientation != -1) throw Usage("--orientation must be +1 or -1");
    if (!std::filesystem::is_regular_file(o.file)) throw Usage("cannot open " + o.file);
    ModelFile f = load_model(o.file);
    json out;
    if (cmd == "validate") out = cmd_validate(f);
    else if (cmd == "cohomology") out = betti(twisted_cohomology(f.model));
    else if (cmd == "gclinear") out = cmd_gclinear(f);
    else if (cmd == "grading") out = cmd_grading(f, o);
    else if (cmd == "equivariant") out = cmd_equivariant(f, o);
    else if (cmd == "cartanmap") out = cmd_cartanmap(f, o);
    else if (cmd == "kirwan") out = cmd_kirwan(f, o);
    else if (cmd == "dh") out = cmd_dh(f, o);
    else if (cmd == "ddbar") out = cmd_ddbar(f, o);
    else out = cmd_extension(f, o);
    emit(out, o.pretty);
    return 0;
  } catch (const ParseError& e) {
    emit({{"error", {{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}}}},
         o.pretty);
    return 2;
  } catch (const Usage& e) {
    emit({{"error", {{"kind", "usage"}, {"message", e.what()}}}}, o.pretty);
    return 2;
  } catch (const DomainError& e) {
    json err{{"kind", "domain"}, {"message", e.what()}};
    if (!e.residual().empty()) err["residual"] = e.residual();
    if (const auto* v = dynamic_cast<const ModelValidationError*>(&e)) err["line"] = v->line();
    emit({{"error", err}}, o.pretty);
    return 1;
  }
}
