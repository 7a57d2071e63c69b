#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcdh/cartan.hpp"
#include "gcdh/error.hpp"
#include "gcdh/gclinear.hpp"
#include "gcdh/gcydh.hpp"

namespace gcdh {

/// Spinor family e^{-i t c} ^ rho declared with `family NAME = quotient RHO C T`.
struct FamilySpec {
  std::string spinor;
  std::string c_name;
  std::string parameter;
};

/// Everything a model file declares, validated on load.
struct ModelFile {
  std::string name;
  Model model;
  std::vector<std::string> parameters;
  /// `let` and `spinor` definitions in file order.
  std::vector<std::pair<std::string, Form>> forms;
  std::vector<std::string> spinors;
  std::vector<std::pair<std::string, GCMap>> structures;
  std::optional<TorusAction> action;
  std::optional<Connection> connection;
  std::vector<std::pair<std::string, FamilySpec>> families;
  std::vector<Sample> samples;
  std::map<std::string, int> options;
  std::vector<std::pair<std::string, EqForm>> eqforms;

  const Form* form(const std::string& name) const;
  const GCMap* structure(const std::string& name) const;
  int option(const std::string& key, int fallback) const;
};

/// A loaded file failed a mathematical validation at `line`.
class ModelValidationError : public DomainError {
 public:
  ModelValidationError(const DomainError& e, int line) : DomainError(e.what(), e.residual()), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Throws ParseError for lexical, syntactic and undeclared-symbol errors and
/// ModelValidationError for failed validations.
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::string& path);

/// Canonical text; parse_model(print_model(f)) prints identically.
std::string print_model(const ModelFile& f);

/// One expression over the given generators, parameters and named forms.
Form parse_form(std::string_view expr, const std::vector<std::string>& generators,
                const std::vector<std::string>& parameters = {},
                const std::map<std::string, Form>& named = {});

}  // namespace gcdh
