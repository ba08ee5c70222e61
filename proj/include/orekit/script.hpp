#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "orekit/jet.hpp"
#include "orekit/report.hpp"

namespace orekit {

struct ParseError : Error {
    int line = 0, col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("line " + std::to_string(line_) + ", col " + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { integer, name, add, sub, mul, div, pow, neg, apply };
    Kind kind = Kind::integer;
    mpz_class int_value;
    std::string name;               // name atom, or the map name for apply
    std::uint64_t apply_power = 1;  // d^k(...) application count
    std::uint64_t exponent = 0;     // pow
    ExprPtr lhs, rhs;

    static ExprPtr integer(mpz_class v);
    static ExprPtr ident(std::string n);
    static ExprPtr binary(Kind k, ExprPtr l, ExprPtr r);
    static ExprPtr power(ExprPtr base, std::uint64_t e);
    static ExprPtr negate(ExprPtr e);
    static ExprPtr apply(std::string map, std::uint64_t times, ExprPtr arg);

    std::string str() const;  // minimal-parenthesis rendering
};

struct FieldDef {
    std::string name;
    std::uint64_t characteristic = 0;
    std::vector<std::string> vars;
};
struct DerivationDef {
    std::string name, field;
    std::vector<std::pair<std::string, ExprPtr>> images;  // empty for the power form
    std::string power_base;
    std::uint64_t power = 0;
};
struct AutomorphismDef {
    std::string name, field;
    std::vector<std::pair<std::string, ExprPtr>> images;
    std::vector<std::pair<std::string, ExprPtr>> inverse_images;
};
struct RingDef {
    std::string name, field, skew_var;
    std::string sigma, delta;  // empty = identity / zero
    std::vector<std::string> central;
};
struct ElementDef {
    std::string name;
    ExprPtr expr;
    std::string ring;  // ring or field name
};
struct JetDef {
    std::string name;
    enum class Ctor { divided_powers, canonical } ctor = Ctor::divided_powers;
    std::string scope;  // ring/field (divided_powers) or derivation (canonical)
    std::string var;    // divided_powers only
    int truncation = 0;  // 0 = default for the characteristic
};
struct AssertStmt {
    std::string kind;  // eq | neq | central | in_kernel
    std::string jet;   // in_kernel only
    std::vector<ExprPtr> args;
    std::string ring;  // optional "in RING" annotation
};

struct Statement {
    int line = 0;
    std::variant<FieldDef, DerivationDef, AutomorphismDef, RingDef, ElementDef, JetDef, AssertStmt> node;
};

struct Script {
    std::vector<Statement> statements;
};

Script parse_script(const std::string& text);
std::string pretty_print(const Script& s);
std::string pretty_print(const Statement& s);

struct ScriptOptions {
    bool parallel = false;
    int truncation_override = 0;  // 0 = per-characteristic default
};

VerificationReport run_script(const Script& s, const ScriptOptions& opts = {});

/// Interpreter state, exposed for the REPL: statements execute one at a
/// time against a persistent environment.
class ScriptEnv {
  public:
    /// Executes one statement; assert statements yield a CheckResult.
    std::optional<CheckResult> execute(const Statement& st, const ScriptOptions& opts = {});

  private:
    std::map<std::string, FieldPtr> fields_;
    std::map<std::string, DerivationSpec> derivations_;
    std::map<std::string, AutomorphismSpec> automorphisms_;
    std::map<std::string, OreRingPtr> rings_;
    std::map<std::string, std::variant<RatFunc, OreElement>> elements_;
    std::map<std::string, std::variant<JetHom<FieldAlgebra>, JetHom<OreAlgebra>>> jets_;
    std::set<std::string> names_;

    friend struct EvalContext;
    void claim_name(const std::string& n, int line);
};

}  // namespace orekit
