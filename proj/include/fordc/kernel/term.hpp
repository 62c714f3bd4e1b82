#pragma once

// Core terms (de Bruijn indices) and their semantic values (de Bruijn levels).

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace fordc::kernel {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  struct Var {
    int index;
  };
  struct Universe {
    int level;
  };
  struct Pi {
    std::string name;
    TermPtr domain, codomain;
  };
  struct Lam {
    std::string name;
    TermPtr body;
  };
  struct App {
    TermPtr fn, arg;
  };
  // Global heads; arguments are supplied by App spines.
  struct Data {
    std::string name;
  };
  struct Fun {
    std::string name;
  };
  struct Axiom {
    std::string name;
  };
  // Constructors are saturated. `hidden` holds the values of the variables
  // bound by the constructor's availability row; `args` its declared arguments.
  struct Ctor {
    std::string name;
    std::vector<TermPtr> hidden, args;
  };
  struct Id {
    TermPtr carrier, lhs, rhs;
  };
  struct Refl {};
  struct J {
    TermPtr motive, base, path;
  };

  std::variant<Var, Universe, Pi, Lam, App, Data, Fun, Axiom, Ctor, Id, Refl, J> node;
};

namespace mk {
TermPtr var(int index);
TermPtr universe(int level);
TermPtr pi(std::string name, TermPtr dom, TermPtr cod);
TermPtr lam(std::string name, TermPtr body);
TermPtr app(TermPtr fn, TermPtr arg);
TermPtr apps(TermPtr fn, const std::vector<TermPtr>& args);
TermPtr data(std::string name);
TermPtr fun(std::string name);
TermPtr axiom(std::string name);
TermPtr ctor(std::string name, std::vector<TermPtr> hidden, std::vector<TermPtr> args);
TermPtr id(TermPtr carrier, TermPtr lhs, TermPtr rhs);
TermPtr refl();
TermPtr j(TermPtr motive, TermPtr base, TermPtr path);
} // namespace mk

/// Syntactic equality up to binder names, i.e. alpha-equivalence.
bool operator==(const Term& a, const Term& b);
bool termEqual(const TermPtr& a, const TermPtr& b);

/// Head and arguments of an App spine.
std::pair<TermPtr, std::vector<TermPtr>> unspine(const TermPtr& t);

struct CoreBinder {
  std::string name;
  TermPtr type;
};
using CoreTelescope = std::vector<CoreBinder>;

// ---- values -----------------------------------------------------------

struct Value;
using Val = std::shared_ptr<const Value>;
using Env = std::vector<Val>; // Env.back() is de Bruijn index 0

struct Closure {
  Env env;
  TermPtr body;
};

struct Value {
  struct Universe {
    int level;
  };
  struct Pi {
    std::string name;
    Val domain;
    Closure codomain;
  };
  struct Lam {
    std::string name;
    Closure body;
  };
  // A head applied to a spine. Var heads are neutral; Data heads are rigid
  // type formers; Fun heads are partial applications or stuck calls; Axiom
  // heads never compute.
  struct Rigid {
    enum class Head { Var, Data, Fun, Axiom } head;
    int level = -1;
    std::string name;
    std::vector<Val> spine;
  };
  struct Ctor {
    std::string name;
    std::vector<Val> hidden, args;
  };
  struct Id {
    Val carrier, lhs, rhs;
  };
  struct Refl {};
  struct StuckJ {
    Val motive, base, path;
    std::vector<Val> spine;
  };

  std::variant<Universe, Pi, Lam, Rigid, Ctor, Id, Refl, StuckJ> node;
};

namespace vmk {
Val universe(int level);
Val var(int level);
Val rigid(Value::Rigid::Head head, std::string name, std::vector<Val> spine = {});
Val ctor(std::string name, std::vector<Val> hidden, std::vector<Val> args);
Val id(Val carrier, Val lhs, Val rhs);
Val refl();
} // namespace vmk

template <class T> const T* as(const Val& v) { return std::get_if<T>(&v->node); }
template <class T> const T* as(const TermPtr& t) { return std::get_if<T>(&t->node); }

} // namespace fordc::kernel
