#include "fordc/kernel/signature.hpp"

namespace fordc::kernel {

namespace {
template <class Map> auto* find(const Map& m, std::string_view key) {
  auto it = m.find(key);
  return it == m.end() ? nullptr : &it->second;
}
} // namespace

const DataInfo* Signature::data(std::string_view name) const { return find(data_, name); }
const CtorInfo* Signature::ctor(std::string_view q) const { return find(ctors_, q); }
const FunInfo* Signature::fun(std::string_view name) const { return find(funs_, name); }
const AxiomInfo* Signature::axiom(std::string_view q) const { return find(axioms_, q); }

std::vector<const CtorInfo*> Signature::ctorsNamed(std::string_view name) const {
  std::vector<const CtorInfo*> out;
  if (auto* c = ctor(name))
    out.push_back(c);
  auto [lo, hi] = ctorShort_.equal_range(name);
  for (auto it = lo; it != hi; ++it)
    out.push_back(ctor(it->second));
  return out;
}

std::vector<const AxiomInfo*> Signature::axiomsNamed(std::string_view name) const {
  std::vector<const AxiomInfo*> out;
  if (auto* a = axiom(name))
    out.push_back(a);
  auto [lo, hi] = axiomShort_.equal_range(name);
  for (auto it = lo; it != hi; ++it)
    if (it->second != name)
      out.push_back(axiom(it->second));
  return out;
}

std::string Signature::ctorSpelling(const std::string& qualified) const {
  auto* c = ctor(qualified);
  if (!c)
    return qualified;
  return ctorShort_.count(c->shortName) == 1 ? c->shortName : qualified;
}

bool Signature::hasGlobal(std::string_view name) const {
  return data(name) || fun(name) || !axiomsNamed(name).empty() || !ctorsNamed(name).empty();
}

DataInfo& Signature::addData(DataInfo d) {
  order_.push_back(d.name);
  auto name = d.name;
  return data_.insert_or_assign(name, std::move(d)).first->second;
}

void Signature::addCtor(CtorInfo c) {
  data_.find(c.data)->second.ctors.push_back(c.name);
  ctorShort_.emplace(c.shortName, c.name);
  auto name = c.name;
  ctors_.insert_or_assign(name, std::move(c));
}

FunInfo& Signature::addFun(FunInfo f) {
  if (!f.builtin)
    order_.push_back(f.name);
  auto name = f.name;
  return funs_.insert_or_assign(name, std::move(f)).first->second;
}

void Signature::addAxiom(AxiomInfo a) {
  if (a.pathOf.empty())
    order_.push_back(a.name);
  else
    data_.find(a.pathOf)->second.paths.push_back(a.name);
  axiomShort_.emplace(a.shortName, a.name);
  auto name = a.name;
  axioms_.insert_or_assign(name, std::move(a));
}

void Signature::setClauses(const std::string& fun, std::vector<CClause> clauses) {
  funs_.find(fun)->second.clauses = std::move(clauses);
}

Val Context::push(std::string name, Val type, bool hidden) {
  int level = size();
  locals_.push_back({std::move(name), std::move(type), std::nullopt, hidden});
  return vmk::var(level);
}

void Context::truncate(int n) {
  for (int i = n; i < size(); ++i)
    if (locals_[i].def)
      --defs_;
  locals_.resize(n);
}

void Context::define(int level, Val v) {
  if (!locals_[level].def)
    ++defs_;
  locals_[level].def = std::move(v);
}

std::optional<int> Context::lookup(std::string_view name) const {
  for (int i = size() - 1; i >= 0; --i)
    if (!locals_[i].hidden && locals_[i].name == name)
      return i;
  return std::nullopt;
}

Env Context::env() const {
  Env e;
  e.reserve(locals_.size());
  for (int i = 0; i < size(); ++i)
    e.push_back(vmk::var(i));
  return e;
}

std::vector<std::string> Context::names() const {
  std::vector<std::string> out;
  for (const auto& l : locals_)
    out.push_back(l.name);
  return out;
}

} // namespace fordc::kernel
