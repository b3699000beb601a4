#include "modaldef/kripke.hpp"

#include <algorithm>
#include <unordered_map>

#include "modaldef/error.hpp"

namespace modaldef {

Frame::Frame(std::vector<std::string> names, std::span<const Edge> edges)
    : names_(std::move(names)), succ_(names_.size(), 0), pred_(names_.size(), 0) {
  if (names_.empty()) throw InputError("a frame needs at least one point");
  if (names_.size() > kMaxPoints) {
    throw InputError("frames are limited to " + std::to_string(kMaxPoints) + " points");
  }
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("duplicate point name in frame");
  }
  for (auto [a, b] : edges) {
    if (a >= size() || b >= size()) throw InputError("edge endpoint outside the frame");
    succ_[a] |= singleton(b);
    pred_[b] |= singleton(a);
  }
}

Frame Frame::numbered(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return Frame(std::move(names), edges);
}

Frame Frame::from_code(std::size_t n, std::uint64_t code) {
  if (n == 0 || n > 8) throw InputError("relation codes cover frames of 1 to 8 points");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((code >> (i * n + j)) & 1U) edges.emplace_back(i, j);
    }
  }
  return numbered(n, edges);
}

bool Frame::empty_relation() const {
  return std::all_of(succ_.begin(), succ_.end(), [](PointSet s) { return s == 0; });
}

std::size_t Frame::edge_count() const {
  std::size_t n = 0;
  for (PointSet s : succ_) n += cardinality(s);
  return n;
}

std::vector<Edge> Frame::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (related(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t Frame::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("unknown point '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

PointSet Frame::set_of(std::span<const std::string> names) const {
  PointSet s = 0;
  for (const auto& n : names) s |= singleton(index_of(n));
  return s;
}

std::vector<std::string> Frame::names_of(PointSet s) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (member(s, i)) out.push_back(names_[i]);
  }
  return out;
}

std::uint64_t Frame::code() const {
  const std::size_t n = size();
  if (n > 8) throw InputError("relation codes cover frames of 1 to 8 points");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (related(i, j)) code |= std::uint64_t{1} << (i * n + j);
    }
  }
  return code;
}

bool operator==(const Frame& a, const Frame& b) {
  return a.names_ == b.names_ && a.succ_ == b.succ_;
}

PointSet image(const Frame& frame, PointSet s) {
  PointSet out = 0;
  for (; s; s &= s - 1) out |= frame.successors(static_cast<std::size_t>(std::countr_zero(s)));
  return out;
}

PointSet preimage(const Frame& frame, PointSet s) {
  PointSet out = 0;
  for (; s; s &= s - 1) out |= frame.predecessors(static_cast<std::size_t>(std::countr_zero(s)));
  return out;
}

Model::Model(Frame frame, Valuation valuation)
    : frame_(std::move(frame)), valuation_(std::move(valuation)) {
  for (const auto& [prop, set] : valuation_) {
    if (set & ~frame_.all()) throw InputError("valuation of '" + prop + "' leaves the frame");
  }
}

PointSet Model::value(std::string_view prop) const {
  auto it = valuation_.find(prop);
  return it == valuation_.end() ? 0 : it->second;
}

Program::Program(const Formula& f) : formula_(f) {
  auto props = propositions(f);
  symbols_.assign(props.begin(), props.end());
  build(f);
}

Program::Program(const Formula& f, std::span<const std::string> symbols)
    : formula_(f), symbols_(symbols.begin(), symbols.end()) {
  build(f);
}

void Program::build(const Formula& f) {
  std::unordered_map<std::string_view, std::uint32_t> slot_of;
  for (std::uint32_t i = 0; i < symbols_.size(); ++i) slot_of.emplace(symbols_[i], i);
  std::unordered_map<Formula, std::uint32_t, FormulaHash> seen;

  auto emit = [&](auto&& self, const Formula& g) -> std::uint32_t {
    if (auto it = seen.find(g); it != seen.end()) return it->second;
    Instr ins;
    ins.kind = g.kind();
    switch (g.kind()) {
      case Kind::atom:
      case Kind::neg_atom: {
        auto it = slot_of.find(g.name());
        if (it == slot_of.end()) throw InputError("no valuation slot for '" + g.name() + "'");
        ins.a = it->second;
        ins.flat = true;
        break;
      }
      case Kind::conj:
      case Kind::disj:
      case Kind::idisj:
        ins.a = self(self, g.left());
        ins.b = self(self, g.right());
        ins.flat = g.kind() != Kind::idisj && code_[ins.a].flat && code_[ins.b].flat;
        break;
      case Kind::dia:
      case Kind::box:
        ins.a = self(self, g.body());
        ins.flat = code_[ins.a].flat;
        break;
      case Kind::ubox:
      case Kind::udia:
        ins.a = self(self, g.body());
        break;
      case Kind::dep:
        for (const auto& c : g.children()) ins.operands.push_back(self(self, c));
        break;
    }
    code_.push_back(std::move(ins));
    auto id = static_cast<std::uint32_t>(code_.size() - 1);
    seen.emplace(g, id);
    return id;
  };
  emit(emit, f);
  // The root must be last even when it also occurs as a shared subformula.
  if (!(seen.at(f) == code_.size() - 1)) throw std::logic_error("program root misplaced");
}

bool Program::has(Kind k) const {
  return std::any_of(code_.begin(), code_.end(), [k](const Instr& i) { return i.kind == k; });
}

std::vector<PointSet> Program::slots(const Model& model) const {
  std::vector<PointSet> out;
  out.reserve(symbols_.size());
  for (const auto& s : symbols_) out.push_back(model.value(s));
  return out;
}

void extensions(const Program& program, const Frame& frame, std::span<const PointSet> slots,
                std::vector<PointSet>& out, bool skip_team_nodes) {
  const auto& code = program.code();
  const std::size_t n = frame.size();
  const PointSet all = frame.all();
  out.resize(code.size());
  for (std::size_t k = 0; k < code.size(); ++k) {
    const auto& ins = code[k];
    PointSet v = 0;
    switch (ins.kind) {
      case Kind::atom: v = slots[ins.a] & all; break;
      case Kind::neg_atom: v = ~slots[ins.a] & all; break;
      case Kind::conj: v = out[ins.a] & out[ins.b]; break;
      case Kind::disj: v = out[ins.a] | out[ins.b]; break;
      case Kind::dia: {
        const PointSet body = out[ins.a];
        for (std::size_t w = 0; w < n; ++w) {
          if (frame.successors(w) & body) v |= singleton(w);
        }
        break;
      }
      case Kind::box: {
        const PointSet body = out[ins.a];
        for (std::size_t w = 0; w < n; ++w) {
          if ((frame.successors(w) & ~body) == 0) v |= singleton(w);
        }
        break;
      }
      case Kind::ubox: v = out[ins.a] == all ? all : 0; break;
      case Kind::udia: v = out[ins.a] != 0 ? all : 0; break;
      case Kind::idisj:
      case Kind::dep:
        if (!skip_team_nodes) {
          throw FragmentError(std::string("pointed semantics is undefined for ") +
                              kind_name(ins.kind));
        }
        break;
    }
    out[k] = v;
  }
}

PointSet extension(const Program& program, const Frame& frame, std::span<const PointSet> slots) {
  std::vector<PointSet> scratch;
  extensions(program, frame, slots, scratch);
  return scratch.back();
}

void require_pointed(const Formula& f) {
  if (contains(f, Kind::idisj)) {
    throw FragmentError("pointed semantics is undefined for idisj (intuitionistic disjunction)");
  }
  if (contains(f, Kind::dep)) {
    throw FragmentError("pointed semantics is undefined for dep (dependence atom)");
  }
}

PointSet extension(const Model& m, const Formula& f) {
  require_pointed(f);
  Program p(f);
  return extension(p, m.frame(), p.slots(m));
}

bool eval_pointed(const Model& m, std::size_t w, const Formula& f) {
  if (w >= m.frame().size()) throw InputError("point index outside the model");
  return member(extension(m, f), w);
}

bool eval_pointed(const Model& m, std::string_view w, const Formula& f) {
  return eval_pointed(m, m.frame().index_of(w), f);
}

bool model_valid_kripke(const Model& m, const Formula& f) {
  return extension(m, f) == m.frame().all();
}

}  // namespace modaldef
