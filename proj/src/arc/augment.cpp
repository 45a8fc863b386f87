#include "ttc/arc/augment.hpp"

#include <algorithm>

namespace ttc::arc {

Grid Dihedral::apply(const Grid& g) const {
  Grid out = flip ? flip_h(g) : g;
  switch (rotation & 3) {
    case 1: return rotate90(out);
    case 2: return rotate180(out);
    case 3: return rotate270(out);
    default: return out;
  }
}

Dihedral Dihedral::inverse() const {
  if (flip) return *this;
  return {(4 - rotation) % 4, false};
}

Dihedral operator*(const Dihedral& a, const Dihedral& b) {
  // flip_h∘rot(r) == rot(-r)∘flip_h
  const int r = a.flip ? a.rotation - b.rotation : a.rotation + b.rotation;
  return {((r % 4) + 4) % 4, a.flip != b.flip};
}

std::string Dihedral::name() const {
  std::string base = rotation == 0 ? "" : "rot" + std::to_string(rotation * 90);
  if (!flip) return base.empty() ? "id" : base;
  return base.empty() ? "fliph" : base + "_fliph";
}

DslProgram Dihedral::as_program() const {
  std::vector<DslOp> ops;
  if (flip) ops.push_back(op::FlipH{});
  switch (rotation) {
    case 1: ops.push_back(op::Rotate90{}); break;
    case 2: ops.push_back(op::Rotate180{}); break;
    case 3: ops.push_back(op::Rotate270{}); break;
    default: break;
  }
  if (ops.empty()) ops.push_back(op::Identity{});
  return DslProgram(std::move(ops));
}

std::array<Dihedral, 8> dihedral_group() {
  return {{{0, false}, {1, false}, {2, false}, {3, false}, {0, true}, {1, true}, {2, true}, {3, true}}};
}

ArcTask transform_task(const ArcTask& task, const Dihedral& g) {
  ArcTask out;
  out.id = g == Dihedral{} ? task.id : task.id + "_" + g.name();
  for (const auto& p : task.train) out.train.push_back({g.apply(p.input), g.apply(p.output)});
  for (const auto& t : task.test) {
    TestPair tp{g.apply(t.input), std::nullopt};
    if (t.output) tp.output = g.apply(*t.output);
    out.test.push_back(std::move(tp));
  }
  return out;
}

std::vector<ArcTask> augment(const ArcTask& task) {
  std::vector<ArcTask> out;
  for (const auto& g : dihedral_group()) {
    auto variant = transform_task(task, g);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const ArcTask& v) {
      return v.train == variant.train && v.test == variant.test;
    });
    if (!seen) out.push_back(std::move(variant));
  }
  return out;
}

DslProgram conjugate(const DslProgram& program, const Dihedral& g) {
  std::vector<DslOp> ops = g.as_program().ops();
  const std::size_t offset = ops.size();
  for (auto o : program.ops()) {
    // Slot 0 of the inner program is the grid after the leading transform.
    if (auto* ov = std::get_if<op::OverlayNonzero>(&o)) ov->slot += static_cast<int>(offset);
    ops.push_back(o);
  }
  for (const auto& o : g.inverse().as_program().ops()) ops.push_back(o);
  return DslProgram(std::move(ops));
}

std::vector<LeaveOneOut> leave_one_out(const ArcTask& task, std::string* warning) {
  std::vector<LeaveOneOut> out;
  if (task.train.size() < 2) {
    if (warning) *warning = "task " + task.id + " has fewer than two train pairs; no leave-one-out variants";
    return out;
  }
  for (std::size_t i = 0; i < task.train.size(); ++i) {
    LeaveOneOut loo;
    loo.task.id = task.id + "_loo" + std::to_string(i);
    for (std::size_t j = 0; j < task.train.size(); ++j)
      if (j != i) loo.task.train.push_back(task.train[j]);
    loo.task.test.push_back({task.train[i].input, task.train[i].output});
    loo.held_out = task.train[i];
    out.push_back(std::move(loo));
  }
  return out;
}

}  // namespace ttc::arc
