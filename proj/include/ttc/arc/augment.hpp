#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ttc/arc/dsl.hpp"
#include "ttc/arc/task.hpp"

namespace ttc::arc {

/// Element of the dihedral group D4 acting on grids: rotate clockwise by
/// 90·rotation degrees, after an optional left-right flip.
struct Dihedral {
  int rotation = 0;  // 0..3
  bool flip = false;

  Grid apply(const Grid& g) const;
  Dihedral inverse() const;
  /// Composition: (a * b).apply(g) == a.apply(b.apply(g)).
  friend Dihedral operator*(const Dihedral& a, const Dihedral& b);
  /// "id", "rot90", "rot180", "rot270", "fliph", "rot90_fliph", ...
  std::string name() const;
  /// The same transformation as a DSL program.
  DslProgram as_program() const;

  friend bool operator==(const Dihedral&, const Dihedral&) = default;
};

/// All eight elements, identity first.
std::array<Dihedral, 8> dihedral_group();

ArcTask transform_task(const ArcTask& task, const Dihedral& g);

/// D4 orbit of the task with symmetric duplicates removed (first in group order kept).
/// Variant ids are "<id>_<element name>"; the identity variant keeps the original id.
std::vector<ArcTask> augment(const ArcTask& task);

/// Sequential composition "g; p; g⁻¹". For any program p, p passes on
/// transform_task(task, g) exactly when conjugate(p, g) passes on task.
DslProgram conjugate(const DslProgram& program, const Dihedral& g);

struct LeaveOneOut {
  ArcTask task;         // remaining train pairs; the held-out pair is its single test pair
  TrainPair held_out;
};

/// One variant per train pair. Tasks with fewer than two pairs give an empty list
/// and a message in `warning` when provided.
std::vector<LeaveOneOut> leave_one_out(const ArcTask& task, std::string* warning = nullptr);

}  // namespace ttc::arc
