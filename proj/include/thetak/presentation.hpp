#ifndef THETAK_PRESENTATION_HPP
#define THETAK_PRESENTATION_HPP

#include <utility>
#include <vector>

#include "thetak/matrix.hpp"

namespace thetak {

/// Which ring module data lives over: the ambient polynomial ring Q, or the
/// hypersurface R = Q/(f). R-computations are carried out as Q-data with f
/// adjoined to every generating set.
enum class RingMode { ambient, mod_f };

/// Graded module presented as the cokernel of a homogeneous matrix:
/// generators carry the target twists, columns of `relations` are the
/// relations among them.
template <class K>
struct ModulePresentation {
  RingPtr ring;
  RingMode mode = RingMode::ambient;
  Poly<K> f;                  // defining polynomial; meaningful iff mode == mod_f
  std::vector<long> twists;   // one per generator
  Mat<K> relations;           // rows == twists.size()

  size_t rank() const { return twists.size(); }

  void validate() const {
    if (relations.rows() != twists.size())
      throw ShapeError("presentation: relation rows != generator count");
    if (mode == RingMode::mod_f) {
      if (f.is_zero()) throw ShapeError("mod_f presentation without f");
      require_same_ring(ring, f.ring());
      if (!f.is_homogeneous()) throw HomogeneityError("f must be homogeneous");
    }
    require_homogeneous_columns(relations, twists, "presentation");
  }

  static ModulePresentation free_module(RingPtr ring, RingMode mode, Poly<K> f,
                                        std::vector<long> twists) {
    ModulePresentation p;
    p.ring = ring;
    p.mode = mode;
    p.f = std::move(f);
    p.relations = Mat<K>(ring, twists.size(), 0);
    p.twists = std::move(twists);
    return p;
  }

  /// quotient ring presentation R/I or Q/I with generators `ideal_gens`
  static ModulePresentation cyclic(RingPtr ring, RingMode mode, Poly<K> f,
                                   const std::vector<Poly<K>>& ideal_gens) {
    ModulePresentation p;
    p.ring = ring;
    p.mode = mode;
    p.f = std::move(f);
    p.twists = {0};
    p.relations = Mat<K>(ring, 1, ideal_gens.size());
    for (size_t j = 0; j < ideal_gens.size(); ++j) p.relations.at(0, j) = ideal_gens[j];
    return p;
  }
};

}  // namespace thetak

#endif
