#pragma once

// Boundary value problems: boundary pieces with their condition type and
// data, plus the discretization (integration geometry and unknown space) of
// every piece.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sgbem/geometry.hpp"
#include "sgbem/spaces.hpp"

namespace sgbem {

enum class BcType { Dirichlet, Neumann };

const char* to_string(BcType type);

/// Boundary datum as a function of the curve parameter.
struct BoundaryDatum {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // d/dt, needed where a hypersingular term acts on it
};

/// Harmonic function given with its gradient.
struct HarmonicField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
};

HarmonicField constant_field(double c);
HarmonicField linear_field(double c0, double c1, double c2);  // c0 + c1 x1 + c2 x2

/// Harmonic polynomial sum_k a_k Re(z^k) + b_k Im(z^k), z = x1 + i x2.
HarmonicField harmonic_polynomial(std::vector<double> re, std::vector<double> im);

/// u(C(t)) and its parameter derivative.
BoundaryDatum dirichlet_trace(std::shared_ptr<const Geometry> g, HarmonicField f);

/// grad u(C(t)) . n(t); no derivative.
BoundaryDatum neumann_trace(std::shared_ptr<const Geometry> g, HarmonicField f);

struct BoundaryPiece {
  std::string name;
  std::shared_ptr<const Geometry> geometry;
  BcType bc = BcType::Dirichlet;
  BoundaryDatum datum;  // u* on Dirichlet pieces, q* on Neumann pieces
  /// Open arcs only: Dirichlet data given as the single-layer potential of
  /// this density (parameter -> value per unit arclength) on the same arc.
  std::function<double(double)> density;
};

/// Pieces are whole curves. Either every piece is a closed curve (interior
/// or multiply connected domain, normals pointing out of the domain) or every
/// piece is an open arc with Dirichlet data (exterior problem for the jump of
/// the flux).
struct BvpProblem {
  std::vector<BoundaryPiece> pieces;

  bool arcs() const;
  /// Throws ValidationError / Unsupported for ill-posed or unsupported set-ups.
  void validate() const;
};

struct DiscretePart {
  int piece = 0;
  std::shared_ptr<const Geometry> geometry;  // integration geometry
  DiscreteSpace space;                       // q on Dirichlet pieces, u on Neumann pieces
};

struct Discretization {
  std::vector<DiscretePart> parts;

  int size() const;
  int offset(int part) const;
};

}  // namespace sgbem
