"""Reduced simplicial homology and cohomology with exact coefficients.

The chain complex always includes the empty face in degree -1, so every
computation here is reduced: the complex {∅} has H̃_{-1} = k and a complex
with a vertex has H̃_{-1} = 0, with no special-casing anywhere.

Coefficients are named by strings: "Z", "Q", or "Fp" for a prime p (e.g.
"F2").  Integer results carry torsion; field results are plain ranks.
The cohomology side also provides canonical bases, so maps induced by
subcomplex inclusions become honest matrices that compose correctly.
"""

from __future__ import annotations

import math
from fractions import Fraction

from momentangle.complexes import mask_vertices
from momentangle.linalg import (
    IntMatrix,
    field_echelon,
    field_nullspace,
    field_solve,
    rank_mod_p,
    smith_normal_form,
)


def parse_coefficients(label):
    """Split a coefficient label into ('Z'|'Q'|'F', p or None)."""
    if label == "Z":
        return "Z", None
    if label == "Q":
        return "Q", None
    if isinstance(label, str) and label.startswith("F"):
        try:
            p = int(label[1:])
        except ValueError:
            p = 0
        if p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1)):
            return "F", p
    raise ValueError(f"unknown coefficient field {label!r}; "
                     "use 'Z', 'Q', or 'Fp' with p prime")


DEFAULT_BATTERY = ("Z", "Q", "F2", "F3", "F5")


class HomologyGroup:
    """A finitely generated abelian group: free rank plus cyclic torsion."""

    __slots__ = ("rank", "torsion")

    def __init__(self, rank, torsion=()):
        self.rank = rank
        self.torsion = tuple(torsion)

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion

    def as_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}

    def __eq__(self, other):
        return (isinstance(other, HomologyGroup)
                and self.rank == other.rank and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))

    def __repr__(self):
        if self.is_zero:
            return "HomologyGroup(0)"
        parts = []
        if self.rank:
            parts.append(f"rank={self.rank}")
        if self.torsion:
            parts.append(f"torsion={self.torsion}")
        return f"HomologyGroup({', '.join(parts)})"


class ChainComplex:
    """Simplicial chain complex of a complex, empty face included.

    Degree d holds the faces with d+1 vertices, sorted by mask value.
    ``boundary_matrix(d)`` maps degree d to degree d-1 with alternating
    signs along ascending vertex order; the boundary of a vertex is the
    empty face, which makes homology reduced.

    A ``degree_range`` (lo, hi) restricts face collection to what the
    boundaries for homology in degrees lo..hi need.
    """

    def __init__(self, complex, degree_range=None):
        lo, hi = degree_range if degree_range else (-1, complex.dim)
        if lo < -1:
            lo = -1
        self.complex = complex
        self.lo = lo
        self.hi = hi
        by_degree = {d: [] for d in range(lo - 1, hi + 2)}
        for f in complex.faces:
            d = f.bit_count() - 1
            if lo - 1 <= d <= hi + 1:
                by_degree[d].append(f)
        self._faces = {d: sorted(masks) for d, masks in by_degree.items()}
        self._index = {d: {f: i for i, f in enumerate(masks)}
                       for d, masks in self._faces.items()}
        self._boundaries = {}

    def faces(self, d):
        return self._faces.get(d, [])

    def face_index(self, d):
        return self._index.get(d, {})

    def boundary_matrix(self, d):
        """The map C_d -> C_{d-1} as an integer matrix."""
        if d in self._boundaries:
            return self._boundaries[d]
        sources = self.faces(d)
        target_index = self.face_index(d - 1)
        entries = {}
        for j, f in enumerate(sources):
            for i, v in enumerate(mask_vertices(f)):
                sub = f ^ (1 << v)
                entries[target_index[sub], j] = -1 if i % 2 else 1
        matrix = IntMatrix(len(self.faces(d - 1)), len(sources), entries)
        self._boundaries[d] = matrix
        return matrix

    def differential_squares_to_zero(self):
        return all((self.boundary_matrix(d) @ self.boundary_matrix(d + 1)).is_zero
                   for d in range(self.lo, self.hi + 1))


def reduced_homology(complex, coeffs="Z", degree_range=None):
    """Reduced homology groups by degree, over the named coefficients.

    Returns {degree: HomologyGroup} for degrees in the range (default
    -1..dim).  Field coefficients yield torsion-free groups whose rank
    is the vector-space dimension.
    """
    kind, p = parse_coefficients(coeffs)
    lo, hi = degree_range if degree_range else (-1, complex.dim)
    lo = max(lo, -1)
    chain = ChainComplex(complex, (lo, hi))
    out = {}
    if kind == "F":
        ranks = {d: rank_mod_p(chain.boundary_matrix(d), p)
                 for d in range(lo, hi + 2)}
        for d in range(lo, hi + 1):
            out[d] = HomologyGroup(len(chain.faces(d)) - ranks[d] - ranks[d + 1])
    else:
        forms = {d: smith_normal_form(chain.boundary_matrix(d))
                 for d in range(lo, hi + 2)}
        for d in range(lo, hi + 1):
            rank = len(chain.faces(d)) - forms[d].rank - forms[d + 1].rank
            torsion = forms[d + 1].torsion if kind == "Z" else ()
            out[d] = HomologyGroup(rank, torsion)
    return out


def reduced_cohomology(complex, coeffs="Z", degree_range=None):
    """Reduced cohomology groups by degree, computed from coboundaries."""
    kind, p = parse_coefficients(coeffs)
    lo, hi = degree_range if degree_range else (-1, complex.dim)
    lo = max(lo, -1)
    chain = ChainComplex(complex, (lo, hi))
    # The coboundary out of degree d is the transpose of the boundary
    # into it; transposition preserves rank and invariant factors.
    out = {}
    if kind == "F":
        ranks = {d: rank_mod_p(chain.boundary_matrix(d), p)
                 for d in range(lo, hi + 2)}
        for d in range(lo, hi + 1):
            out[d] = HomologyGroup(len(chain.faces(d)) - ranks[d] - ranks[d + 1])
    else:
        forms = {d: smith_normal_form(chain.boundary_matrix(d))
                 for d in range(lo, hi + 2)}
        for d in range(lo, hi + 1):
            rank = len(chain.faces(d)) - forms[d].rank - forms[d + 1].rank
            torsion = forms[d].torsion if kind == "Z" else ()
            out[d] = HomologyGroup(rank, torsion)
    return out


def homology_degree_window(complex):
    """Degree range outside which reduced homology provably vanishes.

    A complex containing the full (m-1)-skeleton on its support has the
    chain groups of a simplex through degree m-1, so reduced homology
    vanishes below degree m-1.  Returns (lo, hi) suitable for
    ``degree_range``; hi is just the dimension.
    """
    m = complex.support_neighbourliness
    return max(m - 1, -1), complex.dim


class CochainCalculator:
    """Canonical bases for the reduced cohomology of one complex.

    For each degree the cohomology group is presented by an ordered list
    of generators with ``orders`` (0 for a free generator, e > 1 for a
    torsion generator of order e), and any cocycle can be expressed in
    class coordinates against that basis — reduced modulo the orders, so
    two cocycles are cohomologous exactly when their coordinates agree.

    Over the integers this runs Smith normal form with transforms; over
    a field it echelonizes.  Intended for small complexes.
    """

    def __init__(self, complex, coeffs="Z"):
        self.complex = complex
        self.coeffs = coeffs
        self.kind, self.p = parse_coefficients(coeffs)
        self.chain = ChainComplex(complex)
        self._degree_data = {}

    def degrees(self):
        return range(-1, self.complex.dim + 1)

    def faces(self, d):
        return self.chain.faces(d)

    def face_index(self, d):
        return self.chain.face_index(d)

    def coboundary_matrix(self, d):
        return self.chain.boundary_matrix(d + 1).transpose()

    # -- presentation ---------------------------------------------------

    def _data(self, d):
        if d in self._degree_data:
            return self._degree_data[d]
        data = (self._setup_integer(d) if self.kind == "Z"
                else self._setup_field(d))
        self._degree_data[d] = data
        return data

    def _setup_integer(self, d):
        dim_d = len(self.faces(d))
        out = smith_normal_form(self.coboundary_matrix(d), keep_transforms=True)
        r = out.rank
        kernel_dim = dim_d - r
        # kernel coordinates of a cocycle c are the last entries of V^-1 c
        prev = self.coboundary_matrix(d - 1)
        relation_entries = {}
        for col in range(prev.num_cols):
            image = prev.column(col)
            w = out.V_inv.apply(image)
            for i in range(kernel_dim):
                if w[r + i]:
                    relation_entries[i, col] = w[r + i]
        relations = IntMatrix(kernel_dim, prev.num_cols, relation_entries)
        rel = smith_normal_form(relations, keep_transforms=True)
        orders_full = list(rel.diagonal) + [0] * (kernel_dim - rel.rank)
        kept = [i for i, e in enumerate(orders_full) if e != 1]
        generators = []
        for i in kept:
            z = rel.U_inv.column(i)
            cochain = [0] * dim_d
            for (row, col), v in out.V.entries.items():
                if col >= r and z[col - r]:
                    cochain[row] += v * z[col - r]
            generators.append(cochain)
        return {
            "orders": tuple(orders_full[i] for i in kept),
            "generators": generators,
            "V_inv": out.V_inv,
            "rank_delta": r,
            "rel_U": rel.U,
            "kept": kept,
            "orders_full": orders_full,
        }

    def _setup_field(self, d):
        dim_d = len(self.faces(d))
        zero = 0 if self.p else Fraction(0)
        delta_rows = self.coboundary_matrix(d).to_rows()
        if delta_rows:
            kernel = field_nullspace(delta_rows, self.p)
        else:
            one = 1 if self.p else Fraction(1)
            kernel = [[one if i == j else zero for i in range(dim_d)]
                      for j in range(dim_d)]
        kernel_rows = [[vec[i] for vec in kernel] for i in range(dim_d)]
        prev = self.coboundary_matrix(d - 1)
        relation_rows = []
        for col in range(prev.num_cols):
            image = prev.column(col)
            if self.p:
                image = [v % self.p for v in image]
            coords = field_solve(kernel_rows, image, self.p) if kernel else []
            relation_rows.append(coords if coords is not None else None)
        assert all(row is not None for row in relation_rows), \
            "coboundary image escaped the cocycle space"
        rank_rel, rref, pivots = (field_echelon(relation_rows, self.p)
                                  if relation_rows and kernel
                                  else (0, [], []))
        free = [j for j in range(len(kernel)) if j not in set(pivots)]
        return {
            "orders": (0,) * len(free),
            "generators": [kernel[j] for j in free],
            "kernel": kernel,
            "kernel_rows": kernel_rows,
            "rref": rref[:rank_rel],
            "pivots": pivots,
            "free": free,
        }

    def orders(self, d):
        return self._data(d)["orders"]

    def generators(self, d):
        return self._data(d)["generators"]

    def group(self, d):
        orders = self.orders(d)
        return HomologyGroup(sum(1 for e in orders if e == 0),
                             [e for e in orders if e > 1])

    def is_cocycle(self, d, vector):
        image = self.coboundary_matrix(d).apply(vector)
        if self.p:
            return all(v % self.p == 0 for v in image)
        return not any(image)

    def class_coordinates(self, d, vector):
        """Coordinates of a cocycle's class against the canonical basis.

        Torsion coordinates are reduced into [0, order); a class is zero
        exactly when all coordinates are zero.
        """
        data = self._data(d)
        if self.kind == "Z":
            w = data["V_inv"].apply(vector)
            r = data["rank_delta"]
            if any(w[:r]):
                raise ValueError("vector is not a cocycle")
            z = w[r:]
            y = data["rel_U"].apply(z)
            out = []
            for i in data["kept"]:
                e = data["orders_full"][i]
                out.append(y[i] % e if e else y[i])
            return tuple(out)
        if self.p:
            vector = [v % self.p for v in vector]
        if not self.is_cocycle(d, vector):
            raise ValueError("vector is not a cocycle")
        kernel = data["kernel"]
        if not kernel:
            return ()
        z = field_solve(data["kernel_rows"], vector, self.p)
        z = list(z)
        for row, c in zip(data["rref"], data["pivots"]):
            f = z[c]
            if f:
                if self.p:
                    z = [(a - f * b) % self.p for a, b in zip(z, row)]
                else:
                    z = [a - f * b for a, b in zip(z, row)]
        return tuple(z[j] for j in data["free"])


def check_subcomplex(sub, ambient):
    """Raise unless every facet of ``sub`` is a face of ``ambient``."""
    if sub.n != ambient.n:
        raise ValueError("subcomplex comparison needs one ambient vertex set")
    for f in sub.facets:
        if not ambient.is_face(f):
            raise ValueError(
                f"{mask_vertices(f)} is not a face of the ambient complex")


class InducedMap:
    """Cohomology map induced by a subcomplex inclusion L ⊆ M.

    Cochain restriction induces H^d(M) -> H^d(L) in every degree; this
    stores the matrix of that map against the canonical bases of the two
    CochainCalculators, with entries reduced modulo target orders.
    ``matrix(d)[i][j]`` is coordinate i of the image of M's generator j.
    """

    def __init__(self, sub_calculator, ambient_calculator):
        if sub_calculator.coeffs != ambient_calculator.coeffs:
            raise ValueError("coefficient mismatch between calculators")
        check_subcomplex(sub_calculator.complex, ambient_calculator.complex)
        self.sub = sub_calculator
        self.ambient = ambient_calculator
        self.coeffs = sub_calculator.coeffs
        self._matrices = {}

    def degrees(self):
        top = max(self.sub.complex.dim, self.ambient.complex.dim)
        return range(-1, top + 1)

    def matrix(self, d):
        if d in self._matrices:
            return self._matrices[d]
        target_orders = self.sub.orders(d) if d <= self.sub.complex.dim else ()
        columns = []
        if d <= self.ambient.complex.dim:
            ambient_index = self.ambient.face_index(d)
            sub_faces = self.sub.faces(d) if d <= self.sub.complex.dim else []
            for gen in self.ambient.generators(d):
                restricted = [gen[ambient_index[f]] for f in sub_faces]
                columns.append(self.sub.class_coordinates(d, restricted)
                               if target_orders else ())
        rows = [[col[i] for col in columns] for i in range(len(target_orders))]
        self._matrices[d] = rows
        return rows

    def is_zero_in_degree(self, d):
        return all(not v for row in self.matrix(d) for v in row)

    @property
    def is_zero(self):
        return all(self.is_zero_in_degree(d) for d in self.degrees())

    def nonzero_degrees(self):
        return [d for d in self.degrees() if not self.is_zero_in_degree(d)]


def connectivity_certificate(complex):
    """Largest c with H̃_i(ZZ) = 0 for all i <= c, plus a provenance flag.

    Cones are contractible, giving (inf, "topological") outright.
    Otherwise integral homology is scanned upward from degree -1.  The
    flag is "topological" when the complex contains the full 2-skeleton
    on its support: that forces simple connectivity, so the Hurewicz
    theorem promotes vanishing homology to vanishing homotopy.  With
    fewer than all triangles present the bound is "homology-only".
    """
    if complex.is_cone:
        return math.inf, "topological"
    flag = ("topological" if complex.support_neighbourliness >= 3
            else "homology-only")
    groups = reduced_homology(complex, "Z")
    for d in range(-1, complex.dim + 1):
        if not groups[d].is_zero:
            return d - 1, flag
    return math.inf, flag
