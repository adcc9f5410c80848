"""Linear systems over unknown chain maps, and lifting squares.

Chain-map conditions, triangle identities and coaction compatibility are all
linear in the entries of an unknown degree-0 graded map, so solving for
fillers, sampling the space of maps with prescribed compatibilities, and
probing right lifting properties reduce to one sparse exact linear system,
row-reduced incrementally as the equations stream in.
"""

from __future__ import annotations

from .complexes import ChainComplex, ChainMap
from .matrices import IncrementalReducer, Matrix


class LinearSystem:
    """Equations, linear over the base field, in unknown graded maps.

    Each unknown is a degree-0 graded map u: S -> T; one variable per matrix
    entry u_n[i, j] over the degrees where S and T are both supported.
    Declare all unknowns before adding constraints.
    """

    def __init__(self, field):
        self.field = field
        self.unknowns = {}
        self._index = {}
        self._rindex = []
        self.num_vars = 0
        self._rows = []
        self._reducer = None

    def add_unknown(self, name: str, source: ChainComplex, target: ChainComplex) -> str:
        if name in self.unknowns:
            raise ValueError(f"duplicate unknown {name!r}")
        self.unknowns[name] = (source, target)
        for n in source.degrees():
            rows, cols = target.dim(n), source.dim(n)
            if rows and cols:
                for i in range(rows):
                    for j in range(cols):
                        self._index[(name, n, i, j)] = self.num_vars
                        self._rindex.append((name, n, i, j))
                        self.num_vars += 1
        return name

    def var(self, name, n, i, j):
        return self._index.get((name, n, i, j))

    def _emit(self, eqs, rhs_matrix):
        """Flush accumulated equation cells; cells absent from eqs but present
        in the rhs become 0 = rhs consistency rows."""
        zero = self.field.zero
        if rhs_matrix is None:
            for coeffs in eqs.values():
                if coeffs:
                    self._reducer.add_row(coeffs, zero)
            return
        seen = set(eqs)
        for cell, coeffs in eqs.items():
            self._reducer.add_row(coeffs, rhs_matrix[cell])
        for cell, value in rhs_matrix.entries.items():
            if cell not in seen and value != 0:
                self._reducer.add_row({}, value)

    def _accumulate(self, eqs, n, left, name, right, scalar):
        """Add entries of scalar * left . u_n . right into the equation grid."""
        mul, add = self.field.mul, self.field.add
        src, tgt = self.unknowns[name]
        urows, ucols = tgt.dim(n), src.dim(n)
        if urows == 0 or ucols == 0:
            return
        one = self.field.one
        if left is None:
            left_by_col = {a: ((a, one),) for a in range(urows)}
        else:
            left_by_col = {}
            for (r, a), v in left.entries.items():
                left_by_col.setdefault(a, []).append((r, v))
        if right is None:
            right_by_row = {b: ((b, one),) for b in range(ucols)}
        else:
            right_by_row = {}
            for (b, c), v in right.entries.items():
                right_by_row.setdefault(b, []).append((c, v))
        for a, lefts in left_by_col.items():
            for b, rights in right_by_row.items():
                v = self.var(name, n, a, b)
                if v is None:
                    continue
                for r, lv in lefts:
                    for c, rv in rights:
                        coeff = mul(scalar, mul(lv, rv))
                        eq = eqs.setdefault((r, c), {})
                        w = add(eq.get(v, self.field.zero), coeff)
                        if w == 0:
                            eq.pop(v, None)
                        else:
                            eq[v] = w

    # -- constraint builders -----------------------------------------------

    def add_chain_constraints(self, name: str):
        """d_T . u = u . d_S for the unknown u: S -> T."""
        src, tgt = self.unknowns[name]
        one = self.field.one
        degrees = sorted(set(src.space.dims) | {n + 1 for n in src.space.dims})
        for n in degrees:
            if tgt.dim(n - 1) == 0 or src.dim(n) == 0:
                continue
            eqs = {}
            dt = tgt.d(n)
            if not dt.is_zero():
                self._accumulate(eqs, n, dt, name, None, one)
            ds = src.d(n)
            if not ds.is_zero():
                self._accumulate(eqs, n - 1, None, name, ds, self.field.neg(one))
            self._emit(eqs, None)

    def add_precompose_constraint(self, name: str, a: ChainMap, rhs: ChainMap):
        """u . a = rhs, with a: A -> S known."""
        src, tgt = self.unknowns[name]
        for n in sorted(set(a.source.space.dims) | set(tgt.space.dims)):
            if a.source.dim(n) == 0:
                continue
            eqs = {}
            self._accumulate(eqs, n, None, name, a.component(n), self.field.one)
            self._emit(eqs, rhs.component(n))

    def add_postcompose_constraint(self, name: str, p: ChainMap, rhs: ChainMap):
        """p . u = rhs, with p: T -> P known."""
        src, tgt = self.unknowns[name]
        for n in sorted(set(src.space.dims) | set(p.target.space.dims)):
            if src.dim(n) == 0:
                continue
            eqs = {}
            self._accumulate(eqs, n, p.component(n), name, None, self.field.one)
            self._emit(eqs, rhs.component(n))

    def add_square_coupling(self, top: str, p: ChainMap, bottom: str, i: ChainMap):
        """p . u_top = u_bottom . i  (commuting-square coupling, both unknown)."""
        src_top, _ = self.unknowns[top]
        neg = self.field.neg(self.field.one)
        for n in sorted(set(src_top.space.dims) | set(p.target.space.dims)):
            if src_top.dim(n) == 0:
                continue
            eqs = {}
            self._accumulate(eqs, n, p.component(n), top, None, self.field.one)
            self._accumulate(eqs, n, None, bottom, i.component(n), neg)
            self._emit(eqs, None)

    def add_coaction_constraints(self, name: str, rho_src: ChainMap, rho_tgt: ChainMap,
                                 coalg_carrier: ChainComplex):
        """rho_T . u = (u (x) id_C) . rho_S for the unknown u: S -> T.

        The tensored term is handled entrywise: a coaction entry of S sending
        basis c to (p, i, j) with value v makes the unknown contribute
        v * u_p[r, i] at row (p, r, j) of (T (x) C)_n.
        """
        from .tensors import TensorLayout

        src, tgt = self.unknowns[name]
        add = self.field.add
        src_layout = TensorLayout(src, coalg_carrier)
        tgt_layout = TensorLayout(tgt, coalg_carrier)
        for n in src.degrees():
            if src.dim(n) == 0:
                continue
            eqs = {}
            rt = rho_tgt.component(n)
            if not rt.is_zero():
                self._accumulate(eqs, n, rt, name, None, self.field.one)
            rs = rho_src.component(n)
            for (flat, c), v in rs.entries.items():
                p, _, i, j = src_layout.decode(n, flat)
                if tgt_layout.block(n, p) is None:
                    continue
                negv = self.field.neg(v)
                for r in range(tgt.dim(p)):
                    var = self.var(name, p, r, i)
                    if var is None:
                        continue
                    out = tgt_layout.flat(n, p, r, j)
                    eq = eqs.setdefault((out, c), {})
                    w = add(eq.get(var, self.field.zero), negv)
                    if w == 0:
                        eq.pop(var, None)
                    else:
                        eq[var] = w
            self._emit(eqs, None)

    # -- solving -------------------------------------------------------------

    def _values_to_maps(self, values: dict):
        out = {}
        comps = {name: {} for name in self.unknowns}
        for var, value in values.items():
            if value == 0:
                continue
            name, n, i, j = self._rindex[var]
            comps[name].setdefault(n, {})[(i, j)] = value
        for name, (src, tgt) in self.unknowns.items():
            mats = {
                n: Matrix(self.field, tgt.dim(n), src.dim(n), entries)
                for n, entries in comps[name].items()
            }
            out[name] = ChainMap(src, tgt, mats, check=False)
        return out

    def solve_maps(self):
        """One solution as {name: ChainMap}, or None if inconsistent."""
        values = self._reducer.particular_solution()
        if values is None:
            return None
        return self._values_to_maps(values)

    def solution_space(self):
        """(particular, basis): a particular solution plus a basis of the
        homogeneous solution space, both as {name: ChainMap} dicts.
        particular is None when the system is inconsistent."""
        values = self._reducer.particular_solution()
        particular = None if values is None else self._values_to_maps(values)
        basis = [
            self._values_to_maps(self._reducer.kernel_assignment(free))
            for free in self._reducer.free_variables(self.num_vars)
        ]
        return particular, basis


class LiftingProblem:
    """A commutative square: right . top = bottom . left.

    The four maps may be chain maps or any structured maps exposing `@`
    composition and equality (coalgebra maps, comodule maps).
    """

    __slots__ = ("left", "right", "top", "bottom")

    def __init__(self, left, right, top, bottom):
        if right @ top != bottom @ left:
            raise ValueError("square does not commute")
        self.left = left
        self.right = right
        self.top = top
        self.bottom = bottom

    def filler_is_valid(self, filler) -> bool:
        """Both triangles: filler . left = top and right . filler = bottom."""
        return filler @ self.left == self.top and self.right @ filler == self.bottom
