"""Sparse matrices over an exact field, and the Gaussian-elimination toolkit.

Matrices are immutable after construction: entries live in a dict keyed by
(row, col) holding nonzero scalars only.  Everything downstream (rank, kernel,
solve, subspace lattice) reduces to exact row reduction here; there is no
floating point and no numerical tolerance anywhere.
"""

from __future__ import annotations

from .fields import Field, RATIONALS


class Matrix:
    """A rows x cols sparse matrix over a Field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError(f"negative shape ({rows}, {cols})")
        self.field = field
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (i, j), v in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise ValueError(f"index ({i}, {j}) out of range for {rows}x{cols}")
                if v != 0:
                    clean[(i, j)] = v
        self.entries = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, field, rows, cols) -> "Matrix":
        return cls(field, rows, cols)

    @classmethod
    def identity(cls, field, n) -> "Matrix":
        one = field.one
        return cls(field, n, n, {(i, i): one for i in range(n)})

    @classmethod
    def from_rows(cls, field, rows_data) -> "Matrix":
        """Build from a dense list of rows of ints/Fractions."""
        m = len(rows_data)
        n = len(rows_data[0]) if m else 0
        entries = {}
        for i, row in enumerate(rows_data):
            if len(row) != n:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                fv = field.of_int(v) if isinstance(v, int) else v
                if field.kind != RATIONALS and not isinstance(v, int):
                    raise ValueError(f"non-integer scalar {v!r} over {field!r}")
                if fv != 0:
                    entries[(i, j)] = fv
        return cls(field, m, n, entries)

    @classmethod
    def from_triplets(cls, field, rows, cols, triplets) -> "Matrix":
        """Build from (i, j, scalar) triplets; duplicate keys are an error."""
        entries = {}
        for i, j, v in triplets:
            if (i, j) in entries:
                raise ValueError(f"duplicate entry at ({i}, {j})")
            entries[(i, j)] = v
        return cls(field, rows, cols, entries)

    @classmethod
    def column(cls, field, values) -> "Matrix":
        return cls(field, len(values), 1, {(i, 0): v for i, v in enumerate(values) if v != 0})

    # -- basics -----------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries.get(key, self.field.zero)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def __str__(self):
        if self.rows == 0 or self.cols == 0:
            return f"[{self.rows}x{self.cols}]"
        width = max((len(self.field.to_str(v)) for v in self.entries.values()), default=1)
        lines = []
        for i in range(self.rows):
            cells = [self.field.to_str(self[i, j]).rjust(width) for j in range(self.cols)]
            lines.append("[" + " ".join(cells) + "]")
        return "\n".join(lines)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        self._check_same_shape(other)
        add = self.field.add
        entries = dict(self.entries)
        for k, v in other.entries.items():
            w = add(entries.get(k, self.field.zero), v)
            if w == 0:
                entries.pop(k, None)
            else:
                entries[k] = w
        return Matrix(self.field, self.rows, self.cols, entries)

    def __sub__(self, other):
        return self + other.scale(self.field.neg(self.field.one))

    def __neg__(self):
        return self.scale(self.field.neg(self.field.one))

    def scale(self, scalar):
        if scalar == 0:
            return Matrix(self.field, self.rows, self.cols)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, {k: mul(scalar, v) for k, v in self.entries.items()})

    def __mul__(self, other):
        """Matrix product self * other."""
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        mul, add = self.field.mul, self.field.add
        by_row = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        acc = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                key = (i, j)
                w = add(acc.get(key, 0), mul(a, b)) if key in acc else mul(a, b)
                if w == 0:
                    acc.pop(key, None)
                else:
                    acc[key] = w
        return Matrix(self.field, self.rows, other.cols, acc)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def _check_same_shape(self, other):
        if self.shape != other.shape or self.field != other.field:
            raise ValueError(f"shape/field mismatch: {self.shape} vs {other.shape}")

    # -- slicing and stacking ---------------------------------------------

    def col_vector(self, j) -> "Matrix":
        return Matrix(
            self.field, self.rows, 1,
            {(i, 0): v for (i, jj), v in self.entries.items() if jj == j},
        )

    def select_columns(self, js) -> "Matrix":
        pos = {j: newj for newj, j in enumerate(js)}
        entries = {(i, pos[j]): v for (i, j), v in self.entries.items() if j in pos}
        return Matrix(self.field, self.rows, len(js), entries)

    def select_rows(self, is_) -> "Matrix":
        pos = {i: newi for newi, i in enumerate(is_)}
        entries = {(pos[i], j): v for (i, j), v in self.entries.items() if i in pos}
        return Matrix(self.field, len(is_), self.cols, entries)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows or a.field != b.field:
        raise ValueError("hstack shape/field mismatch")
    entries = dict(a.entries)
    for (i, j), v in b.entries.items():
        entries[(i, j + a.cols)] = v
    return Matrix(a.field, a.rows, a.cols + b.cols, entries)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.cols or a.field != b.field:
        raise ValueError("vstack shape/field mismatch")
    entries = dict(a.entries)
    for (i, j), v in b.entries.items():
        entries[(i + a.rows, j)] = v
    return Matrix(a.field, a.rows + b.rows, a.cols, entries)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    if a.field != b.field:
        raise ValueError("field mismatch")
    entries = dict(a.entries)
    for (i, j), v in b.entries.items():
        entries[(i + a.rows, j + a.cols)] = v
    return Matrix(a.field, a.rows + b.rows, a.cols + b.cols, entries)


# -- elimination ------------------------------------------------------------


def _pivot_cost(field, value):
    # Over Q prefer pivots with small denominator, then small numerator,
    # to keep fraction growth down; over GF(p) any nonzero pivot is as good.
    if field.kind == RATIONALS:
        return (value.denominator, abs(value.numerator))
    return 0


def row_echelon(a: Matrix):
    """Reduced row-echelon form.

    Returns (R, pivots) where R is the RREF of `a` (unit pivots, zeros above
    and below) and pivots is the list of (row, col) pivot positions.
    """
    field = a.field
    m, n = a.rows, a.cols
    # dense-ish working rows as dicts col -> value
    work = [dict() for _ in range(m)]
    for (i, j), v in a.entries.items():
        work[i][j] = v
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        best, best_cost = None, None
        for i in range(r, m):
            v = work[i].get(c)
            if v:
                cost = _pivot_cost(field, v)
                if best is None or cost < best_cost:
                    best, best_cost = i, cost
                    if cost == 0:
                        break
        if best is None:
            continue
        work[r], work[best] = work[best], work[r]
        pivot = work[r][c]
        if pivot != field.one:
            inv = field.inv(pivot)
            work[r] = {j: field.mul(inv, v) for j, v in work[r].items()}
        prow = work[r]
        for i in range(m):
            if i == r:
                continue
            coeff = work[i].get(c)
            if not coeff:
                continue
            row = work[i]
            for j, v in prow.items():
                w = field.sub(row.get(j, field.zero), field.mul(coeff, v))
                if w == 0:
                    row.pop(j, None)
                else:
                    row[j] = w
        pivots.append((r, c))
        r += 1
    entries = {}
    for i, row in enumerate(work):
        for j, v in row.items():
            if v != 0:
                entries[(i, j)] = v
    return Matrix(field, m, n, entries), pivots


def rank(a: Matrix) -> int:
    return len(row_echelon(a)[1])


def kernel_basis(a: Matrix) -> Matrix:
    """Columns form a basis of the null space of `a` (a.cols x nullity)."""
    field = a.field
    red, pivots = row_echelon(a)
    pivot_cols = [c for (_, c) in pivots]
    pivot_of_col = {c: r for (r, c) in pivots}
    free_cols = [c for c in range(a.cols) if c not in pivot_of_col]
    entries = {}
    for k, fc in enumerate(free_cols):
        entries[(fc, k)] = field.one
        for (r, c) in pivots:
            v = red[r, fc]
            if v != 0:
                entries[(c, k)] = field.neg(v)
    return Matrix(field, a.cols, len(free_cols), entries)


def column_space_basis(a: Matrix) -> Matrix:
    """A basis of the column space, selected among the original columns."""
    _, pivots = row_echelon(a)
    return a.select_columns([c for (_, c) in pivots])


def solve(a: Matrix, b: Matrix):
    """One solution X of a * X = b, or None if inconsistent.

    Free variables are set to zero.  When `a` has full column rank the
    solution is unique.
    """
    if a.rows != b.rows:
        raise ValueError(f"solve shape mismatch: {a.shape} vs {b.shape}")
    field = a.field
    red, pivots = row_echelon(hstack(a, b))
    for (r, c) in pivots:
        if c >= a.cols:
            return None  # a pivot in the rhs block: inconsistent
    entries = {}
    for (r, c) in pivots:
        for k in range(b.cols):
            v = red[r, a.cols + k]
            if v != 0:
                entries[(c, k)] = v
    return Matrix(field, a.cols, b.cols, entries)


def solve_left(a: Matrix, b: Matrix):
    """One solution X of X * a = b, or None."""
    xt = solve(a.transpose(), b.transpose())
    return None if xt is None else xt.transpose()


def right_inverse(a: Matrix):
    """R with a * R = identity; exists iff a has full row rank."""
    return solve(a, Matrix.identity(a.field, a.rows))


def left_inverse(a: Matrix):
    """L with L * a = identity; exists iff a has full column rank."""
    return solve_left(a, Matrix.identity(a.field, a.cols))


def inverse(a: Matrix):
    if a.rows != a.cols:
        raise ValueError("inverse of non-square matrix")
    inv = right_inverse(a)
    if inv is None:
        raise ValueError("singular matrix")
    return inv


class IncrementalReducer:
    """Online Gaussian elimination over sparse equation rows.

    Rows arrive as {var: coeff} dicts plus a right-hand side; each is reduced
    against the pivots seen so far and either vanishes (consistency check),
    or contributes a new pivot.  A stored row contains only its own pivot,
    later pivots, and free variables, so solutions come from one backward
    pass in reverse insertion order.
    """

    __slots__ = ("field", "pivot_of_var", "rows", "inconsistent")

    def __init__(self, field: Field):
        self.field = field
        self.pivot_of_var = {}
        self.rows = []  # (pivot_var, coeffs, rhs); coeffs normalized, pivot coeff 1
        self.inconsistent = False

    def add_row(self, coeffs: dict, rhs):
        field = self.field
        coeffs = dict(coeffs)
        while coeffs:
            hit = None
            for var in coeffs:
                idx = self.pivot_of_var.get(var)
                if idx is not None:
                    hit = (var, idx)
                    break
            if hit is None:
                break
            var, idx = hit
            factor = coeffs.pop(var)
            _, prow, prhs = self.rows[idx]
            for v, c in prow.items():
                if v == var:
                    continue
                w = field.sub(coeffs.get(v, field.zero), field.mul(factor, c))
                if w == 0:
                    coeffs.pop(v, None)
                else:
                    coeffs[v] = w
            rhs = field.sub(rhs, field.mul(factor, prhs))
        if not coeffs:
            if rhs != 0:
                self.inconsistent = True
            return
        pivot = min(coeffs, key=lambda v: (_pivot_cost(field, coeffs[v]), v))
        pval = coeffs[pivot]
        if pval != field.one:
            inv = field.inv(pval)
            coeffs = {v: field.mul(inv, c) for v, c in coeffs.items()}
            rhs = field.mul(inv, rhs)
        self.pivot_of_var[pivot] = len(self.rows)
        self.rows.append((pivot, coeffs, rhs))

    def particular_solution(self):
        """{var: value} with free variables set to zero, or None."""
        if self.inconsistent:
            return None
        field = self.field
        values = {}
        for pivot, coeffs, rhs in reversed(self.rows):
            acc = rhs
            for v, c in coeffs.items():
                if v == pivot:
                    continue
                xv = values.get(v)
                if xv is not None:
                    acc = field.sub(acc, field.mul(c, xv))
            if acc != 0:
                values[pivot] = acc
        return values

    def kernel_assignment(self, free_var):
        """The homogeneous solution with the given free variable set to one."""
        field = self.field
        values = {free_var: field.one}
        for pivot, coeffs, _ in reversed(self.rows):
            acc = field.zero
            for v, c in coeffs.items():
                if v == pivot:
                    continue
                xv = values.get(v)
                if xv is not None:
                    acc = field.sub(acc, field.mul(c, xv))
            if acc != 0:
                values[pivot] = acc
        return values

    def free_variables(self, num_vars: int):
        return [v for v in range(num_vars) if v not in self.pivot_of_var]


# -- subspaces ---------------------------------------------------------------
#
# A subspace of k^n is carried around as an n x d matrix whose columns form a
# basis.  `reduced_basis` puts it in reduced column-echelon form, which is the
# canonical representative, so equal subspaces produce identical matrices.


def reduced_basis(a: Matrix) -> Matrix:
    """Canonical basis of the column space: reduced column echelon form."""
    red, pivots = row_echelon(a.transpose())
    return red.select_rows([r for (r, _) in pivots]).transpose()


def subspace_sum(a: Matrix, b: Matrix) -> Matrix:
    return reduced_basis(hstack(a, b))


def subspace_intersection(a: Matrix, b: Matrix) -> Matrix:
    """Canonical basis of (col a) intersect (col b); both in k^n."""
    if a.rows != b.rows:
        raise ValueError("ambient dimension mismatch")
    if a.cols == 0 or b.cols == 0:
        return Matrix(a.field, a.rows, 0)
    ker = kernel_basis(hstack(a, -b))
    top = ker.select_rows(list(range(a.cols)))
    return reduced_basis(a * top)


def subspace_contains(a: Matrix, vectors: Matrix) -> bool:
    """Is every column of `vectors` inside the column space of `a`?"""
    if vectors.cols == 0:
        return True
    return solve(a, vectors) is not None


def subspace_equal(a: Matrix, b: Matrix) -> bool:
    return reduced_basis(a) == reduced_basis(b)
