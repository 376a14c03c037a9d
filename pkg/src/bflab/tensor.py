"""Sparse exact linear maps between tensor powers of a rank-n free module.

A :class:`TensorMap` sends ``X^{in_arity}`` to ``X^{out_arity}`` for a rank-n
module X over an exact ground field.  Basis vectors of a tensor power are
indexed by tuples of digits in ``[0, n)``; the flattened position of a tuple
is its mixed-radix value (lexicographic order).  Storage is column-major:
``cols[in_tuple][out_tuple] = coefficient`` with no zero coefficients kept, so
two maps are equal iff their column dictionaries coincide.

Composition convention: ``compose(f, g)`` is "f then g", matching the
top-to-bottom reading of string diagrams.  ``f >> g`` (then) and ``f @ g``
(side by side) are available as operator shorthands.

Large composites are evaluated through *stage pipelines* instead of explicit
matrix products: a stage knows how to push one sparse column through itself.
Permutations and maps of the form ``1^a (x) f (x) 1^b`` are applied directly
to index tuples, which keeps intermediate data proportional to the support of
a single column.  ``chain_equal`` compares two pipelines either by full
materialization or, above a flattened-dimension threshold (default 10^5,
``BFL_STREAM_THRESHOLD``), by streaming over input basis vectors; both paths
agree and that is property-tested.
"""

from __future__ import annotations

import itertools
import os

from .errors import ShapeError

DEFAULT_STREAM_THRESHOLD = 100_000

_threshold_override = None


def set_stream_threshold(value):
    """Process-wide override of the dense/streaming cutoff (None resets)."""
    global _threshold_override
    _threshold_override = value


def stream_threshold() -> int:
    if _threshold_override is not None:
        return _threshold_override
    value = os.environ.get("BFL_STREAM_THRESHOLD")
    if value is None:
        return DEFAULT_STREAM_THRESHOLD
    return int(value)


def flatten_index(digits, n: int) -> int:
    """Mixed-radix value of a digit tuple, most significant digit first."""
    k = 0
    for d in digits:
        k = k * n + d
    return k


def unflatten_index(k: int, n: int, arity: int) -> tuple:
    digits = [0] * arity
    for i in range(arity - 1, -1, -1):
        digits[i] = k % n
        k //= n
    return tuple(digits)


def all_indices(n: int, arity: int):
    """All digit tuples of the given arity in lexicographic order."""
    return itertools.product(range(n), repeat=arity)


class TensorMap:
    """A sparse exact linear map X^a -> X^b."""

    __slots__ = ("ring", "n", "in_arity", "out_arity", "cols")

    def __init__(self, ring, n, in_arity, out_arity, cols=None):
        self.ring = ring
        self.n = n
        self.in_arity = in_arity
        self.out_arity = out_arity
        self.cols = cols if cols is not None else {}

    @classmethod
    def from_entries(cls, ring, n, in_arity, out_arity, entries):
        """Build from an iterable of (out_tuple, in_tuple, scalar) triples."""
        cols: dict = {}
        for out, inn, value in entries:
            out = tuple(out)
            inn = tuple(inn)
            if len(out) != out_arity or len(inn) != in_arity:
                raise ShapeError(f"entry {out} <- {inn} does not match arities")
            if any(d < 0 or d >= n for d in out + inn):
                raise ShapeError(f"entry {out} <- {inn} has digits outside [0, {n})")
            value = ring.coerce(value)
            col = cols.setdefault(inn, {})
            acc = ring.add(col.get(out, ring.zero), value)
            if ring.is_zero(acc):
                col.pop(out, None)
            else:
                col[out] = acc
        for inn in [k for k, col in cols.items() if not col]:
            del cols[inn]
        return cls(ring, n, in_arity, out_arity, cols)

    def entries(self):
        """Iterate (out_tuple, in_tuple, scalar) in lexicographic order."""
        for inn in sorted(self.cols):
            col = self.cols[inn]
            for out in sorted(col):
                yield out, inn, col[out]

    def column(self, in_tuple) -> dict:
        return self.cols.get(tuple(in_tuple), {})

    def __eq__(self, other):
        if not isinstance(other, TensorMap):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.n == other.n
            and self.in_arity == other.in_arity
            and self.out_arity == other.out_arity
            and self.cols == other.cols
        )

    def __hash__(self):
        return hash(
            (
                self.ring,
                self.n,
                self.in_arity,
                self.out_arity,
                tuple(sorted((i, tuple(sorted(c.items()))) for i, c in self.cols.items())),
            )
        )

    def __repr__(self):
        nnz = sum(len(c) for c in self.cols.values())
        return (
            f"TensorMap({self.ring.tag}, n={self.n}, "
            f"{self.in_arity}->{self.out_arity}, nnz={nnz})"
        )

    def __rshift__(self, other):
        return compose(self, other)

    def __matmul__(self, other):
        return tensor(self, other)

    # stage protocol
    def push(self, col: dict) -> dict:
        ring = self.ring
        out: dict = {}
        for mid, c in col.items():
            for o, c2 in self.cols.get(mid, {}).items():
                acc = ring.add(out.get(o, ring.zero), ring.mul(c, c2))
                if ring.is_zero(acc):
                    out.pop(o, None)
                else:
                    out[o] = acc
        return out

    def is_identity(self) -> bool:
        if self.in_arity != self.out_arity:
            return False
        if len(self.cols) != self.n**self.in_arity:
            return False
        one = self.ring.one
        return all(col == {inn: one} for inn, col in self.cols.items())


def identity(ring, n: int, arity: int) -> TensorMap:
    one = ring.one
    cols = {idx: {idx: one} for idx in all_indices(n, arity)}
    return TensorMap(ring, n, arity, arity, cols)


def zero_map(ring, n: int, in_arity: int, out_arity: int) -> TensorMap:
    return TensorMap(ring, n, in_arity, out_arity, {})


def basis_vector(ring, n: int, digits) -> TensorMap:
    """The basis element of X^len(digits) as a map from the ground field."""
    digits = tuple(digits)
    return TensorMap(ring, n, 0, len(digits), {(): {digits: ring.one}})


def _check_same_space(f: TensorMap, g: TensorMap):
    if f.ring != g.ring or f.n != g.n:
        raise ShapeError(f"ring or rank mismatch: {f!r} vs {g!r}")


def compose(f: TensorMap, g: TensorMap) -> TensorMap:
    """f then g, as maps read top to bottom."""
    _check_same_space(f, g)
    if f.out_arity != g.in_arity:
        raise ShapeError(
            f"cannot compose {f.in_arity}->{f.out_arity} with {g.in_arity}->{g.out_arity}"
        )
    cols = {}
    for inn, col in f.cols.items():
        out = g.push(col)
        if out:
            cols[inn] = out
    return TensorMap(f.ring, f.n, f.in_arity, g.out_arity, cols)


def tensor(f: TensorMap, g: TensorMap) -> TensorMap:
    """Kronecker product, f occupying the leftmost factors."""
    _check_same_space(f, g)
    ring = f.ring
    cols = {}
    for fi, fcol in f.cols.items():
        for gi, gcol in g.cols.items():
            col = {}
            for fo, a in fcol.items():
                for go, b in gcol.items():
                    col[fo + go] = ring.mul(a, b)
            cols[fi + gi] = col
    return TensorMap(ring, f.n, f.in_arity + g.in_arity, f.out_arity + g.out_arity, cols)


def permute(ring, n: int, arity: int, perm) -> TensorMap:
    """The map sending factor k of the input to position perm[k] of the output.

    With compose(f, g) = "f then g", applying rho then sigma equals
    permute(sigma o rho) where (sigma o rho)[k] = sigma[rho[k]].
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(arity)):
        raise ShapeError(f"{perm} is not a permutation of 0..{arity - 1}")
    one = ring.one
    cols = {}
    for idx in all_indices(n, arity):
        out = [0] * arity
        for k, d in enumerate(idx):
            out[perm[k]] = d
        cols[idx] = {tuple(out): one}
    return TensorMap(ring, n, arity, arity, cols)


def apply_map(f: TensorMap, v: TensorMap) -> TensorMap:
    """Apply f to a vector (a map with in_arity 0)."""
    if v.in_arity != 0:
        raise ShapeError("apply expects a vector (in_arity 0)")
    return compose(v, f)


def scale(f: TensorMap, c) -> TensorMap:
    ring = f.ring
    c = ring.coerce(c)
    if ring.is_zero(c):
        return zero_map(ring, f.n, f.in_arity, f.out_arity)
    cols = {
        inn: {out: ring.mul(c, v) for out, v in col.items()} for inn, col in f.cols.items()
    }
    return TensorMap(ring, f.n, f.in_arity, f.out_arity, cols)


def add_maps(f: TensorMap, g: TensorMap) -> TensorMap:
    _check_same_space(f, g)
    if f.in_arity != g.in_arity or f.out_arity != g.out_arity:
        raise ShapeError("cannot add maps of different arities")
    ring = f.ring
    cols = {inn: dict(col) for inn, col in f.cols.items()}
    for inn, col in g.cols.items():
        dst = cols.setdefault(inn, {})
        for out, v in col.items():
            acc = ring.add(dst.get(out, ring.zero), v)
            if ring.is_zero(acc):
                dst.pop(out, None)
            else:
                dst[out] = acc
        if not dst:
            del cols[inn]
    return TensorMap(ring, f.n, f.in_arity, f.out_arity, cols)


def transpose(f: TensorMap) -> TensorMap:
    cols: dict = {}
    for inn, col in f.cols.items():
        for out, v in col.items():
            cols.setdefault(out, {})[inn] = v
    return TensorMap(f.ring, f.n, f.out_arity, f.in_arity, cols)


def is_scalar_multiple_of_identity(f: TensorMap):
    """Return the scalar c with f = c * id, or None if there is none."""
    if f.in_arity != f.out_arity:
        return None
    ring = f.ring
    c = None
    for idx in all_indices(f.n, f.in_arity):
        col = f.cols.get(idx, {})
        if not col:
            if c is None:
                c = ring.zero
            elif not ring.is_zero(c):
                return None
            continue
        if set(col) != {idx}:
            return None
        v = col[idx]
        if c is None:
            c = v
        elif v != c:
            return None
    return c


# ---------------------------------------------------------------------------
# stage pipelines
# ---------------------------------------------------------------------------


class PermStage:
    """Reorder tensor factors without materializing a permutation matrix.

    ``sources[i]`` is the input position feeding output position i.
    """

    __slots__ = ("sources", "in_arity", "out_arity")

    def __init__(self, sources):
        self.sources = tuple(sources)
        self.in_arity = len(self.sources)
        self.out_arity = len(self.sources)
        if sorted(self.sources) != list(range(self.in_arity)):
            raise ShapeError(f"{sources} is not a permutation")

    def push(self, col: dict) -> dict:
        src = self.sources
        return {tuple(t[s] for s in src): c for t, c in col.items()}


class ParallelStage:
    """Side-by-side blocks ``f1 (x) f2 (x) ...`` applied per index segment.

    Each part is either an int (an identity block of that width, passed
    through digit-wise) or a TensorMap.  Identity blocks cost nothing, so
    maps like ``1^3 (x) cup (x) 1`` stay cheap on wide wires.
    """

    __slots__ = ("parts", "in_arity", "out_arity", "ring")

    def __init__(self, ring, parts):
        self.ring = ring
        self.parts = []
        self.in_arity = 0
        self.out_arity = 0
        for part in parts:
            if isinstance(part, int):
                if part < 0:
                    raise ShapeError("identity width must be >= 0")
                if part == 0:
                    continue
                self.parts.append(part)
                self.in_arity += part
                self.out_arity += part
            else:
                if part.ring != ring:
                    raise ShapeError("parallel blocks must share the ground ring")
                self.parts.append(part)
                self.in_arity += part.in_arity
                self.out_arity += part.out_arity

    def push(self, col: dict) -> dict:
        ring = self.ring
        out: dict = {}
        for t, c in col.items():
            partials = [((), c)]
            pos = 0
            dead = False
            for part in self.parts:
                if isinstance(part, int):
                    seg = t[pos : pos + part]
                    pos += part
                    partials = [(acc + seg, v) for acc, v in partials]
                else:
                    seg = t[pos : pos + part.in_arity]
                    pos += part.in_arity
                    pcol = part.cols.get(seg)
                    if not pcol:
                        dead = True
                        break
                    partials = [
                        (acc + o, ring.mul(v, w))
                        for acc, v in partials
                        for o, w in pcol.items()
                    ]
            if dead:
                continue
            for o, v in partials:
                acc = ring.add(out.get(o, ring.zero), v)
                if ring.is_zero(acc):
                    out.pop(o, None)
                else:
                    out[o] = acc
        return out


def par(ring, *parts) -> ParallelStage:
    return ParallelStage(ring, parts)


def route(*sources) -> PermStage:
    """Stage whose output position i carries input position sources[i]."""
    return PermStage(sources)


def chain_column(stages, in_tuple, one) -> dict:
    col = {tuple(in_tuple): one}
    for stage in stages:
        col = stage.push(col)
        if not col:
            break
    return col


def _chain_arities(stages):
    in_arity = stages[0].in_arity
    arity = in_arity
    for stage in stages:
        if stage.in_arity != arity:
            raise ShapeError(
                f"stage expects arity {stage.in_arity}, chain carries {arity}"
            )
        arity = stage.out_arity
    return in_arity, arity


def run_chain(ring, n, stages) -> TensorMap:
    """Materialize a stage pipeline by streaming every input basis vector."""
    in_arity, out_arity = _chain_arities(stages)
    one = ring.one
    cols = {}
    for idx in all_indices(n, in_arity):
        col = chain_column(stages, idx, one)
        if col:
            cols[idx] = col
    return TensorMap(ring, n, in_arity, out_arity, cols)


def chain_equal(ring, n, lhs, rhs, threshold=None) -> bool:
    """Exact equality of two pipelines over the same space.

    Below the flattened-dimension threshold both sides are materialized and
    compared entry-wise; above it the comparison streams one input basis
    vector at a time (mandatory for spaces too large to hold as one map).
    """
    lhs = list(lhs)
    rhs = list(rhs)
    l_in, l_out = _chain_arities(lhs)
    r_in, r_out = _chain_arities(rhs)
    if (l_in, l_out) != (r_in, r_out):
        raise ShapeError(f"pipeline arity mismatch: {l_in}->{l_out} vs {r_in}->{r_out}")
    if threshold is None:
        threshold = stream_threshold()
    if n**l_in <= threshold:
        return run_chain(ring, n, lhs) == run_chain(ring, n, rhs)
    one = ring.one
    for idx in all_indices(n, l_in):
        if chain_column(lhs, idx, one) != chain_column(rhs, idx, one):
            return False
    return True


def chain_diff(ring, n, lhs, rhs, limit: int = 10):
    """Differing entries (out, in, lhs_value, rhs_value), lexicographic, capped."""
    lhs = list(lhs)
    rhs = list(rhs)
    _chain_arities(lhs)
    in_arity, _ = _chain_arities(rhs)
    one = ring.one
    diffs = []
    for idx in all_indices(n, in_arity):
        a = chain_column(lhs, idx, one)
        b = chain_column(rhs, idx, one)
        if a == b:
            continue
        for out in sorted(set(a) | set(b)):
            va = a.get(out, ring.zero)
            vb = b.get(out, ring.zero)
            if va != vb:
                diffs.append((out, idx, va, vb))
                if len(diffs) >= limit:
                    return diffs
    return diffs


def is_invertible(f: TensorMap) -> bool:
    """Whether f has full rank as a matrix on the flattened tensor powers."""
    if f.in_arity != f.out_arity:
        return False
    ring = f.ring
    dim = f.n**f.in_arity
    rows = [[ring.zero] * dim for _ in range(dim)]
    for inn, col in f.cols.items():
        j = flatten_index(inn, f.n)
        for out, v in col.items():
            rows[flatten_index(out, f.n)][j] = v
    return len(_gauss_jordan(ring, rows)) == dim


# ---------------------------------------------------------------------------
# exact linear solving
# ---------------------------------------------------------------------------


def solve_right_null(family) -> list:
    """Exact basis of the joint right null space of a family of 1->1 maps.

    Gauss-Jordan elimination over the ground field; the returned vectors are
    the reduced-echelon null basis (free variables in increasing index order,
    pivot coordinates normalized), so the result is deterministic.  An empty
    family or a family of zero maps yields the full standard basis.
    """
    family = list(family)
    if not family:
        raise ShapeError("solve_right_null needs at least one map")
    ring = family[0].ring
    n = family[0].n
    for f in family:
        if f.ring != ring or f.n != n or f.in_arity != 1 or f.out_arity != 1:
            raise ShapeError("solve_right_null expects 1->1 maps over one ring")
    rows = []
    for f in family:
        for out in range(n):
            row = [ring.zero] * n
            hit = False
            for j in range(n):
                v = f.cols.get((j,), {}).get((out,))
                if v is not None:
                    row[j] = v
                    hit = True
            if hit:
                rows.append(row)
    pivots = _gauss_jordan(ring, rows)
    pivot_cols = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = [ring.zero] * n
        vec[free] = ring.one
        for r, pc in enumerate(pivots):
            vec[pc] = ring.neg(rows[r][free])
        entries = [((j,), (), vec[j]) for j in range(n) if not ring.is_zero(vec[j])]
        basis.append(TensorMap.from_entries(ring, n, 0, 1, entries))
    return basis


def _gauss_jordan(ring, rows):
    """Reduce rows in place to reduced row echelon form; return pivot columns."""
    if not rows:
        return []
    width = len(rows[0])
    pivots = []
    r = 0
    for c in range(width):
        pivot = None
        for i in range(r, len(rows)):
            if not ring.is_zero(rows[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ring.inv(rows[r][c])
        rows[r] = [ring.mul(inv, v) for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not ring.is_zero(rows[i][c]):
                factor = rows[i][c]
                rows[i] = [
                    ring.sub(v, ring.mul(factor, w)) for v, w in zip(rows[i], rows[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    del rows[r:]
    return pivots


# ---------------------------------------------------------------------------
# text serialization
# ---------------------------------------------------------------------------


def _format_tuple(t) -> str:
    return "(" + ",".join(str(d) for d in t) + ")"


def _parse_tuple(text: str):
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ShapeError(f"bad index tuple {text!r}")
    body = text[1:-1].strip()
    if not body:
        return ()
    return tuple(int(d) for d in body.split(","))


def serialize(f: TensorMap) -> str:
    """One header line, then one line per nonzero entry: ``out <- in : scalar``.

    Entries are emitted in lexicographic order so equal maps serialize to
    identical bytes.
    """
    ring = f.ring
    lines = [f"tensor ring={ring.tag} n={f.n} in={f.in_arity} out={f.out_arity}"]
    for out, inn, v in f.entries():
        lines.append(f"{_format_tuple(out)} <- {_format_tuple(inn)} : {_entry_text(ring, v)}")
    return "\n".join(lines) + "\n"


def _entry_text(ring, v) -> str:
    # bare canonical value; the header carries the ring
    text = ring.format(v)
    return text.split(" mod ")[0] if " mod " in text else text


def deserialize(text: str) -> TensorMap:
    from .scalar import ring_from_text

    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("tensor "):
        raise ShapeError("tensor text must start with a 'tensor ...' header line")
    fields = dict(part.split("=", 1) for part in lines[0].split()[1:])
    ring = ring_from_text(fields["ring"])
    n = int(fields["n"])
    in_arity = int(fields["in"])
    out_arity = int(fields["out"])
    entries = []
    for ln in lines[1:]:
        left, _, value = ln.partition(":")
        out_text, _, in_text = left.partition("<-")
        entries.append((_parse_tuple(out_text), _parse_tuple(in_text), ring.parse(value)))
    return TensorMap.from_entries(ring, n, in_arity, out_arity, entries)
