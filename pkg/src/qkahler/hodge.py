"""Hodge map, volume functional, metric and Gram matrices.

The Hodge map is defined level by level on the string basis: a primitive
(a', b')-seed p of degree k' sitting at Lefschetz level j is sent to

    (-1)^(k'(k'+1)/2) * i^(a'-b') * [j]_h! / [n-j-k']_h! * L^(n-j-k')(p)

extended linearly.  The quantum-integer base h is a mode: the deformation
parameter itself, 1, or a fixed positive rational.  On each (a, b) component
the map is assembled as a matrix through the string basis, so applying it to
arbitrary forms costs one matrix-vector product.

The metric is g(u, v) = vol(u ^ hodge(star(v))), zero across different
degrees; its Gram blocks are certified positive definite at rational points
by exact LDL* pivots.
"""

from __future__ import annotations

from .scalars import (
    ZERO, ONE, HodgeMode, H_EQ_Q, Scalar, qfact, i_power,
)
from .fiber import FiberForm, BasisMonomial, basis_bidegree
from . import linalg
from .linalg import ScalarMatrix, LDLCertificate
from .lefschetz import (
    L_power, string_columns, string_basis_matrix, to_coords, from_coords,
)


def top_monomial(n: int) -> BasisMonomial:
    idx = tuple(range(1, n + 1))
    return BasisMonomial(idx, idx)


def vol(u: FiberForm) -> Scalar:
    """Volume functional: the top coefficient, normalised so the value on
    the top monomial is i^(-(n mod 2))."""
    n = u.n
    if u and u.degrees() != [2 * n]:
        raise ValueError("vol needs a form of top degree 2n")
    return u.coefficient(top_monomial(n)) * i_power(-(n % 2))


_hodge_cache: dict = {}
_hodge_inv_cache: dict = {}


def hodge_block(n: int, a: int, b: int, mode: HodgeMode = H_EQ_Q) -> ScalarMatrix:
    """Matrix of the Hodge map from the (a, b) to the (n-b, n-a) component."""
    key = (n, a, b, mode)
    hit = _hodge_cache.get(key)
    if hit is not None:
        return hit
    src = basis_bidegree(n, a, b)
    tgt = basis_bidegree(n, n - b, n - a)
    cols = string_columns(n, a, b)
    if len(cols) != len(src):
        raise ArithmeticError(
            f"string basis of ({a},{b}) has wrong size: {len(cols)} != {len(src)}")
    images = []
    for j, (ap, bp), _idx, _form in cols:
        kp = ap + bp
        sign = -ONE if (kp * (kp + 1) // 2) % 2 else ONE
        coeff = sign * i_power(ap - bp) * qfact(j, mode) / qfact(n - j - kp, mode)
        seed = _seed_form(n, ap, bp, _idx)
        images.append(L_power(seed, n - j - kp).scale(coeff))
    c_mat = ScalarMatrix.from_columns([to_coords(f, tgt) for f in images], len(tgt))
    b_mat = string_basis_matrix(n, a, b)
    out = c_mat @ linalg.inverse(b_mat)
    _hodge_cache[key] = out
    return out


def _seed_form(n, ap, bp, idx):
    from .lefschetz import primitive_basis
    return primitive_basis(n, ap, bp)[idx]


def hodge_block_inverse(n: int, a: int, b: int, mode: HodgeMode = H_EQ_Q) -> ScalarMatrix:
    """Inverse of the (a, b) Hodge block, mapping (n-b, n-a) back."""
    key = (n, a, b, mode)
    hit = _hodge_inv_cache.get(key)
    if hit is None:
        hit = linalg.inverse(hodge_block(n, a, b, mode))
        _hodge_inv_cache[key] = hit
    return hit


def hodge(u: FiberForm, mode: HodgeMode = H_EQ_Q) -> FiberForm:
    """Apply the Hodge map to any form, component by component."""
    n = u.n
    out = FiberForm.zero(n)
    for (a, b), comp in u.bidegree_split().items():
        src = basis_bidegree(n, a, b)
        tgt = basis_bidegree(n, n - b, n - a)
        vec = hodge_block(n, a, b, mode).apply(to_coords(comp, src))
        out = out + from_coords(n, vec, tgt)
    return out


def hodge_inverse(u: FiberForm, mode: HodgeMode = H_EQ_Q) -> FiberForm:
    """Apply the inverse Hodge map; the (c, d) component pulls back to
    (n-d, n-c)."""
    n = u.n
    out = FiberForm.zero(n)
    for (c, d), comp in u.bidegree_split().items():
        a, b = n - d, n - c
        src = basis_bidegree(n, c, d)
        tgt = basis_bidegree(n, a, b)
        vec = hodge_block_inverse(n, a, b, mode).apply(to_coords(comp, src))
        out = out + from_coords(n, vec, tgt)
    return out


def lambda_apply(u: FiberForm, mode: HodgeMode = H_EQ_Q) -> FiberForm:
    """Lefschetz lowering operator: conjugate of the raising operator by the
    Hodge map.  Adjoint to raising with respect to the metric."""
    from .lefschetz import L
    return hodge_inverse(L(hodge(u, mode)), mode)


def metric(u: FiberForm, v: FiberForm, mode: HodgeMode = H_EQ_Q) -> Scalar:
    """Sesquilinear pairing g(u, v) = vol(u ^ hodge(star(v))), linear in u,
    conjugate-linear in v, zero across different degrees."""
    if u.n != v.n:
        raise ValueError(f"mixed ranks {u.n} and {v.n}")
    du = u.degree_split()
    dv = v.degree_split()
    acc = ZERO
    for k, uk in du.items():
        vk = dv.get(k)
        if vk is not None:
            acc = acc + vol(uk.wedge(hodge(vk.star(), mode)))
    return acc


def gram(n: int, a: int, b: int, mode: HodgeMode = H_EQ_Q) -> ScalarMatrix:
    """Gram matrix of the monomial basis of the (a, b) component."""
    basis = basis_bidegree(n, a, b)
    duals = [hodge(FiberForm(n, {m: ONE}).star(), mode) for m in basis]
    rows = []
    for mr in basis:
        fr = FiberForm(n, {mr: ONE})
        rows.append([vol(fr.wedge(d)) for d in duals])
    return ScalarMatrix(rows, ncols=len(basis))


def gram_to_json(n: int, a: int, b: int, mode: HodgeMode = H_EQ_Q) -> dict:
    basis = basis_bidegree(n, a, b)
    g = gram(n, a, b, mode)
    return {
        "bidegree": [a, b],
        "basis": [str(m) for m in basis],
        "entries": [[str(x) for x in row] for row in g.rows],
    }


def certify_posdef(block: ScalarMatrix, q0) -> LDLCertificate:
    """Evaluate a Gram block at rational q0 > 0 and certify positive
    definiteness by exact LDL* pivots."""
    entries = [[x.evaluate(q0) for x in row] for row in block.rows]
    return linalg.hermitian_ldl(entries, q0)


def serre_pairing(n: int, a: int, b: int) -> ScalarMatrix:
    """Wedge-to-volume pairing of the (a, b) and (n-a, n-b) components."""
    left = basis_bidegree(n, a, b)
    right = basis_bidegree(n, n - a, n - b)
    rows = []
    for ml in left:
        fl = FiberForm(n, {ml: ONE})
        rows.append([vol(fl.wedge(FiberForm(n, {mr: ONE}))) for mr in right])
    return ScalarMatrix(rows, ncols=len(right))


# ---------------------------------------------------------------------------
# Graded operators and metric adjoints
# ---------------------------------------------------------------------------

class GradedOperator:
    """Linear map on the fiber algebra stored as per-bidegree blocks.

    blocks: {source_bidegree: (target_bidegree, matrix)}; blocks that are
    identically zero are dropped, making equality of maps a dict compare.
    """

    __slots__ = ("n", "blocks")

    def __init__(self, n: int, blocks: dict):
        self.n = n
        self.blocks = {}
        for src, (tgt, mat) in blocks.items():
            if mat.nrows and not mat.is_zero():
                self.blocks[src] = (tgt, mat)

    @staticmethod
    def from_map(n: int, fn) -> "GradedOperator":
        """Build from a function on forms that shifts bidegrees uniformly."""
        blocks = {}
        for a in range(n + 1):
            for b in range(n + 1):
                src = basis_bidegree(n, a, b)
                images = [fn(FiberForm(n, {m: ONE})) for m in src]
                tgt_bd = None
                for f in images:
                    for bd in f.bidegree_split():
                        if tgt_bd is None:
                            tgt_bd = bd
                        elif tgt_bd != bd:
                            raise ValueError("map does not shift bidegrees uniformly")
                if tgt_bd is None:
                    continue
                tgt = basis_bidegree(n, *tgt_bd)
                mat = ScalarMatrix.from_columns(
                    [to_coords(f, tgt) for f in images], len(tgt))
                blocks[(a, b)] = (tgt_bd, mat)
        return GradedOperator(n, blocks)

    @staticmethod
    def diagonal(n: int, eig) -> "GradedOperator":
        """Diagonal operator with eigenvalue eig(a, b) on each component."""
        blocks = {}
        for a in range(n + 1):
            for b in range(n + 1):
                dim = len(basis_bidegree(n, a, b))
                lam = eig(a, b)
                if dim and lam:
                    blocks[(a, b)] = ((a, b), ScalarMatrix.identity(dim).scale(lam))
        return GradedOperator(n, blocks)

    def apply(self, u: FiberForm) -> FiberForm:
        out = FiberForm.zero(self.n)
        for bd, comp in u.bidegree_split().items():
            blk = self.blocks.get(bd)
            if blk is None:
                continue
            tgt_bd, mat = blk
            vec = mat.apply(to_coords(comp, basis_bidegree(self.n, *bd)))
            out = out + from_coords(self.n, vec, basis_bidegree(self.n, *tgt_bd))
        return out

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self after other."""
        if self.n != other.n:
            raise ValueError("rank mismatch")
        blocks = {}
        for src, (mid, mat1) in other.blocks.items():
            blk = self.blocks.get(mid)
            if blk is None:
                continue
            tgt, mat2 = blk
            blocks[src] = (tgt, mat2 @ mat1)
        return GradedOperator(self.n, blocks)

    __matmul__ = compose

    def scale(self, c) -> "GradedOperator":
        return GradedOperator(self.n, {
            src: (tgt, mat.scale(c)) for src, (tgt, mat) in self.blocks.items()
        })

    def _merge(self, other: "GradedOperator", sign: int) -> "GradedOperator":
        if self.n != other.n:
            raise ValueError("rank mismatch")
        blocks = {}
        for src, (tgt, mat) in self.blocks.items():
            blocks[src] = (tgt, mat)
        for src, (tgt, mat) in other.blocks.items():
            mat = mat if sign > 0 else -mat
            if src in blocks:
                t0, m0 = blocks[src]
                if t0 != tgt:
                    raise ValueError(f"incompatible targets at {src}: {t0} vs {tgt}")
                blocks[src] = (t0, m0 + mat)
            else:
                blocks[src] = (tgt, mat)
        return GradedOperator(self.n, blocks)

    def __add__(self, other):
        return self._merge(other, +1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def is_zero(self) -> bool:
        return not self.blocks


def adjoint(op: GradedOperator, mode: HodgeMode = H_EQ_Q) -> GradedOperator:
    """Metric adjoint: g(op(u), v) = g(u, adjoint(op)(v)) for all u, v."""
    n = op.n
    grams: dict = {}

    def g(a, b):
        if (a, b) not in grams:
            grams[(a, b)] = gram(n, a, b, mode)
        return grams[(a, b)]

    blocks = {}
    for src, (tgt, mat) in op.blocks.items():
        g_src = g(*src)
        g_tgt = g(*tgt)
        w = linalg.solve(g_src, mat.transpose() @ g_tgt).conjugate()
        if tgt in blocks:
            raise ValueError("operator blocks collide under adjoint")
        blocks[tgt] = (src, w)
    return GradedOperator(n, blocks)


def hodge_operator(n: int, mode: HodgeMode = H_EQ_Q) -> GradedOperator:
    blocks = {}
    for a in range(n + 1):
        for b in range(n + 1):
            if basis_bidegree(n, a, b):
                blocks[(a, b)] = ((n - b, n - a), hodge_block(n, a, b, mode))
    return GradedOperator(n, blocks)


def l_operator(n: int) -> GradedOperator:
    from .lefschetz import l_matrix
    blocks = {}
    for a in range(n + 1):
        for b in range(n + 1):
            if basis_bidegree(n, a, b) and a < n and b < n:
                blocks[(a, b)] = ((a + 1, b + 1), l_matrix(n, a, b))
    return GradedOperator(n, blocks)


def lambda_operator(n: int, mode: HodgeMode = H_EQ_Q) -> GradedOperator:
    from .lefschetz import l_matrix
    blocks = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if not basis_bidegree(n, a, b):
                continue
            mat = (hodge_block_inverse(n, a - 1, b - 1, mode)
                   @ l_matrix(n, n - b, n - a)
                   @ hodge_block(n, a, b, mode))
            blocks[(a, b)] = ((a - 1, b - 1), mat)
    return GradedOperator(n, blocks)
