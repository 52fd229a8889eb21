"""Lefschetz operator on the fiber algebra: wedging with the fundamental
form, primitive spaces as exact kernels, and the level decomposition.

The fundamental 2-form is kappa = i * sum_a e+[a]^e-[a].  Wedging with it
raises (a, b) to (a+1, b+1).  Primitive elements of degree k are those
killed by the (n-k+1)-st power; each degree-k primitive seed generates a
string L^0, L^1, ..., L^(n-k) and the strings of all seeds form a basis of
the whole algebra, which is what makes the triangular extraction in
lefschetz_decompose work.
"""

from __future__ import annotations

from .scalars import (
    ZERO, ONE, I, HodgeMode, H_EQ_Q, Scalar, qint, qfact, i_power,
)
from .fiber import FiberForm, BasisMonomial, basis_bidegree, basis_degree
from . import linalg
from .linalg import ScalarMatrix


def kappa(n: int) -> FiberForm:
    """The fundamental (1,1)-form."""
    acc = FiberForm.zero(n)
    for a in range(1, n + 1):
        acc = acc + FiberForm.monomial(n, (a,), (a,))
    return acc.scale(I)


_kappa_pow_cache: dict = {}


def kappa_power(n: int, l: int) -> FiberForm:
    """l-fold wedge power of the fundamental form, computed by iteration."""
    if l < 0:
        raise ValueError("negative wedge power")
    key = (n, l)
    hit = _kappa_pow_cache.get(key)
    if hit is None:
        hit = FiberForm.unit(n) if l == 0 else kappa_power(n, l - 1).wedge(kappa(n))
        _kappa_pow_cache[key] = hit
    return hit


def L(u: FiberForm) -> FiberForm:
    """Lefschetz raising: wedge with the fundamental form."""
    return kappa(u.n).wedge(u)


def L_power(u: FiberForm, j: int) -> FiberForm:
    if j < 0:
        raise ValueError("negative Lefschetz power")
    return kappa_power(u.n, j).wedge(u)


def to_coords(u: FiberForm, basis: list) -> list:
    index = {m: r for r, m in enumerate(basis)}
    vec = [ZERO] * len(basis)
    for m, c in u.terms.items():
        r = index.get(m)
        if r is None:
            raise ValueError(f"monomial {m} outside the given basis")
        vec[r] = c
    return vec


def from_coords(n: int, vec: list, basis: list) -> FiberForm:
    return FiberForm(n, {m: c for m, c in zip(basis, vec) if c})


_l_matrix_cache: dict = {}


def l_matrix(n: int, a: int, b: int) -> ScalarMatrix:
    """Matrix of the Lefschetz map on the (a, b) component."""
    key = (n, a, b)
    hit = _l_matrix_cache.get(key)
    if hit is not None:
        return hit
    src = basis_bidegree(n, a, b)
    tgt = basis_bidegree(n, a + 1, b + 1)
    cols = [to_coords(L(FiberForm(n, {m: ONE})), tgt) for m in src]
    out = ScalarMatrix.from_columns(cols, len(tgt))
    _l_matrix_cache[key] = out
    return out


def l_power_matrix(n: int, a: int, b: int, j: int) -> ScalarMatrix:
    """Matrix of the j-th Lefschetz power out of the (a, b) component."""
    src = basis_bidegree(n, a, b)
    tgt = basis_bidegree(n, a + j, b + j)
    cols = [to_coords(L_power(FiberForm(n, {m: ONE}), j), tgt) for m in src]
    return ScalarMatrix.from_columns(cols, len(tgt))


_primitive_cache: dict = {}


def primitive_basis(n: int, a: int, b: int) -> list:
    """Deterministic basis of the primitive (a, b) component.

    Kernel of the (n-k+1)-st Lefschetz power, k = a+b; empty above the
    middle degree.
    """
    key = (n, a, b)
    hit = _primitive_cache.get(key)
    if hit is not None:
        return hit
    k = a + b
    if k > n or a > n or b > n or a < 0 or b < 0:
        _primitive_cache[key] = []
        return []
    mat = l_power_matrix(n, a, b, n - k + 1)
    src = basis_bidegree(n, a, b)
    vecs = linalg.kernel_basis(mat)
    out = [from_coords(n, v, src) for v in vecs]
    _primitive_cache[key] = out
    return out


def primitive_basis_degree(n: int, k: int) -> list:
    out = []
    for b in range(k + 1):
        a = k - b
        if a <= n and b <= n:
            out.extend(primitive_basis(n, a, b))
    return out


def primitive_dimension(n: int, a: int, b: int) -> int:
    return len(primitive_basis(n, a, b))


def bidegree_levels(n: int, a: int, b: int) -> list:
    """Lefschetz levels j contributing to the (a, b) component, with the
    bidegree of the primitive seeds at each level.

    A degree-k' seed survives to level j only while j <= n-k', i.e.
    j >= k-n for the ambient degree k = a+b.
    """
    k = a + b
    out = []
    for j in range(max(0, k - n), min(a, b) + 1):
        out.append((j, (a - j, b - j)))
    return out


_string_cache: dict = {}


def string_columns(n: int, a: int, b: int) -> list:
    """String basis of the (a, b) component.

    Returns [(j, seed_bidegree, seed_index, form)] where form = L^j(seed),
    ordered by level then seed.  The forms are a basis; the change of basis
    to monomial coordinates is invertible, which verify_string_basis and the
    Hodge construction both rely on.
    """
    key = (n, a, b)
    hit = _string_cache.get(key)
    if hit is not None:
        return hit
    out = []
    for j, (ap, bp) in bidegree_levels(n, a, b):
        seeds = primitive_basis(n, ap, bp)
        for idx, p in enumerate(seeds):
            out.append((j, (ap, bp), idx, L_power(p, j)))
    _string_cache[key] = out
    return out


def string_basis_matrix(n: int, a: int, b: int) -> ScalarMatrix:
    basis = basis_bidegree(n, a, b)
    cols = [to_coords(f, basis) for _, _, _, f in string_columns(n, a, b)]
    return ScalarMatrix.from_columns(cols, len(basis))


def lambda_string_factor(n: int, k: int, j: int, mode: HodgeMode = H_EQ_Q) -> Scalar:
    """Eigenfactor of the lowering operator along a string.

    On L^j(alpha) with alpha primitive of degree k the lowering operator
    gives [j]_h [n-j-k+1]_h L^{j-1}(alpha); this returns that product.
    """
    return qint(j, mode) * qint(n - j - k + 1, mode)


def lefschetz_decompose(u: FiberForm, mode: HodgeMode = H_EQ_Q) -> list:
    """Split a homogeneous form into Lefschetz levels.

    Returns [(j, alpha_j)] with u = sum_j L^j(alpha_j) and every alpha_j
    primitive.  The top level is read off through the lowering operator,
    whose j-fold action on L^j(alpha) is multiplication by
    prod_{t=1..j} [t]_h [n-t-deg(alpha)+1]_h, then subtracted; levels are
    peeled top down.
    """
    from .hodge import lambda_apply  # deferred: hodge builds on this module

    if not u:
        return []
    if not u.is_homogeneous():
        raise ValueError("lefschetz_decompose needs a degree-homogeneous form")
    n = u.n
    k = u.degree()
    out = []
    rem = u
    for m in range(k // 2, 0, -1):
        kp = k - 2 * m
        if kp > n:
            continue
        lowered = rem
        scale = ONE
        for t in range(1, m + 1):
            lowered = lambda_apply(lowered, mode)
            scale = scale * lambda_string_factor(n, kp, t, mode)
        if not lowered:
            continue
        alpha = lowered.scale(ONE / scale)
        out.append((m, alpha))
        rem = rem - L_power(alpha, m)
    if rem:
        if k > n:
            raise ValueError("degree above middle left a level-0 remainder")
        out.append((0, rem))
    out.sort(key=lambda t: t[0])
    return out


def verify_lefschetz_iso(n: int, k: int) -> dict:
    """Check that the (n-k)-th Lefschetz power maps degree k isomorphically
    onto degree 2n-k.  Returns a report with the exact rank."""
    if not 0 <= k < n:
        raise ValueError(f"requires 0 <= k < n, got k={k}, n={n}")
    src = basis_degree(n, k)
    tgt = basis_degree(n, 2 * n - k)
    cols = [to_coords(L_power(FiberForm(n, {m: ONE}), n - k), tgt) for m in src]
    mat = ScalarMatrix.from_columns(cols, len(tgt))
    r = linalg.rank(mat)
    report = {
        "n": n,
        "k": k,
        "dimension": len(src),
        "rank": r,
        "full_rank": r == len(src) == len(tgt),
    }
    if len(src) == len(tgt):
        report["determinant"] = str(linalg.determinant(mat))
    return report
