"""Shared generators and reference oracles for the test suite.

The reference Lukasiewicz machinery at the bottom deliberately avoids the
package's evaluator and Max-Min pipeline so that cross-checks against it
exercise an independent route.
"""

from fractions import Fraction

from rieszmv import (
    Affine,
    Delta,
    Iff,
    Implies,
    Join,
    MaxMin,
    Meet,
    Nabla,
    Neg,
    Odot,
    Ominus,
    Oplus,
    RConst,
    Var,
    arity,
    vertices_from_components,
)

F = Fraction


def rand_unit(rng, max_den=16):
    den = rng.randint(1, max_den)
    return F(rng.randint(0, den), den)


def rand_point(rng, n, max_den=32):
    return tuple(rand_unit(rng, max_den) for _ in range(n))


def rand_signed(rng, bound=3, max_den=16):
    den = rng.randint(1, max_den)
    return F(rng.randint(-bound * den, bound * den), den)


_BINARY_KINDS = (
    (Implies, 20),
    (Oplus, 16),
    (Odot, 16),
    (Join, 16),
    (Meet, 16),
    (Ominus, 10),
    (Iff, 6),
)


def rand_formula(rng, n, depth, scalars=True):
    if depth <= 0 or rng.random() < 0.22:
        if rng.random() < 0.1 and scalars:
            return RConst(rand_unit(rng, 8))
        return Var(rng.randint(1, n))
    if rng.random() < 0.3:
        if scalars and rng.random() < 0.55:
            kind = Delta if rng.random() < 0.5 else Nabla
            return kind(rand_unit(rng, 8), rand_formula(rng, n, depth - 1, scalars))
        return Neg(rand_formula(rng, n, depth - 1, scalars))
    total = sum(w for _, w in _BINARY_KINDS)
    pick = rng.randrange(total)
    for kind, weight in _BINARY_KINDS:
        if pick < weight:
            break
        pick -= weight
    return kind(
        rand_formula(rng, n, depth - 1, scalars), rand_formula(rng, n, depth - 1, scalars)
    )


def rand_affine(rng, n, bound=3, max_den=16):
    return Affine(n, tuple(rand_signed(rng, bound, max_den) for _ in range(n + 1)))


def rand_maxmin(rng, n, max_groups=3, max_group_size=3, bound=2, max_den=8):
    groups = tuple(
        tuple(rand_affine(rng, n, bound, max_den) for _ in range(rng.randint(1, max_group_size)))
        for _ in range(rng.randint(1, max_groups))
    )
    return MaxMin(n, groups)


def clamp(value):
    return max(F(0), min(F(1), value))


def grid_points(n, step=32):
    if n == 0:
        return [()]
    coords = [F(i, step) for i in range(step + 1)]
    points = [()]
    for _ in range(n):
        points = [p + (c,) for p in points for c in coords]
    return points


# ---------------------------------------------------------------------------
# Reference Lukasiewicz oracle (scalar-connective-free fragment).


def luk_eval(phi, point):
    """Independent evaluator over [0, 1]; rejects scalar connectives."""
    kind = type(phi)
    if kind is Var:
        return point[phi.index - 1]
    if kind is Neg:
        return 1 - luk_eval(phi.child, point)
    if kind is Implies:
        return min(F(1), 1 - luk_eval(phi.left, point) + luk_eval(phi.right, point))
    if kind is Oplus:
        return min(F(1), luk_eval(phi.left, point) + luk_eval(phi.right, point))
    if kind is Odot:
        return max(F(0), luk_eval(phi.left, point) + luk_eval(phi.right, point) - 1)
    if kind is Join:
        return max(luk_eval(phi.left, point), luk_eval(phi.right, point))
    if kind is Meet:
        return min(luk_eval(phi.left, point), luk_eval(phi.right, point))
    if kind is Iff:
        return 1 - abs(luk_eval(phi.left, point) - luk_eval(phi.right, point))
    if kind is Ominus:
        return max(F(0), luk_eval(phi.left, point) - luk_eval(phi.right, point))
    raise TypeError(f"not a scalar-free formula: {phi!r}")


def luk_component_superset(phi, n):
    """Integer-coefficient affine pieces covering the term function.

    At every point the value of the formula equals the value of one of the
    returned pieces, which is all the vertex method needs.
    """
    zero = (F(0),) * (n + 1)
    one = (F(1),) + (F(0),) * n

    def minus(a):
        return tuple(-c for c in a)

    def add(a, b):
        return tuple(ca + cb for ca, cb in zip(a, b))

    def go(node):
        kind = type(node)
        if kind is Var:
            piece = [F(0)] * (n + 1)
            piece[node.index] = F(1)
            return {tuple(piece)}
        if kind is Neg:
            return {add(one, minus(q)) for q in go(node.child)}
        if kind is Implies:
            left, right = go(node.left), go(node.right)
            return {one} | {add(one, add(minus(q), p)) for q in left for p in right}
        if kind is Oplus:
            left, right = go(node.left), go(node.right)
            return {one} | {add(q, p) for q in left for p in right}
        if kind is Odot:
            left, right = go(node.left), go(node.right)
            return {zero} | {add(minus(one), add(q, p)) for q in left for p in right}
        if kind in (Join, Meet):
            return go(node.left) | go(node.right)
        if kind is Iff:
            left, right = go(node.left), go(node.right)
            crossed = {add(q, minus(p)) for q in left for p in right}
            return {one} | {add(one, d) for d in crossed} | {add(one, minus(d)) for d in crossed}
        if kind is Ominus:
            left, right = go(node.left), go(node.right)
            return {zero} | {add(q, minus(p)) for q in left for p in right}
        raise TypeError(f"not a scalar-free formula: {node!r}")

    return go(phi)


def luk_is_valid(phi, budget=None):
    """Reference validity: vertex method over the integer-piece superset."""
    n = arity(phi)
    if n == 0:
        return luk_eval(phi, ()) == 1
    pieces = luk_component_superset(phi, n)
    assert all(c.denominator == 1 for piece in pieces for c in piece)
    affines = [Affine(n, piece) for piece in pieces]
    return all(luk_eval(phi, v) == 1 for v in vertices_from_components(n, affines, budget))
