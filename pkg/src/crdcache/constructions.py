"""Constructions of cross resolvable designs.

Three infinite families plus a small hand-built catalog:

* ``affine_plane(n)`` - the n^2 points of GF(n)^2 with all lines as blocks;
  the n+1 line directions are the parallel classes and any two lines of
  different direction meet in exactly one point (mu_2 = 1).
* ``affine_geometry_bibd(q, m)`` - the q^m points of GF(q)^m with all
  hyperplane cosets as blocks, one class per direction; two hyperplanes of
  different direction meet in q^(m-2) points (the m = 2 case is the affine
  plane).
* ``hadamard_crd(m)`` - from a normalized Hadamard matrix of order 4m:
  after dropping the all-ones row, each row splits the columns into a +1
  block and a -1 block, giving 4m-1 classes of two complementary blocks
  with mu_2 = m.  Sylvester matrices cover orders that are powers of two,
  quadratic-residue (Paley type I) matrices cover orders q+1 with q a
  prime power congruent to 3 mod 4.
* ``catalog_example(1..9)`` - small worked designs used by the test suite
  and the comparison tables, kept verbatim (block order included).

Point numbering for the field constructions: coordinate vectors are sorted
by canonical field-element order, most significant coordinate first, then
mapped to 1..v.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .caps import DEFAULT_CAPS, SizeCaps
from .designs import Resolution, validate_design, validate_resolution
from .errors import NoConstructionAvailable, SizeCapExceeded, UnknownExample
from .gf import GF, prime_power


@dataclass(frozen=True)
class FamilyParams:
    """Predicted parameters of a family instance."""

    v: int
    b: int
    r: int
    k: int
    mu2: int

    @property
    def b_r(self) -> int:
        return self.b // self.r


def affine_plane_params(n: int) -> FamilyParams:
    return FamilyParams(v=n * n, b=n * (n + 1), r=n + 1, k=n, mu2=1)


def affine_geometry_params(q: int, m: int) -> FamilyParams:
    return FamilyParams(
        v=q**m,
        b=q * (q**m - 1) // (q - 1),
        r=(q**m - 1) // (q - 1),
        k=q ** (m - 1),
        mu2=q ** (m - 2),
    )


def hadamard_params(m: int) -> FamilyParams:
    return FamilyParams(v=4 * m, b=2 * (4 * m - 1), r=4 * m - 1, k=2 * m, mu2=m)


def affine_geometry_bibd(q: int, m: int, caps: SizeCaps = DEFAULT_CAPS) -> Resolution:
    """Hyperplane design of GF(q)^m, resolved by direction."""
    if m < 2:
        raise NoConstructionAvailable(f"affine geometry needs dimension >= 2, got {m}")
    field = GF(q, caps)
    v = q**m
    if v > caps.max_points:
        raise SizeCapExceeded(f"{v} points exceed the cap of {caps.max_points}")
    points = list(product(field.elements(), repeat=m))
    point_index = {pt: idx + 1 for idx, pt in enumerate(points)}

    def dot(h: tuple[int, ...], x: tuple[int, ...]) -> int:
        acc = 0
        for hc, xc in zip(h, x):
            acc = field.add(acc, field.mul(hc, xc))
        return acc

    # one direction per normal vector whose first nonzero coordinate is 1
    directions = []
    for h in points:
        lead = next((c for c in h if c != 0), None)
        if lead == 1:
            directions.append(h)

    blocks: list[frozenset[int]] = []
    classes: list[tuple[int, ...]] = []
    for h in directions:
        cosets: dict[int, list[int]] = {c: [] for c in field.elements()}
        for x in points:
            cosets[dot(h, x)].append(point_index[x])
        start = len(blocks)
        for c in field.elements():
            blocks.append(frozenset(cosets[c]))
        classes.append(tuple(range(start, start + field.q)))
    design = validate_design(v, blocks)
    return validate_resolution(design, classes)


def affine_plane(n: int, caps: SizeCaps = DEFAULT_CAPS) -> Resolution:
    """Affine plane of prime-power order n (lines of GF(n)^2)."""
    return affine_geometry_bibd(n, 2, caps)


def _sylvester(order: int) -> np.ndarray:
    h = np.array([[1]], dtype=int)
    step = np.array([[1, 1], [1, -1]], dtype=int)
    while h.shape[0] < order:
        h = np.kron(h, step)
    return h


def _paley_type1(order: int, caps: SizeCaps) -> np.ndarray:
    q = order - 1
    field = GF(q, caps)
    squares = {field.mul(x, x) for x in field.elements() if x != 0}

    def chi(a: int) -> int:
        if a == 0:
            return 0
        return 1 if a in squares else -1

    s = np.zeros((order, order), dtype=int)
    s[0, 1:] = 1
    s[1:, 0] = -1
    for ai in range(q):
        for bi in range(q):
            s[ai + 1, bi + 1] = chi(field.sub(bi, ai))
    return s + np.eye(order, dtype=int)


def hadamard_crd(m: int, caps: SizeCaps = DEFAULT_CAPS) -> Resolution:
    """Complementary-block design of a normalized Hadamard matrix of order 4m."""
    if m < 1:
        raise NoConstructionAvailable(f"order parameter must be >= 1, got {m}")
    order = 4 * m
    if order > caps.max_points:
        raise SizeCapExceeded(f"{order} points exceed the cap of {caps.max_points}")
    if order & (order - 1) == 0:
        h = _sylvester(order)
    else:
        pe = prime_power(order - 1)
        if pe is not None and (order - 1) % 4 == 3:
            h = _paley_type1(order, caps)
        else:
            raise NoConstructionAvailable(
                f"no Hadamard matrix construction for order {order} "
                f"(need a power of two, or {order - 1} a prime power = 3 mod 4)"
            )
    # normalize so row 0 and column 0 are all ones, then drop row 0
    h = h.copy()
    h[:, h[0] == -1] *= -1
    h[h[:, 0] == -1] *= -1
    blocks: list[frozenset[int]] = []
    classes: list[tuple[int, ...]] = []
    for i in range(1, order):
        plus = frozenset(int(j) + 1 for j in np.flatnonzero(h[i] == 1))
        minus = frozenset(int(j) + 1 for j in np.flatnonzero(h[i] == -1))
        classes.append((len(blocks), len(blocks) + 1))
        blocks.extend([plus, minus])
    design = validate_design(order, blocks)
    return validate_resolution(design, classes)


# Hand-built catalog.  Blocks and class groupings (1-based block numbers)
# are kept in their original order: block order defines cache indexing and
# therefore every downstream schedule.
_CATALOG: dict[int, tuple[int, list[list[int]], list[list[int]]]] = {
    1: (
        4,
        [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]],
        [[1, 6], [2, 5], [3, 4]],
    ),
    2: (
        6,
        [[1, 2, 3], [4, 5, 6], [1, 4, 5], [2, 3, 6]],
        [[1, 2], [3, 4]],
    ),
    3: (
        9,
        [[1, 2, 3], [4, 5, 6], [7, 8, 9], [1, 4, 7], [2, 5, 8], [3, 6, 9]],
        [[1, 2, 3], [4, 5, 6]],
    ),
    4: (
        8,
        [[1, 2, 3, 4], [5, 6, 7, 8], [1, 2, 5, 6], [3, 4, 7, 8], [1, 3, 5, 7], [2, 4, 6, 8]],
        [[1, 2], [3, 4], [5, 6]],
    ),
    5: (
        12,
        [
            [1, 2, 3, 4, 5, 6],
            [7, 8, 9, 10, 11, 12],
            [1, 2, 3, 7, 8, 9],
            [4, 5, 6, 10, 11, 12],
        ],
        [[1, 2], [3, 4]],
    ),
    6: (
        9,
        [
            [1, 2, 3], [4, 5, 6], [7, 8, 9],
            [1, 4, 7], [2, 5, 8], [3, 6, 9],
            [1, 5, 9], [2, 6, 7], [3, 4, 8],
            [1, 6, 8], [2, 4, 9], [3, 5, 7],
        ],
        [[1, 2, 3], [4, 5, 6], [7, 8, 9], [10, 11, 12]],
    ),
    7: (
        8,
        [
            [1, 2, 3, 4], [5, 6, 7, 8], [1, 2, 5, 6], [1, 3, 5, 7],
            [2, 4, 6, 8], [3, 4, 7, 8], [1, 4, 5, 8], [2, 3, 6, 7],
        ],
        [[1, 2], [3, 6], [5, 4], [7, 8]],
    ),
    9: (
        16,
        [
            [1, 2, 3, 4, 5, 6, 7, 8], [9, 10, 11, 12, 13, 14, 15, 16],
            [1, 2, 3, 4, 9, 10, 11, 12], [5, 6, 7, 8, 13, 14, 15, 16],
            [1, 2, 5, 6, 9, 10, 13, 14], [3, 4, 7, 8, 11, 12, 15, 16],
            [1, 3, 5, 7, 9, 11, 13, 15], [2, 4, 6, 8, 10, 12, 14, 16],
        ],
        [[1, 2], [3, 4], [5, 6], [7, 8]],
    ),
}


def _catalog_example_8() -> tuple[int, list[list[int]], list[list[int]]]:
    # 27 points = ternary triples (most significant digit first); class i
    # groups points by their i-th digit, giving three 9-point blocks per
    # class with mu_2 = 3 and mu_3 = 1.
    blocks = []
    for coord in range(3):
        for value in range(3):
            block = []
            for idx, digits in enumerate(product(range(3), repeat=3)):
                if digits[coord] == value:
                    block.append(idx + 1)
            blocks.append(block)
    return 27, blocks, [[1, 2, 3], [4, 5, 6], [7, 8, 9]]


def catalog_example(number: int) -> Resolution:
    """One of the nine built-in worked designs."""
    if number == 8:
        v, blocks, classes = _catalog_example_8()
    elif number in _CATALOG:
        v, blocks, classes = _CATALOG[number]
    else:
        raise UnknownExample(f"catalog has examples 1..9, got {number}")
    design = validate_design(v, blocks)
    return validate_resolution(design, [[j - 1 for j in cls] for cls in classes])


def from_spec(text: str, caps: SizeCaps = DEFAULT_CAPS) -> Resolution:
    """Build a resolution from a spec string.

    Formats: ``affine:n=3``, ``ag:q=2,m=3``, ``hadamard:m=2``, ``example:4``.
    """
    family, _, arg_text = text.partition(":")
    family = family.strip().lower()
    args: dict[str, int] = {}
    if family == "example" and "=" not in arg_text:
        args["id"] = int(arg_text)
    else:
        for item in arg_text.split(","):
            if not item.strip():
                continue
            key, _, val = item.partition("=")
            args[key.strip()] = int(val)
    try:
        if family == "affine":
            return affine_plane(args["n"], caps)
        if family == "ag":
            return affine_geometry_bibd(args["q"], args["m"], caps)
        if family == "hadamard":
            return hadamard_crd(args["m"], caps)
        if family == "example":
            return catalog_example(args["id"])
    except KeyError as missing:
        raise ValueError(f"spec {text!r} is missing parameter {missing}") from None
    raise ValueError(
        f"unknown construction family {family!r} "
        "(expected affine:n=..., ag:q=...,m=..., hadamard:m=..., example:...)"
    )
