"""Baseline operating points and the comparison tables built on them.

Two baselines are in scope:

* MaN - the classic dedicated-cache scheme (one user per cache).  With K
  users and integer cache redundancy t = K*M/N it achieves rate
  K(1 - M/N)/(1 + t) at gain 1 + t with subpacketization C(K, t).  The
  subpacketization is kept as an exact big integer; it overflows 64 bits
  for quite small K.
* SPE - the cyclic-overlap multi-access scheme in its K*M/N = 2 regime.
  Only its structural parameters are computed here (users, M/N = 2/K,
  subpacketization K(K - 2z + 2)/4, accessible fraction 2z/K); its rate
  expression is out of scope and the published gain bracket (between 3
  and 4) is reported as a static annotation.

Table builders return a small column-oriented structure that renders to
aligned text or CSV; sweep builders return per-parameter rows with exact
rationals for plotting per-user rate and subpacketization against cache
size.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .caps import DEFAULT_CAPS, SizeCaps
from .constructions import (
    affine_geometry_bibd,
    affine_plane,
    catalog_example,
    hadamard_crd,
)
from .designs import Resolution, crd_profile
from .errors import (
    CrdCacheError,
    NonIntegerCacheRedundancy,
    NonIntegerSubpacketization,
)
from .scheme import SchemeMetrics, scheme_metrics

SPE_GAIN_NOTE = "cyclic-overlap (SPE) rate and gain are not computed; the published gain lies between 3 and 4"


@dataclass(frozen=True)
class ManPoint:
    """Dedicated-cache baseline at one (K, M/N) operating point."""

    users: int
    m_over_n: Fraction
    rate: Fraction
    gain: int
    subpacketization: int

    @property
    def per_user_rate(self) -> Fraction:
        return self.rate / self.users


def man_point(users: int, m_over_n: Fraction | int) -> ManPoint:
    m_over_n = Fraction(m_over_n)
    t = users * m_over_n
    if t.denominator != 1 or t < 1 or t > users:
        raise NonIntegerCacheRedundancy(
            f"K*M/N must be a positive integer <= K, got {t} for K={users}"
        )
    t = int(t)
    return ManPoint(
        users=users,
        m_over_n=m_over_n,
        rate=Fraction(users) * (1 - m_over_n) / (1 + t),
        gain=1 + t,
        subpacketization=comb(users, t),
    )


@dataclass(frozen=True)
class SpeStructural:
    """Structural parameters of the cyclic-overlap baseline (no rate)."""

    users: int
    z: int
    m_over_n: Fraction
    subpacketization: int
    user_fraction: Fraction


def spe_structural(b: int, z: int) -> SpeStructural:
    numerator = b * (b - 2 * z + 2)
    if numerator <= 0 or numerator % 4:
        raise NonIntegerSubpacketization(
            f"K(K-2z+2)/4 = {numerator}/4 is not a positive integer for K={b}, z={z}"
        )
    return SpeStructural(
        users=b,
        z=z,
        m_over_n=Fraction(2, b),
        subpacketization=numerator // 4,
        user_fraction=Fraction(2 * z, b),
    )


def scheme_table_row(res: Resolution, z: int, caps: SizeCaps = DEFAULT_CAPS) -> SchemeMetrics:
    """The multi-access scheme's column for one (design, z)."""
    return scheme_metrics(res, z, caps)


def man_counterpart(res: Resolution) -> ManPoint:
    """MaN point with the same cache count and per-cache fraction as a design."""
    return man_point(res.design.b, Fraction(res.design.k, res.design.v))


# --- closed-form family tables -------------------------------------------------


def affine_family_table(n: int) -> dict[str, object]:
    """Formula cells for the affine-plane family at order n, z = 2."""
    man = man_point(n * (n + 1), Fraction(1, n))
    return {
        "caches": n * (n + 1),
        "m_over_n": Fraction(1, n),
        "man_users": man.users,
        "crd_users": n**3 * (n + 1) // 2,
        "man_subpacketization": man.subpacketization,
        "crd_subpacketization": n * n,
        "man_rate": Fraction((n + 1) * (n - 1), n + 2),
        "crd_rate": Fraction(n * (n + 1) * (n - 1) ** 2, 8),
        "man_per_user_rate": Fraction((n - 1) ** 2, n * (n * n + n - 2)),
        "crd_per_user_rate": Fraction((n - 1) ** 2, 4 * n * n),
        "man_gain": n + 2,
        "crd_gain": 4,
    }


def affine_family_z1_table(n: int) -> dict[str, object]:
    """Formula cells for the affine-plane family at order n, z = 1."""
    cells = affine_family_table(n)
    cells["crd_users"] = n * (n + 1)
    cells["crd_rate"] = Fraction((n + 1) * (n - 1), 2)
    cells["crd_per_user_rate"] = Fraction((n - 1), 2 * n)
    cells["crd_gain"] = 2
    return cells


def ag_family_table(q: int, m: int) -> dict[str, object]:
    """Formula cells for the affine-geometry family at (q, m), z = 2."""
    b = q * (q**m - 1) // (q - 1)
    man = man_point(b, Fraction(1, q))
    return {
        "caches": b,
        "m_over_n": Fraction(1, q),
        "man_users": b,
        "crd_users": q**3 * (q**m - 1) * (q ** (m - 1) - 1) // (2 * (q - 1) ** 2),
        "man_subpacketization": man.subpacketization,
        "crd_subpacketization": q**m,
        "man_rate": Fraction((q**m - 1) * (q - 1), q**m + q - 2),
        "crd_rate": Fraction(q * (q**m - 1) * (q ** (m - 1) - 1), 8),
        "man_per_user_rate": Fraction((q - 1) ** 2, q * (q**m + q - 2)),
        "crd_per_user_rate": Fraction((q - 1) ** 2, 4 * q * q),
        "man_gain": (q**m - 1) // (q - 1) + 1,
        "crd_gain": 4,
    }


def hadamard_family_table(m: int) -> dict[str, object]:
    """Formula cells for the Hadamard family at order parameter m, z = 2."""
    b = 2 * (4 * m - 1)
    man = man_point(b, Fraction(1, 2))
    return {
        "caches": b,
        "m_over_n": Fraction(1, 2),
        "man_users": b,
        "crd_users": 4 * (2 * m - 1) * (4 * m - 1),
        "man_subpacketization": man.subpacketization,
        "crd_subpacketization": 4 * m,
        "man_rate": Fraction(4 * m - 1, 4 * m),
        "crd_rate": Fraction((2 * m - 1) * (4 * m - 1), 4),
        "man_per_user_rate": Fraction(1, 8 * m),
        "crd_per_user_rate": Fraction(1, 16),
        "man_gain": 4 * m,
        "crd_gain": 4,
    }


# --- comparison tables ----------------------------------------------------------

Cell = object  # int | Fraction | str | None


@dataclass(frozen=True)
class ComparisonTable:
    title: str
    row_labels: tuple[str, ...]
    columns: tuple[tuple[str, tuple[Cell, ...]], ...]
    notes: tuple[str, ...] = ()


_ROW_LABELS = (
    "caches (b)",
    "caches per user (z)",
    "users (K)",
    "subpacketization (F)",
    "cache fraction (M/N)",
    "user fraction (M'/N)",
    "rate (R)",
    "rate per user (R/K)",
    "gain (g)",
)


def _crd_column(metrics: SchemeMetrics) -> tuple[Cell, ...]:
    return (
        metrics.caches,
        metrics.z,
        metrics.users,
        metrics.subpacketization,
        metrics.m_over_n,
        metrics.m_prime_over_n,
        metrics.rate,
        metrics.per_user_rate,
        metrics.gain,
    )


def _man_column(point: ManPoint) -> tuple[Cell, ...]:
    return (
        point.users,
        1,
        point.users,
        point.subpacketization,
        point.m_over_n,
        point.m_over_n,
        point.rate,
        point.per_user_rate,
        point.gain,
    )


def _spe_column(point: SpeStructural) -> tuple[Cell, ...]:
    return (
        point.users,
        point.z,
        point.users,
        point.subpacketization,
        point.m_over_n,
        point.user_fraction,
        None,
        None,
        None,
    )


def man_example_table(caps: SizeCaps = DEFAULT_CAPS) -> ComparisonTable:
    """Catalog designs 3 (z=2) and 4 (z=3) against the dedicated-cache baseline."""
    columns = []
    for example_id, z in ((3, 2), (4, 3)):
        res = catalog_example(example_id)
        columns.append((f"design {example_id} / MaN", _man_column(man_counterpart(res))))
        columns.append((f"design {example_id} / CRD", _crd_column(scheme_metrics(res, z, caps))))
    return ComparisonTable(
        title="Dedicated-cache baseline vs CRD scheme (catalog designs 3 and 4)",
        row_labels=_ROW_LABELS,
        columns=tuple(columns),
    )


def spe_example_table(caps: SizeCaps = DEFAULT_CAPS) -> ComparisonTable:
    """Catalog designs 7 and 4 at z=2 against the cyclic-overlap baseline."""
    columns = []
    for example_id in (7, 4):
        res = catalog_example(example_id)
        columns.append((f"design {example_id} / SPE", _spe_column(spe_structural(res.design.b, 2))))
        columns.append((f"design {example_id} / CRD", _crd_column(scheme_metrics(res, 2, caps))))
    return ComparisonTable(
        title="Cyclic-overlap baseline vs CRD scheme (catalog designs 7 and 4, z=2)",
        row_labels=_ROW_LABELS,
        columns=tuple(columns),
        notes=(SPE_GAIN_NOTE,),
    )


def analyze_table(res: Resolution, z: int, caps: SizeCaps = DEFAULT_CAPS) -> ComparisonTable:
    """One design at one z against both baselines.

    Baseline columns whose preconditions fail are dropped and reported in
    the notes instead of aborting the in-scope column.
    """
    columns = [("CRD", _crd_column(scheme_metrics(res, z, caps)))]
    notes: list[str] = []
    try:
        columns.append(("MaN", _man_column(man_counterpart(res))))
    except NonIntegerCacheRedundancy as exc:
        notes.append(f"MaN baseline unavailable: {exc}")
    try:
        columns.append(("SPE", _spe_column(spe_structural(res.design.b, z))))
        notes.append(SPE_GAIN_NOTE)
    except NonIntegerSubpacketization as exc:
        notes.append(f"SPE baseline unavailable: {exc}")
    d = res.design
    return ComparisonTable(
        title=f"v={d.v} b={d.b} r={res.r} k={d.k} b_r={res.b_r}, z={z}",
        row_labels=_ROW_LABELS,
        columns=tuple(columns),
        notes=tuple(notes),
    )


def z_sweep_table(res: Resolution, label: str, caps: SizeCaps = DEFAULT_CAPS) -> ComparisonTable:
    """One column per admissible z (including z=1) for a single design."""
    profile = crd_profile(res, caps)
    z_values = [1] + sorted(profile.mu)
    columns = tuple(
        (f"z={z}", _crd_column(scheme_metrics(res, z, caps))) for z in z_values
    )
    return ComparisonTable(
        title=f"CRD scheme at every admissible z ({label})",
        row_labels=_ROW_LABELS,
        columns=columns,
    )


def _family_comparison(cells: dict[str, object], z: int, title: str) -> ComparisonTable:
    man_col = (
        cells["caches"],
        1,
        cells["man_users"],
        cells["man_subpacketization"],
        cells["m_over_n"],
        cells["m_over_n"],
        cells["man_rate"],
        cells["man_per_user_rate"],
        cells["man_gain"],
    )
    crd_col = (
        cells["caches"],
        z,
        cells["crd_users"],
        cells["crd_subpacketization"],
        cells["m_over_n"],
        None,
        cells["crd_rate"],
        cells["crd_per_user_rate"],
        cells["crd_gain"],
    )
    return ComparisonTable(
        title=title,
        row_labels=_ROW_LABELS,
        columns=(("MaN", man_col), ("CRD", crd_col)),
    )


def affine_man_table(n: int) -> ComparisonTable:
    return _family_comparison(
        affine_family_table(n), 2, f"Affine-plane family at n={n}, z=2 (formulas)"
    )


def affine_z1_man_table(n: int) -> ComparisonTable:
    return _family_comparison(
        affine_family_z1_table(n), 1, f"Affine-plane family at n={n}, z=1 (formulas)"
    )


def ag_man_table(q: int, m: int) -> ComparisonTable:
    return _family_comparison(
        ag_family_table(q, m), 2, f"Affine-geometry family at q={q}, m={m}, z=2 (formulas)"
    )


def hadamard_man_table(m: int) -> ComparisonTable:
    return _family_comparison(
        hadamard_family_table(m), 2, f"Hadamard family at m={m}, z=2 (formulas)"
    )


# --- sweeps ---------------------------------------------------------------------


@dataclass(frozen=True)
class SweepRow:
    param: str
    m_over_n: Fraction | None = None
    rk_crd: Fraction | None = None
    rk_man: Fraction | None = None
    f_crd: int | None = None
    f_man: int | None = None
    note: str = ""


def _sweep_point(res: Resolution, z: int, param: str, caps: SizeCaps) -> SweepRow:
    metrics = scheme_metrics(res, z, caps)
    man = man_counterpart(res)
    return SweepRow(
        param=param,
        m_over_n=metrics.m_over_n,
        rk_crd=metrics.per_user_rate,
        rk_man=man.per_user_rate,
        f_crd=metrics.subpacketization,
        f_man=man.subpacketization,
    )


def sweep_family(
    family: str,
    values: Sequence[int],
    z: int = 2,
    m: int | None = None,
    caps: SizeCaps = DEFAULT_CAPS,
) -> list[SweepRow]:
    """Per-parameter operating points for plotting; invalid values become
    warning rows instead of aborting the sweep."""
    rows = []
    for value in values:
        try:
            if family == "affine":
                res = affine_plane(value, caps)
            elif family == "ag":
                if m is None:
                    raise ValueError("the ag sweep needs a fixed dimension m")
                res = affine_geometry_bibd(value, m, caps)
            elif family == "hadamard":
                res = hadamard_crd(value, caps)
            else:
                raise ValueError(f"unknown sweep family {family!r}")
            rows.append(_sweep_point(res, z, str(value), caps))
        except CrdCacheError as exc:
            rows.append(SweepRow(param=str(value), note=str(exc)))
    return rows
