"""Byte-exact execution of a delivery schedule.

The server holds N equal-length pseudo-random files; caches are filled
according to the placement; every coded transmission is materialized as
the bytewise XOR of its subfiles.  Each user then decodes exactly the way
the scheme promises it can: for every transmission it participates in, it
strips the other terms using subfiles read from its own caches, and
finally stitches the demanded file together from cached plus over-the-air
subfiles.  ``verify_all`` additionally checks, on every transmission, that
the side-information set of each participant (intersection of the
complementary blocks) equals the intersection of what the other
participants can read - the set identity the delivery argument rests on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .caps import DEFAULT_CAPS, SizeCaps
from .designs import Resolution
from .errors import DemandOutOfRange, IncompleteRecovery, InternalMuMismatch, MissingSideInformation
from .scheme import (
    DeliverySchedule,
    accessible_indices,
    build_delivery_schedule,
    build_scheme,
    delivery_rate,
)


@dataclass(frozen=True)
class FileStore:
    """N files of identical length, reproducible from (n_files, file_len, seed)."""

    n_files: int
    file_len: int
    seed: int
    files: tuple[bytes, ...]


def make_file_store(n_files: int, file_len: int, seed: int = 0) -> FileStore:
    if n_files < 1 or file_len < 1:
        raise DemandOutOfRange(
            f"need n_files >= 1 and file_len >= 1, got {n_files}, {file_len}"
        )
    rng = random.Random(seed)
    return FileStore(
        n_files=n_files,
        file_len=file_len,
        seed=seed,
        files=tuple(rng.randbytes(file_len) for _ in range(n_files)),
    )


def subfile_length(file_len: int, v: int) -> int:
    return -(-file_len // v)


def split_subfiles(data: bytes, v: int) -> list[bytes]:
    """Zero-pad to a multiple of v and slice into v equal subfiles."""
    sub = subfile_length(len(data), v)
    padded = data + b"\x00" * (sub * v - len(data))
    return [padded[i * sub : (i + 1) * sub] for i in range(v)]


def _xor(a: bytes, b: bytes) -> bytes:
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(len(a), "big")


def build_caches(store: FileStore, res: Resolution) -> list[dict[tuple[int, int], bytes]]:
    """Materialize cache contents: cache j maps (file id, point) -> subfile bytes."""
    v = res.design.v
    per_file = [split_subfiles(data, v) for data in store.files]
    caches = []
    for block in res.design.blocks:
        caches.append(
            {
                (i + 1, p): per_file[i][p - 1]
                for i in range(store.n_files)
                for p in block
            }
        )
    return caches


def encode_payloads(schedule: DeliverySchedule, store: FileStore) -> list[bytes]:
    """One XOR payload per coded transmission, in schedule order."""
    v = schedule.scheme.res.design.v
    per_file = [split_subfiles(data, v) for data in store.files]
    payloads = []
    for t in schedule.transmissions:
        acc = None
        for uid, y in t.terms:
            sub = per_file[schedule.demands[uid] - 1][y - 1]
            acc = sub if acc is None else _xor(acc, sub)
        payloads.append(acc)
    return payloads


def decode_user(
    user_idx: int,
    payloads: Sequence[bytes],
    schedule: DeliverySchedule,
    caches: Sequence[dict[tuple[int, int], bytes]],
    demand: int,
    file_len: int,
) -> tuple[bytes, int, int]:
    """Reconstruct the demanded file for one user.

    Reads only the user's own caches plus the broadcast payloads;
    ``file_len`` is the true (pre-padding) length to strip back to.
    Returns (file bytes, subfiles from cache, subfiles from the air).
    """
    scheme = schedule.scheme
    res = scheme.res
    v = res.design.v
    user = scheme.users[user_idx]
    readable = accessible_indices(res, user)

    def read_cached(file_id: int, point: int) -> bytes:
        for j in user:
            if point in res.design.blocks[j]:
                return caches[j][(file_id, point)]
        raise MissingSideInformation(
            f"user {user_idx + 1} has no cache holding subfile {point}"
        )

    from_air: dict[int, bytes] = {}
    for t_idx, t in enumerate(schedule.transmissions):
        mine = next(((uid, y) for uid, y in t.terms if uid == user_idx), None)
        if mine is None:
            continue
        acc = payloads[t_idx]
        for uid, y in t.terms:
            if uid == user_idx:
                continue
            if y not in readable:
                raise MissingSideInformation(
                    f"transmission {t_idx + 1}: user {user_idx + 1} cannot strip "
                    f"subfile {y} of user {uid + 1}'s term"
                )
            acc = _xor(acc, read_cached(schedule.demands[uid], y))
        from_air[mine[1]] = acc

    pieces: list[bytes] = []
    for point in range(1, v + 1):
        if point in readable:
            pieces.append(read_cached(demand, point))
        elif point in from_air:
            pieces.append(from_air[point])
        else:
            raise IncompleteRecovery(
                f"user {user_idx + 1} never obtained subfile {point} of file {demand}"
            )
    return b"".join(pieces)[:file_len], len(readable), len(from_air)


@dataclass(frozen=True)
class UserReport:
    user: int  # 0-based
    demand: int
    recovered: bool
    byte_equal: bool
    subfiles_from_cache: int
    subfiles_from_air: int


@dataclass(frozen=True)
class SimulationReport:
    z: int
    n_files: int
    file_len: int
    seed: int
    users: tuple[UserReport, ...]
    transmissions_sent: int
    measured_rate: Fraction
    theoretical_rate: Fraction

    @property
    def all_recovered(self) -> bool:
        return all(u.recovered and u.byte_equal for u in self.users)


def _check_side_information_sets(schedule: DeliverySchedule) -> None:
    """On every transmission: the complementary-block intersection of each
    participant must equal the intersection of all other participants'
    readable index sets."""
    scheme = schedule.scheme
    res = scheme.res
    blocks = res.design.blocks
    readable = {}
    for t_idx, t in enumerate(schedule.transmissions):
        uids = [uid for uid, _ in t.terms]
        for uid in uids:
            if uid not in readable:
                readable[uid] = accessible_indices(res, scheme.users[uid])
        for uid in uids:
            mine = scheme.users[uid]
            direct = None
            for s, (blk_i, blk_j) in enumerate(t.pairs):
                other = blk_j if mine[s] == blk_i else blk_i
                direct = blocks[other] if direct is None else direct & blocks[other]
            via_others = None
            for other_uid in uids:
                if other_uid == uid:
                    continue
                y = readable[other_uid]
                via_others = y if via_others is None else via_others & y
            if direct != via_others:
                raise InternalMuMismatch(
                    f"transmission {t_idx + 1}: side-information set of user "
                    f"{uid + 1} is {sorted(direct)} but the others share "
                    f"{sorted(via_others)}"
                )


def verify_all(
    res: Resolution,
    z: int,
    n_files: int,
    file_len: int,
    seed: int = 0,
    demands: Sequence[int] | None = None,
    caps: SizeCaps = DEFAULT_CAPS,
) -> SimulationReport:
    """End-to-end run: place, schedule, broadcast, decode and compare bytes."""
    scheme = build_scheme(res, z, n_files, caps)
    if demands is None:
        if n_files < scheme.n_users:
            raise DemandOutOfRange(
                f"worst-case demands need N >= K, got N={n_files}, K={scheme.n_users}"
            )
        demands = tuple(range(1, scheme.n_users + 1))
    schedule = build_delivery_schedule(scheme, demands)
    _check_side_information_sets(schedule)
    store = make_file_store(n_files, file_len, seed)
    caches = build_caches(store, res)
    payloads = encode_payloads(schedule, store)
    reports = []
    for uid in range(scheme.n_users):
        data, n_cache, n_air = decode_user(
            uid, payloads, schedule, caches, schedule.demands[uid], file_len
        )
        reports.append(
            UserReport(
                user=uid,
                demand=schedule.demands[uid],
                recovered=True,
                byte_equal=data == store.files[schedule.demands[uid] - 1],
                subfiles_from_cache=n_cache,
                subfiles_from_air=n_air,
            )
        )
    return SimulationReport(
        z=z,
        n_files=n_files,
        file_len=file_len,
        seed=seed,
        users=tuple(reports),
        transmissions_sent=len(payloads),
        measured_rate=Fraction(len(payloads), res.design.v),
        theoretical_rate=delivery_rate(res.design.v, res.r, res.b_r, z, scheme.mu_z),
    )


def report_to_json(report: SimulationReport) -> dict:
    return {
        "z": report.z,
        "n_files": report.n_files,
        "file_len": report.file_len,
        "seed": report.seed,
        "transmissions_sent": report.transmissions_sent,
        "measured_rate": str(report.measured_rate),
        "theoretical_rate": str(report.theoretical_rate),
        "all_recovered": report.all_recovered,
        "users": [
            {
                "user": u.user + 1,
                "demand": u.demand,
                "recovered": u.recovered,
                "byte_equal": u.byte_equal,
                "subfiles_from_cache": u.subfiles_from_cache,
                "subfiles_from_air": u.subfiles_from_air,
            }
            for u in report.users
        ],
    }


def payload_hex_dump(schedule: DeliverySchedule, payloads: Sequence[bytes]) -> list[str]:
    """Debug view: one line per transmission, provenance triple then hex bytes."""
    lines = []
    for t, payload in zip(schedule.transmissions, payloads):
        classes = ",".join(str(c + 1) for c in t.classes)
        pairs = ";".join(f"{i + 1}-{j + 1}" for i, j in t.pairs)
        lines.append(f"classes={classes} pairs={pairs} s={t.s}: {payload.hex()}")
    return lines
