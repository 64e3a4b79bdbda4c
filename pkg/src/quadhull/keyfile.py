"""Plain-text key files.

Layout::

    ALTKEY v1
    p=7; qpoly=[]; mpoly=[1,0,1]
    7 2 4 35 1
    role public kind alternant
    H_pub 8 35 prime
    <8 lines of 35 entries>

Each matrix block starts with ``<name> <rows> <cols> <level>``; entries are
separated by spaces and each entry is the comma-joined list of its base-p
digits (little-endian).  Vectors are stored as one-row matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import QuadhullError
from .ff import FieldTower

MAGIC = "ALTKEY v1"
ROLES = ("public", "secret", "recovered")


class KeyFileError(QuadhullError, ValueError):
    """Malformed or unreadable key file."""


@dataclass
class KeyFile:
    tower: FieldTower
    q: int
    m: int
    r: int
    n: int
    seed: int
    role: str
    kind: str = "alternant"
    matrices: dict[str, np.ndarray] = field(default_factory=dict)
    levels: dict[str, str] = field(default_factory=dict)

    def get(self, name: str) -> np.ndarray:
        if name not in self.matrices:
            raise KeyFileError(f"key file has no {name!r} entry")
        return self.matrices[name]

    def vector(self, name: str) -> np.ndarray:
        M = self.get(name)
        if M.shape[0] != 1:
            raise KeyFileError(f"{name!r} is not a vector")
        return M[0]


def _encode_entries(F, M) -> list[str]:
    digits = F.prime_digits(M)  # rows x cols x t
    lines = []
    for row in digits:
        lines.append(" ".join(",".join(str(int(d)) for d in entry) for entry in row))
    return lines


def dumps(kf: KeyFile) -> str:
    out = [
        MAGIC,
        kf.tower.descriptor(),
        f"{kf.q} {kf.m} {kf.r} {kf.n} {kf.seed}",
        f"role {kf.role} kind {kf.kind}",
    ]
    for name, M in kf.matrices.items():
        level = kf.levels.get(name, "prime")
        M = np.atleast_2d(np.asarray(M, dtype=np.int64))
        out.append(f"{name} {M.shape[0]} {M.shape[1]} {level}")
        out.extend(_encode_entries(kf.tower.level(level), M))
    return "\n".join(out) + "\n"


def loads(text: str) -> KeyFile:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    try:
        if not lines or lines[0] != MAGIC:
            raise KeyFileError("missing 'ALTKEY v1' header")
        try:
            tower = FieldTower.from_descriptor(lines[1])
        except ValueError as exc:
            raise KeyFileError(str(exc)) from exc
        q, m, r, n, seed = (int(v) for v in lines[2].split())
        meta = lines[3].split()
        if len(meta) != 4 or meta[0] != "role" or meta[2] != "kind" or meta[1] not in ROLES:
            raise KeyFileError(f"bad role line {lines[3]!r}")
        if tower.q != q or tower.m != m:
            raise KeyFileError("field descriptor does not match q and m")
        kf = KeyFile(tower, q, m, r, n, seed, meta[1], meta[3])
        i = 4
        while i < len(lines):
            name, rows, cols, level = lines[i].split()
            rows, cols = int(rows), int(cols)
            F = tower.level(level)
            pw = F.p ** np.arange(F.abs_degree)
            block = lines[i + 1 : i + 1 + rows]
            if len(block) != rows:
                raise KeyFileError(f"matrix {name!r} is truncated")
            M = np.zeros((rows, cols), dtype=np.int64)
            for a, ln in enumerate(block):
                entries = ln.split()
                if len(entries) != cols:
                    raise KeyFileError(f"row {a} of {name!r} has {len(entries)} entries")
                for b, e in enumerate(entries):
                    d = [int(c) for c in e.split(",")]
                    if len(d) != F.abs_degree or any(not 0 <= c < F.p for c in d):
                        raise KeyFileError(f"bad entry {e!r} in {name!r}")
                    M[a, b] = int(np.dot(d, pw))
            kf.matrices[name] = M
            kf.levels[name] = level
            i += 1 + rows
        return kf
    except KeyFileError:
        raise
    except (IndexError, KeyError, ValueError) as exc:
        raise KeyFileError(f"malformed key file: {exc}") from exc


def read(path) -> KeyFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise KeyFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def write(path, kf: KeyFile) -> None:
    Path(path).write_text(dumps(kf))


def public_file(inst) -> KeyFile:
    kf = KeyFile(inst.tower, inst.q, inst.m, inst.r, inst.n, inst.seed, "public", inst.kind)
    kf.matrices["H_pub"] = inst.H_pub
    kf.levels["H_pub"] = _base_level(inst.tower)
    return kf


def _base_level(tower) -> str:
    return "prime" if tower.base.is_prime else "mid"


def secret_file(inst) -> KeyFile:
    kf = KeyFile(inst.tower, inst.q, inst.m, inst.r, inst.n, inst.seed, "secret", inst.kind)
    base = _base_level(inst.tower)
    kf.matrices.update(x=inst.spec.x[None, :], y=inst.spec.y[None, :], P=inst.P, H_sec=inst.H_sec)
    kf.levels.update(x="top", y="top", P=base, H_sec=base)
    if inst.Gamma is not None:
        kf.matrices["Gamma"] = inst.Gamma[None, :]
        kf.levels["Gamma"] = "top"
    return kf


def recovered_file(pub: KeyFile, x, y) -> KeyFile:
    kf = KeyFile(pub.tower, pub.q, pub.m, pub.r, pub.n, pub.seed, "recovered", pub.kind)
    kf.matrices.update(x=np.asarray(x)[None, :], y=np.asarray(y)[None, :])
    kf.levels.update(x="top", y="top")
    return kf
