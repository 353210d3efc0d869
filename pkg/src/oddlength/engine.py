"""Exhaustive odd-length computation through the root action.

The group is cut along its parabolic chain: the outermost transversal labels
the parts, the remaining levels are split into a per-part prefix block and a
shared suffix block.  For a part q, every element is q p s with p a prefix
product and s a suffix product, and the number of odd roots it sends
negative is

    L(q p s) = sum over odd roots a of  flag_s(a) XOR negbit_{q p}(target_s(a))

so one matrix product of the prefix sign-bit matrix against a suffix weight
matrix evaluates L for a whole part at once.  Entries stay tiny integers,
exact in float32, and the per-part tallies are integer bincounts, so the
result is exact and independent of part order.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass

import numpy as np

from .cartan import CartanType, RootSystem, group_order, root_system
from .errors import BudgetExceeded, CheckpointCorrupt, UnsupportedProfile, WorkerFailure
from .poly import Poly
from .weyl import DEFAULT_BUDGET, WeylElement, identity, multiply, transversal_chain

__all__ = ["odd_length_gf_by_roots", "run_partitioned", "Checkpoint"]

_SUFFIX_CAP = 65536


def _products(system: RootSystem, levels: list[list[WeylElement]]) -> list[WeylElement]:
    """All products of one representative per level, earlier levels slowest."""
    out = [identity(system)]
    for level in levels:
        out = [multiply(p, u) for p in out for u in level]
    return out


@dataclass
class _Split:
    system: RootSystem
    parts: list[WeylElement]          # outermost transversal
    prefixes: list[WeylElement]       # products of the middle levels
    wmat: np.ndarray                  # roots x suffixes, +-1 weights at odd targets
    wconst: np.ndarray                # flags set per suffix
    wsign: np.ndarray                 # (-1)^parity per suffix
    n_odd: int

    @classmethod
    def build(cls, system: RootSystem) -> "_Split":
        chain = transversal_chain(system)
        rest = chain[1:]
        cut = len(rest)
        size = 1
        while cut > 0 and size * len(rest[cut - 1]) <= _SUFFIX_CAP:
            size *= len(rest[cut - 1])
            cut -= 1
        suffixes = _products(system, rest[cut:])
        prefixes = _products(system, rest[:cut])
        odd = np.array(system.odd_indices, dtype=np.int64)
        n = system.size
        wmat = np.zeros((n, len(suffixes)), dtype=np.float32)
        wconst = np.zeros(len(suffixes), dtype=np.float32)
        wsign = np.zeros(len(suffixes), dtype=np.float64)
        for col, s in enumerate(suffixes):
            tgt = s.tgt[odd].astype(np.int64)
            flags = s.neg[odd].astype(np.int64)
            wmat[tgt, col] = 1 - 2 * flags
            wconst[col] = flags.sum()
            wsign[col] = -1.0 if s.parity else 1.0
        return cls(system, chain[0], prefixes, wmat, wconst, wsign, len(odd))

    def part_coeffs(self, part_index: int, unsigned: bool = False) -> np.ndarray:
        """Signed tally of L values over one part, as an int64 vector."""
        q = self.parts[part_index]
        rows = np.empty((len(self.prefixes), self.system.size), dtype=np.float32)
        psign = np.empty(len(self.prefixes), dtype=np.float64)
        for i, p in enumerate(self.prefixes):
            qp = multiply(q, p)
            rows[i] = qp.neg
            psign[i] = -1.0 if qp.parity else 1.0
        lmat = rows @ self.wmat
        lmat += self.wconst[None, :]
        codes = lmat.astype(np.int64).ravel()
        if unsigned:
            weights = None
        else:
            weights = np.multiply.outer(psign, self.wsign).ravel()
        tally = np.bincount(codes, weights=weights, minlength=self.n_odd + 1)
        return np.rint(tally).astype(np.int64)


def _coeffs_to_poly(coeffs: np.ndarray) -> Poly:
    return Poly(("x",), {(k,): int(c) for k, c in enumerate(coeffs) if c})


def odd_length_gf_by_roots(system: RootSystem, *, unsigned: bool = False) -> Poly:
    """Sequential signed odd-length generating function over the whole group."""
    split = _Split.build(system)
    total = np.zeros(split.n_odd + 1, dtype=np.int64)
    for i in range(len(split.parts)):
        total += split.part_coeffs(i, unsigned=unsigned)
    return _coeffs_to_poly(total)


# ---------------------------------------------------------------------------
# checkpoints

class Checkpoint:
    """Resumable partial sum over parts, written atomically by rename."""

    def __init__(self, ctype: CartanType, profile: str, n_parts: int):
        self.ctype = ctype
        self.profile = profile
        self.n_parts = n_parts
        self.done: set[int] = set()
        self.partial = Poly.zero(("x",))

    def payload(self) -> dict:
        body = {
            "ctype": str(self.ctype),
            "profile": self.profile,
            "n_parts": self.n_parts,
            "done": sorted(self.done),
            "partial": self.partial.to_json_dict(),
        }
        digest = hashlib.sha256(
            json.dumps(body, separators=(",", ":")).encode()
        ).hexdigest()
        return {**body, "hash": digest}

    def write(self, path: str) -> None:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(self.payload(), fh, separators=(",", ":"))
        os.replace(tmp, path)

    @classmethod
    def read(cls, path: str, ctype: CartanType, profile: str, n_parts: int) -> "Checkpoint":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CheckpointCorrupt(f"cannot read checkpoint {path}: {exc}") from exc
        body = {k: data.get(k) for k in ("ctype", "profile", "n_parts", "done", "partial")}
        digest = hashlib.sha256(
            json.dumps(body, separators=(",", ":")).encode()
        ).hexdigest()
        if data.get("hash") != digest:
            raise CheckpointCorrupt(f"checkpoint {path} failed its integrity hash")
        if body["ctype"] != str(ctype) or body["profile"] != profile or body["n_parts"] != n_parts:
            raise CheckpointCorrupt(
                f"checkpoint {path} belongs to {body['ctype']}/{body['profile']},"
                f" not {ctype}/{profile}"
            )
        ck = cls(ctype, profile, n_parts)
        ck.done = set(int(i) for i in body["done"])
        ck.partial = Poly.from_json_dict(body["partial"])
        return ck


# ---------------------------------------------------------------------------
# partitioned driver

_WORKER_SPLIT: _Split | None = None


def _worker_part(index: int) -> tuple[int, list[tuple[int, int]]]:
    assert _WORKER_SPLIT is not None
    coeffs = _WORKER_SPLIT.part_coeffs(index)
    return index, [(k, int(c)) for k, c in enumerate(coeffs) if c]


def run_partitioned(
    ctype: CartanType,
    profile: str = "odd-length",
    *,
    workers: int = 1,
    checkpoint_path: str | None = None,
    resume: bool = False,
    parts: list[int] | None = None,
    budget: int = DEFAULT_BUDGET,
    allow_large: bool = False,
    progress: bool = False,
):
    """Partitioned, checkpointed version of the odd-length computation.

    Parts are the cosets of the outermost parabolic; each contributes a
    private polynomial and merging is plain addition, so completion order
    cannot change the result.  parts restricts the run to a subset (partial
    sums are meaningful and reproducible); resume continues from
    checkpoint_path.
    """
    from .gf import GFResult  # local import to avoid a cycle

    if profile != "odd-length":
        raise UnsupportedProfile("the partitioned engine computes odd length only")
    order = group_order(ctype)
    if order > budget and not allow_large:
        raise BudgetExceeded(
            f"group of order {order} exceeds the element budget {budget};"
            " pass allow_large=True to opt in"
        )
    start = time.perf_counter()
    system = root_system(ctype)
    split = _Split.build(system)
    n_parts = len(split.parts)
    wanted = sorted(set(range(n_parts) if parts is None else parts))
    if wanted and not 0 <= wanted[0] <= wanted[-1] < n_parts:
        raise ValueError(f"part indices must lie in [0, {n_parts})")

    if resume and checkpoint_path and os.path.exists(checkpoint_path):
        ck = Checkpoint.read(checkpoint_path, ctype, profile, n_parts)
    else:
        ck = Checkpoint(ctype, profile, n_parts)
    todo = [i for i in wanted if i not in ck.done]

    def merge(index: int, terms: list[tuple[int, int]]) -> None:
        ck.partial = ck.partial + Poly(("x",), {(k,): c for k, c in terms})
        ck.done.add(index)
        if checkpoint_path:
            ck.write(checkpoint_path)
        if progress:
            import sys

            print(
                f"part {index} done ({len(ck.done)}/{len(wanted)})",
                file=sys.stderr,
                flush=True,
            )

    if todo and workers > 1:
        import multiprocessing as mp

        global _WORKER_SPLIT
        _WORKER_SPLIT = split
        ctx = mp.get_context("fork")
        with ctx.Pool(processes=workers) as pool:
            pending = {i: pool.apply_async(_worker_part, (i,)) for i in todo}
            failures: dict[int, int] = {}
            while pending:
                done_now = []
                for i, handle in list(pending.items()):
                    if not handle.ready():
                        continue
                    try:
                        index, terms = handle.get()
                        merge(index, terms)
                        done_now.append(i)
                    except Exception:
                        failures[i] = failures.get(i, 0) + 1
                        if failures[i] > 2:
                            raise WorkerFailure(f"part {i} failed repeatedly")
                        pending[i] = pool.apply_async(_worker_part, (i,))
                        continue
                for i in done_now:
                    del pending[i]
                if pending:
                    time.sleep(0.01)
        _WORKER_SPLIT = None
    else:
        for i in todo:
            coeffs = split.part_coeffs(i)
            merge(i, [(k, int(c)) for k, c in enumerate(coeffs) if c])

    done_in_scope = sorted(set(wanted) & ck.done)
    return GFResult(
        ck.partial,
        ctype,
        profile,
        "full",
        sum(order // n_parts for _ in done_in_scope),
        time.perf_counter() - start,
        n_parts=n_parts,
        parts_done=tuple(done_in_scope),
    )
