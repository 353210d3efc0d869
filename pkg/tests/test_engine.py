"""Partitioned driver: part algebra, checkpoints, workers, budgets."""

import json
import os

import pytest

from oddlength.cartan import CartanType
from oddlength.engine import Checkpoint, run_partitioned
from oddlength.errors import BudgetExceeded, CheckpointCorrupt, UnsupportedProfile
from oddlength.gf import signed_gf

F4 = CartanType.parse("F4")
E6 = CartanType.parse("E6")


def test_partitioned_equals_direct():
    for ct in (F4, E6):
        assert run_partitioned(ct).poly == signed_gf(ct).poly


def test_part_counts():
    assert run_partitioned(F4).n_parts == 24
    assert run_partitioned(CartanType.parse("D4")).n_parts == 8
    assert run_partitioned(E6).n_parts == 27


def test_workers_byte_identical():
    seq = run_partitioned(E6, workers=1).poly.dumps()
    par = run_partitioned(E6, workers=4).poly.dumps()
    assert seq == par


def test_disjoint_part_sums_merge():
    total = run_partitioned(F4).poly
    lo = run_partitioned(F4, parts=list(range(12))).poly
    hi = run_partitioned(F4, parts=list(range(12, 24))).poly
    assert lo + hi == total


def test_part_order_does_not_matter(tmp_path):
    fwd = run_partitioned(F4, parts=[0, 1, 2, 3]).poly.dumps()
    rev = run_partitioned(F4, parts=[3, 2, 0, 1]).poly.dumps()
    assert fwd == rev


def test_part_index_out_of_range():
    with pytest.raises(ValueError):
        run_partitioned(F4, parts=[0, 99])


def test_checkpoint_resume_completes(tmp_path):
    path = str(tmp_path / "f4.ckpt")
    first = run_partitioned(F4, checkpoint_path=path, parts=list(range(10)))
    assert first.parts_done == tuple(range(10))
    resumed = run_partitioned(F4, checkpoint_path=path, resume=True)
    assert resumed.parts_done == tuple(range(24))
    assert resumed.poly.dumps() == run_partitioned(F4).poly.dumps()


def test_resume_skips_finished_parts(tmp_path):
    path = str(tmp_path / "f4.ckpt")
    run_partitioned(F4, checkpoint_path=path, parts=[0, 1])
    before = json.load(open(path))
    again = run_partitioned(F4, checkpoint_path=path, resume=True, parts=[0, 1])
    after = json.load(open(path))
    assert before == after
    partial = run_partitioned(F4, parts=[0, 1]).poly
    assert again.poly == partial


def test_checkpoint_round_trip(tmp_path):
    path = str(tmp_path / "ck.json")
    run_partitioned(F4, checkpoint_path=path, parts=[3, 7])
    ck = Checkpoint.read(path, F4, "odd-length", 24)
    assert ck.done == {3, 7}
    assert ck.partial == run_partitioned(F4, parts=[3, 7]).poly


def test_checkpoint_tamper_detected(tmp_path):
    path = str(tmp_path / "ck.json")
    run_partitioned(F4, checkpoint_path=path, parts=[0])
    data = json.load(open(path))
    data["done"] = [0, 1]
    with open(path, "w") as fh:
        json.dump(data, fh)
    with pytest.raises(CheckpointCorrupt):
        Checkpoint.read(path, F4, "odd-length", 24)


def test_checkpoint_wrong_group_rejected(tmp_path):
    path = str(tmp_path / "ck.json")
    run_partitioned(F4, checkpoint_path=path, parts=[0])
    with pytest.raises(CheckpointCorrupt):
        Checkpoint.read(path, E6, "odd-length", 27)


def test_checkpoint_garbage_rejected(tmp_path):
    path = str(tmp_path / "ck.json")
    with open(path, "w") as fh:
        fh.write("not json {")
    with pytest.raises(CheckpointCorrupt):
        Checkpoint.read(path, F4, "odd-length", 24)


def test_large_group_needs_opt_in():
    with pytest.raises(BudgetExceeded):
        run_partitioned(CartanType.parse("E8"))


def test_profile_restricted_to_odd_length():
    with pytest.raises(UnsupportedProfile):
        run_partitioned(F4, profile="B-4var")


@pytest.mark.skipif(
    os.environ.get("ODDLENGTH_E8") != "1",
    reason="full 696 million element run; set ODDLENGTH_E8=1 to enable",
)
def test_full_e8_polynomial():
    res = run_partitioned(CartanType.parse("E8"), workers=4, allow_large=True)
    expect = {
        0: 1, 2: -1, 4: -1, 8: -1, 10: 2, 12: 1, 14: 1, 16: 1, 18: -1,
        20: -1, 22: -2, 24: -3, 28: 1, 30: 1, 32: 4, 34: 1, 36: 1,
        40: -3, 42: -2, 44: -1, 46: -1, 48: 1, 50: 1, 52: 1, 54: 2,
        56: -1, 60: -1, 62: -1, 64: 1,
    }
    assert {e[0]: c for e, c in res.poly.terms.items()} == expect
    assert res.poly.eval_int((1,)) == 0
