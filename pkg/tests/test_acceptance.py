"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run with pytest, or directly as ``python3 tests/test_acceptance.py`` for the
bare summary.
"""

import sys

import pytest

from bialgebras import verify

CRITERIA = [
    ("worked-example constants", verify.check_worked_constants),
    ("partition/surjection dictionary, |E| <= 5", verify.check_dictionary),
    ("commuting = blockwise independent, |E| <= 5", verify.check_commute_blockwise),
    ("transversals, two characterisations, |E| <= 4", verify.check_transversals),
    ("aut(lambda) formula, |E| <= 6", verify.check_automorphisms),
    ("Faa di Bruno coproduct and duality, n <= 6", lambda: verify.check_fdb(6, 0, 20)),
    ("plethystic duality, weight <= 5", lambda: verify.check_plethystic(5, 0, 20)),
    ("Segal formula = direct enumeration", lambda: verify.check_segalcom(5, 4)),
    ("bialgebra axioms", lambda: verify.check_bialgebra(6, 5)),
    ("partitional substitution = plethysm, weight <= 4", lambda: verify.check_keystone(4)),
    ("Segal conditions and simplicial identities", verify.check_segal),
]


@pytest.mark.parametrize("label,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, check, capsys):
    result = check()
    with capsys.disabled():
        print(f"\n{'PASS' if result.ok else 'FAIL'}  {label}  [{result.seconds:.2f}s]  {result.detail}")
    assert result.passed, result.detail
    assert result.within_time, f"took {result.seconds:.2f}s, limit {result.limit_seconds}s"


if __name__ == "__main__":
    failed = 0
    for label, check in CRITERIA:
        result = check()
        failed += not result.ok
        print(f"{'PASS' if result.ok else 'FAIL'}  {label}  [{result.seconds:.2f}s]  {result.detail}", flush=True)
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed")
    sys.exit(1 if failed else 0)
