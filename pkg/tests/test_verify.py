import json

import pytest

from mzvkit import oracle, verify
from mzvkit.verify import CATALOG, REPORT_FIELDS, Identity, Ranges, digits_agreed, run_batch, run_verification


def test_report_schema(ctx20):
    rep = run_verification("thm2.2", {"r": 1}, ctx20)
    assert tuple(rep.to_dict()) == REPORT_FIELDS
    assert rep.status == "pass"
    assert rep.precision_bits == ctx20.bits
    assert rep.digits_agreed >= 20


def test_unknown_id(ctx20):
    with pytest.raises(verify.UnknownIdentity):
        run_verification("thm9.9", {}, ctx20)
    with pytest.raises(verify.UnknownIdentity):
        verify.expand(["nope"], Ranges())


def test_conjectures_never_pass(ctx20):
    for ident in ("conj-H", "conj-T"):
        rep = run_verification(ident, {"r": 1, "s": 1}, ctx20)
        assert rep.status == "supported"


def test_exact_report_for_printed_fourth_power():
    rep = run_verification("eq2", {"order": 41}, None)
    assert rep.status == "pass" and rep.digits_agreed == verify.EXACT_AGREEMENT
    assert rep.params["printed_matches"] == 0
    assert rep.params["printed_first_mismatch"] == 4
    assert rep.params["corrected_matches"] == 1


@pytest.mark.parametrize("ident", ["eq1", "eq3", "eq4", "eq5", "eq6", "dim-bound"])
def test_exact_identities(ident):
    for _, params in verify.expand([ident], Ranges()):
        assert run_verification(ident, params, None).status == "pass"


def test_digits_agreed():
    assert digits_agreed(1, 1, 100) == int(100 * 0.30103)
    assert digits_agreed("1.0001", "1", 100) == 4
    assert digits_agreed(0, "1e-8", 100) == 8


def test_grids():
    ranges = Ranges(r_max=2, s_max=2, p_max=12)
    assert len(verify.expand(["conj-H"], ranges)) == 9
    assert len(verify.expand(["lemma2.6"], ranges)) == 12
    assert len(verify.expand(["thm2.5-orr"], ranges)) == 18


def test_numeric_failure_becomes_fail_record(monkeypatch, ctx20):
    def broken(p, ctx):
        return oracle.mzv_direct([2, 3], ctx, max_terms=4), 0

    monkeypatch.setitem(CATALOG, "broken", Identity("broken", "theorem", broken, lambda g: [{}]))
    rep = run_verification("broken", {}, ctx20)
    assert rep.status == "fail" and rep.rhs.startswith("error:")


def test_parallel_matches_serial():
    items = verify.expand(["thm2.1", "lemma2.6", "eq2", "clausen-special"], Ranges(r_max=1, s_max=1, p_max=4))
    exact = [it for it in items if CATALOG[it[0]].kind == "exact"]
    numeric = [it for it in items if CATALOG[it[0]].kind != "exact"]
    serial = [r.comparable() for r in run_batch(numeric, 20, jobs=1)]
    parallel = [r.comparable() for r in run_batch(numeric, 20, jobs=3)]
    assert serial == parallel
    assert [r.comparable() for r in run_batch(exact, 0, jobs=2)] == [r.comparable() for r in run_batch(exact, 0)]


def test_csv_mirror(ctx20):
    reps = [run_verification("prop2.3", {"r": 2}, ctx20)]
    lines = verify.reports_to_csv(reps).splitlines()
    assert lines[0].split(",") == list(REPORT_FIELDS)
    assert json.loads(verify.reports_to_json(reps))[0]["id"] == "prop2.3"


def test_orr_quadrature_variant(ctx20):
    rep = run_verification("thm2.5-orr", {"p": 2, "z_num": 1, "z_den": 3, "quad": 1}, ctx20)
    assert rep.status == "pass"
